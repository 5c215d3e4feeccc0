import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# --- acceptance report --------------------------------------------------------------

_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Session-wide list of ``(criterion, passed, summary)`` lines."""
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for cid, passed, summary in sorted(lines, key=lambda r: _criterion_key(r[0])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {cid:<4} {summary}")


def _criterion_key(cid):
    digits = "".join(ch for ch in cid if ch.isdigit())
    return (int(digits or 0), cid)
