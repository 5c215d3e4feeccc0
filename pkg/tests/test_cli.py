import csv
import io
import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from hypercauchy import cli
from hypercauchy.verification import CheckReport


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli.main, list(args), catch_exceptions=False)

    return invoke


def rows(text):
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    assert header == ["x", "value"]
    data = np.array([[float(a), float(b)] for a, b in reader])
    return data[:, 0], data[:, 1]


def interior_maxima(x, y):
    i = np.flatnonzero((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:])) + 1
    return x[i]


def test_pdf_p4_modes(run):
    res = run("pdf", "--law", "hyper", "--n", "2", "--t", "1", "--grid", "-5:5:2001")
    assert res.exit_code == 0
    x, y = rows(res.output)
    assert x.size == 2001 and np.all(np.diff(x) > 0)
    assert np.argmin(y[900:1100]) + 900 == 1000  # local minimum at 0
    r = math.sqrt(math.sqrt(2) - 1)
    assert interior_maxima(x, y) == pytest.approx([-r, r], abs=5e-3)


def test_pdf_gk_maxima_at_t(run):
    x, y = rows(run("pdf", "--law", "gk", "--n", "3", "--k", "1", "--t", "1").output)
    assert interior_maxima(x, y) == pytest.approx([-1.0, 1.0], abs=5e-3)


def test_pdf_third_peak(run):
    x, y = rows(run("pdf", "--law", "third", "--t", "1", "--grid", "-6:6:1201").output)
    assert interior_maxima(x, y) == pytest.approx([-0.5], abs=1e-2)


def test_pdf_n20_far_range_nonnegative(run):
    x, y = rows(run("pdf", "--law", "hyper", "--n", "20", "--grid", "-100:100:201").output)
    assert np.all(np.isfinite(y)) and np.all(y >= 0)


def test_pdf_format_and_output_file(run, tmp_path):
    out = tmp_path / "p.json"
    res = run("pdf", "--law", "asym", "--k", "2", "--grid", "-1:1:5", "--format", "json", "-o", str(out))
    assert res.exit_code == 0 and res.output == ""
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["law"] == "asym" and data["params"] == {"k": 2, "t": 1.0}
    assert len(data["x"]) == len(data["value"]) == 5


def test_pdf_csv_formatting(run):
    text = run("pdf", "--law", "cauchy", "--grid", "0:1:2").output
    assert text == f"x,value\n0,{1 / math.pi:.12g}\n1,{0.5 / math.pi:.12g}\n"


def test_pdf_support_laws(run):
    x, y = rows(run("pdf", "--law", "folded", "--n", "3", "--k", "1", "--grid", "-1:1:5").output)
    assert np.all(y[x < 0] == 0) and np.all(y[x >= 0] > 0)  # closed at 0
    x, y = rows(run("pdf", "--law", "stable13", "--grid", "-1:2:4").output)
    assert y[0] == 0 and y[1] == 0 and y[-1] > 0


@pytest.mark.parametrize("args", [
    ("pdf", "--law", "hyper"),                                   # missing --n
    ("pdf", "--law", "hk", "--n", "3", "--k", "2"),              # even k
    ("pdf", "--law", "hyper", "--n", "2", "--grid", "1:0:5"),    # empty grid
    ("pdf", "--law", "hyper", "--n", "2", "--t", "-1"),          # bad t
    ("pdf", "--law", "nope"),
    ("sample", "--law", "hyper"),                                # missing --n
    ("sample", "--law", "cauchy", "--seed", "-4"),
    ("figure", "nope"),
])
def test_usage_errors_exit_2(run, args):
    assert run(*args).exit_code == 2


def test_sample_byte_identical(run):
    a = run("sample", "--law", "hyper", "--n", "3", "-n", "200", "--seed", "42")
    b = run("sample", "--law", "hyper", "--n", "3", "-n", "200", "--seed", "42")
    c = run("sample", "--law", "hyper", "--n", "3", "-n", "200", "--seed", "43")
    assert a.exit_code == 0
    assert a.stdout_bytes == b.stdout_bytes != c.stdout_bytes
    lines = a.output.splitlines()
    assert lines[0].startswith("# law=hyper(n=3,t=1.0) seed=42") and lines[1] == "value"
    assert len(lines) == 202


def test_sample_asym_positive_fraction(run):
    out = run("sample", "--law", "asym", "--k", "1", "--t", "1", "-n", "100000", "--seed", "7").output
    values = np.array([float(v) for v in out.splitlines()[2:]])
    q = 1 / 3
    assert abs(np.mean(values > 0) - q) < 3 * math.sqrt(q * (1 - q) / values.size)


def test_sample_stable13_positive_json(run):
    data = json.loads(run("sample", "--law", "stable13", "-n", "1000", "--format", "json").output)
    assert data["size"] == 1000 and min(data["values"]) > 0
    assert data["algorithm"] == "PCG64"


def test_verify_suite_json(run):
    res = run("verify", "--suite", "normalization", "--json")
    assert res.exit_code == 0
    reports = json.loads(res.output)
    assert reports and all(r["passed"] for r in reports)
    assert all("normalization" in r["check_name"] for r in reports)


def test_verify_pde_table_and_tsv(run, tmp_path):
    res = run("verify", "--suite", "pde")
    assert res.exit_code == 0
    assert all(line.startswith("pde_") for line in res.output.splitlines()[1:-1])
    out = tmp_path / "r.tsv"
    assert run("verify", "--suite", "halfline", "--format", "tsv", "-o", str(out)).exit_code == 0
    assert out.read_text().splitlines()[0].startswith("check_name\tpassed")


def test_verify_failure_exit_1(run, monkeypatch):
    bad = CheckReport("forced", False, 1.0, 0.0, 1e-9)
    monkeypatch.setattr(cli, "run_suite", lambda name: [bad])
    res = run("verify", "--suite", "identities")
    assert res.exit_code == 1
    assert "FAIL" in res.output


def test_figure_files(run, tmp_path):
    res = run("figure", "fold_sym", "--outdir", str(tmp_path), "--points", "101")
    assert res.exit_code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["folded_n3_k1.csv", "folded_n3_k3.csv", "symmetrized_n3_k1.csv", "symmetrized_n3_k3.csv"]
    # folding doubles the density on the half line
    xf, yf = rows((tmp_path / "folded_n3_k3.csv").read_text())
    xs, ys = rows((tmp_path / "symmetrized_n3_k3.csv").read_text())
    shared = np.isin(np.round(xs, 9), np.round(xf, 9))
    assert xf[0] == 0.0 and shared.sum() == 51
    assert np.allclose(yf[::2], 2 * ys[shared], rtol=1e-9)


def test_figure_pn_large_symmetric_and_sharpening(run, tmp_path):
    assert run("figure", "pn_large", "--outdir", str(tmp_path), "--points", "401").exit_code == 0
    peaks = []
    for n in (5, 10, 15, 20):
        x, y = rows((tmp_path / f"p_n{n}.csv").read_text())
        assert np.allclose(y, y[::-1], rtol=1e-12)
        peaks.append(y.max())
    assert peaks == sorted(peaks)


@pytest.mark.parametrize("fig,count", [("p4p8", 2), ("gk", 2), ("third", 1)])
def test_figure_counts(run, tmp_path, fig, count):
    res = run("figure", fig, "--outdir", str(tmp_path), "--points", "51")
    assert res.exit_code == 0
    assert len(list(tmp_path.iterdir())) == count == len(res.output.splitlines())


def test_threads_option(run):
    numba = pytest.importorskip("numba")
    start = numba.get_num_threads()
    try:
        assert run("--threads", "1", "pdf", "--law", "cauchy", "--grid", "0:1:3").exit_code == 0
        assert numba.get_num_threads() == 1
    finally:
        numba.set_num_threads(start)


def test_entry_point_help(run):
    res = run("--help")
    assert res.exit_code == 0
    for name in ("pdf", "sample", "verify", "figure"):
        assert name in res.output
