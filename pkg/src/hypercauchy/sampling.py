"""Random-variate generators for the Cauchy-type laws.

All samplers take an :class:`RngState` and an optional ``size``; with
``size=None`` they return one float, otherwise a 1-D array.  Streams are
numpy ``PCG64`` generators seeded through ``SeedSequence`` so that
``(seed, stream)`` pairs give independent, reproducible sub-streams.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .distributions import AsymCauchyParams, ComponentSpec, HyperCauchyParams, odd_indices
from .errors import DomainError

ALGORITHM = "PCG64"
_U64 = 2**64


@dataclass
class RngState:
    """Seeded PCG64 stream; one state per logical thread."""

    seed: int
    stream: int = 0
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or not 0 <= self.seed < _U64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if int(self.stream) != self.stream or self.stream < 0:
            raise DomainError(f"stream must be a non-negative integer, got {self.stream}")
        self.seed, self.stream = int(self.seed), int(self.stream)
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        self.generator = np.random.Generator(np.random.PCG64(seq))

    def spawn(self, count: int) -> list["RngState"]:
        """Deterministic child states for parallel batches, keyed by ``(seed, index)``."""
        return [RngState(self.seed, self.stream + 1 + i) for i in range(count)]

    def uniform_open(self, size=None):
        # (0, 1): numpy's random() is [0, 1), reject the exact zero
        u = self.generator.random(size)
        if size is None:
            while u == 0.0:
                u = self.generator.random()
            return u
        bad = u == 0.0
        while bad.any():
            u[bad] = self.generator.random(int(bad.sum()))
            bad = u == 0.0
        return u


def _as_rng(rng) -> RngState:
    if isinstance(rng, RngState):
        return rng
    return RngState(int(rng))


def _check_size(size):
    if size is not None and (int(size) != size or size < 1):
        raise DomainError(f"size must be a positive integer, got {size}")


def _finish(values, size):
    if size is None:
        return float(values)
    return np.asarray(values, dtype=np.float64)


# --- elementary draws ------------------------------------------------------------

def sample_cauchy(location: float, scale: float, rng, size=None):
    """Inversion: ``location + scale * tan(pi (U - 1/2))``."""
    if not (math.isfinite(scale) and scale > 0):
        raise DomainError(f"scale must be positive, got {scale}")
    _check_size(size)
    u = _as_rng(rng).uniform_open(size)
    return _finish(location + scale * np.tan(np.pi * (u - 0.5)), size)


def _coin(rng: RngState, size):
    bits = rng.generator.integers(0, 2, size=size)
    return 2.0 * bits - 1.0


def sample_folded(c: ComponentSpec, rng, size=None):
    """``|C(t cos theta) - t sin theta|``; law ``f_k = 2 h_k`` on ``w >= 0``."""
    draw = sample_cauchy(0.0, c.cauchy_scale, rng, size)
    return _finish(np.abs(np.asarray(draw) - c.cauchy_location), size)


def sample_symmetrized(c: ComponentSpec, rng, size=None, method: str = "half_difference"):
    """Symmetrized folded draws.

    ``method="half_difference"`` returns ``(W1 - W2) / 2`` for independent
    folded copies.  ``method="random_sign"`` returns ``eps * W`` with a fair
    sign ``eps``, whose law is exactly ``h_k``.  The half-difference law has
    the non-negative transform ``|phi_W(beta/2)|^2`` and so differs from
    ``h_k`` (whose transform changes sign); both are kept so the difference
    can be measured.
    """
    rng = _as_rng(rng)
    if method == "half_difference":
        w1 = sample_folded(c, rng, size)
        w2 = sample_folded(c, rng, size)
        return _finish((np.asarray(w1) - np.asarray(w2)) / 2.0, size)
    if method == "random_sign":
        w = sample_folded(c, rng, size)
        return _finish(_coin(rng, size) * np.asarray(w), size)
    raise DomainError(f"unknown symmetrization method {method!r}")


def sample_component_exact(c: ComponentSpec, rng, size=None):
    """Fair-sign two-Cauchy mixture ``Cauchy(+-t sin theta, t cos theta)``; law ``h_k``."""
    rng = _as_rng(rng)
    _check_size(size)
    sign = _coin(rng, size)
    u = rng.uniform_open(size)
    return _finish(sign * c.cauchy_location + c.cauchy_scale * np.tan(np.pi * (u - 0.5)), size)


def sample_hyper_cauchy(p: HyperCauchyParams, rng, size=None):
    """Uniform choice of odd ``k``, then an exact component draw."""
    rng = _as_rng(rng)
    _check_size(size)
    ks = odd_indices(p.n)
    pick = rng.generator.integers(0, ks.size, size=size)
    angle = ks[pick] * (math.pi / 2.0**p.n)
    sign = _coin(rng, size)
    u = rng.uniform_open(size)
    x = p.t * (sign * np.sin(angle) + np.cos(angle) * np.tan(np.pi * (u - 0.5)))
    return _finish(x, size)


def sample_asym_cauchy(p: AsymCauchyParams, rng, size=None):
    return sample_cauchy(p.location, p.scale, rng, size)


def sample_third_order(t: float, rng, size=None):
    """Cauchy draw with location ``-t/2`` and scale ``sqrt(3) t / 2``."""
    if not (math.isfinite(t) and t > 0):
        raise DomainError(f"t must be positive, got {t}")
    return sample_cauchy(-0.5 * t, 0.5 * math.sqrt(3.0) * t, rng, size)


def sample_stable13(t: float, rng, size=None):
    """Positive 1/3-stable subordinator at time ``t`` (Laplace transform ``exp(-t lambda^{1/3})``).

    Kanter's representation with ``U ~ Uniform(0, pi)`` and ``E ~ Exp(1)``:
    ``S(1) = sin(aU) / sin(U)^{1/a} * (sin((1-a)U) / E)^{(1-a)/a}``, and
    ``S(t) = t^3 S(1)`` by self-similarity.
    """
    if not (math.isfinite(t) and t > 0):
        raise DomainError(f"t must be positive, got {t}")
    rng = _as_rng(rng)
    _check_size(size)
    a = 1.0 / 3.0
    u = math.pi * rng.uniform_open(size)
    e = rng.generator.standard_exponential(size)
    while np.any(np.asarray(e) == 0.0):
        e = np.where(e == 0.0, rng.generator.standard_exponential(size), e)
    s1 = np.sin(a * u) / np.sin(u) ** 3 * (np.sin((1.0 - a) * u) / e) ** 2
    return _finish(t**3 * s1, size)


# --- batches -------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleBatch:
    """Seeded batch of draws plus the law tag that produced it."""

    values: np.ndarray
    seed: int
    law_descriptor: str
    algorithm: str = ALGORITHM

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64).ravel()
        if arr.size == 0:
            raise DomainError("a batch needs at least one value")
        if not np.all(np.isfinite(arr)):
            raise DomainError("batch values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def size(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.size

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(f"# law={self.law_descriptor} seed={self.seed} algorithm={self.algorithm}\n")
        out.write("value\n")
        for v in self.values:
            out.write(f"{v:.17g}\n")
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SampleBatch":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("#"):
            raise DomainError("missing batch header line")
        meta = dict(item.split("=", 1) for item in lines[0][1:].split())
        rows = list(csv.reader(lines[1:]))
        if not rows or rows[0] != ["value"]:
            raise DomainError("missing 'value' column header")
        values = [float(r[0]) for r in rows[1:] if r]
        return cls(np.array(values), int(meta["seed"]), meta["law"], meta.get("algorithm", ALGORITHM))

    def to_json(self) -> str:
        return json.dumps({
            "law": self.law_descriptor,
            "seed": self.seed,
            "algorithm": self.algorithm,
            "size": self.size,
            "values": [float(v) for v in self.values],
        })

    @classmethod
    def from_json(cls, text: str) -> "SampleBatch":
        data = json.loads(text)
        return cls(np.array(data["values"], dtype=np.float64), int(data["seed"]),
                   data["law"], data.get("algorithm", ALGORITHM))


def _descriptor(name, params):
    inner = ",".join(f"{k}={params[k]}" for k in sorted(params))
    return f"{name}({inner})"


def _sampler_for(name: str, params: dict) -> Callable:
    t = float(params.get("t", 1.0))
    if name == "cauchy":
        return lambda rng, size: sample_cauchy(float(params.get("location", 0.0)), t, rng, size)
    if name == "hyper":
        p = HyperCauchyParams(int(params["n"]), t)
        return lambda rng, size: sample_hyper_cauchy(p, rng, size)
    if name == "asym":
        p = AsymCauchyParams.from_k(int(params["k"]), t)
        return lambda rng, size: sample_asym_cauchy(p, rng, size)
    if name == "asym_m":
        p = AsymCauchyParams.from_m(int(params["m"]), t)
        return lambda rng, size: sample_asym_cauchy(p, rng, size)
    if name == "third":
        return lambda rng, size: sample_third_order(t, rng, size)
    if name == "stable13":
        return lambda rng, size: sample_stable13(t, rng, size)
    c = ComponentSpec(int(params["n"]), int(params["k"]), t) if name in (
        "component", "folded", "symmetrized", "sign_symmetrized") else None
    if name == "component":
        return lambda rng, size: sample_component_exact(c, rng, size)
    if name == "folded":
        return lambda rng, size: sample_folded(c, rng, size)
    if name == "symmetrized":
        return lambda rng, size: sample_symmetrized(c, rng, size)
    if name == "sign_symmetrized":
        return lambda rng, size: sample_symmetrized(c, rng, size, method="random_sign")
    raise DomainError(f"unknown law {name!r}")


SAMPLER_LAWS = ("cauchy", "hyper", "asym", "asym_m", "third", "stable13",
                "component", "folded", "symmetrized", "sign_symmetrized")


def draw_batch(law: str, size: int, seed: int, stream: int = 0, **params) -> SampleBatch:
    """Draw ``size`` values of ``law`` from the stream ``(seed, stream)``."""
    _check_size(size)
    sampler = _sampler_for(law, params)
    rng = RngState(seed, stream)
    values = sampler(rng, int(size))
    return SampleBatch(values, rng.seed, _descriptor(law, params))


def draw_batch_parallel(law: str, size: int, seed: int, chunks: int, **params) -> SampleBatch:
    """Concatenation of ``chunks`` sub-batches drawn from streams ``1..chunks``.

    The result depends only on ``(seed, chunks)``, never on scheduling.
    """
    from concurrent.futures import ThreadPoolExecutor

    _check_size(size)
    if int(chunks) != chunks or chunks < 1:
        raise DomainError(f"chunks must be a positive integer, got {chunks}")
    sampler = _sampler_for(law, params)
    sizes = [size // chunks + (i < size % chunks) for i in range(chunks)]
    states = RngState(seed).spawn(chunks)
    jobs = [(st, sz) for st, sz in zip(states, sizes) if sz > 0]
    with ThreadPoolExecutor() as pool:
        parts = list(pool.map(lambda job: sampler(job[0], job[1]), jobs))
    return SampleBatch(np.concatenate(parts), int(seed), _descriptor(law, params))
