"""Shared numerical machinery.

Improper integrals are mapped to finite intervals (``x = tan(theta)`` for the
real line, ``s = u / (1 - u)`` for the half line) and integrated with a
globally adaptive 7/15-point Gauss-Kronrod rule.  The module also carries
exact central finite-difference stencils, a golden-section maximiser and
Kolmogorov-Smirnov statistics.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import BracketError, DomainError

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-8

# QUADPACK G7/K15 abscissae on [0, 1] (symmetric about 0).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node rule on [-1, 1]; Gauss nodes are the odd positions of _XGK.
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5]] = _WG[:3]
_GWEIGHTS[[13, 11, 9]] = _WG[:3]
_GWEIGHTS[7] = _WG[3]


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of an adaptive quadrature."""

    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def __float__(self):
        return float(np.real(self.value))


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid ``[x_min, x_max]`` with ``points`` nodes."""

    x_min: float
    x_max: float
    points: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise DomainError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise DomainError(f"need x_min < x_max, got {self.x_min} >= {self.x_max}")
        if int(self.points) != self.points or self.points < 2:
            raise DomainError(f"grid needs at least 2 points, got {self.points}")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``"a:b:N"``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"grid must look like a:b:N, got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise DomainError(f"bad grid {text!r}: {exc}") from None

    def values(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.points)


def _as_vector_fn(f, vectorized):
    if vectorized:
        return f
    return lambda x: np.array([f(float(v)) for v in x])


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = f(mid + half * _NODES)
    kron = half * np.dot(_KWEIGHTS, fx)
    gauss = half * np.dot(_GWEIGHTS, fx)
    return kron, abs(kron - gauss)


def integrate_interval(
    f: Callable,
    a: float,
    b: float,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    max_intervals: int = 4000,
    initial_panels: int = 1,
    vectorized: bool = True,
) -> QuadratureResult:
    """Globally adaptive G7/K15 quadrature of ``f`` over the finite ``[a, b]``.

    ``f`` receives 1-D arrays of abscissae unless ``vectorized=False``.  The
    interval with the largest error estimate is bisected until the summed
    estimate drops below ``max(abs_tol, rel_tol * |value|)``.  Complex-valued
    integrands are accepted.
    """
    if not (abs_tol > 0 and rel_tol > 0):
        raise DomainError("tolerances must be positive")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0, True)
    g = _as_vector_fn(f, vectorized)
    edges = np.linspace(a, b, initial_panels + 1)
    heap = []
    total = 0.0
    err = 0.0
    evals = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, e = _gk15(g, lo, hi)
        evals += 15
        total += val
        err += e
        heapq.heappush(heap, (-e, lo, hi, val))
    while err > max(abs_tol, rel_tol * abs(total)):
        if len(heap) >= max_intervals:
            return QuadratureResult(total, err, evals, False)
        neg_e, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # interval exhausted at double resolution
            return QuadratureResult(total, err, evals, False)
        v1, e1 = _gk15(g, lo, mid)
        v2, e2 = _gk15(g, mid, hi)
        evals += 30
        total += v1 + v2 - val
        err += e1 + e2 + neg_e
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
    # recompute to shed accumulated rounding from the running updates
    total = sum(item[3] for item in heap)
    err = sum(-item[0] for item in heap)
    return QuadratureResult(total, err, evals, True)


def integrate_real_line(
    f: Callable,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    vectorized: bool = True,
    **kwargs,
) -> QuadratureResult:
    """Integral of ``f`` over the real line via ``x = tan(theta)``.

    Integrands with Cauchy-type ``1/x^2`` tails become bounded on
    ``(-pi/2, pi/2)``, so no truncation of the range is needed.
    """
    g = _as_vector_fn(f, vectorized)

    def mapped(theta):
        c = np.cos(theta)
        return g(np.tan(theta)) / (c * c)

    kwargs.setdefault("initial_panels", 16)
    half = 0.5 * math.pi
    return integrate_interval(mapped, -half, half, abs_tol, rel_tol, **kwargs)


def integrate_half_line(
    f: Callable,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    vectorized: bool = True,
    tail_power: float = 1.0,
    **kwargs,
) -> QuadratureResult:
    """Integral of ``f`` over ``[0, inf)`` via ``s = (u / (1 - u))^q``.

    ``q = tail_power``.  With ``q = 1`` a ``s^{-2}`` tail maps to a bounded
    integrand; a slower ``s^{-1-a}`` tail needs ``q >= 1/a`` for the same.
    """
    if not tail_power >= 1.0:
        raise DomainError(f"tail_power must be >= 1, got {tail_power}")
    g = _as_vector_fn(f, vectorized)
    q = float(tail_power)

    def mapped(u):
        one_minus = 1.0 - u
        ok = one_minus > 0
        safe = np.where(ok, one_minus, 1.0)
        r = u / safe
        s = r if q == 1.0 else r**q
        jac = (1.0 if q == 1.0 else q * r ** (q - 1.0)) / (safe * safe)
        return np.where(ok, g(s) * jac, 0.0)

    kwargs.setdefault("initial_panels", 8)
    return integrate_interval(mapped, 0.0, 1.0, abs_tol, rel_tol, **kwargs)


def fourier_transform(
    pdf: Callable,
    beta: float,
    abs_tol: float = 1e-9,
    rel_tol: float = 1e-9,
    tail_point: float = 1e6,
) -> complex:
    """``int exp(i beta x) pdf(x) dx`` for a density with Cauchy-type tails.

    The ``1/x^2`` tail is matched by a multiple of the standard Cauchy
    density, whose transform ``exp(-|beta|)`` is added back in closed form;
    the remainder decays fast enough for the tan-mapped quadrature to settle
    despite the oscillation near the endpoints.
    """
    beta = float(beta)
    far = np.array([tail_point, -tail_point])
    weight = math.pi * tail_point**2 * float(np.mean(pdf(far)))

    def remainder(x):
        return np.exp(1j * beta * x) * (pdf(x) - weight / (math.pi * (1.0 + x * x)))

    res = integrate_real_line(remainder, abs_tol, rel_tol, max_intervals=20000)
    return complex(res.value) + weight * math.exp(-abs(beta))


@lru_cache(maxsize=None)
def central_stencil(order: int) -> tuple[tuple[int, Fraction], ...]:
    """Exact weights of the narrowest O(h^2) central stencil for ``d^order/dx^order``.

    Returns ``((offset, weight), ...)``; the derivative is
    ``sum(w * f(x0 + offset * h)) / h**order``.
    """
    if not 1 <= order <= 6:
        raise DomainError(f"finite-difference order must be in [1, 6], got {order}")
    p = (order + 1) // 2
    offsets = list(range(-p, p + 1))
    size = len(offsets)
    # Taylor matching: sum_j w_j j^q / q! = [q == order]
    rows = [
        [Fraction(j) ** q / math.factorial(q) for j in offsets] + [Fraction(int(q == order))]
        for q in range(size)
    ]
    for col in range(size):
        pivot = next(r for r in range(col, size) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(size):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
    return tuple((j, rows[i][-1]) for i, j in enumerate(offsets))


def finite_difference(f: Callable[[float], float], order: int, x0: float, h: float) -> float:
    """Central-difference estimate of the ``order``-th derivative of ``f`` at ``x0``."""
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    stencil = central_stencil(order)
    acc = math.fsum(float(w) * f(x0 + j * h) for j, w in stencil if w != 0)
    return acc / h**order


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def find_local_max(f: Callable[[float], float], bracket, x_tol: float = 1e-9) -> float:
    """Golden-section search for a maximum of ``f`` strictly inside ``bracket``."""
    a, b = float(bracket[0]), float(bracket[1])
    if not a < b:
        raise BracketError(f"empty bracket [{a}, {b}]")
    fa, fb = f(a), f(b)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    lo, hi = a, b
    while hi - lo > x_tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    fx = f(x)
    if x - a <= x_tol or b - x <= x_tol or fx < fa or fx < fb:
        raise BracketError(f"no interior maximum in [{a}, {b}]")
    return x


def _values_of(batch):
    values = getattr(batch, "values", batch)
    arr = np.asarray(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise DomainError("KS statistic needs a non-empty sample")
    return arr


def ks_statistic(batch, cdf: Callable) -> float:
    """One-sample Kolmogorov-Smirnov distance ``sup |F_N - F|``.

    ``batch`` is a :class:`~hypercauchy.sampling.SampleBatch` or any array;
    ``cdf`` must accept arrays.
    """
    x = np.sort(_values_of(batch))
    n = x.size
    fx = np.asarray(cdf(x), dtype=np.float64)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - fx), np.max(fx - (i - 1) / n)))


def ks_two_sample(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov distance between empirical CDFs."""
    xa = np.sort(_values_of(a))
    xb = np.sort(_values_of(b))
    pooled = np.concatenate([xa, xb])
    fa = np.searchsorted(xa, pooled, side="right") / xa.size
    fb = np.searchsorted(xb, pooled, side="right") / xb.size
    return float(np.max(np.abs(fa - fb)))


def ks_critical_value(n: int, alpha: float = 0.01, m: int | None = None) -> float:
    """Asymptotic KS critical value; pass ``m`` for the two-sample version.

    At ``alpha = 0.01`` the one-sample value is ``1.628 / sqrt(n)``.
    """
    c = math.sqrt(-0.5 * math.log(alpha / 2.0))
    if m is None:
        return c / math.sqrt(n)
    return c * math.sqrt((n + m) / (n * m))
