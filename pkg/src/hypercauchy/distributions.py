"""Densities, CDFs and characteristic functions of the Cauchy-type laws.

The hyper-Cauchy law of order ``2^n`` is evaluated through its component
sum

    p(x, t) = t (x^2 + t^2) / (2^{n-2} pi) * sum_k cos(k pi/2^n) / (x^4 + t^4 + 2 x^2 t^2 cos(k pi/2^{n-1}))

over odd ``k`` in ``[1, 2^{n-1} - 1]``.  The complex-time superposition and
the product-over-``j`` form are kept as independent cross-checks and are
limited to ``n <= 6``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import BracketError, ConsistencyError, DomainError, NumericError, RangeError
from .numerics import find_local_max

_SQRT3 = math.sqrt(3.0)
_CROSS_CHECK_MAX_N = 6
_PRODUCT_MAX_ABS = 50.0


def _positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive and finite, got {value}")


def _finite(x):
    arr = np.asarray(x, dtype=np.float64)
    if np.any(np.isnan(arr)):
        raise DomainError("x must not be NaN")
    return arr


def _out(arr):
    if np.ndim(arr) != 0:
        return arr
    return complex(arr) if np.iscomplexobj(arr) else float(arr)


@dataclass(frozen=True)
class HyperCauchyParams:
    """Family index ``n >= 2`` (order ``2^n``) and time ``t > 0``."""

    n: int
    t: float = 1.0

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        _positive("t", self.t)

    @property
    def order(self) -> int:
        return 2**self.n

    @property
    def n_components(self) -> int:
        return 2 ** (self.n - 2)

    def components(self) -> tuple["ComponentSpec", ...]:
        return tuple(ComponentSpec.build(self.n, k, self.t) for k in odd_indices(self.n))


@dataclass(frozen=True)
class ComponentSpec:
    """One odd-``k`` component ``h_k`` of the hyper-Cauchy mixture.

    ``h_k`` is the equal-weight mixture of Cauchy laws located at
    ``-cauchy_location`` and ``+cauchy_location`` with scale ``cauchy_scale``.
    """

    n: int
    k: int
    t: float
    angle: float = field(init=False)
    weight: float = field(init=False)
    cauchy_location: float = field(init=False)
    cauchy_scale: float = field(init=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n}")
        limit = 2 ** (self.n - 1) - 1
        if int(self.k) != self.k or self.k % 2 == 0 or not 1 <= self.k <= limit:
            raise DomainError(f"k must be odd in [1, {limit}], got {self.k}")
        _positive("t", self.t)
        angle = self.k * math.pi / 2**self.n
        object.__setattr__(self, "angle", angle)
        object.__setattr__(self, "weight", 2.0 ** -(self.n - 2))
        object.__setattr__(self, "cauchy_location", self.t * math.sin(angle))
        object.__setattr__(self, "cauchy_scale", self.t * math.cos(angle))

    @classmethod
    def build(cls, n: int, k: int, t: float = 1.0) -> "ComponentSpec":
        return cls(n, k, t)

    @property
    def mode_offset(self) -> Optional[float]:
        """Positive mode of ``h_k`` when ``sin(angle) > 1/2``, else ``None``."""
        s = math.sin(self.angle)
        if s <= 0.5:
            return None
        return self.t * math.sqrt(2.0 * s - 1.0)


@dataclass(frozen=True)
class AsymCauchyParams:
    """Skewed Cauchy law of the odd-order / second-order equations.

    Build with :meth:`from_k` (order ``2k + 1`` composition law) or
    :meth:`from_m` (generic ``m``).  ``location`` is the actual centre of the
    density, so the law is ``Cauchy(location, scale)``.
    """

    m: int
    t: float
    location: float
    scale: float
    k: Optional[int] = None

    def __post_init__(self):
        _positive("t", self.t)
        _positive("scale", self.scale)
        if not abs(self.location) < self.t:
            raise DomainError(f"|location| must be below t, got {self.location}")

    @classmethod
    def from_k(cls, k: int, t: float = 1.0) -> "AsymCauchyParams":
        if isinstance(k, bool) or int(k) != k or k < 1:
            raise DomainError(f"k must be a positive integer, got {k}")
        _positive("t", t)
        m = 2 * int(k) + 1
        half = math.pi / (2 * m)
        # density has (x + (-1)^{k+1} t sin)^2, i.e. centre (-1)^k t sin
        loc = (-1) ** k * t * math.sin(half)
        return cls(m, t, loc, t * math.cos(half), int(k))

    @classmethod
    def from_m(cls, m: int, t: float = 1.0) -> "AsymCauchyParams":
        if isinstance(m, bool) or int(m) != m or m < 2:
            raise DomainError(f"m must be an integer >= 2, got {m}")
        _positive("t", t)
        half = math.pi / (2 * int(m))
        return cls(int(m), t, -t * math.sin(half), t * math.cos(half))

    @property
    def positive_mass(self) -> float:
        return 0.5 + math.atan(self.location / self.scale) / math.pi


@lru_cache(maxsize=64)
def odd_indices(n: int) -> np.ndarray:
    out = np.arange(1, 2 ** (n - 1), 2, dtype=np.int64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=64)
def component_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Read-only ``(cos(k pi / 2^n), sin(k pi / 2^n))`` over odd ``k``."""
    angle = odd_indices(n) * (math.pi / 2.0**n)
    c, s = np.cos(angle), np.sin(angle)
    c.setflags(write=False)
    s.setflags(write=False)
    return c, s


# --- classical Cauchy ----------------------------------------------------------

def cauchy_pdf(x, t=1.0, location=0.0):
    """``t / (pi ((x - location)^2 + t^2))``."""
    _positive("t", t)
    z = (_finite(x) - location) / t
    return _out(1.0 / (math.pi * t * (1.0 + z * z)))


def cauchy_cdf(x, t=1.0, location=0.0):
    _positive("t", t)
    z = (_finite(x) - location) / t
    return _out(0.5 + np.arctan(z) / math.pi)


def cauchy_cf(beta, t=1.0, location=0.0):
    _positive("t", t)
    b = np.asarray(beta, dtype=np.float64)
    return _out(np.exp(1j * b * location - t * np.abs(b)))


# --- hyper-Cauchy ------------------------------------------------------------------

def hyper_cauchy_pdf(x, p: HyperCauchyParams):
    """Hyper-Cauchy density of order ``2^n`` (component-sum form).

    Works for any ``n`` the tables fit in memory for; the sum over
    ``2^{n-2}`` components runs in the compiled kernel.
    """
    x = _finite(x)
    cos_k, _ = component_tables(p.n)
    bracket = _kernels.pdf_bracket(x / p.t, cos_k)
    return _out(bracket / (p.t * math.pi * 2.0 ** (p.n - 2)))


def hyper_cauchy_pdf_complex(x, p: HyperCauchyParams):
    """Density as a superposition of Cauchy laws at complex times ``t e^{i pi k/2^n}``.

    Raises :class:`ConsistencyError` if the imaginary part of the sum does
    not cancel to rounding.
    """
    if p.n > _CROSS_CHECK_MAX_N:
        raise RangeError(f"complex form is limited to n <= {_CROSS_CHECK_MAX_N}")
    x = _finite(x)
    top = 2 ** (p.n - 1) - 1
    ks = np.arange(-top, top + 1, 2)
    tau = p.t * np.exp(1j * math.pi * ks / 2**p.n)
    xx = np.asarray(x, dtype=np.complex128)[..., None]
    total = (tau / (xx * xx + tau * tau)).sum(axis=-1) / (math.pi * 2 ** (p.n - 1))
    re, im = total.real, total.imag
    if np.any(np.abs(im) > 1e-9 * np.abs(re)):
        raise ConsistencyError(f"imaginary residue {np.max(np.abs(im))} does not vanish")
    return _out(re)


def _product_guard(x, p):
    if p.n > _CROSS_CHECK_MAX_N or p.t > _PRODUCT_MAX_ABS or np.any(np.abs(x) > _PRODUCT_MAX_ABS):
        raise RangeError(
            f"product form needs n <= {_CROSS_CHECK_MAX_N} and |x|, t <= {_PRODUCT_MAX_ABS}")


def hyper_cauchy_pdf_product(x, p: HyperCauchyParams):
    """Density via ``cos(k pi/2^n) prod_{j != k} (x^4 + t^4 + 2x^2t^2 cos(j pi/2^{n-1}))``.

    The product for ``n = 2`` is empty and equals one.
    """
    x = _finite(x)
    _product_guard(x, p)
    t = p.t
    ks = odd_indices(p.n)
    x2 = np.asarray(x)[..., None] ** 2
    quartic = x2 * x2 + t**4 + 2.0 * x2 * t * t * np.cos(ks * math.pi / 2 ** (p.n - 1))
    acc = np.zeros(np.shape(x))
    for i, k in enumerate(ks):
        others = np.prod(np.delete(quartic, i, axis=-1), axis=-1)
        acc = acc + math.cos(k * math.pi / 2**p.n) * others
    xs = np.asarray(x)
    num = t * (xs * xs + t * t) * acc
    den = math.pi * 2.0 ** (p.n - 2) * (xs ** (2**p.n) + t ** (2**p.n))
    return _out(num / den)


def hyper_cauchy_cf(beta, p: HyperCauchyParams):
    """Characteristic function, normalised so that ``CF(0) = 1``.

    ``2^{-(n-2)} sum_k exp(-t|beta| cos(k pi/2^n)) cos(t beta sin(k pi/2^n))``.
    """
    b = np.asarray(beta, dtype=np.float64)
    cos_k, sin_k = component_tables(p.n)
    return _out(_kernels.cf_sum(p.t * b, cos_k, sin_k) / p.n_components)


def hyper_cauchy_cdf(x, p: HyperCauchyParams):
    """CDF from the two-Cauchy decomposition of every component (closed form)."""
    x = _finite(x)
    cos_k, sin_k = component_tables(p.n)
    arctans = _kernels.cdf_arctan_sum(x / p.t, cos_k, sin_k)
    return _out(np.clip(0.5 + arctans / (2.0 * math.pi * p.n_components), 0.0, 1.0))


# --- components, folding, disturbance --------------------------------------------

def component_pdf(w, c: ComponentSpec):
    """``h_k(w, t) = t (w^2+t^2) cos(theta) / (pi (w^4 + t^4 + 2 w^2 t^2 cos(2 theta)))``."""
    w = _finite(w)
    t = c.t
    y2 = (np.asarray(w) / t) ** 2
    cos_a = math.cos(c.angle)
    den = (y2 - 1.0) ** 2 + 4.0 * y2 * cos_a * cos_a
    return _out((y2 + 1.0) * cos_a / (math.pi * t * den))


def component_cdf(w, c: ComponentSpec):
    w = _finite(w)
    return _out(0.5 * (cauchy_cdf(w, c.cauchy_scale, -c.cauchy_location)
                       + cauchy_cdf(w, c.cauchy_scale, c.cauchy_location)))


def folded_pdf(w, c: ComponentSpec):
    """Density of ``|C(t cos theta) - t sin theta|``; equals ``2 h_k`` on ``w >= 0``."""
    w = _finite(w)
    if np.any(w < 0):
        raise DomainError("folded density is supported on w >= 0")
    return _out(2.0 * np.asarray(component_pdf(w, c)))


def folded_cdf(w, c: ComponentSpec):
    w = _finite(w)
    if np.any(w < 0):
        raise DomainError("folded law is supported on w >= 0")
    return _out(2.0 * np.asarray(component_cdf(w, c)) - 1.0)


def disturbance_g(x, t, k, n):
    """``(x^4 + t^4 + 2x^2t^2) / (x^4 + t^4 + 2x^2t^2 cos(k pi/2^{n-1}))``."""
    spec = ComponentSpec(n, k, t)
    y2 = (_finite(x) / t) ** 2
    cos_a = math.cos(spec.angle)
    return _out((y2 + 1.0) ** 2 / ((y2 - 1.0) ** 2 + 4.0 * y2 * cos_a * cos_a))


# --- skewed Cauchy laws ------------------------------------------------------------

def asym_cauchy_pdf(x, p: AsymCauchyParams):
    return cauchy_pdf(x, p.scale, p.location)


def asym_cauchy_cdf(x, p: AsymCauchyParams):
    return cauchy_cdf(x, p.scale, p.location)


def asym_cauchy_cf(beta, p: AsymCauchyParams):
    return cauchy_cf(beta, p.scale, p.location)


def third_order_pdf(x, t=1.0):
    """``(sqrt(3) / 2 pi) t / (x^2 + x t + t^2)``; no removable singularity at ``x = t``."""
    _positive("t", t)
    x = _finite(x)
    return _out(_SQRT3 * t / (2.0 * math.pi * (x * x + x * t + t * t)))


def third_order_pdf_rational(x, t=1.0):
    """The ``(x - t)/(x^3 - t^3)`` form; undefined at ``x = t``."""
    _positive("t", t)
    x = _finite(x)
    return _out(_SQRT3 * t / (2.0 * math.pi) * (x - t) / (x**3 - t**3))


def third_order_params(t=1.0) -> AsymCauchyParams:
    return AsymCauchyParams.from_k(1, t)


def third_order_cf(beta, t=1.0):
    """``exp(-(sqrt(3)/2) t |beta| - i t beta / 2)``."""
    _positive("t", t)
    b = np.asarray(beta, dtype=np.float64)
    return _out(np.exp(-0.5 * _SQRT3 * t * np.abs(b) - 0.5j * t * b))


def p6_pdf(x, t=1.0):
    """Sixth-order law built from two complex-time third-order laws."""
    _positive("t", t)
    x = _finite(x)
    c6 = _SQRT3 / 2.0
    num = (x * x + t * t) * c6 + x * t
    den = (x * x + t * t + x * t * c6) ** 2 - 0.75 * x * x * t * t
    return _out(_SQRT3 * t * num / (2.0 * math.pi * den))


def p6_cf(beta, t=1.0):
    """Average of the transforms of the two complex-time third-order laws."""
    _positive("t", t)
    b = np.asarray(beta, dtype=np.float64)
    rot = np.exp(1j * math.pi / 6.0 * np.sign(b))
    total = 0.0
    for sgn in (1.0, -1.0):
        tau = t * cmath.exp(1j * sgn * math.pi / 6.0)
        total = total + np.exp(-tau * np.abs(b) * rot)
    return _out(0.5 * total)


# --- modes ---------------------------------------------------------------------------

def _grid_maxima(f, lo, hi, points):
    xs = np.linspace(lo, hi, points)
    ys = np.asarray(f(xs))
    inner = np.flatnonzero((ys[1:-1] > ys[:-2]) & (ys[1:-1] >= ys[2:])) + 1
    return xs, ys, inner


def find_modes(p: HyperCauchyParams, x_tol: float = 1e-9, points: int = 4001) -> list[float]:
    """Local maxima of the hyper-Cauchy density on ``[-10t, 10t]``.

    Scans ``[0, 10t]`` and polishes each candidate by golden-section search;
    the symmetric partner is added by reflection.  A maximum at the origin
    is reported once.
    """
    f = lambda x: hyper_cauchy_pdf(x, p)
    xs, ys, inner = _grid_maxima(f, 0.0, 10.0 * p.t, points)
    modes = []
    if ys[1] < ys[0]:
        modes.append(0.0)
    for i in inner:
        try:
            x = find_local_max(lambda v: float(f(v)), (xs[i - 1], xs[i + 1]), x_tol)
        except BracketError as exc:
            raise NumericError(f"mode refinement failed near x={xs[i]}") from exc
        modes.extend([-x, x])
    return sorted(modes)


def find_maxima(f: Callable, lo: float, hi: float, x_tol: float = 1e-9, points: int = 4001) -> list[float]:
    """All interior local maxima of a vectorised ``f`` on ``[lo, hi]``."""
    xs, _, inner = _grid_maxima(f, lo, hi, points)
    return [find_local_max(lambda v: float(f(v)), (xs[i - 1], xs[i + 1]), x_tol) for i in inner]


# --- law registry (used by verification and the CLI) ---------------------------------

@dataclass(frozen=True)
class Law:
    """A named density with optional CDF and characteristic function."""

    tag: str
    params: dict
    pdf: Callable
    cdf: Optional[Callable] = None
    cf: Optional[Callable] = None
    support: tuple = (-math.inf, math.inf)


def make_law(name: str, **kw) -> Law:
    """Registry lookup: ``cauchy``, ``hyper``, ``asym``, ``asym_m``, ``third``, ``p6``, ``component``, ``folded``, ``gk``."""
    t = float(kw.get("t", 1.0))
    if name == "cauchy":
        return Law("cauchy", {"t": t}, lambda x: cauchy_pdf(x, t),
                   lambda x: cauchy_cdf(x, t), lambda b: cauchy_cf(b, t))
    if name == "hyper":
        p = HyperCauchyParams(int(kw["n"]), t)
        return Law("hyper", {"n": p.n, "t": t}, lambda x: hyper_cauchy_pdf(x, p),
                   lambda x: hyper_cauchy_cdf(x, p), lambda b: hyper_cauchy_cf(b, p))
    if name == "asym":
        p = AsymCauchyParams.from_k(int(kw["k"]), t)
        return Law("asym", {"k": p.k, "t": t}, lambda x: asym_cauchy_pdf(x, p),
                   lambda x: asym_cauchy_cdf(x, p), lambda b: asym_cauchy_cf(b, p))
    if name == "asym_m":
        p = AsymCauchyParams.from_m(int(kw["m"]), t)
        return Law("asym_m", {"m": p.m, "t": t}, lambda x: asym_cauchy_pdf(x, p),
                   lambda x: asym_cauchy_cdf(x, p), lambda b: asym_cauchy_cf(b, p))
    if name == "third":
        return Law("third", {"t": t}, lambda x: third_order_pdf(x, t),
                   lambda x: asym_cauchy_cdf(x, third_order_params(t)), lambda b: third_order_cf(b, t))
    if name == "p6":
        return Law("p6", {"t": t}, lambda x: p6_pdf(x, t), None, lambda b: p6_cf(b, t))
    if name == "component":
        c = ComponentSpec(int(kw["n"]), int(kw["k"]), t)
        return Law("component", {"n": c.n, "k": c.k, "t": t}, lambda x: component_pdf(x, c),
                   lambda x: component_cdf(x, c))
    if name == "folded":
        c = ComponentSpec(int(kw["n"]), int(kw["k"]), t)
        return Law("folded", {"n": c.n, "k": c.k, "t": t}, lambda x: folded_pdf(x, c),
                   lambda x: folded_cdf(x, c), support=(0.0, math.inf))
    if name == "gk":
        n, k = int(kw["n"]), int(kw["k"])
        ComponentSpec(n, k, t)
        return Law("gk", {"n": n, "k": k, "t": t}, lambda x: disturbance_g(x, t, k, n))
    raise DomainError(f"unknown law {name!r}")
