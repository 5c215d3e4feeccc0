"""Airy and modified Bessel functions of order 1/3, one-sided stable densities.

Region map for :func:`airy_ai`:

* ``-7 <= w <= 4``: Maclaurin series with precomputed coefficients;
* ``w > 4``: ``Ai(w) = sqrt(w/3) K_{1/3}(zeta) / pi`` with ``zeta = 2/3 w^{3/2}``;
* ``w < -7``: oscillatory asymptotic expansion.

The two representations quoted for the third-order kernel (Maclaurin series
and the ``I_{-1/3} - I_{1/3}`` difference) cancel catastrophically for large
``w``; :func:`airy_ai_series` and :func:`airy_ai_bessel_i` therefore run in
mpmath arithmetic with enough digits to absorb the cancellation.  They are
cross-checks, not the production path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .errors import DomainError, TruncationError

_THIRD = 1.0 / 3.0
_SQRT3 = math.sqrt(3.0)
_AIRY_SERIES_MAX = 4.0
_AIRY_SERIES_MIN = -7.0
_K_SERIES_MAX = 2.0
_K_ASYMPTOTIC_MIN = 40.0
_I_ASYMPTOTIC_MIN = 30.0


@dataclass(frozen=True)
class SeriesControl:
    """Truncation control for the power series in this module.

    Summation stops once a term is below ``abs_tol`` *and* below
    ``rel_tol * |partial sum|``; more than ``max_terms`` terms is an error.
    """

    max_terms: int = 500
    abs_tol: float = 1e-16
    rel_tol: float = 1e-15

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms}")
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and positive, got {v}")

    def done(self, term_size: float, partial: float) -> bool:
        return term_size < self.abs_tol and term_size < self.rel_tol * abs(partial)


@dataclass(frozen=True)
class StableParams:
    """Stable law with index ``alpha`` in (0, 1), skewness angle ``gamma``, time ``t``."""

    alpha: float
    gamma: float
    t: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not (math.isfinite(self.t) and self.t > 0):
            raise DomainError(f"t must be positive, got {self.t}")
        if not self.sigma > 0:
            raise DomainError(f"cos(pi gamma / 2) must be positive, got gamma={self.gamma}")
        if abs(self.theta) > 1.0 + 1e-12:
            raise DomainError(f"skewness theta={self.theta} outside [-1, 1]")

    @property
    def sigma(self) -> float:
        return math.cos(0.5 * math.pi * self.gamma)

    @property
    def theta(self) -> float:
        return math.tan(0.5 * math.pi * self.gamma) / math.tan(0.5 * math.pi * self.alpha)


def _scalar_or_array(fn, x):
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        return fn(float(arr))
    out = np.empty(arr.shape)
    flat = arr.ravel()
    out_flat = out.ravel()
    for i, v in enumerate(flat):
        out_flat[i] = fn(float(v))
    return out


def _check_finite(name, x):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr


def _check_positive(name, x):
    arr = _check_finite(name, x)
    if np.any(arr <= 0):
        raise DomainError(f"{name} must be positive")
    return arr


# --- Airy Maclaurin coefficients -------------------------------------------

def _airy_coefficients(terms=200):
    # Ai(w) = 3^{-2/3}/pi sum_k (3^{1/3} w)^k / k! sin(2 pi (k+1)/3) Gamma((k+1)/3)
    sines = (_SQRT3 / 2.0, -_SQRT3 / 2.0, 0.0)
    pref = 3.0 ** (-2.0 / 3.0) / math.pi
    coef = np.zeros(terms)
    for k in range(terms):
        s = sines[k % 3]
        if s == 0.0:
            continue
        log_mag = (k / 3.0) * math.log(3.0) - math.lgamma(k + 1) + math.lgamma((k + 1) / 3.0)
        coef[k] = pref * s * math.exp(log_mag)
    return coef


_AIRY_COEF = _airy_coefficients()
_AIRY_COEF.setflags(write=False)


def _airy_series_double(w):
    acc = np.zeros_like(w)
    for c in _AIRY_COEF[::-1]:
        acc = acc * w + c
    return acc


def _airy_negative_asymptotic(w):
    # DLMF 9.7.9 with u_k = Gamma(3k + 1/2) / (54^k k! Gamma(k + 1/2))
    z = -w
    zeta = (2.0 / 3.0) * z**1.5
    even = 0.0
    odd = 0.0
    prev = math.inf
    k = 0
    while k < 60:
        log_u = math.lgamma(3 * k + 0.5) - k * math.log(54.0) - math.lgamma(k + 1) - math.lgamma(k + 0.5)
        term = math.exp(log_u - k * math.log(zeta))
        if term > prev:
            break
        sign = 1.0 if (k // 2) % 2 == 0 else -1.0
        if k % 2 == 0:
            even += sign * term
        else:
            odd += sign * term
        if term < 1e-17:
            break
        prev = term
        k += 1
    phase = zeta - 0.25 * math.pi
    return (math.cos(phase) * even + math.sin(phase) * odd) / (math.sqrt(math.pi) * z**0.25)


def airy_ai(w):
    """Airy function ``Ai(w)`` for real ``w`` (scalar or array).

    Relative accuracy is about 1e-10 or better on ``[-5, 10]`` away from the
    zeros on the negative axis; absolute accuracy stays near 1e-11 below -5.
    """
    arr = _check_finite("w", w)
    flat = np.atleast_1d(arr).astype(np.float64).ravel()
    out = np.empty_like(flat)
    mid = (flat >= _AIRY_SERIES_MIN) & (flat <= _AIRY_SERIES_MAX)
    out[mid] = _airy_series_double(flat[mid])
    for i in np.flatnonzero(flat > _AIRY_SERIES_MAX):
        v = flat[i]
        zeta = (2.0 / 3.0) * v**1.5
        out[i] = math.sqrt(v / 3.0) * _k_third_scalar(zeta) / math.pi
    for i in np.flatnonzero(flat < _AIRY_SERIES_MIN):
        out[i] = _airy_negative_asymptotic(flat[i])
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


# --- modified Bessel functions of order +-1/3 ---------------------------------

def _check_third(nu):
    if not (abs(abs(nu) - _THIRD) < 1e-12):
        raise DomainError(f"only nu = +-1/3 is supported, got {nu}")
    return math.copysign(_THIRD, nu)


def _bessel_i_series(nu, x):
    half = 0.5 * x
    q = half * half
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    acc = term
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + nu))
        acc += term
        if abs(term) < 1e-17 * abs(acc) or k > 400:
            return acc


def _asymptotic_coeffs(nu, x, sign):
    # sum_k sign^k a_k(nu) / x^k, a_k = prod_{j<=k} (4nu^2 - (2j-1)^2) / (k! 8^k)
    mu = 4.0 * nu * nu
    term = 1.0
    acc = 1.0
    prev = math.inf
    for k in range(1, 60):
        term *= sign * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(term) > prev:
            break
        acc += term
        prev = abs(term)
        if prev < 1e-17 * abs(acc):
            break
    return acc


def _bessel_i_scalar(nu, x):
    if x < _I_ASYMPTOTIC_MIN:
        return _bessel_i_series(nu, x)
    return math.exp(x) / math.sqrt(2.0 * math.pi * x) * _asymptotic_coeffs(nu, x, -1.0)


def bessel_i(nu, x):
    """Modified Bessel function ``I_nu(x)`` for ``nu = +-1/3`` and ``x > 0``.

    Ascending series below ``x = 30``; the exponential asymptotic expansion
    above, where it is accurate to rounding.
    """
    nu = _check_third(nu)
    _check_positive("x", x)
    return _scalar_or_array(lambda v: _bessel_i_scalar(nu, v), x)


def _k_steed(nu, x):
    # Temme/Steed continued fraction CF2 for K_nu, |nu| <= 1/2, x >= 2.
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25 - nu * nu
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 100000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s


def _k_third_scalar(x):
    if x <= _K_SERIES_MAX:
        diff = _bessel_i_series(-_THIRD, x) - _bessel_i_series(_THIRD, x)
        return math.pi * diff / (2.0 * math.sin(math.pi * _THIRD))
    if x < _K_ASYMPTOTIC_MIN:
        return _k_steed(_THIRD, x)
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * _asymptotic_coeffs(_THIRD, x, 1.0)


def bessel_k_third(x):
    """Macdonald function ``K_{1/3}(x)`` for ``x > 0``.

    Uses ``pi (I_{-1/3} - I_{1/3}) / (2 sin(pi/3))`` up to ``x = 2``, Steed's
    continued fraction up to 40 and the exponential asymptotic beyond.
    """
    _check_positive("x", x)
    return _scalar_or_array(_k_third_scalar, x)


def bessel_k_third_via_i(x):
    """``K_{1/3}`` from the I-combination alone (loses digits as ``e^{2x}``)."""
    _check_positive("x", x)

    def one(v):
        diff = _bessel_i_scalar(-_THIRD, v) - _bessel_i_scalar(_THIRD, v)
        return math.pi * diff / (2.0 * math.sin(math.pi * _THIRD))

    return _scalar_or_array(one, x)


# --- extended-precision representation paths ----------------------------------

def _working_digits(w):
    zeta = (2.0 / 3.0) * abs(w) ** 1.5
    return 20 + int(math.ceil(2.0 * zeta / math.log(10.0)))


def airy_ai_series(w: float, control: SeriesControl | None = None, dps: int | None = None) -> float:
    """``Ai(w)`` from its Maclaurin series, summed in extended precision.

    The working precision grows with ``|w|`` so the alternating-sign blocks
    cancel exactly enough to leave ~16 good digits.
    """
    _check_finite("w", w)
    control = control or SeriesControl()
    with mpmath.workdps(dps or _working_digits(w)):
        x = mpmath.cbrt(3) * mpmath.mpf(w)
        pref = mpmath.power(3, mpmath.mpf(-2) / 3) / mpmath.pi
        acc = mpmath.mpf(0)
        power = mpmath.mpf(1)
        fact = mpmath.mpf(1)
        for k in range(control.max_terms):
            if k:
                power *= x
                fact *= k
            s = mpmath.sin(2 * mpmath.pi * (k + 1) / 3)
            mag = power / fact * mpmath.gamma(mpmath.mpf(k + 1) / 3)
            acc += mag * s
            if k > 2 and control.done(float(abs(mag * pref)), float(acc * pref)):
                return float(acc * pref)
        raise TruncationError(
            f"Airy series did not converge in {control.max_terms} terms at w={w}",
            float(acc * pref), control.max_terms)


def airy_ai_bessel_i(w: float, dps: int | None = None) -> float:
    """``Ai(w) = sqrt(w)/3 [I_{-1/3}(zeta) - I_{1/3}(zeta)]`` for ``w > 0``.

    Each ``I`` is summed from its ascending series in extended precision.
    """
    if not w > 0:
        raise DomainError(f"Bessel-I form of Ai needs w > 0, got {w}")
    with mpmath.workdps(dps or _working_digits(w)):
        zeta = mpmath.mpf(2) / 3 * mpmath.mpf(w) ** mpmath.mpf(1.5)
        eps = mpmath.mpf(10) ** (-mpmath.mp.dps)

        def series(nu):
            half = zeta / 2
            term = half**nu / mpmath.gamma(nu + 1)
            acc = term
            k = 0
            while abs(term) > eps * abs(acc):
                k += 1
                term *= half * half / (k * (k + nu))
                acc += term
            return acc

        third = mpmath.mpf(1) / 3
        value = mpmath.sqrt(w) / 3 * (series(-third) - series(third))
        return float(value)


# --- stable densities ----------------------------------------------------------

def _mp_exact(v):
    # 1/3 stored as a double is recovered as the rational it rounds from
    frac = Fraction(v).limit_denominator(10**6)
    if abs(float(frac) - v) <= 4 * math.ulp(v):
        return mpmath.mpf(frac.numerator) / frac.denominator
    return mpmath.mpf(v)


def _stable_series_mp(z, alpha, gamma, control, digits):
    with mpmath.workdps(digits):
        a = _mp_exact(alpha)
        angle = mpmath.pi / 2 * (_mp_exact(gamma) + a)
        z = mpmath.mpf(z)
        acc = mpmath.mpf(0)
        for r in range(control.max_terms):
            mag = mpmath.gamma(a * (r + 1)) / mpmath.factorial(r) * z ** (-a * (r + 1) - 1)
            acc += (-1) ** r * mag * mpmath.sin(angle * (r + 1))
            # relative test only: below the peak the sum itself is tiny
            if r > 2 and abs(mag) < control.rel_tol * abs(acc):
                return float(acc)
    raise TruncationError(f"stable series did not converge in {control.max_terms} terms",
                          float(acc), control.max_terms)


def stable_density_series(x, p: StableParams, control: SeriesControl | None = None):
    """One-sided stable density from its power series in ``x^{-alpha}``.

    Evaluates ``p_alpha(x; gamma, t) = t^{-1/alpha} p_alpha(x t^{-1/alpha}; gamma, 1)``
    with the unit-time series truncated under ``control``.  The stopping
    test uses term magnitudes without the sine factor, which vanishes on a
    whole residue class of indices when ``gamma = alpha = 1/3``.  When the
    largest term exceeds the sum by more than ``1e6`` (small ``x``) the
    series is re-summed in extended precision.
    """
    control = control or SeriesControl()
    _check_positive("x", x)
    a = p.alpha
    scale = p.t ** (1.0 / a)
    angle = 0.5 * math.pi * (p.gamma + a)

    def one(v):
        z = v / scale
        log_z = math.log(z)
        acc = 0.0
        peak = -math.inf
        for r in range(control.max_terms):
            log_mag = math.lgamma(a * (r + 1)) - math.lgamma(r + 1) - (a * (r + 1) + 1.0) * log_z
            peak = max(peak, log_mag)
            if log_mag > 700.0:
                break
            mag = math.exp(log_mag)
            sign = -1.0 if r % 2 else 1.0
            acc += sign * mag * math.sin(angle * (r + 1))
            if r > 2 and control.done(mag, acc):
                if acc != 0 and peak - math.log(abs(acc)) < math.log(1e6):
                    return a / math.pi * acc / scale
                break
        else:
            raise TruncationError(
                f"stable series did not converge in {control.max_terms} terms at x={v}",
                a / math.pi * acc / scale, control.max_terms)
        # the loop may stop early at exp(700); find the true largest term
        for r in range(control.max_terms):
            log_mag = math.lgamma(a * (r + 1)) - math.lgamma(r + 1) - (a * (r + 1) + 1.0) * log_z
            if log_mag < peak - 40.0:
                break
            peak = max(peak, log_mag)
        # the sum may lie far below the peak: add digits until two passes agree
        digits = 25 + int(peak / math.log(10.0))
        prev = _stable_series_mp(z, a, p.gamma, control, digits)
        for _ in range(8):
            digits *= 2
            cur = _stable_series_mp(z, a, p.gamma, control, digits)
            if abs(cur - prev) <= 1e-12 * abs(cur):
                return a / math.pi * cur / scale
            prev = cur
        raise TruncationError(f"stable series lost all precision at x={v}", a / math.pi * cur / scale, digits)

    return _scalar_or_array(one, x)


def stable13_subordinator_pdf(s, t):
    """Density of the positively skewed 1/3-stable subordinator at time ``t``.

    ``(t/s) (3s)^{-1/3} Ai(t / (3s)^{1/3})``.
    """
    s_arr = _check_positive("s", s)
    _check_positive("t", t)
    cube = np.cbrt(3.0 * s_arr)
    out = (t / s_arr) / cube * airy_ai(t / cube)
    return float(out) if np.ndim(out) == 0 else out


def stable13_subordinator_cdf(s, t):
    """``P(S_{1/3}(t) <= s) = 3 int_{w(s)}^inf Ai``, ``w(s) = t / (3s)^{1/3}``.

    Computed by piecewise 15-point Gauss-Kronrod panels on a mesh that
    contains every requested ``w``; intended for KS tests on large samples.
    """
    from .numerics import _KWEIGHTS, _NODES

    s_arr = _check_positive("s", s)
    _check_positive("t", t)
    w = t / np.cbrt(3.0 * np.atleast_1d(s_arr).ravel())
    top = 40.0
    mesh = np.union1d(np.arange(0.0, top + 0.125, 0.125), np.minimum(w, top))
    lo, hi = mesh[:-1], mesh[1:]
    half = 0.5 * (hi - lo)
    nodes = (0.5 * (lo + hi))[:, None] + half[:, None] * _NODES[None, :]
    panels = half * (airy_ai(nodes.ravel()).reshape(nodes.shape) @ _KWEIGHTS)
    # tail[i] = int_{mesh[i]}^{top} Ai
    tail = np.concatenate([np.cumsum(panels[::-1])[::-1], [0.0]])
    idx = np.searchsorted(mesh, np.minimum(w, top))
    out = np.clip(3.0 * tail[idx], 0.0, 1.0)
    if np.ndim(s_arr) == 0:
        return float(out[0])
    return out.reshape(np.shape(s_arr))


def third_order_kernel(x, t):
    """Signed fundamental solution ``(3t)^{-1/3} Ai(x / (3t)^{1/3})`` of ``u_t = -u_xxx``."""
    x_arr = _check_finite("x", x)
    _check_positive("t", t)
    cube = np.cbrt(3.0 * t)
    out = airy_ai(x_arr / cube) / cube
    return float(out) if np.ndim(out) == 0 else out
