"""Mixture-summation kernels behind the hyper-Cauchy density, CDF and CF.

Every kernel exists twice: a numba version (``*_numba``) that loops over
grid points in parallel, and a chunked numpy version (``*_numpy``).  The
public names (``pdf_bracket``, ``cdf_arctan_sum``, ``cf_sum``) are bound to
one of the two at import time, see :mod:`hypercauchy._accel`.

All kernels work in the scale-free variable ``y = x / t`` and take the
per-component tables ``cos_k = cos(k pi / 2^n)`` and ``sin_k = sin(k pi / 2^n)``
for odd ``k`` in ``[1, 2^(n-1) - 1]``.
"""

import math
import threading

import numpy as np

from ._accel import NUMBA_ENABLED, njit, prange

# Elements of the (points x components) scratch matrix in the numpy path.
_CHUNK_ELEMENTS = 1 << 22


def _bracket_scalar(u, cos_k):
    # (u + 1) * sum_k cos_k / ((u - 1)^2 + 4 u cos_k^2), u = y^2.
    # (u-1)^2 + 4u cos^2 equals u^2 + 1 + 2u cos(2 theta) without the
    # cancellation in 1 + cos(2 theta) near theta = pi/2.
    acc = 0.0
    if u > 1.0:
        inv = 1.0 / u
        base = (u - 1.0) * (1.0 - inv)
        for j in range(cos_k.shape[0]):
            c = cos_k[j]
            acc += c / (base + 4.0 * c * c)
        return (1.0 + inv) * acc
    base = (u - 1.0) * (u - 1.0)
    for j in range(cos_k.shape[0]):
        c = cos_k[j]
        acc += c / (base + 4.0 * u * c * c)
    return (u + 1.0) * acc


def pdf_bracket_numpy(y, cos_k):
    y = np.asarray(y, dtype=np.float64)
    u = (y * y).ravel()
    out = np.empty_like(u)
    big = u > 1.0
    with np.errstate(divide="ignore", over="ignore"):
        inv = np.where(big, 1.0 / np.where(big, u, 1.0), 0.0)
    base = np.where(big, (u - 1.0) * (1.0 - inv), (u - 1.0) ** 2)
    scale = np.where(big, 4.0, 4.0 * u)
    pref = np.where(big, 1.0 + inv, u + 1.0)
    c = np.asarray(cos_k, dtype=np.float64)
    c2 = c * c
    step = max(1, _CHUNK_ELEMENTS // max(1, c.size))
    for lo in range(0, u.size, step):
        sl = slice(lo, lo + step)
        den = base[sl, None] + scale[sl, None] * c2[None, :]
        out[sl] = (c[None, :] / den).sum(axis=1)
    out *= pref
    return out.reshape(y.shape)


def cdf_arctan_sum_numpy(y, cos_k, sin_k):
    y = np.asarray(y, dtype=np.float64)
    flat = y.ravel()
    out = np.empty_like(flat)
    c = np.asarray(cos_k, dtype=np.float64)
    s = np.asarray(sin_k, dtype=np.float64)
    step = max(1, _CHUNK_ELEMENTS // max(1, c.size))
    for lo in range(0, flat.size, step):
        yy = flat[lo:lo + step, None]
        out[lo:lo + step] = (np.arctan((yy + s) / c) + np.arctan((yy - s) / c)).sum(axis=1)
    return out.reshape(y.shape)


def cf_sum_numpy(b, cos_k, sin_k):
    b = np.asarray(b, dtype=np.float64)
    flat = np.abs(b.ravel())
    out = np.empty_like(flat)
    c = np.asarray(cos_k, dtype=np.float64)
    s = np.asarray(sin_k, dtype=np.float64)
    step = max(1, _CHUNK_ELEMENTS // max(1, c.size))
    for lo in range(0, flat.size, step):
        bb = flat[lo:lo + step, None]
        out[lo:lo + step] = (np.exp(-bb * c) * np.cos(bb * s)).sum(axis=1)
    return out.reshape(b.shape)


_bracket_scalar_jit = njit(cache=True, nogil=True)(_bracket_scalar)


@njit(parallel=True, cache=True, nogil=True)
def _pdf_bracket_flat(y, cos_k):
    out = np.empty(y.shape[0])
    for i in prange(y.shape[0]):
        out[i] = _bracket_scalar_jit(y[i] * y[i], cos_k)
    return out


@njit(parallel=True, cache=True, nogil=True)
def _cdf_arctan_sum_flat(y, cos_k, sin_k):
    out = np.empty(y.shape[0])
    for i in prange(y.shape[0]):
        acc = 0.0
        yi = y[i]
        for j in range(cos_k.shape[0]):
            acc += math.atan((yi + sin_k[j]) / cos_k[j]) + math.atan((yi - sin_k[j]) / cos_k[j])
        out[i] = acc
    return out


@njit(parallel=True, cache=True, nogil=True)
def _cf_sum_flat(b, cos_k, sin_k):
    out = np.empty(b.shape[0])
    for i in prange(b.shape[0]):
        bi = abs(b[i])
        acc = 0.0
        for j in range(cos_k.shape[0]):
            acc += math.exp(-bi * cos_k[j]) * math.cos(bi * sin_k[j])
        out[i] = acc
    return out


def _flat(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.float64).ravel())


# The workqueue threading layer aborts if two Python threads enter parallel
# regions at once; each launch already uses the whole pool, so serialise.
_LAUNCH = threading.Lock()


def pdf_bracket_numba(y, cos_k):
    y = np.asarray(y, dtype=np.float64)
    with _LAUNCH:
        out = _pdf_bracket_flat(_flat(y), _flat(cos_k))
    return out.reshape(y.shape)


def cdf_arctan_sum_numba(y, cos_k, sin_k):
    y = np.asarray(y, dtype=np.float64)
    with _LAUNCH:
        out = _cdf_arctan_sum_flat(_flat(y), _flat(cos_k), _flat(sin_k))
    return out.reshape(y.shape)


def cf_sum_numba(b, cos_k, sin_k):
    b = np.asarray(b, dtype=np.float64)
    with _LAUNCH:
        out = _cf_sum_flat(_flat(b), _flat(cos_k), _flat(sin_k))
    return out.reshape(b.shape)


if NUMBA_ENABLED:
    pdf_bracket = pdf_bracket_numba
    cdf_arctan_sum = cdf_arctan_sum_numba
    cf_sum = cf_sum_numba
    BACKEND = "numba"
else:
    pdf_bracket = pdf_bracket_numpy
    cdf_arctan_sum = cdf_arctan_sum_numpy
    cf_sum = cf_sum_numpy
    BACKEND = "numpy"
