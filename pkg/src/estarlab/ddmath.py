"""Double-double helpers for oscillatory phases 4*pi*sqrt(n*x).

For n*x beyond ~1e12 the phase is ~1e7 radians and plain double evaluation
leaves less than ~1e-9 of absolute phase accuracy after reduction mod 2*pi.
The routines below carry the phase as an unevaluated pair of doubles through
the product, the square root and the reduction, keeping the absolute phase
error below ~1e-12 up to n*x ~ 1e18.  All functions accept numpy arrays.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant

# pi = PI_HI + PI_LO to ~32 digits
PI_HI = 3.141592653589793
PI_LO = 1.2246467991473532e-16


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _two_prod(a, b):
    p = a * b
    ah = _SPLITTER * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLITTER * b
    bh = bh - (bh - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _dd_add(ahi, alo, bhi, blo):
    s, e = _two_sum(ahi, bhi)
    e = e + alo + blo
    return _two_sum(s, e)


def _dd_mul(ahi, alo, bhi, blo):
    p, e = _two_prod(ahi, bhi)
    e = e + ahi * blo + alo * bhi
    return _two_sum(p, e)


def dd_sqrt(hi, lo):
    """Square root of a double-double, one Newton step off the double seed."""
    s = np.sqrt(hi)
    # residual (hi + lo - s*s) evaluated exactly, then corrected by /(2s)
    p, pe = _two_prod(s, s)
    rhi, rlo = _dd_add(hi, lo, -p, -pe)
    corr = (rhi + rlo) / (2.0 * s)
    return _two_sum(s, corr)


def phase_mod_2pi(n, x):
    """4*pi*sqrt(n*x) reduced to [0, 2*pi), carried in double-double."""
    n = np.asarray(n, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    phi, plo = _two_prod(n, x)
    shi, slo = dd_sqrt(phi, plo)
    # multiply by 4*pi in dd
    fp_hi, fp_lo = 4.0 * PI_HI, 4.0 * PI_LO
    mhi, mlo = _dd_mul(shi, slo, fp_hi, fp_lo)
    # reduce mod 2*pi
    tp_hi, tp_lo = 2.0 * PI_HI, 2.0 * PI_LO
    k = np.floor(mhi / tp_hi)
    khi, klo = _dd_mul(k, np.zeros_like(k), tp_hi, tp_lo)
    rhi, rlo = _dd_add(mhi, mlo, -khi, -klo)
    r = rhi + rlo
    # one wrap-correction pass for edge cases
    r = np.where(r < 0.0, r + 2.0 * PI_HI, r)
    r = np.where(r >= 2.0 * PI_HI, r - 2.0 * PI_HI, r)
    return r
