"""Double-double Horner kernels.

Coefficients arrive split as ``hi + lo`` (the exact rational rounded twice),
and every Horner step is carried out with error-free transformations, so the
result is accurate to roughly ``eps + eps**2 * cond`` instead of
``eps * cond``. That matters here: the optimal polynomials have coefficients
of wildly different magnitudes and are evaluated exactly where they
oscillate between -1 and 1.
"""

import numpy as np
from numba import njit

_SPLITTER = 134217729.0  # 2**27 + 1


@njit(cache=True, inline="always")
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(cache=True, inline="always")
def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


@njit(cache=True, inline="always")
def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


@njit(cache=True, inline="always")
def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit(cache=True, inline="always")
def _dd_mul_d(xh, xl, y):
    p, e = _two_prod(xh, y)
    e += xl * y
    return _fast_two_sum(p, e)


@njit(cache=True, inline="always")
def _dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    t, f = _two_sum(xl, yl)
    e += t
    s, e = _fast_two_sum(s, e)
    e += f
    return _fast_two_sum(s, e)


@njit(cache=True)
def horner_real(hi, lo, x):
    n = hi.shape[0]
    out = np.empty(x.shape[0])
    for k in range(x.shape[0]):
        xv = x[k]
        ah = hi[n - 1]
        al = lo[n - 1]
        for j in range(n - 2, -1, -1):
            ah, al = _dd_mul_d(ah, al, xv)
            ah, al = _dd_add(ah, al, hi[j], lo[j])
        out[k] = ah + al
    return out


@njit(cache=True)
def horner_complex(hi, lo, zr, zi):
    n = hi.shape[0]
    m = zr.shape[0]
    out_r = np.empty(m)
    out_i = np.empty(m)
    for k in range(m):
        xr = zr[k]
        xi = zi[k]
        rh = hi[n - 1]
        rl = lo[n - 1]
        ih = 0.0
        il = 0.0
        for j in range(n - 2, -1, -1):
            # (r + i*im) * (xr + i*xi)
            ah, al = _dd_mul_d(rh, rl, xr)
            bh, bl = _dd_mul_d(ih, il, xi)
            ch, cl = _dd_mul_d(rh, rl, xi)
            dh, dl = _dd_mul_d(ih, il, xr)
            rh, rl = _dd_add(ah, al, -bh, -bl)
            ih, il = _dd_add(ch, cl, dh, dl)
            rh, rl = _dd_add(rh, rl, hi[j], lo[j])
        out_r[k] = rh + rl
        out_i[k] = ih + il
    return out_r, out_i


@njit(cache=True)
def abs2_real(hi, lo, x):
    v = horner_real(hi, lo, x)
    return v * v


@njit(cache=True)
def abs2_complex(hi, lo, zr, zi):
    r, i = horner_complex(hi, lo, zr, zi)
    return r * r + i * i
