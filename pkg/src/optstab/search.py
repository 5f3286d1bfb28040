"""Maximum search on an interval or a circle: dense sampling, then
golden-section refinement of every sampled local maximum."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden(f, a, b, xtol):
    """Vectorised golden-section maximisation on brackets ``[a_i, b_i]``.

    Returns the best value seen in any bracket.
    """
    a = a.copy()
    b = b.copy()
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = f(c)
    fd = f(d)
    best = max(fc.max(), fd.max())
    iters = int(math.ceil(math.log(max(np.max(b - a) / xtol, 2.0)) / -math.log(_INVPHI)))
    for _ in range(iters):
        left = fc > fd
        # left: max in [a, d]; keep c as new d.  right: max in [c, b]; keep d as new c.
        na = np.where(left, a, c)
        nb = np.where(left, d, b)
        keep_x = np.where(left, c, d)
        keep_f = np.where(left, fc, fd)
        new_x = np.where(left, nb - _INVPHI * (nb - na), na + _INVPHI * (nb - na))
        new_f = f(new_x)
        best = max(best, new_f.max())
        c = np.where(left, new_x, keep_x)
        fc = np.where(left, new_f, keep_f)
        d = np.where(left, keep_x, new_x)
        fd = np.where(left, keep_f, new_f)
        a, b = na, nb
    return best


def _local_max_mask(v, periodic):
    if periodic:
        prev = np.roll(v, 1)
        nxt = np.roll(v, -1)
        return (v >= prev) & (v >= nxt)
    mask = np.zeros(v.size, dtype=bool)
    mask[1:-1] = (v[1:-1] >= v[:-2]) & (v[1:-1] >= v[2:])
    return mask


def maximize(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
             samples: int = 4096, rel_xtol: float = 1e-10,
             stop_above: float = math.inf) -> float:
    """Max of a smooth vectorised ``f`` on ``[lo, hi]`` (endpoints included).

    If a sample already exceeds ``stop_above`` that sample value is returned
    without refinement; callers that only need ``max <= threshold`` use this.
    """
    x = np.linspace(lo, hi, samples)
    v = f(x)
    best = float(v.max())
    if best > stop_above:
        return best
    idx = np.flatnonzero(_local_max_mask(v, periodic=False))
    if idx.size:
        step = x[1] - x[0]
        xtol = max(rel_xtol * max(abs(lo), abs(hi)), 1e-300)
        best = max(best, float(_golden(f, x[idx] - step, x[idx] + step, xtol)))
    return best


def maximize_periodic(f: Callable[[np.ndarray], np.ndarray], period: float = 2 * math.pi,
                      samples: int = 4096, rel_xtol: float = 1e-10) -> float:
    """Max of a smooth ``period``-periodic vectorised ``f``."""
    x = np.arange(samples) * (period / samples)
    v = f(x)
    best = float(v.max())
    idx = np.flatnonzero(_local_max_mask(v, periodic=True))
    if idx.size:
        step = period / samples
        best = max(best, float(_golden(f, x[idx] - step, x[idx] + step, rel_xtol * period)))
    return best
