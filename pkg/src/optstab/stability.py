"""Stability polynomials of explicit Runge-Kutta methods and measurements of
their stability regions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np

from optstab import _dd
from optstab.errors import DomainError
from optstab.poly import RealPolynomial, _to_fraction, eval_complex
from optstab.search import maximize, maximize_periodic

Axis = Literal["negative_real", "imaginary"]

AXIS_ALIASES = {
    "negative_real": "negative_real",
    "real": "negative_real",
    "imaginary": "imaginary",
    "imag": "imaginary",
}

DEFAULT_SAMPLES = 4096
DEFAULT_EPS = 1e-9
DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class ButcherTableau:
    """Explicit RK coefficients. Entries are kept as exact rationals.

    Strings such as ``"1/6"`` are accepted so that classical tableaus can be
    written down exactly.
    """

    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def __init__(self, A, b, c=None):
        A = tuple(tuple(_to_fraction(x) for x in row) for row in A)
        b = tuple(_to_fraction(x) for x in b)
        s = len(b)
        if s < 1 or len(A) != s or any(len(row) != s for row in A):
            raise DomainError("bad_tableau", f"A must be {s}x{s} to match b")
        if c is None:
            c = [sum(row) for row in A]
        c = tuple(_to_fraction(x) for x in c)
        if len(c) != s:
            raise DomainError("bad_tableau", "c must have one entry per stage")
        if any(A[i][j] != 0 for i in range(s) for j in range(i, s)):
            raise DomainError("implicit_tableau", "A must be strictly lower triangular")
        if abs(float(sum(b)) - 1.0) > 1e-12:
            raise DomainError("inconsistent_tableau", f"sum(b) = {float(sum(b))!r}, expected 1")
        for i in range(s):
            if abs(float(c[i] - sum(A[i]))) > 1e-12:
                raise DomainError("inconsistent_tableau", f"c[{i}] is not the row sum of A")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def stages(self) -> int:
        return len(self.b)

    def arrays(self):
        A = np.array([[float(x) for x in row] for row in self.A])
        return A, np.array([float(x) for x in self.b]), np.array([float(x) for x in self.c])

    @classmethod
    def from_json(cls, obj: dict) -> "ButcherTableau":
        return cls(obj["A"], obj["b"], obj.get("c"))

    def to_json(self) -> dict:
        return {
            "A": [[float(x) for x in row] for row in self.A],
            "b": [float(x) for x in self.b],
            "c": [float(x) for x in self.c],
        }


def euler_tableau() -> ButcherTableau:
    return ButcherTableau([[0]], [1], [0])


def rk4_tableau() -> ButcherTableau:
    return ButcherTableau(
        [[0, 0, 0, 0], ["1/2", 0, 0, 0], [0, "1/2", 0, 0], [0, 0, 1, 0]],
        ["1/6", "1/3", "1/3", "1/6"],
        [0, "1/2", "1/2", 1],
    )


def stability_polynomial(t: ButcherTableau) -> RealPolynomial:
    """``P(z) = 1 + sum_j z**(j+1) * b^T A^j 1`` for an explicit tableau."""
    s = t.stages
    v = [Fraction(1)] * s
    coeffs = [Fraction(1)]
    for _ in range(s):
        coeffs.append(sum(bi * vi for bi, vi in zip(t.b, v)))
        v = [sum(t.A[i][j] * v[j] for j in range(s)) for i in range(s)]
    return RealPolynomial(coeffs)


def consistency_check(p: RealPolynomial) -> bool:
    c = p.coeffs + (0.0,)
    return abs(c[0] - 1.0) <= 1e-12 and abs(c[1] - 1.0) <= 1e-12


def imaginary_axis_split(p: RealPolynomial) -> tuple[RealPolynomial, RealPolynomial]:
    """Real polynomials R, I with ``P(i*s) = R(s**2) + i*s*I(s**2)``."""
    sign = [1, 1, -1, -1]  # i**j = 1, i, -1, -i
    even = [sign[j % 4] * c for j, c in enumerate(p.exact) if j % 2 == 0]
    odd = [sign[j % 4] * c for j, c in enumerate(p.exact) if j % 2 == 1]
    return RealPolynomial(even), RealPolynomial(odd or [0])


@lru_cache(maxsize=256)
def _imag_split(p: RealPolynomial):
    R, I = imaginary_axis_split(p)
    return R.dd(), I.dd()


def axis_abs2(p: RealPolynomial, axis: Axis):
    """Vectorised ``t -> |P(z(t))|**2`` with ``z = -t`` or ``z = i*t``."""
    axis = AXIS_ALIASES[axis]
    if axis == "negative_real":
        hi, lo = p.dd()

        def f(t):
            return _dd.abs2_real(hi, lo, -np.ascontiguousarray(t, dtype=float))
    else:
        (rh, rl), (ih, il) = _imag_split(p)

        def f(t):
            t = np.ascontiguousarray(t, dtype=float)
            y2 = t * t
            r = _dd.horner_real(rh, rl, y2)
            i = _dd.horner_real(ih, il, y2)
            return r * r + y2 * i * i
    return f


def _leaves_immediately(p: RealPolynomial, axis: str) -> bool:
    """True if ``|P|**2 - 1`` is positive for all small ``t > 0`` on the axis.

    Decided exactly from the lowest nonzero coefficient of the germ at the
    origin, so the membership slack cannot manufacture a tiny spurious
    interval (e.g. ``(1 + iy/m)**m`` would otherwise get ``sqrt(m*eps)``).
    """
    from optstab.poly import multiply

    if axis == "negative_real":
        q = RealPolynomial(c if j % 2 == 0 else -c for j, c in enumerate(p.exact))
        g = multiply(q, q) - 1
    else:
        R, I = imaginary_axis_split(p)
        g = multiply(R, R) + multiply(RealPolynomial([0, 1]), multiply(I, I)) - 1
    for c in g.exact:
        if c != 0:
            return c > 0
    return False


def axis_max(p: RealPolynomial, axis: Axis, a: float, samples: int = DEFAULT_SAMPLES,
             stop_above: float = math.inf) -> float:
    """Max of ``|P|**2`` on ``[-a, 0]`` or on ``[-ia, ia]``.

    For real coefficients ``|P(-iy)| = |P(iy)|``, so the imaginary segment is
    scanned on ``[0, a]`` only.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    if samples < 16:
        raise ValueError("samples must be at least 16")
    return maximize(axis_abs2(p, axis), 0.0, float(a), samples, stop_above=stop_above)


def stability_width(p: RealPolynomial, axis: Axis, eps: float = DEFAULT_EPS,
                    tol: float = DEFAULT_TOL, samples: int = DEFAULT_SAMPLES) -> float:
    """Largest ``a`` with ``|P|**2 <= 1 + eps`` on the axis segment of half-length ``a``.

    Brackets by doubling from 1 (capped at ``8 m**2``) and then bisects to
    width ``tol``; returns the last stable value.
    """

    def ok(a):
        return axis_max(p, axis, a, samples, stop_above=1.0 + eps) <= 1.0 + eps

    axis = AXIS_ALIASES[axis]
    m = max(p.degree, 1)
    cap = 8.0 * m * m
    if _leaves_immediately(p, axis) or not ok(tol):
        return 0.0
    if ok(1.0):
        lo, hi = 1.0, None
        while hi is None:
            trial = min(2.0 * lo, cap)
            if trial <= lo:
                return lo
            if ok(trial):
                lo = trial
            else:
                hi = trial
    else:
        lo, hi = tol, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def disc_boundary_max(p: RealPolynomial, m: int, samples: int = DEFAULT_SAMPLES) -> float:
    """Max of ``|P(z)|`` on the circle ``z = m(e^{i theta} - 1)``."""
    if samples < 64:
        raise ValueError("samples must be at least 64")
    if p.degree > m:
        raise DomainError("degree_too_large", f"deg P = {p.degree} exceeds m = {m}")
    hi, lo = p.dd()

    def f(theta):
        return _dd.abs2_complex(hi, lo, m * (np.cos(theta) - 1.0), m * np.sin(theta))

    return math.sqrt(maximize_periodic(f, 2 * math.pi, samples))


@dataclass(frozen=True)
class RegionGrid:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int
    values: np.ndarray  # shape (ny, nx); row iy has increasing re, rows increasing im

    def centers(self):
        dx = (self.re_max - self.re_min) / self.nx
        dy = (self.im_max - self.im_min) / self.ny
        re = self.re_min + (np.arange(self.nx) + 0.5) * dx
        im = self.im_min + (np.arange(self.ny) + 0.5) * dy
        return re, im


def region_scan(p: RealPolynomial, box: Sequence[float], nx: int, ny: int) -> RegionGrid:
    re_min, re_max, im_min, im_max = map(float, box)
    if not (re_min < re_max and im_min < im_max):
        raise DomainError("bad_box", "box must satisfy re_min < re_max and im_min < im_max")
    if nx < 1 or ny < 1 or nx * ny > 10**8:
        raise DomainError("bad_grid", "need 1 <= nx, ny and nx*ny <= 1e8")
    grid = RegionGrid(re_min, re_max, im_min, im_max, nx, ny, np.empty((ny, nx)))
    re, im = grid.centers()
    z = re[None, :] + 1j * im[:, None]
    grid.values[:] = np.abs(eval_complex(p, z))
    return grid


@dataclass(frozen=True)
class StabilityReport:
    real_width: float
    imag_width: float
    disc_max: float
    tolerance: float

    def to_json(self) -> dict:
        return {
            "real_width": self.real_width,
            "imag_width": self.imag_width,
            "disc_max": self.disc_max,
            "tolerance": self.tolerance,
        }


def stability_report(p: RealPolynomial, m: int | None = None, eps: float = DEFAULT_EPS,
                     tol: float = DEFAULT_TOL) -> StabilityReport:
    m = p.degree if m is None else m
    return StabilityReport(
        real_width=stability_width(p, "negative_real", eps, tol),
        imag_width=stability_width(p, "imaginary", eps, tol),
        disc_max=disc_boundary_max(p, max(m, 1)),
        tolerance=tol,
    )
