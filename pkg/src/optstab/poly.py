"""Real polynomials with exact rational coefficients.

Coefficients are stored ascending (``coeffs[j]`` multiplies ``z**j``) as
:class:`fractions.Fraction`, so construction, products, derivatives and affine
substitutions are exact. Floats passed in are converted without rounding.
Evaluation rounds the coefficients to double-double and runs a compensated
Horner scheme (see :mod:`optstab._dd`).
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from optstab import _dd

__all__ = [
    "RealPolynomial",
    "eval_complex",
    "eval_real",
    "derivative",
    "multiply",
    "affine_compose",
    "from_real_roots",
    "chebyshev_t",
    "chebyshev_u",
]


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, numbers.Integral):
        return Fraction(int(c))
    if isinstance(c, str):
        return Fraction(c)
    c = float(c)
    if not math.isfinite(c):
        raise ValueError(f"non-finite coefficient {c!r}")
    return Fraction(c)


class RealPolynomial:
    """Dense real polynomial in ascending powers.

    Trailing exact zeros are stripped on construction; the zero polynomial is
    ``RealPolynomial([0])`` with degree 0.
    """

    __slots__ = ("exact", "_hi", "_lo")

    def __init__(self, coeffs: Iterable):
        exact = [_to_fraction(c) for c in coeffs]
        if not exact:
            raise ValueError("a polynomial needs at least one coefficient")
        while len(exact) > 1 and exact[-1] == 0:
            exact.pop()
        self.exact: tuple[Fraction, ...] = tuple(exact)
        self._hi = None
        self._lo = None

    @property
    def degree(self) -> int:
        return len(self.exact) - 1

    @property
    def coeffs(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.exact)

    def is_zero(self) -> bool:
        return self.degree == 0 and self.exact[0] == 0

    def dd(self) -> tuple[np.ndarray, np.ndarray]:
        """Coefficients as a double-double pair ``(hi, lo)``."""
        if self._hi is None:
            hi = np.array([float(c) for c in self.exact])
            lo = np.array([float(c - Fraction(h)) for c, h in zip(self.exact, hi)])
            self._hi, self._lo = hi, lo
        return self._hi, self._lo

    def __call__(self, z):
        return eval_complex(self, z)

    def __eq__(self, other):
        if isinstance(other, RealPolynomial):
            return self.exact == other.exact
        return NotImplemented

    def __hash__(self):
        return hash(self.exact)

    def __repr__(self):
        return f"RealPolynomial({list(self.coeffs)!r})"

    def __neg__(self):
        return RealPolynomial(-c for c in self.exact)

    def __add__(self, other):
        if not isinstance(other, RealPolynomial):
            other = RealPolynomial([other])
        n = max(len(self.exact), len(other.exact))
        a = self.exact + (Fraction(0),) * (n - len(self.exact))
        b = other.exact + (Fraction(0),) * (n - len(other.exact))
        return RealPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RealPolynomial):
            other = RealPolynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RealPolynomial):
            return multiply(self, other)
        s = _to_fraction(other)
        return RealPolynomial(s * c for c in self.exact)

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = _to_fraction(other)
        return RealPolynomial(c / s for c in self.exact)

    def allclose(self, other: "RealPolynomial", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        a, b = np.array(self.coeffs), np.array(other.coeffs)
        n = max(a.size, b.size)
        a = np.pad(a, (0, n - a.size))
        b = np.pad(b, (0, n - b.size))
        return bool(np.all(np.abs(a - b) <= atol + rtol * np.abs(b)))


def eval_real(p: RealPolynomial, x):
    """Evaluate ``p`` at real point(s) ``x``; scalars in, scalar out."""
    scalar = np.ndim(x) == 0
    xs = np.ascontiguousarray(np.atleast_1d(x), dtype=float).ravel()
    hi, lo = p.dd()
    out = _dd.horner_real(hi, lo, xs)
    if scalar:
        return float(out[0])
    return out.reshape(np.shape(x))


def eval_complex(p: RealPolynomial, z):
    """Evaluate ``p`` at complex point(s) ``z`` by compensated Horner."""
    scalar = np.ndim(z) == 0
    zs = np.atleast_1d(np.asarray(z, dtype=complex)).ravel()
    if not (np.all(np.isfinite(zs.real)) and np.all(np.isfinite(zs.imag))):
        raise ValueError("evaluation point must be finite")
    hi, lo = p.dd()
    re, im = _dd.horner_complex(hi, lo, np.ascontiguousarray(zs.real), np.ascontiguousarray(zs.imag))
    out = re + 1j * im
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(z))


def derivative(p: RealPolynomial) -> RealPolynomial:
    if p.degree == 0:
        return RealPolynomial([0])
    return RealPolynomial(j * c for j, c in enumerate(p.exact) if j >= 1)


def multiply(p: RealPolynomial, q: RealPolynomial) -> RealPolynomial:
    out = [Fraction(0)] * (len(p.exact) + len(q.exact) - 1)
    for i, a in enumerate(p.exact):
        if a == 0:
            continue
        for j, b in enumerate(q.exact):
            out[i + j] += a * b
    return RealPolynomial(out)


def affine_compose(p: RealPolynomial, a, b) -> RealPolynomial:
    """Return ``q(z) = p(a + b*z)``, expanded exactly."""
    inner = RealPolynomial([_to_fraction(a), _to_fraction(b)])
    q = RealPolynomial([p.exact[-1]])
    for c in reversed(p.exact[:-1]):
        q = multiply(q, inner) + RealPolynomial([c])
    return q


def from_real_roots(negated_roots: Sequence) -> RealPolynomial:
    """Expand ``prod_i (1 + z/xi_i)`` for positive ``xi_i``."""
    q = RealPolynomial([1])
    for xi in negated_roots:
        x = _to_fraction(xi)
        if x <= 0:
            raise ValueError(f"divisor must be positive, got {float(x)!r}")
        q = multiply(q, RealPolynomial([1, 1 / x]))
    return q


@lru_cache(maxsize=None)
def _cheb(kind: int, k: int) -> tuple[int, ...]:
    prev, cur = [1], ([0, 1] if kind == 1 else [0, 2])
    if k == 0:
        return (1,)
    for _ in range(k - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return tuple(cur)


def chebyshev_t(k: int) -> RealPolynomial:
    """First-kind Chebyshev polynomial ``T_k`` with integer coefficients."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return RealPolynomial(_cheb(1, k))


def chebyshev_u(k: int) -> RealPolynomial:
    """Second-kind Chebyshev polynomial ``U_k`` with integer coefficients."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return RealPolynomial(_cheb(2, k))
