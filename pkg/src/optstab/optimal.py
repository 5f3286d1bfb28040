"""Closed-form optimal stability polynomials.

* disc: ``(1 + z/m)**m`` keeps the disc ``|1 + z/m| <= 1``;
* parabolic: ``T_m(1 + z/m**2)`` reaches ``[-2m**2, 0]``;
* hyperbolic: a ``T``/``U`` combination reaching ``[-i(m-1), i(m-1)]``.

All expansions are exact; the structured (Chebyshev-argument) forms are also
available pointwise through the ``*_value`` evaluators, which run the
three-term recurrences directly at complex arguments and never touch the
expanded coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from optstab.errors import DomainError
from optstab.poly import (
    RealPolynomial,
    affine_compose,
    chebyshev_t,
    chebyshev_u,
    multiply,
)


def _check_m(m: int, least: int, name: str = "m"):
    if int(m) != m or m < least:
        raise DomainError(f"{name}_too_small", f"{name} must be an integer >= {least}, got {m!r}")


def disc_optimal(m: int) -> RealPolynomial:
    _check_m(m, 1)
    return RealPolynomial(Fraction(comb(m, j), m**j) for j in range(m + 1))


def parabolic_optimal(m: int) -> RealPolynomial:
    _check_m(m, 1)
    return affine_compose(chebyshev_t(m), 1, Fraction(1, m * m))


def second_order_optimal(m: int) -> RealPolynomial:
    """``T_m(1 - z/(2m**2))``: ``P = 1 - z/2 + O(z**2)``, stable for ``0 <= z <= 4m**2``."""
    _check_m(m, 1)
    return affine_compose(chebyshev_t(m), 1, Fraction(-1, 2 * m * m))


@dataclass(frozen=True)
class SubstepSchedule:
    """Euler substep divisors: substep ``i`` advances by ``h / xi[i]``."""

    xi: tuple[float, ...]
    order: str = "ascending"
    permutation: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        if not self.xi or any(x <= 0 for x in self.xi):
            raise DomainError("bad_schedule", "all divisors must be positive")
        if abs(math.fsum(1.0 / x for x in self.xi) - 1.0) > 1e-10:
            raise DomainError("bad_schedule", "sum of 1/xi must equal 1")

    @property
    def m(self) -> int:
        return len(self.xi)

    def permuted(self, perm: Sequence[int]) -> "SubstepSchedule":
        perm = tuple(int(i) for i in perm)
        if sorted(perm) != list(range(self.m)):
            raise DomainError("bad_permutation", "not a permutation of the substeps")
        return SubstepSchedule(tuple(self.xi[i] for i in perm), "permuted", perm)

    def polynomial(self) -> RealPolynomial:
        from optstab.poly import from_real_roots

        return from_real_roots(self.xi)

    def to_json(self) -> dict:
        out = {"m": self.m, "xi": list(self.xi), "order": self.order}
        if self.permutation is not None:
            out["permutation"] = list(self.permutation)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "SubstepSchedule":
        perm = obj.get("permutation")
        return cls(tuple(float(x) for x in obj["xi"]), obj.get("order", "ascending"),
                   tuple(perm) if perm is not None else None)


def parabolic_substeps(m: int) -> SubstepSchedule:
    _check_m(m, 1)
    xi = tuple(m * m * (1.0 - math.cos(math.pi * (2 * i - 1) / (2 * m))) for i in range(1, m + 1))
    return SubstepSchedule(xi)


# -- hyperbolic family -------------------------------------------------------

def _in_square(p: RealPolynomial) -> RealPolynomial:
    """``q(z) = p(z**2)``."""
    out = [Fraction(0)] * (2 * len(p.exact) - 1)
    out[::2] = p.exact
    return RealPolynomial(out)


class _GaussPoly:
    """Polynomial with Gaussian-rational coefficients, stored as ``re + i*im``."""

    def __init__(self, re: RealPolynomial, im: RealPolynomial | None = None):
        self.re = re
        self.im = im if im is not None else RealPolynomial([0])

    def __add__(self, other):
        return _GaussPoly(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        return _GaussPoly(
            multiply(self.re, other.re) - multiply(self.im, other.im),
            multiply(self.re, other.im) + multiply(self.im, other.re),
        )

    def times_i_power(self, n: int):
        n %= 4
        out = self
        for _ in range(n):
            out = _GaussPoly(-out.im, out.re)
        return out

    @classmethod
    def at_over_i(cls, p: RealPolynomial, kappa: int):
        """``p(z / (i*kappa))`` for real ``p``: the argument is ``-i z / kappa``."""
        re, im = [], []
        for j, c in enumerate(p.exact):
            term = c / Fraction(kappa) ** j
            # (-i)**j = 1, -i, -1, i for j mod 4 = 0..3
            r, q = divmod(j, 4)
            re.append(term if q == 0 else (-term if q == 2 else 0))
            im.append(-term if q == 1 else (term if q == 3 else 0))
        return cls(RealPolynomial(re), RealPolynomial(im))

    def to_real(self) -> RealPolynomial:
        re = np.abs(np.array(self.re.coeffs))
        im = np.abs(np.array(self.im.coeffs))
        if im.max() > 1e-12 * re.max():
            raise ArithmeticError("expansion left a non-vanishing imaginary part")
        return self.re


def hyperbolic_general(m: int) -> RealPolynomial:
    """Expand ``i^(m-1) T_{m-1}(w) + i^(m-2) (1 + z^2/(m-1)^2) U_{m-2}(w)``, ``w = z/(i(m-1))``."""
    _check_m(m, 2)
    kappa = m - 1
    t = _GaussPoly.at_over_i(chebyshev_t(kappa), kappa).times_i_power(m - 1)
    weight = _GaussPoly(RealPolynomial([1, 0, Fraction(1, kappa * kappa)]))
    u = (weight * _GaussPoly.at_over_i(chebyshev_u(m - 2), kappa)).times_i_power(m - 2)
    return (t + u).to_real()


def hyperbolic_optimal_odd(k: int) -> RealPolynomial:
    """Degree ``2k+1`` optimum, composed in ``z**2``."""
    _check_m(k, 1, "k")
    arg = Fraction(1, 2 * k * k)
    r = _in_square(affine_compose(chebyshev_t(k), 1, arg))
    if k == 1:
        u = RealPolynomial([1])
    else:
        u = _in_square(affine_compose(chebyshev_u(k - 1), 1, arg))
    weight = RealPolynomial([0, Fraction(1, k), 0, Fraction(1, 4 * k**3)])
    return r + multiply(weight, u)


def hyperbolic_optimal_even(k: int) -> RealPolynomial:
    """Degree ``2k`` optimum."""
    _check_m(k, 1, "k")
    kappa = 2 * k - 1
    weight = _GaussPoly(RealPolynomial([1, 0, Fraction(1, kappa * kappa)]))
    u = weight * _GaussPoly.at_over_i(chebyshev_u(2 * k - 2), kappa)
    t = _GaussPoly.at_over_i(chebyshev_t(kappa), kappa).times_i_power(1)
    return ((u + t).times_i_power(0 if k % 2 == 1 else 2)).to_real()


def hyperbolic_optimal(m: int) -> RealPolynomial:
    _check_m(m, 2)
    if m % 2:
        return hyperbolic_optimal_odd((m - 1) // 2)
    return hyperbolic_optimal_even(m // 2)


# -- pointwise structured forms ---------------------------------------------

def chebyshev_values(k: int, x, kind: int = 1):
    """``T_k(x)`` (kind 1) or ``U_k(x)`` (kind 2) by the three-term recurrence."""
    x = np.asarray(x, dtype=complex)
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = x.copy() if kind == 1 else 2 * x
    for _ in range(k - 1):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def general_form_value(m: int, z):
    _check_m(m, 2)
    z = np.asarray(z, dtype=complex)
    kappa = m - 1
    w = z / (1j * kappa)
    return (1j ** (m - 1) * chebyshev_values(kappa, w, 1)
            + 1j ** (m - 2) * (1 + z**2 / kappa**2) * chebyshev_values(m - 2, w, 2))


def odd_tu_form_value(k: int, z):
    """``T_k(x) + (z/k)(1 + z^2/(4k^2)) U_{k-1}(x)`` with ``x = 1 + z^2/(2k^2)``."""
    z = np.asarray(z, dtype=complex)
    x = 1 + z**2 / (2 * k * k)
    return chebyshev_values(k, x, 1) + (z / k) * (1 + z**2 / (4 * k * k)) * chebyshev_values(k - 1, x, 2)


def odd_kinnmark_form_value(k: int, z):
    """``(-1)^k [T_2k(w) - i(1 + z^2/(4k^2)) U_{2k-1}(w)]`` with ``w = z/(2ki)``."""
    z = np.asarray(z, dtype=complex)
    w = z / (2j * k)
    return (-1) ** k * (chebyshev_values(2 * k, w, 1)
                        - 1j * (1 + z**2 / (4 * k * k)) * chebyshev_values(2 * k - 1, w, 2))


def even_form_value(k: int, z):
    """``(-1)^(k-1) [(1 + z^2/(2k-1)^2) U_{2k-2}(w) + i T_{2k-1}(w)]``, ``w = z/(i(2k-1))``."""
    z = np.asarray(z, dtype=complex)
    kappa = 2 * k - 1
    w = z / (1j * kappa)
    return (-1) ** (k - 1) * ((1 + z**2 / kappa**2) * chebyshev_values(2 * k - 2, w, 2)
                              + 1j * chebyshev_values(kappa, w, 1))


def even_real_part(k: int, y):
    """``R(y) = (-1)^(k-1) (1 - y/(2k-1)^2) U_{2k-2}(sqrt(y)/(2k-1))`` for ``y >= 0``."""
    kappa = 2 * k - 1
    y = np.asarray(y, dtype=float)
    return ((-1) ** (k - 1) * (1 - y / kappa**2)
            * chebyshev_values(2 * k - 2, np.sqrt(y) / kappa, 2).real)


FAMILIES = ("disc", "parabolic", "parabolic-substeps", "second-order", "hyperbolic")


def family_polynomial(family: str, m: int) -> RealPolynomial:
    builders = {
        "disc": disc_optimal,
        "parabolic": parabolic_optimal,
        "second-order": second_order_optimal,
        "hyperbolic": hyperbolic_optimal,
    }
    if family not in builders:
        raise DomainError("unknown_family", f"no polynomial family {family!r}")
    return builders[family](m)
