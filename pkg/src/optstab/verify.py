"""Numerical checks of the inequalities behind the optimality results, plus a
brute-force oracle that searches low-degree polynomial families directly."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from optstab import _dd
from optstab.errors import DomainError
from optstab.poly import RealPolynomial, derivative, multiply
from optstab.search import maximize, maximize_periodic
from optstab.stability import (
    consistency_check,
    disc_boundary_max,
    imaginary_axis_split,
    stability_width,
)

RATIO_SLACK = 1e-9


def _circle_abs2(p: RealPolynomial):
    hi, lo = p.dd()
    return lambda t: _dd.abs2_complex(hi, lo, np.cos(t), np.sin(t))


def _segment_abs2(p: RealPolynomial):
    hi, lo = p.dd()
    return lambda x: _dd.abs2_real(hi, lo, np.ascontiguousarray(x, dtype=float))


def bernstein_ratio(p: RealPolynomial, m: int, samples: int = 4096) -> float:
    """``max|p'| / (m max|p|)`` over the unit circle; at most 1 when ``deg p <= m``."""
    if p.is_zero():
        raise DomainError("zero_polynomial", "ratio undefined for the zero polynomial")
    if samples < 256:
        raise ValueError("samples must be at least 256")
    if p.degree > m:
        raise DomainError("degree_too_large", f"deg p = {p.degree} exceeds m = {m}")
    top = math.sqrt(maximize_periodic(_circle_abs2(derivative(p)), samples=samples))
    bottom = math.sqrt(maximize_periodic(_circle_abs2(p), samples=samples))
    return top / (m * bottom)


def markov_ratio(p: RealPolynomial, m: int, samples: int = 4096) -> float:
    """``max|p'| / (m**2 max|p|)`` over ``[-1, 1]``."""
    if p.is_zero():
        raise DomainError("zero_polynomial", "ratio undefined for the zero polynomial")
    if samples < 256:
        raise ValueError("samples must be at least 256")
    if p.degree > m:
        raise DomainError("degree_too_large", f"deg p = {p.degree} exceeds m = {m}")
    top = math.sqrt(maximize(_segment_abs2(derivative(p)), -1.0, 1.0, samples))
    bottom = math.sqrt(maximize(_segment_abs2(p), -1.0, 1.0, samples))
    return top / (m * m * bottom)


def _require_consistent(p: RealPolynomial):
    if not consistency_check(p):
        raise DomainError("inconsistent_polynomial", "need P(0) = P'(0) = 1")


def alpha_coefficient(p: RealPolynomial) -> float:
    """Coefficient of ``z**2`` in a consistent ``P = 1 + z + alpha z**2 + ...``."""
    _require_consistent(p)
    if p.degree < 2:
        raise DomainError("degree_too_small", "need deg P >= 2")
    return float(p.exact[2])


def lemma_holds(p: RealPolynomial) -> bool:
    """A nonzero imaginary stability interval forces ``alpha >= 1/2``."""
    alpha = alpha_coefficient(p)
    return not (stability_width(p, "imaginary") > 0) or alpha >= 0.5 - 1e-12


def q_expansion(p: RealPolynomial) -> RealPolynomial:
    """``Q(y) = |P(i sqrt(y))|**2 = R(y)**2 + y I(y)**2``."""
    _require_consistent(p)
    R, I = imaginary_axis_split(p)
    return multiply(R, R) + multiply(RealPolynomial([0, 1]), multiply(I, I))


@dataclass(frozen=True)
class OracleResult:
    best_width: float
    best_coeffs: tuple[float, ...]
    grid_step: float
    evaluations: int
    n_feasible: int = 0

    def to_json(self) -> dict:
        return {
            "best_width": self.best_width,
            "best_coeffs": list(self.best_coeffs),
            "grid_step": self.grid_step,
            "evaluations": self.evaluations,
            "n_feasible": self.n_feasible,
        }


TARGETS = ("negative_real", "imaginary", "disc")


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    decimals = max(0, -int(math.floor(math.log10(step)))) + 3
    return np.round(lo + step * np.arange(n), decimals)


def oracle_search(m: int, target: str, coeff_box: Sequence[tuple[float, float]], step: float,
                  samples: int = 512) -> OracleResult:
    """Exhaustive grid search over the free coefficients of ``1 + z + a2 z^2 (+ a3 z^3)``.

    Widths are measured with a loose bisection tolerance during the sweep and
    the winner is re-measured tightly. For ``target="disc"`` a candidate scores
    ``m`` (the radius of the disc it keeps) when its boundary maximum stays
    within ``1 + 1e-9``, otherwise 0; ``n_feasible`` counts candidates with a
    positive score.
    """
    if m not in (2, 3):
        raise DomainError("bad_m", "oracle search supports m = 2 or m = 3 only")
    if target not in TARGETS:
        raise DomainError("bad_target", f"target must be one of {TARGETS}")
    if step <= 0:
        raise DomainError("bad_step", "step must be positive")
    if len(coeff_box) != m - 1:
        raise DomainError("bad_box", f"need {m - 1} coefficient ranges for m = {m}")
    axes = []
    for lo, hi in coeff_box:
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
            raise DomainError("bad_box", "coefficient ranges must be finite with lo <= hi")
        axes.append(_grid(lo, hi, step))
    if any(a.size == 0 for a in axes):
        raise DomainError("empty_grid", "coefficient grid is empty")

    def score(coeffs, tol):
        p = RealPolynomial([1, 1, *coeffs])
        if target == "disc":
            return float(m) if disc_boundary_max(p, m, samples=max(samples, 64)) <= 1 + 1e-9 else 0.0
        return stability_width(p, target, tol=tol, samples=samples)

    best, best_coeffs, count, feasible = -1.0, None, 0, 0
    # lexicographic sweep with strict improvement keeps the smallest tied vector
    for point in np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, m - 1):
        coeffs = tuple(float(c) for c in point)
        w = score(coeffs, 1e-6)
        count += 1
        if w > 0:
            feasible += 1
        if w > best:
            best, best_coeffs = w, coeffs
    if target != "disc":
        best = stability_width(RealPolynomial([1, 1, *best_coeffs]), target)
    return OracleResult(best, (1.0, 1.0, *best_coeffs), step, count, feasible)


def trig_identity_error(m: int, samples: int = 1000) -> float:
    """Max deviation of ``|P(i sqrt(y))|**2`` from ``cos^2(kt) + sin^2(t) sin^2(kt)``.

    ``P`` is the hyperbolic optimum of degree ``m``, ``k = m - 1`` and
    ``sqrt(y) = k cos(t)`` sweeps the closed optimal interval.
    """
    from optstab.optimal import hyperbolic_optimal
    from optstab.poly import eval_complex

    kappa = m - 1
    theta = np.linspace(0.0, math.pi, samples)
    p = hyperbolic_optimal(m)
    q = np.abs(eval_complex(p, 1j * kappa * np.cos(theta))) ** 2
    expected = np.cos(kappa * theta) ** 2 + np.sin(theta) ** 2 * np.sin(kappa * theta) ** 2
    return float(np.max(np.abs(q - expected)))


def form_agreement_error(m: int, samples: int = 1000) -> float:
    """Pointwise disagreement between the structured forms of the degree-``m``
    hyperbolic optimum on ``[-i(m-1), i(m-1)]``.

    Odd ``m = 2k+1``: the ``T_{2k}/U_{2k-1}`` form against the ``T_k/U_{k-1}``
    form in ``1 + z^2/(2k^2)``. Even ``m = 2k``: the ``U_{2k-2}/T_{2k-1}`` form
    against the general ``i^(m-1) T + i^(m-2) U`` form. Both sides are
    evaluated by recurrences, and additionally against the expanded
    coefficients.
    """
    from optstab import optimal
    from optstab.poly import eval_complex

    z = 1j * np.linspace(-(m - 1), m - 1, samples)
    if m % 2:
        k = (m - 1) // 2
        a = optimal.odd_kinnmark_form_value(k, z)
        b = optimal.odd_tu_form_value(k, z)
    else:
        k = m // 2
        a = optimal.even_form_value(k, z)
        b = optimal.general_form_value(m, z)
    c = eval_complex(optimal.hyperbolic_optimal(m), z)
    return float(max(np.max(np.abs(a - b)), np.max(np.abs(a - c))))
