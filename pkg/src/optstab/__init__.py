"""Optimal stability polynomials for explicit one-step integrators."""

from optstab.errors import DomainError
from optstab.optimal import (
    SubstepSchedule,
    disc_optimal,
    hyperbolic_optimal,
    parabolic_optimal,
    parabolic_substeps,
    second_order_optimal,
)
from optstab.poly import RealPolynomial, chebyshev_t, chebyshev_u, eval_complex
from optstab.stability import (
    ButcherTableau,
    disc_boundary_max,
    stability_polynomial,
    stability_width,
)

__all__ = [
    "DomainError",
    "RealPolynomial",
    "SubstepSchedule",
    "ButcherTableau",
    "chebyshev_t",
    "chebyshev_u",
    "eval_complex",
    "disc_optimal",
    "parabolic_optimal",
    "parabolic_substeps",
    "second_order_optimal",
    "hyperbolic_optimal",
    "stability_polynomial",
    "stability_width",
    "disc_boundary_max",
]
