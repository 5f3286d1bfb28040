"""Time stepping on linear test systems ``x' = A x``.

The heat and advection matrices are the usual method-of-lines
discretisations; their spectra lie on the negative real axis and the
imaginary axis respectively, so a scheme's stability interval predicts
exactly where a run starts to blow up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from optstab.errors import DomainError
from optstab.optimal import SubstepSchedule
from optstab.poly import RealPolynomial
from optstab.stability import ButcherTableau

SpectralHint = Literal["real_negative", "imaginary", "general"]

OVERFLOW_FACTOR = 1e12
DEFAULT_SEED = 20240607


@dataclass(frozen=True)
class LinearSystem:
    dimension: int
    matvec: Callable[[np.ndarray], np.ndarray]
    spectral_hint: SpectralHint
    lambda_extreme: float

    def dense(self) -> np.ndarray:
        eye = np.eye(self.dimension)
        return np.column_stack([self.matvec(eye[:, j]) for j in range(self.dimension)])


def heat_system(n: int) -> LinearSystem:
    """Second differences on ``n`` interior points of [0, 1], Dirichlet ends."""
    if n < 2:
        raise DomainError("n_too_small", "heat_system needs n >= 2")
    inv_dx2 = float((n + 1) ** 2)

    def matvec(x):
        y = -2.0 * x
        y[1:] += x[:-1]
        y[:-1] += x[1:]
        return inv_dx2 * y

    lam = 4.0 * inv_dx2 * math.sin(n * math.pi / (2 * (n + 1))) ** 2
    return LinearSystem(n, matvec, "real_negative", lam)


def advection_system(n: int, c: float = 1.0) -> LinearSystem:
    """Periodic central differences for ``u_t + c u_x = 0`` on ``n`` points."""
    if n < 3:
        raise DomainError("n_too_small", "advection_system needs n >= 3")
    if c <= 0:
        raise DomainError("bad_speed", "advection speed must be positive")
    scale = c * n / 2.0  # c / (2 dx)

    def matvec(x):
        return -scale * (np.roll(x, -1) - np.roll(x, 1))

    return LinearSystem(n, matvec, "imaginary", c * n)


@dataclass
class RunRecord:
    steps_taken: int
    norm_history: list[float]
    growth: float
    aborted: bool = False

    def to_csv(self) -> str:
        lines = ["step,norm"]
        lines += [f"{k},{v!r}" for k, v in enumerate(self.norm_history)]
        if self.aborted:
            lines.append(f"# aborted_at={self.steps_taken}")
        return "\n".join(lines) + "\n"


def growth_factor(r: RunRecord) -> float:
    """Final norm over initial norm (as of the abort step for aborted runs)."""
    if not r.norm_history or r.norm_history[0] <= 0:
        raise DomainError("zero_initial_state", "initial norm must be positive")
    return r.norm_history[-1] / r.norm_history[0]


def _run(step: Callable[[np.ndarray], np.ndarray], sys: LinearSystem, n_steps: int, x0) -> RunRecord:
    x = np.array(x0, dtype=float)
    if x.shape != (sys.dimension,):
        raise DomainError("bad_state", f"x0 must have length {sys.dimension}")
    n0 = float(np.linalg.norm(x))
    if n0 <= 0:
        raise DomainError("zero_initial_state", "initial norm must be positive")
    history = [n0]
    aborted = False
    for _ in range(n_steps):
        x = step(x)
        nrm = float(np.linalg.norm(x))
        history.append(nrm)
        if not nrm <= OVERFLOW_FACTOR * n0:
            aborted = True
            break
    return RunRecord(len(history) - 1, history, history[-1] / n0, aborted)


def composed_euler_run(schedule: SubstepSchedule, sys: LinearSystem, h: float, n_steps: int,
                       x0) -> RunRecord:
    """Each macro-step applies ``x <- x + (h/xi_i) A x`` for the scheduled ``xi_i``."""
    if h <= 0:
        raise DomainError("bad_step", "h must be positive")
    subs = [h / xi for xi in schedule.xi]

    def step(x):
        for dt in subs:
            x = x + dt * sys.matvec(x)
        return x

    return _run(step, sys, n_steps, x0)


def rk_run(t: ButcherTableau, sys: LinearSystem, h: float, n_steps: int, x0) -> RunRecord:
    if h <= 0:
        raise DomainError("bad_step", "h must be positive")
    A, b, _ = t.arrays()
    s = t.stages

    def step(x):
        k = []
        for i in range(s):
            xi = x.copy()
            for j in range(i):
                if A[i, j] != 0.0:
                    xi += h * A[i, j] * k[j]
            k.append(sys.matvec(xi))
        out = x.copy()
        for i in range(s):
            if b[i] != 0.0:
                out += h * b[i] * k[i]
        return out

    return _run(step, sys, n_steps, x0)


def polynomial_run(p: RealPolynomial, sys: LinearSystem, h: float, n_steps: int, x0) -> RunRecord:
    """Apply ``x <- P(hA) x`` by Horner's rule with one matvec per degree."""
    if h <= 0:
        raise DomainError("bad_step", "h must be positive")
    coeffs = p.coeffs

    def step(x):
        y = coeffs[-1] * x
        for c in reversed(coeffs[:-1]):
            y = h * sys.matvec(y) + c * x
        return y

    return _run(step, sys, n_steps, x0)


def random_state(dimension: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal(dimension)
