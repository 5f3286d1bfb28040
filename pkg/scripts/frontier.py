"""Growth factor of the optimal schemes as the step crosses its theoretical limit.

Sweeps ``h-frac`` for the composed Euler scheme on the heat system and for the
hyperbolic polynomial on the advection system, printing CSV.
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from optstab.integrate import (
    DEFAULT_SEED,
    advection_system,
    composed_euler_run,
    growth_factor,
    heat_system,
    polynomial_run,
    random_state,
)
from optstab.optimal import hyperbolic_optimal, parabolic_substeps


@dataclass
class FrontierConfig:
    n: int = 64
    m_heat: int = 10
    m_advection: int = 9
    steps: int = 1000
    seed: int = DEFAULT_SEED
    fracs: list[float] = field(default_factory=lambda: list(np.round(np.linspace(0.95, 1.05, 11), 3)))


def sweep(cfg: FrontierConfig):
    heat = heat_system(cfg.n)
    adv = advection_system(cfg.n)
    sched = parabolic_substeps(cfg.m_heat)
    p = hyperbolic_optimal(cfg.m_advection)
    for frac in cfg.fracs:
        h = frac * 2 * cfg.m_heat**2 / heat.lambda_extreme
        r = composed_euler_run(sched, heat, h, cfg.steps, random_state(cfg.n, cfg.seed))
        yield "heat", cfg.m_heat, frac, growth_factor(r), r.aborted
        h = frac * (cfg.m_advection - 1) / adv.lambda_extreme
        r = polynomial_run(p, adv, h, cfg.steps, random_state(cfg.n, cfg.seed))
        yield "advection", cfg.m_advection, frac, growth_factor(r), r.aborted


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=FrontierConfig.n)
    ap.add_argument("--m-heat", type=int, default=FrontierConfig.m_heat)
    ap.add_argument("--m-advection", type=int, default=FrontierConfig.m_advection)
    ap.add_argument("--steps", type=int, default=FrontierConfig.steps)
    ap.add_argument("--seed", type=int, default=FrontierConfig.seed)
    cfg = FrontierConfig(**vars(ap.parse_args()))
    print("system,m,h_frac,growth,aborted")
    for system, m, frac, g, aborted in sweep(cfg):
        print(f"{system},{m},{frac},{g!r},{int(aborted)}")


if __name__ == "__main__":
    main()
