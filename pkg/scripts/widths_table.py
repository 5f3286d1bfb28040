"""Measured stability widths of the optimal families against their closed forms.

    python3 scripts/widths_table.py --m-max 20 > widths.csv
"""

import argparse
from dataclasses import dataclass

from optstab.optimal import disc_optimal, hyperbolic_optimal, parabolic_optimal
from optstab.stability import DEFAULT_EPS, DEFAULT_TOL, disc_boundary_max, stability_width


@dataclass
class WidthsConfig:
    m_max: int = 20
    eps: float = DEFAULT_EPS
    tol: float = DEFAULT_TOL


def rows(cfg: WidthsConfig):
    for m in range(1, cfg.m_max + 1):
        par = stability_width(parabolic_optimal(m), "negative_real", cfg.eps, cfg.tol)
        hyp = stability_width(hyperbolic_optimal(m), "imaginary", cfg.eps, cfg.tol) if m >= 2 else float("nan")
        yield m, par, 2 * m * m, hyp, m - 1, disc_boundary_max(disc_optimal(m), m)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=WidthsConfig.m_max)
    ap.add_argument("--eps", type=float, default=WidthsConfig.eps)
    ap.add_argument("--tol", type=float, default=WidthsConfig.tol)
    cfg = WidthsConfig(**vars(ap.parse_args()))
    print("m,parabolic_width,parabolic_expected,hyperbolic_width,hyperbolic_expected,disc_boundary_max")
    for r in rows(cfg):
        print(",".join(repr(float(v)) if isinstance(v, float) else str(v) for v in r))


if __name__ == "__main__":
    main()
