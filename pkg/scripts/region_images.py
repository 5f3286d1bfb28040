"""Write PGM images of the stability regions of the optimal families."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from optstab.formats import grid_to_pgm
from optstab.optimal import disc_optimal, hyperbolic_optimal, parabolic_optimal
from optstab.stability import region_scan


@dataclass
class RegionConfig:
    m: int = 5
    nx: int = 400
    ny: int = 200
    out_dir: Path = Path("regions")


def boxes(m):
    # each box frames the optimal interval with a little margin
    return {
        "disc": (disc_optimal(m), (-2.2 * m, 0.2 * m, -1.2 * m, 1.2 * m)),
        "parabolic": (parabolic_optimal(m), (-2.1 * m * m, 0.1 * m * m, -0.2 * m * m, 0.2 * m * m)),
        "hyperbolic": (hyperbolic_optimal(m), (-1.2 * m, 0.2 * m, -1.1 * m, 1.1 * m)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=RegionConfig.m)
    ap.add_argument("--nx", type=int, default=RegionConfig.nx)
    ap.add_argument("--ny", type=int, default=RegionConfig.ny)
    ap.add_argument("--out-dir", type=Path, default=RegionConfig.out_dir)
    cfg = RegionConfig(**vars(ap.parse_args()))
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for name, (p, box) in boxes(cfg.m).items():
        path = cfg.out_dir / f"{name}_m{cfg.m}.pgm"
        path.write_text(grid_to_pgm(region_scan(p, box, cfg.nx, cfg.ny)))
        print(path)


if __name__ == "__main__":
    main()
