"""File formats shared by the library and the CLI.

Polynomial JSON is ``{"degree": m, "coeffs": [c0, ..., cm]}``. Writers add an
``"exact"`` list of rational strings (``"4/27"``) so that a polynomial read
back is bit-identical to the one written; readers fall back to ``coeffs``
when it is absent. Floats are written with ``repr``, the shortest string that
round-trips.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from optstab.errors import DomainError
from optstab.poly import RealPolynomial
from optstab.stability import RegionGrid


def poly_to_json(p: RealPolynomial) -> dict:
    return {
        "degree": p.degree,
        "coeffs": list(p.coeffs),
        "exact": [str(c) for c in p.exact],
    }


def poly_from_json(obj: Any) -> RealPolynomial:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise DomainError("bad_polynomial", "expected an object with a 'coeffs' list")
    try:
        if "exact" in obj:
            p = RealPolynomial(obj["exact"])
            if len(p.exact) != len(RealPolynomial(obj["coeffs"]).exact):
                raise DomainError("bad_polynomial", "'exact' and 'coeffs' disagree")
        else:
            p = RealPolynomial(obj["coeffs"])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError("bad_polynomial", str(exc)) from exc
    if "degree" in obj and obj["degree"] != p.degree:
        raise DomainError("bad_polynomial", f"declared degree {obj['degree']} but coefficients give {p.degree}")
    return p


def dumps(obj: Any) -> str:
    return json.dumps(obj) + "\n"


def grid_to_csv(grid: RegionGrid) -> str:
    re, im = grid.centers()
    lines = ["re,im,absP"]
    for iy in range(grid.ny):
        for ix in range(grid.nx):
            lines.append(f"{float(re[ix])!r},{float(im[iy])!r},{float(grid.values[iy, ix])!r}")
    return "\n".join(lines) + "\n"


def grid_to_pgm(grid: RegionGrid) -> str:
    """Plain (P2) graymap: 0 where ``|P| <= 1``, 255 where ``|P| >= 2``.

    The top image row is the largest imaginary part.
    """
    gray = np.rint(np.clip(grid.values - 1.0, 0.0, 1.0) * 255).astype(int)
    lines = ["P2", f"{grid.nx} {grid.ny}", "255"]
    for iy in range(grid.ny - 1, -1, -1):
        lines.append(" ".join(str(v) for v in gray[iy]))
    return "\n".join(lines) + "\n"
