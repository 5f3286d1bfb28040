"""Command-line front end.

Exit codes: 0 success, 1 domain error (reported as one JSON line on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from optstab import formats, integrate, optimal, stability, verify
from optstab.errors import DomainError
from optstab.poly import RealPolynomial, chebyshev_t

AXES = {"real": "negative_real", "imag": "imaginary"}
ORACLE_TARGETS = {"real": "negative_real", "imag": "imaginary", "disc": "disc"}
ORACLE_BOXES = {"negative_real": [(0.01, 1.0)], "imaginary": [(0.01, 2.0)], "disc": [(0.01, 1.0)]}


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise DomainError("unreadable_input", f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError("bad_json", f"{path}: {exc}") from exc


def _read_poly(path: str) -> RealPolynomial:
    return formats.poly_from_json(_read_json(path))


def _floats(text: str, count: int | None = None) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} numbers, got {len(vals)}")
    return vals


def _box4(text):
    return _floats(text, 4)


def _ranges(text: str) -> list[tuple[float, float]]:
    out = []
    for part in text.split(","):
        try:
            lo, hi = (float(v) for v in part.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected lo:hi[,lo:hi], got {text!r}")
        out.append((lo, hi))
    return out


# -- subcommands ---------------------------------------------------------------

def cmd_gen(args) -> str:
    if args.family == "parabolic-substeps":
        return formats.dumps(optimal.parabolic_substeps(args.m).to_json())
    return formats.dumps(formats.poly_to_json(optimal.family_polynomial(args.family, args.m)))


def cmd_interval(args) -> str:
    p = _read_poly(args.poly)
    w = stability.stability_width(p, AXES[args.axis], eps=args.eps, tol=args.tol)
    return formats.dumps({"width": w})


def cmd_region(args) -> str:
    p = _read_poly(args.poly)
    grid = stability.region_scan(p, args.box, args.nx, args.ny)
    return formats.grid_to_csv(grid) if args.format == "csv" else formats.grid_to_pgm(grid)


def _verify_poly(args, default):
    if args.poly:
        return _read_poly(args.poly)
    if args.m is None:
        raise DomainError("missing_m", "give --m or --poly")
    return default(args.m)


def cmd_verify(args) -> str:
    check = args.check
    if check in ("bernstein", "markov"):
        if check == "bernstein":
            p = _verify_poly(args, lambda m: RealPolynomial([0] * m + [1]))
            fn = verify.bernstein_ratio
        else:
            p = _verify_poly(args, chebyshev_t)
            fn = verify.markov_ratio
        m = args.m if args.m is not None else p.degree
        if m < 1:
            raise DomainError("m_too_small", "m must be >= 1")
        ratio = fn(p, m, args.samples)
        return formats.dumps({"ratio": ratio, "pass": ratio <= 1.0 + verify.RATIO_SLACK})
    if check == "alpha":
        p = _verify_poly(args, lambda m: optimal.family_polynomial(args.family, m))
        alpha = verify.alpha_coefficient(p)
        q = verify.q_expansion(p)
        q_linear = float(q.exact[1]) if q.degree >= 1 else 0.0
        holds = verify.lemma_holds(p)
        return formats.dumps({
            "alpha": alpha,
            "q_linear": q_linear,
            "lemma_holds": holds,
            "pass": holds and abs(q_linear - (1 - 2 * alpha)) <= 1e-12,
        })
    if check == "q-identity":
        if args.m is None:
            raise DomainError("missing_m", "give --m")
        if args.m < 2:
            raise DomainError("m_too_small", "hyperbolic family needs m >= 2")
        err = verify.trig_identity_error(args.m, args.samples_identity)
        return formats.dumps({"m": args.m, "max_error": err, "pass": err <= 1e-10})
    # oracle
    m = 2 if args.m is None else args.m
    target = ORACLE_TARGETS[args.target]
    box = args.box
    if box is None:
        if m != 2:
            raise DomainError("missing_box", "give --box for m = 3")
        box = ORACLE_BOXES[target]
    res = verify.oracle_search(m, target, box, args.step)
    expected = {
        "negative_real": optimal.parabolic_optimal,
        "imaginary": optimal.hyperbolic_optimal,
        "disc": optimal.disc_optimal,
    }[target](m).coeffs
    close = all(abs(a - b) <= args.step * (1 + 1e-9) for a, b in zip(res.best_coeffs, expected))
    out = res.to_json()
    out["expected_coeffs"] = list(expected)
    out["pass"] = close
    return formats.dumps(out)


def cmd_simulate(args) -> str:
    if args.system == "heat":
        sysm = integrate.heat_system(args.n)
        axis = "negative_real"
    else:
        sysm = integrate.advection_system(args.n, args.c)
        axis = "imaginary"
    x0 = integrate.random_state(sysm.dimension, args.seed)
    if args.scheme == "composed":
        if args.m is None:
            raise DomainError("missing_m", "composed scheme needs --m")
        if args.system == "heat":
            sched = optimal.parabolic_substeps(args.m)
            h = args.h_frac * 2 * args.m**2 / sysm.lambda_extreme
            rec = integrate.composed_euler_run(sched, sysm, h, args.steps, x0)
        else:
            p = optimal.hyperbolic_optimal(args.m)
            h = args.h_frac * (args.m - 1) / sysm.lambda_extreme
            rec = integrate.polynomial_run(p, sysm, h, args.steps, x0)
    else:
        if not args.tableau:
            raise DomainError("missing_tableau", "tableau scheme needs --tableau FILE")
        t = stability.ButcherTableau.from_json(_read_json(args.tableau))
        width = stability.stability_width(stability.stability_polynomial(t), axis)
        if width <= 0:
            raise DomainError("no_stability_interval", f"tableau has no stability interval on the {axis} axis")
        rec = integrate.rk_run(t, sysm, args.h_frac * width / sysm.lambda_extreme, args.steps, x0)
    return rec.to_csv()


def cmd_tableau(args) -> str:
    obj = _read_json(args.file)
    try:
        t = stability.ButcherTableau.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise DomainError("bad_tableau", f"expected keys A, b, c: {exc}") from exc
    p = stability.stability_polynomial(t)
    report = stability.stability_report(p, max(t.stages, 1))
    return formats.dumps({"polynomial": formats.poly_to_json(p), "report": report.to_json()})


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="optstab", description="Optimal stability polynomials for explicit integrators.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.set_defaults(func=fn)
        p.add_argument("--out", help="write the result here instead of standard output")
        return p

    p = add("gen", cmd_gen, "emit an optimal polynomial (or substep schedule) as JSON")
    p.add_argument("--family", required=True, choices=optimal.FAMILIES)
    p.add_argument("--m", type=int, required=True, help="degree / number of f-evaluations")

    p = add("interval", cmd_interval, "measure a stability interval")
    p.add_argument("--poly", required=True, help="polynomial JSON file ('-' for stdin)")
    p.add_argument("--axis", required=True, choices=sorted(AXES))
    p.add_argument("--eps", type=float, default=stability.DEFAULT_EPS, help="membership slack on |P|^2")
    p.add_argument("--tol", type=float, default=stability.DEFAULT_TOL, help="bisection width")

    p = add("region", cmd_region, "sample |P(z)| on a grid (write --box=-a,b,c,d for negative numbers)")
    p.add_argument("--poly", required=True, help="polynomial JSON file ('-' for stdin)")
    p.add_argument("--box", type=_box4, required=True, metavar="RE_MIN,RE_MAX,IM_MIN,IM_MAX")
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--format", choices=("csv", "pgm"), default="csv")

    p = add("verify", cmd_verify, "numerical checks (inequalities, lemma, oracle, trig identity)")
    p.add_argument("--check", required=True, choices=("bernstein", "markov", "alpha", "oracle", "q-identity"))
    p.add_argument("--m", type=int)
    p.add_argument("--poly", help="check this polynomial instead of the default one")
    p.add_argument("--family", choices=("disc", "parabolic", "second-order", "hyperbolic"), default="hyperbolic",
                   help="polynomial family for --check alpha")
    p.add_argument("--samples", type=int, default=4096, help="sampling density for max searches")
    p.add_argument("--samples-identity", type=int, default=1000, help="angles for --check q-identity")
    p.add_argument("--target", choices=sorted(ORACLE_TARGETS), default="real", help="oracle target")
    p.add_argument("--box", type=_ranges, metavar="LO:HI[,LO:HI]", help="oracle coefficient ranges")
    p.add_argument("--step", type=float, default=1e-3, help="oracle grid step")

    p = add("simulate", cmd_simulate, "run a scheme on a linear test system; writes a RunRecord CSV")
    p.add_argument("--scheme", required=True, choices=("composed", "tableau"))
    p.add_argument("--system", required=True, choices=("heat", "advection"))
    p.add_argument("--n", type=int, required=True, help="grid points")
    p.add_argument("--m", type=int, help="degree of the optimal scheme (composed)")
    p.add_argument("--h-frac", type=float, required=True, help="step as a fraction of the theoretical limit")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=integrate.DEFAULT_SEED)
    p.add_argument("--tableau", help="tableau JSON file (scheme tableau)")
    p.add_argument("--c", type=float, default=1.0, help="advection speed")

    p = add("tableau", cmd_tableau, "stability polynomial and report of an explicit RK tableau")
    p.add_argument("--file", required=True, help="tableau JSON file ('-' for stdin)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except DomainError as exc:
        print(json.dumps({"error": exc.code, "detail": exc.detail}), file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def run_cli(argv) -> int:
    """Like :func:`main` but turns argparse's ``SystemExit`` into a return code."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1


if __name__ == "__main__":
    sys.exit(main())
