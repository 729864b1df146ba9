"""Command line front end: ``diffinvar <command> ...``.

Exit codes: 0 on success, 2 when the answer is Unknown, 1 on errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import bounds, invariants, report, validate
from .errors import DiffAlgError
from .groebner import Budget
from .parsing import parse_spec
from .rga import RgaOptions, rga_o
from .triangulate import TriangulateOptions, triangulate

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


def _load(path: str):
    with open(path) as fh:
        return parse_spec(fh.read())


def _budget(args):
    return Budget(max_basis=args.budget) if args.budget else None


def cmd_triangulate(args):
    spec = _load(args.file)
    opts = TriangulateOptions(ranking=spec.make_ranking(), prune=args.prune, budget=_budget(args))
    res = triangulate(spec.equations, spec.inequations, opts)
    return report.triangulate_report(res, spec.variables), EXIT_OK


def _rga(spec, args):
    F = spec.vector_field()
    A = list(spec.equations)
    if all(p.is_nondifferential() for p in A):
        A = F.odes() + A
    opts = RgaOptions(ranking=spec.make_ranking(), prune=args.prune, assume=args.assume, budget=_budget(args))
    return F, rga_o(A, spec.inequations, F, opts)


def cmd_rga(args):
    spec = _load(args.file)
    F, dec = _rga(spec, args)
    inv = invariants.classify_decomposition(dec, F, args.seed, _budget(args)) if args.classify else None
    return report.rga_report(dec, spec.variables, inv), EXIT_OK


def cmd_check(args):
    spec = _load(args.file)
    v = invariants.check_invariant(
        spec.equations, spec.vector_field(),
        assume_radical=args.assume_radical, assume_totally_real=args.assume_totally_real,
        seed=args.seed, budget=_budget(args),
    )
    code = EXIT_UNKNOWN if v.value == invariants.UNKNOWN else EXIT_OK
    return report.verdict_dict(v, spec.variables), code


def cmd_maxinv(args):
    spec = _load(args.file)
    gens, closed, stage = invariants.lie_closure(spec.equations, spec.vector_field(), args.cap, _budget(args))
    out = {"generators": [p.format(spec.variables) for p in gens], "closed": closed, "stage": stage}
    return out, EXIT_OK if closed else EXIT_UNKNOWN


def cmd_bounds(args):
    d, n = args.d, args.n
    T, R = bounds.t_bound(d, n), bounds.r_bound(d, n)
    tw, rtw = bounds.tower(d, n), bounds.rtower(d, n)
    lt1, lt2 = bounds.certified_lt(T, tw), bounds.certified_lt(R, rtw)
    out = {
        "d": d, "n": n,
        "T": report.magnitude_dict(T), "Tower": report.magnitude_dict(tw),
        "R": report.magnitude_dict(R), "RTower": report.magnitude_dict(rtw),
        "T_below_Tower": "indeterminate" if lt1 is None else lt1,
        "R_below_RTower": "indeterminate" if lt2 is None else lt2,
    }
    return out, EXIT_OK if lt1 is not None and lt2 is not None else EXIT_UNKNOWN


def cmd_validate(args):
    spec = _load(args.file)
    F = spec.vector_field()
    if args.point:
        points = [[float(Fraction(c)) for c in args.point.split(",")]]
    else:
        points = validate.sample_points(spec.equations, F.n, seed=args.seed, attempts=args.samples)
    rows = []
    for pt in points:
        r = validate.drift(spec.equations, F, pt, args.horizon, args.step)
        rows.append({
            "start": list(r.start), "horizon": r.horizon, "step": r.step,
            "max_relative_residual": r.residuals, "step_halving_discrepancy": r.discrepancy,
            "overflow": r.overflow,
        })
    return {"drift": rows}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diffinvar", description="Algebraic invariants of polynomial ODE systems.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["json", "text"], default="text")
    common.add_argument("--prune", choices=["none", "constant", "groebner"], default="constant")
    common.add_argument("--assume", action="store_true", help="skip the technical-assumption check")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=0, help="maximum Groebner basis size")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triangulate", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("rga", parents=[common])
    p.add_argument("file")
    p.add_argument("--classify", action="store_true", help="report which invariance criteria each branch meets")
    p.set_defaults(func=cmd_rga)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("file")
    p.add_argument("--assume-radical", action="store_true")
    p.add_argument("--assume-totally-real", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("maxinv", parents=[common])
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=10)
    p.set_defaults(func=cmd_maxinv)

    p = sub.add_parser("bounds", parents=[common])
    p.add_argument("d", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("validate", parents=[common])
    p.add_argument("file")
    p.add_argument("--point", help="comma-separated start point, e.g. 1,1,1")
    p.add_argument("--horizon", type=float, default=5.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--samples", type=int, default=5)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = args.func(args)
    except (DiffAlgError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.buffer.write(report.serialize(out, args.output))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
