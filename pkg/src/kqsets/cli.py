"""Command line entry point: ``kqsets <command> [options]``.

Exit codes: 0 success, 1 a property failed (or interpolation is impossible),
2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, kronecker
from .modmatrix import ModVector, left_inverse, right_inverse, to_dict, to_text
from .tables import TableFormatError, parse_table


class UsageError(Exception):
    pass


def _modulus(q: int) -> int:
    if q < 2:
        raise UsageError("modulus must be at least 2")
    return q


def _level_matrix(q: int, level: int) -> kronecker.LevelMatrix:
    if level < 0:
        raise UsageError("level must be non-negative")
    try:
        return kronecker.build_level_matrix(q, level)
    except kronecker.SizeLimitExceeded as exc:
        raise UsageError(str(exc)) from exc


def _fmt(v: ModVector) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def cmd_build(args, out) -> int:
    lm = _level_matrix(_modulus(args.q), args.level)
    if args.format == "json":
        json.dump(to_dict(lm.matrix), out)
        out.write("\n")
    else:
        out.write(to_text(lm.matrix))
    return 0


def cmd_verify(args, out) -> int:
    lm = _level_matrix(_modulus(args.q), args.level)
    props = ["kq", "gen"] if args.property == "both" else [args.property]
    reports = []
    try:
        for prop in props:
            if prop == "kq":
                mode = "fast" if args.mode == "fast" else "exhaustive"
                reports.append(analysis.verify_kq_level(lm, mode, budget=args.table_budget))
            else:
                mode = "fast" if args.mode == "fast" else "closure"
                reports.append(analysis.verify_generation_level(lm, mode, budget=args.closure_budget))
    except analysis.BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        json.dump({"q": lm.q, "level": lm.level, "reports": [r.to_dict() for r in reports]}, out)
        out.write("\n")
    else:
        out.write(f"M_{lm.size} over Z/{lm.q}\n")
        for r in reports:
            out.write(r.summary() + "\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_interpolate(args, out) -> int:
    try:
        with open(args.table) as fh:
            q, level, table = parse_table(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read table: {exc}") from exc
    except TableFormatError as exc:
        raise UsageError(str(exc)) from exc
    if args.q is not None and args.q != q:
        raise UsageError(f"--q {args.q} does not match table modulus {q}")
    if args.level is not None and args.level != level:
        raise UsageError(f"--level {args.level} does not match table level {level}")
    lm = _level_matrix(_modulus(q), level)
    try:
        chi = analysis.character_from_values(lm, table)
    except analysis.NoInverseError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    rows = []
    for col in lm.columns():
        rows.append((col, chi(col), table(col)))
    ok = all(a == b for _, a, b in rows)
    if args.format == "json":
        json.dump({
            "q": q, "level": level, "coeffs": list(chi.coeffs),
            "checks": [{"column": list(c), "chi": a, "f": b} for c, a, b in rows],
            "pass": ok,
        }, out)
        out.write("\n")
    else:
        out.write(f"c = {_fmt(chi.coeffs)}\n")
        for col, a, b in rows:
            out.write(f"{_fmt(col)}  chi={a}  f={b}  {'ok' if a == b else 'MISMATCH'}\n")
        out.write("all match\n" if ok else "mismatch\n")
    return 0 if ok else 1


def cmd_witness(args, out) -> int:
    q = _modulus(args.q)
    lm = _level_matrix(q, args.level)
    try:
        target = [int(x) for x in args.target.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad target {args.target!r}") from exc
    if not target:
        raise UsageError("target must not be empty")
    if len(target) > lm.size:
        raise UsageError(f"target of length {len(target)} is longer than {lm.size}")
    try:
        w = analysis.density_witness(lm, ModVector(target, q))
    except analysis.NoInverseError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    if args.format == "json":
        json.dump({
            "q": q, "level": args.level, "target": list(w.target),
            "alpha": list(w.alpha), "combination": list(w.combination),
        }, out)
        out.write("\n")
    else:
        out.write(f"target      = {_fmt(w.target)}\n")
        out.write(f"alpha       = {_fmt(w.alpha)}\n")
        out.write(f"combination = {_fmt(w.combination)}\n")
    return 0


def cmd_example1(args, out) -> int:
    q = _modulus(args.q)
    if args.n < 1:
        raise UsageError("n must be at least 1")
    m = analysis.example1_matrix(q, args.n)
    has_left = left_inverse(m) is not None
    has_right = right_inverse(m) is not None
    census = None
    if args.census:
        try:
            census = analysis.solvability_census(m, budget=args.table_budget)
        except analysis.BudgetExceeded as exc:
            raise UsageError(str(exc)) from exc
    if args.format == "json":
        payload = {"matrix": to_dict(m), "left_inverse": has_left, "right_inverse": has_right}
        if census:
            payload["census"] = {
                "total": census.total, "solvable": census.solvable,
                "exactly_zero_at_origin": census.matches_zero_rule,
            }
        json.dump(payload, out)
        out.write("\n")
    else:
        out.write(to_text(m))
        out.write(f"left inverse: {'exists' if has_left else 'none'}\n")
        out.write(f"right inverse: {'exists' if has_right else 'none'}\n")
        if census:
            rule = "exactly those with f(0)=0" if census.matches_zero_rule else "NOT the f(0)=0 tables"
            out.write(f"{census.solvable} of {census.total} tables solvable ({rule})\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kqsets", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, level=True):
        sp.add_argument("--q", type=int, required=True, help="modulus (>= 2)")
        if level:
            sp.add_argument("--level", type=int, required=True, help="construction level n (matrix size 2^n)")
        sp.add_argument("--format", choices=["text", "json"], default="text")

    sp = sub.add_parser("build", help="print M_{2^level}")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="check the K_q and generation criteria at one level")
    common(sp)
    sp.add_argument("--property", choices=["kq", "gen", "both"], default="both")
    sp.add_argument("--mode", choices=["fast", "exhaustive", "closure"], default="fast")
    sp.add_argument("--table-budget", type=int, default=None)
    sp.add_argument("--closure-budget", type=int, default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("interpolate", help="find a character matching a function table")
    sp.add_argument("--table", required=True, help="function table file")
    sp.add_argument("--q", type=int, default=None)
    sp.add_argument("--level", type=int, default=None)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_interpolate)

    sp = sub.add_parser("witness", help="combine columns to land in a cylinder")
    common(sp)
    sp.add_argument("--target", required=True, help="comma-separated residues")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("example1", help="the basis-vector counterexample at length n")
    common(sp, level=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--census", action="store_true", help="count interpolable tables")
    sp.add_argument("--table-budget", type=int, default=None)
    sp.set_defaults(func=cmd_example1)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
