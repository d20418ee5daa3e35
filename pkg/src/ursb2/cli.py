"""Command-line interface: ``ursb2 <verb> ...``.

Exit codes: 0 on success, 1 when a check fails, 2 on usage errors (bad
arguments, invalid root-of-unity settings, unreadable files).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import pbw
from .cyclotomic import make_root_config
from .errors import ArtifactError, DimensionCeiling
from .iso import find_intertwiner, iso_by_criteria
from .pidegree import pi_degree
from .repmod import FAMILIES, Representation, build, validate_params
from .verify import check, check_dimension_bound, is_simple
from .workbench import SweepSpec, dump_json, load_json, run_sweep, summary_table


class UsageError(Exception):
    pass


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, required=True, help="order of r")
    p.add_argument("--n", type=int, required=True, help="order of s")
    p.add_argument("--k1", type=int, default=1)
    p.add_argument("--k2", type=int, default=1)
    p.add_argument("--level-multiplier", type=int, default=1,
                   help="work in Q(zeta_L) with L = lcm(m, n) times this")


def _config(args):
    return make_root_config(args.m, args.n, args.k1, args.k2, args.level_multiplier)


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not valid JSON: {text!r} ({exc.msg})") from None


def _table(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs)


def _emit(obj) -> None:
    sys.stdout.write(dump_json(obj))


def _load_rep(path: str) -> Representation:
    try:
        return Representation.from_json(load_json(path))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read representation from {path}: {exc}") from None


# ----------------------------------------------------------------------
# Verbs
# ----------------------------------------------------------------------

def cmd_pideg(args) -> int:
    report = pi_degree(_config(args))
    if args.json:
        _emit(report.to_json())
    elif args.details:
        print(_table([("PI degree", report.pi_deg_snf),
                      ("closed form", report.pi_deg_closed),
                      ("case", report.case_label),
                      ("invariant factors", " ".join(map(str, report.invariant_factors)))]))
    else:
        print(report.pi_deg_snf)
    return 0 if report.pi_deg_snf == report.pi_deg_closed else 1


def cmd_normal_form(args) -> int:
    c = _config(args)
    try:
        poly = pbw.normalize(args.word, c)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _emit(poly.to_json())
    else:
        print(pbw.format_poly(poly))
    return 0


def cmd_build_module(args) -> int:
    c = _config(args)
    params = _json_arg(args.params)
    if not isinstance(params, list):
        raise UsageError("--params must be a JSON list")
    rep = build(args.family, c, params, reading=args.reading)
    text = dump_json(rep.to_json())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        if not args.json:
            print(f"wrote {args.family} of dimension {rep.dim} to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    rep = _load_rep(args.rep)
    report = check(rep)
    out = {"family": rep.family, "dim": rep.dim, **report.to_json()}
    ok = report.passed
    if not rep.family.startswith(("LIFT_", "SUM")):
        pid = pi_degree(rep.config)
        out["within_pi_degree"] = check_dimension_bound(rep, pid)
        out["pi_degree"] = pid.pi_deg_snf
        ok = ok and out["within_pi_degree"]
    _emit(out)
    return 0 if ok else 1


def cmd_simplicity(args) -> int:
    rep = _load_rep(args.rep)
    try:
        simple = is_simple(rep, method=args.method, ceiling=args.ceiling)
    except DimensionCeiling as exc:
        _emit({"family": rep.family, "dim": rep.dim, "simple": None, "error": str(exc)})
        return 2
    _emit({"family": rep.family, "dim": rep.dim, "simple": simple})
    return 0 if simple else 1


def cmd_iso(args) -> int:
    c = _config(args)
    p, p2 = _json_arg(args.p), _json_arg(args.p2)
    if not isinstance(p, list) or not isinstance(p2, list):
        raise UsageError("--p and --p2 must be JSON lists")
    verdict = iso_by_criteria(args.family, p, p2, c, reading=args.reading)
    if args.intertwiner:
        rep = build(args.family, c, validate_params(args.family, c, p))
        rep2 = build(args.family, c, validate_params(args.family, c, p2))
        T = find_intertwiner(rep, rep2)
        verdict.by_intertwiner = T is not None
        verdict.intertwiner = T
    if args.json:
        _emit(verdict.to_json())
    else:
        rows = [("isomorphic (criteria)", "yes" if verdict.by_criteria else "no")]
        if verdict.witness_shift is not None:
            rows.append(("shift (u, v)", str(verdict.witness_shift)))
        if verdict.by_intertwiner is not None:
            rows.append(("intertwiner found", "yes" if verdict.by_intertwiner else "no"))
        print(_table(rows))
    return 0 if verdict.consistent else 1


def cmd_sweep(args) -> int:
    families = FAMILIES if args.families is None else tuple(f for f in args.families.split(",") if f)
    try:
        spec = SweepSpec(m_range=tuple(args.m_range), n_range=tuple(args.n_range),
                         k_policy="fixed" if args.k1 is not None else "all",
                         k1=args.k1 or 1, k2=args.k2 or 1, families=families,
                         samples=args.samples, ceiling=args.ceiling, out_dir=args.out,
                         seed=args.seed, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = run_sweep(spec)
    if args.json:
        _emit(summary)
    else:
        print(summary_table(summary))
    return 1 if summary["failures"] else 0


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ursb2",
                                     description="Exact computations with U+_{r,s}(B2) at roots of unity.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("pideg", help="PI degree via Smith normal form and closed form")
    _add_config_args(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--details", action="store_true", help="print a table instead of the bare number")
    p.set_defaults(func=cmd_pideg)

    p = sub.add_parser("normal-form", help="PBW normal form of a word in X1..X4")
    p.add_argument("word", help='e.g. "X4 X4 X1"')
    _add_config_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("build-module", help="construct a module family instance")
    p.add_argument("--family", required=True, choices=FAMILIES)
    _add_config_args(p)
    p.add_argument("--params", required=True, help='JSON list, e.g. \'[1, "1/2", {"zeta": 1}]\'')
    p.add_argument("--out")
    p.add_argument("--reading", choices=("repaired", "literal"), default="repaired")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_build_module)

    p = sub.add_parser("verify", help="check defining relations of a stored representation")
    p.add_argument("rep")
    p.add_argument("--json", action="store_true", help="accepted for uniformity; output is always JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simplicity", help="absolute irreducibility of a stored representation")
    p.add_argument("rep")
    p.add_argument("--method", choices=("auto", "exact", "modular"), default="auto")
    p.add_argument("--ceiling", type=int, default=None,
                   help="largest dimension to attempt (default from URSB2_CEILING or 32)")
    p.add_argument("--json", action="store_true", help="accepted for uniformity; output is always JSON")
    p.set_defaults(func=cmd_simplicity)

    p = sub.add_parser("iso", help="decide isomorphism of two parameter tuples of one family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    _add_config_args(p)
    p.add_argument("--p", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--intertwiner", action="store_true", help="also solve for an intertwiner")
    p.add_argument("--reading", choices=("repaired", "literal"), default="repaired")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("sweep", help="run the verification pipeline over a grid of settings")
    p.add_argument("--m-range", nargs=2, type=int, default=[2, 6], metavar=("LO", "HI"))
    p.add_argument("--n-range", nargs=2, type=int, default=[2, 6], metavar=("LO", "HI"))
    p.add_argument("--k1", type=int, default=None, help="fix k1 and k2 instead of enumerating")
    p.add_argument("--k2", type=int, default=None)
    p.add_argument("--families", default=None, help="comma separated; empty string for PI degree only")
    p.add_argument("--samples", type=int, default=2)
    p.add_argument("--ceiling", type=int, default=32)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def cli_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ArtifactError, ValueError, TypeError) as exc:
        print(f"ursb2 {args.verb}: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> None:
    sys.exit(cli_dispatch(argv))


if __name__ == "__main__":
    main()
