"""
Command line front end: belyi verify | passport | compose | j | iso-verify | monodromy | hpg-check | catalog run
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from belyi.belyi0 import Genus0BelyiMap
from belyi.catalog import CatalogEntry, build_curve, build_genus0, build_genus1, load_entry
from belyi.composer import CoverSpec, compose_with_cover
from belyi.config import NumericSettings, catalog_dir
from belyi.curves import SuperellipticCurve, j_invariant
from belyi.errors import BelyiError, InvalidInput
from belyi.exactnum import QQ
from belyi.expressions import parse_polynomial, parse_ratfun
from belyi.hypergeo import default_samples, verify_quintic_identity
from belyi.log_utils import colorize, init_logging
from belyi.monodromy import genus_from_triple, permutation_triple
from belyi.reports import VerificationReport
from belyi.verifiers import verifier_for
from belyi.verifiers.harness import exit_code, parse_filters, run_catalog, summary

GENUS1_KINDS = ("genus1-cover", "genus1-explicit", "genus1-isogeny-composite")


def settings_from(args) -> NumericSettings:
    return NumericSettings.from_env(precision=getattr(args, "precision", None), cluster_tol=getattr(args, "tol", None))


def build_map(entry: CatalogEntry):
    if entry.kind == "genus0":
        return build_genus0(entry)
    if entry.kind in GENUS1_KINDS:
        return build_genus1(entry)
    raise InvalidInput(f"{entry.name} is a {entry.kind} entry, not a Belyi map")


def print_report(report: VerificationReport) -> None:
    status = "pass" if report.passed else "fail"
    print(colorize(status, f"{report.entry} ({report.kind}): {status.upper()} in {report.wall_time:.2f}s"))
    for check in report.checks:
        print("  " + colorize(check.status, f"[{check.status}] {check.claim}") + (f": {check.detail}" if check.detail else ""))
    for key, value in report.details.items():
        if key != "triple":
            print(f"  {key} = {value}")


def emit(reports: Sequence[VerificationReport], as_json: bool) -> int:
    if as_json:
        print(json.dumps([r.model_dump() for r in reports], indent=2, default=str))
    else:
        for report in reports:
            print_report(report)
    return exit_code(reports)


def cmd_verify(args) -> int:
    entry = load_entry(args.entry)
    report = verifier_for(entry.kind).run(entry, args.numeric, settings_from(args))
    return emit([report], args.json)


def cmd_iso_verify(args) -> int:
    entry = load_entry(args.entry)
    if entry.kind != "isogeny":
        raise InvalidInput(f"{entry.name} is a {entry.kind} entry, not an isogeny")
    return emit([verifier_for(entry.kind).run(entry)], args.json)


def cmd_passport(args) -> int:
    built = build_map(load_entry(args.entry))
    print(built.passport)
    return 0


def _genus0_argument(text: str) -> Genus0BelyiMap:
    path = Path(text)
    if path.suffix == ".json":
        return build_genus0(load_entry(path))
    return Genus0BelyiMap.create(parse_ratfun(text, QQ))


def _cover_argument(text: str, field) -> CoverSpec:
    n, sep, f = text.partition(":")
    if not sep or not n.strip().isdigit():
        raise InvalidInput(f"cover {text!r} is not of the form n:f")
    return CoverSpec(int(n), parse_polynomial(f, field))


def cmd_compose(args) -> int:
    g0 = _genus0_argument(args.genus0)
    if not g0.field.is_rational:
        raise InvalidInput("compose works over Q; write entries over number fields by hand")
    cover = _cover_argument(args.cover, g0.field)
    built = compose_with_cover(g0, cover)
    print(f"{built.curve}: {built.passport}")
    if args.output:
        entry = {
            "kind": "genus1-cover",
            "genus0": str(g0.map),
            "cover": {"n": cover.n, "f": str(cover.f)},
            "expected_passport": str(built.passport),
            "expected_degree": built.degree,
            "expected_j": str(j_invariant(built.curve)),
        }
        Path(args.output).write_text(json.dumps(entry, indent=2) + "\n")
        print(f"wrote {args.output}")
    return 0


def cmd_j(args) -> int:
    path = Path(args.curve)
    if path.suffix == ".json":
        entry = load_entry(path)
        curve = build_curve(entry) if entry.kind == "curve" else build_map(entry).curve
    else:
        n, sep, f = args.curve.partition(":")
        if sep and not n.strip().isdigit():
            raise InvalidInput(f"curve {args.curve!r} is not of the form n:f")
        curve = SuperellipticCurve(int(n), parse_polynomial(f, QQ)) if sep else SuperellipticCurve(2, parse_polynomial(args.curve, QQ))
    print(j_invariant(curve))
    return 0


def cmd_monodromy(args) -> int:
    built = build_map(load_entry(args.entry))
    triple = permutation_triple(built, settings_from(args))
    result = {**triple.to_cycles(), "passport": str(triple.passport()), "genus": genus_from_triple(triple)}
    if args.json:
        print(json.dumps(result, indent=2))
    else:
        for key, value in result.items():
            print(f"{key}: {value}")
    return 0 if triple.passport() == built.passport else 1


def cmd_hpg_check(args) -> int:
    result = verify_quintic_identity(default_samples(args.samples), args.precision or 128)
    for z, residual in result.residuals:
        print(f"z = {z:.6f}: residual {residual:.3e}")
    for z in result.rejected:
        print(colorize("skipped", f"z = {z:.6f}: rejected, the path crosses the branch cut"))
    ok = bool(result.residuals) and result.max_residual < args.tolerance
    print(colorize("pass" if ok else "fail", f"max residual {result.max_residual:.3e}"))
    return 0 if ok else 1


def cmd_catalog_run(args) -> int:
    reports = run_catalog(args.dir, parse_filters(args.filter), args.numeric, settings_from(args))
    if args.json:
        print(json.dumps([r.stable_dict() for r in reports], indent=2, default=str))
    else:
        table = summary(reports)
        print(table.to_string(index=False) if len(table) else "no entries")
        failed = int((table["failed"] > 0).sum()) if len(table) else 0
        print(f"{len(reports) - failed} passed, {failed} failed")
    return exit_code(reports)


def _numeric_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--precision", type=int, help="working precision in bits")
    parser.add_argument("--tol", type=float, help="relative clustering tolerance")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="belyi", description="Exact verification of genus-0 and genus-1 Belyi maps")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at debug level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one catalog entry")
    p.add_argument("entry")
    p.add_argument("--numeric", action="store_true", help="add monodromy cross-checks")
    p.add_argument("--json", action="store_true")
    _numeric_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("passport", help="print the computed passport of a map entry")
    p.add_argument("entry")
    p.set_defaults(func=cmd_passport)

    p = sub.add_parser("compose", help="compose a genus-0 map with a superelliptic cover")
    p.add_argument("--genus0", required=True, help="genus0 entry file or rational function in x")
    p.add_argument("--cover", required=True, help="n:f, for example 2:x^3+1")
    p.add_argument("-o", "--output", help="write a genus1-cover entry to this file")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("j", help="j-invariant of a curve entry, of n:f, or of y^2 = f")
    p.add_argument("curve")
    p.set_defaults(func=cmd_j)

    p = sub.add_parser("iso-verify", help="verify an isogeny entry")
    p.add_argument("entry")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_iso_verify)

    p = sub.add_parser("monodromy", help="numeric permutation triple of a map entry")
    p.add_argument("entry")
    p.add_argument("--json", action="store_true")
    _numeric_flags(p)
    p.set_defaults(func=cmd_monodromy)

    p = sub.add_parser("hpg-check", help="numeric check of the degree-5 hypergeometric transformation")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--precision", type=int)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.set_defaults(func=cmd_hpg_check)

    p = sub.add_parser("catalog", help="catalog operations")
    catalog_sub = p.add_subparsers(dest="catalog_command", required=True)
    run = catalog_sub.add_parser("run", help="verify every entry of a catalog directory")
    run.add_argument("dir", nargs="?", default=catalog_dir())
    run.add_argument("--numeric", action="store_true")
    run.add_argument("--filter", action="append", default=[], help="key=value on kind, name, degree or metadata")
    run.add_argument("--json", action="store_true")
    _numeric_flags(run)
    run.set_defaults(func=cmd_catalog_run)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    init_logging(logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except BelyiError as exc:
        print(colorize("fail", f"{type(exc).__name__}: {exc}", sys.stderr), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
