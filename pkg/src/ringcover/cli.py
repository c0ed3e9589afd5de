"""Command-line front end.

Exit codes: 0 success, 1 invalid presentation, 2 I/O or usage error,
3 resource refusal (ring or census space too large).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import masks
from .census import (
    census,
    census_order,
    estimate,
    profile_table,
    result_to_dict,
    table_csv,
    table_markdown,
)
from .covering import CoveringProfile, profile, witness_elements
from .errors import (
    IllDefined,
    MalformedPresentation,
    NonAssociative,
    NotPrime,
    RingError,
    SpaceTooLarge,
    TooLarge,
)
from .lattice import MemberClass, generated_member
from .ring import (
    DEFAULT_MAX_ORDER,
    FAMILIES,
    NAMED,
    FiniteRing,
    RingPresentation,
    build_family,
    build_named,
    direct_product,
    factor_ring,
    has_identity,
    is_isomorphic,
    validate_presentation,
)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3

CLI_CENSUS_ORDER_CAP = 9

_PROFILE_FIELDS = ("sigma_add", "sigma", "eta_left", "eta_right", "eta")


class UsageError(Exception):
    pass


def _load(path: str, max_order: int) -> FiniteRing:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        pres = RingPresentation.from_json(text)
    except MalformedPresentation as exc:
        raise MalformedPresentation(f"{path}: {exc}") from exc
    return validate_presentation(pres, max_order)


def _coords(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--seed expects comma-separated integers, got {text!r}") from exc


def _ring_dict(R: FiniteRing) -> dict[str, Any]:
    return {"order": R.n, **R.presentation.to_dict()}


def _profile_report(R: FiniteRing, args) -> dict[str, Any]:
    prof = profile(R, max_order=args.max_order)
    identity = has_identity(R)
    report: dict[str, Any] = {
        "ring": _ring_dict(R),
        "identity": identity,
        "profile": prof.to_dict(),
    }
    if not args.no_witness:
        report["witnesses"] = {name: witness_elements(R, w) for name, w in prof.witnesses.items()}
    return report


def _render_profile(report: dict[str, Any], fmt: str) -> str:
    prof = report["profile"]
    if fmt == "json":
        return json.dumps(report) + "\n"
    if fmt == "csv":
        return ",".join(_PROFILE_FIELDS) + "\n" + ",".join(str(prof[f]) for f in _PROFILE_FIELDS) + "\n"
    lines = [
        "| " + " | ".join(_PROFILE_FIELDS) + " |",
        "|" + "---|" * len(_PROFILE_FIELDS),
        "| " + " | ".join(str(prof[f]) for f in _PROFILE_FIELDS) + " |",
    ]
    return "\n".join(lines) + "\n"


def parse_profile(report_text: str) -> CoveringProfile:
    """Recover the profile from an emitted JSON report."""
    return CoveringProfile.from_dict(json.loads(report_text)["profile"])


def cmd_profile(args) -> tuple[str, int]:
    R = _load(args.file, args.max_order)
    return _render_profile(_profile_report(R, args), args.format), EXIT_OK


def cmd_family(args) -> tuple[str, int]:
    R = build_family(args.name, args.p, args.max_order)
    return _render_profile(_profile_report(R, args), args.format), EXIT_OK


def cmd_named(args) -> tuple[str, int]:
    R = build_named(args.name)
    if R.n > args.max_order:
        raise TooLarge(f"{args.name} has {R.n} elements, limit is {args.max_order}")
    return _render_profile(_profile_report(R, args), args.format), EXIT_OK


def cmd_census(args) -> tuple[str, int]:
    if args.shape:
        shape = _coords(args.shape)
        result = census(shape, workers=args.workers, prune=not args.no_prune)
    else:
        if args.order > CLI_CENSUS_ORDER_CAP and not args.allow_large:
            raise SpaceTooLarge(
                f"census order {args.order} is above the default cap {CLI_CENSUS_ORDER_CAP} "
                f"(largest shape has {estimate(args.order)} raw candidates; pass --allow-large to try)",
                estimate(args.order),
            )
        result = census_order(args.order, workers=args.workers, prune=not args.no_prune)
    rows = profile_table(result, include_all=args.all_rows)
    if args.format == "json":
        return json.dumps(result_to_dict(result, args.all_rows)) + "\n", EXIT_OK
    if args.format == "csv":
        return table_csv(rows), EXIT_OK
    return table_markdown(rows), EXIT_OK


def cmd_quotient(args) -> tuple[str, int]:
    R = _load(args.file, args.max_order)
    seeds = [R.element(_coords(s)) for s in args.seed]
    ideal = generated_member(R, seeds, MemberClass.TWO_SIDED_IDEAL)
    Q, proj = factor_ring(R, ideal)
    report = _profile_report(Q, args)
    report["ideal"] = masks.to_indices(ideal, R.n).tolist()
    report["projection"] = proj.tolist()
    return _render_profile(report, args.format), EXIT_OK


def cmd_product(args) -> tuple[str, int]:
    R = _load(args.left, args.max_order)
    S = _load(args.right, args.max_order)
    P = direct_product(R, S, args.max_order)
    return _render_profile(_profile_report(P, args), args.format), EXIT_OK


def cmd_isomorphic(args) -> tuple[str, int]:
    R = _load(args.left, args.max_order)
    S = _load(args.right, args.max_order)
    w = is_isomorphic(R, S)
    mapping = list(w.mapping) if w is not None else None
    if args.format == "json":
        return json.dumps({"isomorphic": w is not None, "mapping": mapping}) + "\n", EXIT_OK
    if args.format == "csv":
        return "isomorphic,mapping\n" + f"{w is not None},{' '.join(map(str, mapping or []))}\n", EXIT_OK
    return ("isomorphic: " + ("yes " + str(mapping) if w else "no")) + "\n", EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    orders = [args.order] if args.order else None
    checks = run_suite(args.suite, orders=orders, workers=args.workers)
    ok = all(c.passed for c in checks)
    if args.format == "json":
        payload = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
        text = json.dumps({"passed": ok, "checks": payload}) + "\n"
    elif args.format == "csv":
        text = "check,passed\n" + "".join(f"{c.name},{c.passed}\n" for c in checks)
    else:
        text = "".join(c.line() + "\n" for c in checks)
    return text, EXIT_OK if ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="element-count limit")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--no-witness", action="store_true", help="omit witness covers from profile reports")

    parser = argparse.ArgumentParser(prog="ringcover", description="Covering numbers of finite rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", parents=[common], help="profile a presentation file")
    p.add_argument("file")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("family", parents=[common], help="profile one of the families R1..R4")
    p.add_argument("name", choices=FAMILIES)
    p.add_argument("--p", type=int, required=True, help="prime")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("named", parents=[common], help="profile a named matrix ring")
    p.add_argument("name", choices=NAMED)
    p.set_defaults(func=cmd_named)

    p = sub.add_parser("census", parents=[common], help="classify all rings of an order or shape")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", type=int)
    group.add_argument("--shape", help="generator orders, e.g. 2,2,2")
    p.add_argument("--all-rows", action="store_true", help="include non-coverable profiles")
    p.add_argument("--no-prune", action="store_true", help="check associativity only on complete tables")
    p.add_argument("--allow-large", action="store_true", help=f"lift the order cap of {CLI_CENSUS_ORDER_CAP}")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("quotient", parents=[common], help="factor by the ideal generated by seeds")
    p.add_argument("file")
    p.add_argument("--seed", action="append", required=True, help="element coordinates, e.g. 0,1,0")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("product", parents=[common], help="direct product of two presentations")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("isomorphic", parents=[common], help="test two presentations for isomorphism")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_isomorphic)

    p = sub.add_parser("verify", parents=[common], help="re-run the reproduction checks")
    p.add_argument("suite", nargs="?", default="all", choices=("all",) + SUITES)
    p.add_argument("--order", type=int, help="restrict the tables suite to one order")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = args.func(args)
    except (IllDefined, NonAssociative) as exc:
        print(f"invalid presentation: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (MalformedPresentation, UsageError, NotPrime, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TooLarge, SpaceTooLarge) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except RingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
