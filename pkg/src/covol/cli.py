"""Command-line interface for the certified covolume pipeline.

Subcommands: table1 (spectral/volume bound table), bounds (per-dimension
volume quantities), sieve (admissible-field sieve reports), forms
(quadratic-form invariant profiles), fields validate (field-table checks).

Exit codes: 0 success, 1 computation or data error, 2 undecided interval
comparison, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from . import bounds as bounds_mod
from . import forms as forms_mod
from . import spectral
from .sieve import SieveReport, sieve as run_sieve, sieve_all as run_sieve_all
from .fielddata import FieldDataError, FieldTable, default_table, load_field_table
from .numerics import BoundedReal, Context, UndecidedComparison

__all__ = ["main", "RunConfig", "build_parser"]

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems via exception, not exit()."""

    def error(self, message: str) -> None:
        raise UsageError(message)


@dataclass
class RunConfig:
    precision: int
    mode: str
    fields_path: Optional[str]
    fmt: str
    args: argparse.Namespace

    @property
    def context(self) -> Context:
        return Context(self.precision)

    def field_table(self) -> FieldTable:
        if self.fields_path is None:
            return default_table()
        with open(self.fields_path, "r", encoding="utf-8") as handle:
            return load_field_table(handle.read())


def _interval_dict(x: BoundedReal) -> dict:
    return {"mid": x.mid_str(), "rad": x.rad_str()}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--precision", type=int, default=128, help="working precision in bits (>= 64)"
    )
    common.add_argument(
        "--delta",
        choices=("proven", "conjectural"),
        default="proven",
        help="spectral-gap assumption",
    )
    common.add_argument("--fields", default=None, help="path to a field-table CSV")
    common.add_argument(
        "--format",
        choices=("text", "csv", "json"),
        default="text",
        dest="fmt",
        help="output format",
    )

    parser = _Parser(prog="covol", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common], help="bound table for n = 2..29")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=29)

    p = sub.add_parser("bounds", parents=[common], help="volume quantities for one n")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--cocompact", action="store_true")
    group.add_argument("--noncocompact", action="store_true")

    p = sub.add_parser("sieve", parents=[common], help="admissible-field sieve")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--range", dest="n_range", help="dimension range a..b")

    p = sub.add_parser("forms", parents=[common], help="quadratic-form profiles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", default=None, help="lambda-product budget (rational)")
    p.add_argument("--named", choices=sorted(forms_mod.NAMED_FORMS))

    p = sub.add_parser("fields", parents=[common], help="field-table utilities")
    p.add_argument("action", choices=("validate",))

    return parser


def cmd_table1(config: RunConfig) -> int:
    args = config.args
    report = spectral.table1(config.context, args.n_min, args.n_max, config.mode)
    if config.fmt == "csv":
        print(report.to_csv(), end="")
    elif config.fmt == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK


def cmd_bounds(config: RunConfig) -> int:
    args = config.args
    ctx = config.context
    variants: List[bool] = [True, False]
    if args.cocompact:
        variants = [True]
    elif args.noncocompact:
        variants = [False]
    m = spectral.m_bound(ctx, args.n, config.mode)
    r_c, r_nc = spectral.r_ratios(ctx, args.n, config.mode)
    entries = []
    for cocompact in variants:
        vb = bounds_mod.omega(ctx, args.n, cocompact)
        entries.append(
            {
                "cocompact": cocompact,
                "branch": vb.branch,
                "omega": _interval_dict(vb.value),
                "R": _interval_dict(r_c if cocompact else r_nc),
            }
        )
    payload = {
        "n": args.n,
        "mode": config.mode,
        "M": _interval_dict(m),
        "bounds": entries,
    }
    if config.fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"n = {args.n}  mode = {config.mode}")
        print(f"M(n)  = {m.mid_str(12)} (rad {m.rad_str()})")
        for entry in entries:
            tag = "R_c " if entry["cocompact"] else "R_nc"
            print(
                f"{tag} = {entry['R']['mid'][:20]} (rad {entry['R']['rad']})  "
                f"omega = {entry['omega']['mid'][:20]} [{entry['branch']}]"
            )
    return EXIT_OK


def _sieve_text(report: SieveReport) -> str:
    lines = [f"n = {report.n} (r = {report.r}, case {report.case})"]
    if report.empty_reason:
        lines.append(f"  no admissible fields: {report.empty_reason}")
        return "\n".join(lines)
    for d, cap in report.admissible:
        lines.append(f"  d = {d}: D_k <= {cap}")
    if report.refined:
        lines.append("  refined: " + ", ".join(f"({d}, {D})" for d, D in report.refined))
    if report.unrefined:
        lines.append(
            "  unrefined (field data incomplete): "
            + ", ".join(f"(d = {d}, cap {cap})" for d, cap in report.unrefined)
        )
    for exc in report.excluded:
        lines.append(f"  excluded ({exc.degree}, {exc.discriminant}): {exc.reason}")
    for (d, disc), ceiling in sorted(report.dl_ceilings.items()):
        lines.append(f"  extension cap for ({d}, {disc}): D_l <= {ceiling}")
    return "\n".join(lines)


def cmd_sieve(config: RunConfig) -> int:
    args = config.args
    ctx = config.context
    table = config.field_table()
    if args.n is not None:
        reports = [run_sieve(ctx, args.n, table, config.mode)]
    else:
        try:
            lo_s, hi_s = args.n_range.split("..")
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise UsageError(f"bad --range {args.n_range!r}, expected a..b")
        reports = run_sieve_all(ctx, lo, hi, table, config.mode)
    if config.fmt == "json":
        print(json.dumps([r.to_json_dict() for r in reports], indent=2))
    else:
        print("\n".join(_sieve_text(r) for r in reports))
    return EXIT_OK


def cmd_forms(config: RunConfig) -> int:
    args = config.args
    if args.named is None and args.budget is None:
        raise UsageError("forms needs --named and/or --budget")
    payload: dict = {"n": args.n}
    if args.named is not None:
        profile = forms_mod.named_form_invariants(args.named, args.n)
        result = forms_mod.local_global_check(profile)
        payload["profile"] = profile.to_json_dict()
        payload["accepted"] = result.accepted
        payload["reason"] = result.reason
    if args.budget is not None:
        budget = Fraction(args.budget)
        sets = forms_mod.enumerate_T_sets(args.n, budget)
        payload["budget"] = str(budget)
        payload["T_sets"] = [list(s) for s in sets]
    if config.fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        if "profile" in payload:
            verdict = "accepted" if payload["accepted"] else "rejected"
            print(f"{args.named} in dimension {args.n}: {verdict} ({payload['reason']})")
            print(json.dumps(payload["profile"], indent=2))
        if "T_sets" in payload:
            print(f"T sets within budget {payload['budget']}:")
            for s in payload["T_sets"]:
                print("  {" + ", ".join(map(str, s)) + "}")
    return EXIT_OK


def cmd_fields(config: RunConfig) -> int:
    table = config.field_table()
    problems = table.validate()
    if config.fmt == "json":
        print(
            json.dumps(
                {
                    "records": len(table.records),
                    "complete": {str(d): up for d, up in sorted(table.completeness.items())},
                    "problems": problems,
                },
                indent=2,
            )
        )
    else:
        print(f"{len(table.records)} records")
        for d, up in sorted(table.completeness.items()):
            print(f"  degree {d}: certified complete up to {up}")
        for problem in problems:
            print(f"  problem: {problem}")
    return EXIT_OK if not problems else EXIT_COMPUTATION


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.precision < 64:
            raise UsageError("--precision must be at least 64")
        config = RunConfig(
            precision=args.precision,
            mode=args.delta,
            fields_path=args.fields,
            fmt=args.fmt,
            args=args,
        )
        handler = {
            "table1": cmd_table1,
            "bounds": cmd_bounds,
            "sieve": cmd_sieve,
            "forms": cmd_forms,
            "fields": cmd_fields,
        }[args.command]
        return handler(config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndecidedComparison as exc:
        print(f"undecided comparison: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (ValueError, FieldDataError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
