"""Command-line verification harness.

Orders are always given in integer half-units of the exponent grid
(t = q^(1/2)), so --order 120 means "verified below q^60".  Exit codes:
0 all checks pass, 1 at least one failed, 2 usage error, 3 internal
arithmetic error.  Diagnostic checks never affect the exit code.
"""

from __future__ import annotations

import argparse
import sys

from . import identities, suite
from ._backend import BACKEND
from .bailey import pair_from_name, verify_pair
from .partitions import partitions_table
from .report import VerificationReport
from .series import MonomialSpec

USAGE_ERROR, ARITH_ERROR = 2, 3


def _emit(report: VerificationReport, fmt: str, out) -> None:
    print(report.to_json() if fmt == "json" else report.to_text(), file=out)


def _parse_param(name: str, value: str):
    if value == "symbolic":
        return value
    if name in ("N", "M", "L", "n"):
        return int(value)
    return MonomialSpec.parse(value)


def _exit_code_for(reports: list[VerificationReport]) -> int:
    return suite.summarize(reports)["exit_code"]


def cmd_list(args, out) -> int:
    for case in identities.list_identities():
        domain = "; ".join(
            f"{name} in {{{', '.join(identities._domain_text(v) for v in dom)}}}"
            for name, dom in case.param_domain.items()
        )
        order = "exact" if case.default_order is None else str(case.default_order)
        flags = " [diagnostic]" if case.diagnostic else ""
        print(f"{case.id:18s} order={order:5s}{flags} {domain}", file=out)
        print(f"{'':18s} {case.claim}", file=out)
    return 0


def cmd_run(args, out) -> int:
    try:
        case = identities.REGISTRY[args.id]
    except KeyError:
        print(f"unknown identity id {args.id!r} (see 'qverify list')", file=sys.stderr)
        return USAGE_ERROR
    params = {}
    for spec in args.param or []:
        if "=" not in spec:
            print(f"--param needs name=value, got {spec!r}", file=sys.stderr)
            return USAGE_ERROR
        name, _, value = spec.partition("=")
        try:
            params[name.strip()] = _parse_param(name.strip(), value.strip())
        except ValueError as exc:
            print(f"bad parameter value {spec!r}: {exc}", file=sys.stderr)
            return USAGE_ERROR
    order = None
    if args.order is not None and args.order != "exact":
        try:
            order = int(args.order)
        except ValueError:
            print(f"--order must be an integer or 'exact', got {args.order!r}",
                  file=sys.stderr)
            return USAGE_ERROR

    reports = []
    try:
        if set(params) == set(case.param_domain):
            reports.append(identities.check_identity(args.id, params, order))
        elif not params:
            for binding in identities.iter_bindings(case):
                reports.append(identities.check_identity(args.id, binding, order))
        else:
            missing = sorted(set(case.param_domain) - set(params))
            print(f"{args.id}: missing parameters {missing} "
                  "(give all of them or none)", file=sys.stderr)
            return USAGE_ERROR
    except identities.BindingOutOfDomain as exc:
        print(str(exc), file=sys.stderr)
        return USAGE_ERROR
    for r in reports:
        _emit(r, args.format, out)
    return _exit_code_for(reports)


def cmd_suite(args, out) -> int:
    reports = []
    for r in suite.run_suite(order=args.order, n_max=args.max_n):
        reports.append(r)
        _emit(r, args.format, out)
    info = suite.summarize(reports)
    print(
        f"checks: {info['passed']}/{info['checked']} passed, "
        f"{info['failed']} failed, {info['errors']} errors; "
        f"diagnostics: {info['diagnostics_passed']}/{info['diagnostics']} passed "
        f"(backend: {BACKEND})",
        file=sys.stderr,
    )
    return info["exit_code"]


def cmd_partitions(args, out) -> int:
    print("n,omega,hecke_coeff,I,status", file=out)
    bad = False
    for n, w, h, i, status in partitions_table(args.max_n):
        print(f"{n},{w},{h},{i},{status}", file=out)
        bad = bad or status != "ok"
    return 1 if bad else 0


def cmd_pair(args, out) -> int:
    try:
        pair = pair_from_name(args.name)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"bad pair name {args.name!r}: {exc}", file=sys.stderr)
        return USAGE_ERROR
    report = verify_pair(pair, args.n_max, args.order)
    _emit(report, args.format, out)
    return _exit_code_for([report])


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qverify",
        description="Exact coefficient-by-coefficient verification of the "
        "registered q-series identities.  Orders are integer half-units "
        "(t = q^(1/2)); --order 120 checks below q^60.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the identity registry")

    run = sub.add_parser("run", help="check one identity")
    run.add_argument("--id", required=True)
    run.add_argument("--order", default=None,
                     help="truncation order in half-units, or 'exact'")
    run.add_argument("--param", action="append", metavar="NAME=VALUE",
                     help="binding such as x=symbolic, N=3, b=-q^{1/2}; "
                     "omit to run the whole declared domain")
    run.add_argument("--format", choices=("text", "json"), default="json")

    st = sub.add_parser("suite", help="run every registered check")
    st.add_argument("--order", type=int, default=None,
                    help="override all default orders (half-units)")
    st.add_argument("--max-n", type=int, default=40,
                    help="range for the three-way enumeration check")
    st.add_argument("--format", choices=("text", "json"), default="json")

    pt = sub.add_parser("partitions", help="CSV of the three enumerations")
    pt.add_argument("--max-n", type=int, required=True)

    pr = sub.add_parser("pair", help="check a named pair against the defining relation")
    pr.add_argument("--name", required=True,
                    help="e.g. unit, andrews(1,-1), thm2.3-first(symbolic), s2(unit)")
    pr.add_argument("--n-max", type=int, default=8)
    pr.add_argument("--order", type=int, default=60)
    pr.add_argument("--format", choices=("text", "json"), default="json")

    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else 0
    handlers = {
        "list": cmd_list,
        "run": cmd_run,
        "suite": cmd_suite,
        "partitions": cmd_partitions,
        "pair": cmd_pair,
    }
    try:
        return handlers[args.command](args, out)
    except Exception as exc:  # noqa: BLE001 - surface as arithmetic failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ARITH_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
