"""Command-line surface.

Subcommands: validate, analyze, decompose, periods, ergodic,
check-theorems, gallery.  Exit codes: 0 all checks pass, 1 at least one
check failed, 2 input or precondition error.  Reports go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .credal import CredalSet, check_invariance, extreme_points
from .decomposition import cesaro_upper, e_d_closed_form, e_d_lp, theta_d
from .ergodicity import ergodic_decomposition, ergodic_theorem_check, strong_ergodicity_check
from .errors import CredalDynError, InputError
from .gallery import gen_cycle, gen_product_shift, gen_random_invariant
from .periods import period_of, period_report
from .reports import analyze, check_ledger
from .systems import Observable, SystemMap


def _load(path: str) -> tuple[SystemMap, CredalSet, str | None]:
    if path == "-":
        return io.parse_system(sys.stdin.read())
    with open(path, "rb") as fh:
        return io.parse_system(fh.read())


def _parse_observable(text: str, n: int) -> Observable:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise InputError(f"observable needs {n} entries, got {len(parts)}")
    return Observable(tuple(io.parse_rational(p) for p in parts))


def _emit(report, as_json: bool):
    if as_json:
        print(io.dumps(report))
    else:
        _print_text(report)


def _print_text(value, indent: int = 0):
    pad = "  " * indent
    data = io.to_jsonable(value)
    _print_plain(data, indent)


def _print_plain(data, indent: int):
    pad = "  " * indent
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _print_plain(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)):
                _print_plain(v, indent)
                print()
            else:
                print(f"{pad}- {v}")
    else:
        print(f"{pad}{data}")


def _cmd_validate(args) -> int:
    T, C, label = _load(args.input)
    verdict = check_invariance(extreme_points(C), T)
    _emit(verdict, args.json)
    return 0 if verdict.invariant else 1


def _cmd_analyze(args) -> int:
    T, C, label = _load(args.input)
    f = _parse_observable(args.f, T.n) if args.f else None
    report = analyze(C, T, f=f, label=label, seed=args.seed)
    _emit(report, args.json)
    return 0 if report.all_ok else 1


def _cmd_decompose(args) -> int:
    T, C, _ = _load(args.input)
    base = extreme_points(C)
    d = args.d
    report = {"d": d, "component": theta_d(base, T, d)}
    if args.f:
        f = _parse_observable(args.f, T.n)
        lp = e_d_lp(base, T, d, f)
        closed = e_d_closed_form(base, T, d, f)
        bounds = {h: cesaro_upper(base, T, d, f, h) for h in range(1, 6)}
        report.update(
            {
                "observable": f,
                "value-by-extreme-points": lp,
                "value-by-closed-form": closed,
                "finite-horizon-bounds": bounds,
                "methods-agree": lp == closed,
            }
        )
    _emit(report, args.json)
    ok = report.get("methods-agree", True)
    return 0 if ok else 1


def _cmd_periods(args) -> int:
    T, C, _ = _load(args.input)
    report = period_report(extreme_points(C), T, l_max=args.l_max)
    _emit(report, args.json)
    return 0 if all(c.ok for c in report.lattice_checks) else 1


def _cmd_ergodic(args) -> int:
    T, C, _ = _load(args.input)
    base = extreme_points(C)
    p = period_of(base, T)
    strong = strong_ergodicity_check(base, T)
    report = {
        "p": p,
        "strong-ergodicity": strong,
        "decompositions": [
            ergodic_decomposition(base, T, d) for d in range(1, p + 1) if p % d == 0
        ],
    }
    ok = True
    if args.f:
        f = _parse_observable(args.f, T.n)
        if strong.ok:
            tm = ergodic_theorem_check(base, T, f)
            report["time-mean"] = tm
            ok = tm.ok
        else:
            report["time-mean"] = {"status": "hypothesis-not-met", "hypothesis": "strong-ergodicity"}
    _emit(report, args.json)
    return 0 if ok else 1


def _cmd_check_theorems(args) -> int:
    T, C, _ = _load(args.input)
    ledger = check_ledger(C, T, seed=args.seed, d_max=args.d_max)
    failed = [c for c in ledger if not c.ok]
    if args.json:
        print(io.dumps({"checks": ledger, "failed": len(failed)}))
    else:
        for c in ledger:
            status = "verified" if c.ok else "FAILED"
            print(f"{status:8s} {c.name}  {io.to_jsonable(c.detail)}")
        print(f"{len(ledger) - len(failed)}/{len(ledger)} checks verified")
    return 0 if not failed else 1


def _cmd_gallery(args) -> int:
    if args.kind == "cycle":
        T, C = gen_cycle(args.q)
        label = f"cycle-{args.q}"
    elif args.kind == "product-shift":
        margs = [row.split(",") for row in args.marginal]
        T, C = gen_product_shift(args.s, args.m, margs)
        label = f"product-shift-{args.s}-{args.m}"
    else:
        T, C = gen_random_invariant(args.n, args.k, args.seed)
        label = f"random-{args.n}-{args.k}-seed{args.seed}"
    print(io.dumps(io.serialize_system(T, C, label)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credaldyn",
        description="Exact periodic and ergodic analysis of finite credal dynamical systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="system document path, or - for stdin")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--json", action="store_true", help="JSON output")
        group.add_argument("--text", dest="json", action="store_false", help="plain text output")
        p.set_defaults(json=False)

    p = sub.add_parser("validate", help="check invariance of the credal set")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("analyze", help="full analysis, optionally for one observable")
    common(p)
    p.add_argument("--f", help="comma-separated rational observable values")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("decompose", help="one periodic component, by all three methods")
    common(p)
    p.add_argument("--d", type=int, required=True, help="step size")
    p.add_argument("--f", help="comma-separated rational observable values")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("periods", help="period lattice report")
    common(p)
    p.add_argument("--l-max", type=int, default=12)
    p.set_defaults(func=_cmd_periods)

    p = sub.add_parser("ergodic", help="ergodic decompositions and the time-mean check")
    common(p)
    p.add_argument("--f", help="comma-separated rational observable values")
    p.set_defaults(func=_cmd_ergodic)

    p = sub.add_parser("check-theorems", help="run the full identity-check ledger")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d-max", type=int, default=6)
    p.set_defaults(func=_cmd_check_theorems)

    p = sub.add_parser("gallery", help="emit a reference system document")
    common(p, needs_input=False)
    p.add_argument("--kind", choices=["cycle", "product-shift", "random"], required=True)
    p.add_argument("--q", type=int, default=6, help="cycle length")
    p.add_argument("--s", type=int, default=2, help="alphabet size")
    p.add_argument("--m", type=int, default=2, help="word length")
    p.add_argument(
        "--marginal",
        action="append",
        default=None,
        help="comma-separated marginal over the alphabet (repeatable)",
    )
    p.add_argument("--n", type=int, default=5, help="state count for random systems")
    p.add_argument("--k", type=int, default=2, help="generator count for random systems")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gallery)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "gallery" and args.kind == "product-shift":
        if not args.marginal:
            args.marginal = ["2/3,1/3", "1/3,2/3"]
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CredalDynError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
