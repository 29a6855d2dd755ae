"""Command-line surface tying the modules together.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource limit.
Every file written through --out gets a ``<file>.meta.json`` sidecar with
the tool version, the resolved flags, and any seed, so emitted artifacts
are reproducible. Rational parameters are written exactly ("1/3"); float
syntax is rejected.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, baker, krieger, measures, parallel, verification
from .baker import BakerParams, parse_rational
from .enumeration import (
    DEFAULT_NODE_BUDGET,
    CountReport,
    PeriodicSetQuery,
    count_closed_form,
    enumerate_periodic,
)
from .errors import (
    ConstraintViolationError,
    DyckBakerError,
    MatchSearchExceededError,
    ResourceLimitError,
)
from .krieger import Side, fraction_str
from .measures import MeasureTarget
from .oracle import DEFAULT_SEED
from .words import PeriodClass, format_word, parse_word

_CLASSES = {
    "alpha": PeriodClass.ALPHA,
    "beta": PeriodClass.BETA,
    "zero": PeriodClass.ZERO,
    "all": None,
}


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DyckBakerError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _write_sidecar(out: Path, command: str, flags: dict, seed: int | None = None) -> None:
    meta = {
        "tool": "dyckbaker",
        "version": __version__,
        "command": command,
        "flags": {k: str(v) for k, v in flags.items() if v is not None},
    }
    if seed is not None:
        meta["seed"] = seed
        meta["generator"] = "philox4x64"
    out.with_name(out.name + ".meta.json").write_text(
        json.dumps(meta, indent=2) + "\n"
    )


def _emit(args, text: str, flags: dict, seed: int | None = None) -> None:
    if getattr(args, "out", None):
        out = Path(args.out)
        out.write_text(text)
        _write_sidecar(out, args.command, flags, seed)
    else:
        sys.stdout.write(text)


def _cmd_count(args) -> int:
    q = PeriodicSetQuery(args.M, args.n, _CLASSES[args.cls])
    closed = count_closed_form(q)
    enumerated = None
    if args.enumerate:
        a, b, z = parallel.sharded_class_counts(args.M, args.n, args.threads)
        enumerated = {
            None: a + b + z,
            PeriodClass.ALPHA: a,
            PeriodClass.BETA: b,
            PeriodClass.ZERO: z,
        }[q.cls]
    report = CountReport(q.M, q.n, q.cls, closed, enumerated)
    _emit(args, json.dumps(report.to_json_dict()) + "\n",
          {"M": args.M, "n": args.n, "class": args.cls})
    if enumerated is not None and enumerated != closed:
        print(f"count mismatch: enumerated {enumerated} != closed {closed}",
              file=sys.stderr)
        return 1
    return 0


def _cmd_enumerate(args) -> int:
    q = PeriodicSetQuery(args.M, args.n, _CLASSES[args.cls])
    lines = ["word"]
    lines.extend(
        format_word(w) for w in enumerate_periodic(q, budget=args.budget)
    )
    _emit(args, "\n".join(lines) + "\n",
          {"M": args.M, "n": args.n, "class": args.cls})
    return 0


def _cmd_measure(args) -> int:
    cls = args.cls
    target = {
        "alpha": MeasureTarget.ALPHA,
        "beta": MeasureTarget.BETA,
        "mixture": MeasureTarget.MIXTURE,
    }[args.target or {"alpha": "alpha", "beta": "beta", "union": "mixture"}[cls]]
    reports = []
    for n in args.n:
        if cls == "union":
            emp = measures.union_empirical(args.M, n, args.cyl_len,
                                           threads=args.threads)
        else:
            emp = measures.build_empirical(args.M, n, _CLASSES[cls], args.cyl_len,
                                           threads=args.threads)
        reports.append(measures.compare_to_target(emp, target))
    flags = {"M": args.M, "n": ",".join(map(str, args.n)), "class": cls,
             "cyl_len": args.cyl_len, "target": target.value}
    if args.format == "json":
        payload = [measures.report_json_dict(r, args.precision) for r in reports]
        _emit(args, json.dumps(payload, indent=2) + "\n", flags)
    else:
        import io

        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(measures.CSV_HEADER)
        for r in reports:
            writer.writerows(measures.report_csv_rows(r, args.precision))
        _emit(args, buf.getvalue(), flags)
    return 0


def _cmd_mme(args) -> int:
    word = parse_word(args.word, args.M)
    if args.side == "mixture":
        value = krieger.mixture_cylinder(word, args.M)
    else:
        value = krieger.mme_cylinder(Side(args.side), word, args.M)
    text = fraction_str(value)
    if args.out:
        payload = {"M": args.M, "side": args.side, "word": args.word, "value": text}
        _emit(args, json.dumps(payload) + "\n",
              {"M": args.M, "side": args.side, "word": args.word})
    else:
        print(text)
    return 0


def _cmd_baker_solve(args) -> int:
    params = BakerParams(args.M, args.a, args.b)
    word = parse_word(args.word, args.M)
    sol = baker.solve_periodic_point(params, word)
    _emit(args, json.dumps(sol.to_json_dict(), indent=2) + "\n",
          {"M": args.M, "a": args.a, "b": args.b, "word": args.word})
    return 0


def _cmd_baker_scatter(args) -> int:
    if args.out is None:
        raise argparse.ArgumentTypeError("scatter requires --out")
    with_xs = args.b is not None
    header = ["period", "class", "xu", "xc"] + (["xs"] if with_xs else [])
    classes = (
        [PeriodClass.ALPHA, PeriodClass.BETA]
        if args.cls == "both"
        else [_CLASSES[args.cls]]
    )
    boundary: dict[str, int] = {}
    rows = []
    for n in args.periods:
        for cls in classes:
            arrays = parallel.sharded_scatter(
                args.M, n, baker._SCATTER_CLS[cls],
                (args.a.numerator, args.a.denominator),
                None if args.b is None else (args.b.numerator, args.b.denominator),
                threads=args.threads,
            )
            batch = baker.ScatterBatch(
                args.M, n, cls, arrays["xu"], arrays["xc"], arrays["xs"],
                arrays["interior"],
            )
            boundary[f"{cls.value},{n}"] = batch.boundary_count
            rows.extend(baker.scatter_rows(batch, args.precision))
    out = Path(args.out)
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    flags = {"M": args.M, "a": args.a, "b": args.b,
             "periods": ",".join(map(str, args.periods)), "class": args.cls,
             "boundary_excluded": json.dumps(boundary)}
    _write_sidecar(out, "baker scatter", flags)
    print(f"wrote {len(rows)} points to {out} "
          f"(boundary excluded: {sum(boundary.values())})", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    reports = verification.run_suite(args.suite, seed=args.seed,
                                     samples=args.samples)
    payload = json.dumps(reports, indent=2, default=str) + "\n"
    if args.out:
        Path(args.out).write_text(payload)
        _write_sidecar(Path(args.out), "verify",
                       {"suite": args.suite, "samples": args.samples}, args.seed)
    else:
        sys.stdout.write(payload)
    failed = [r["check"] for r in reports if r["status"] != "pass"]
    for r in reports:
        print(f"{r['check']}: {r['status']}", file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyckbaker",
        description="Periodic points of the Dyck shift and the heterochaos "
                    "baker maps",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="closed-form and enumerated class sizes")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=sorted(_CLASSES), default="all")
    p.add_argument("--enumerate", action="store_true",
                   help="also count by walking the search tree")
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("enumerate", help="list one class as word-per-line CSV")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=sorted(_CLASSES), default="all")
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("measure", help="empirical window frequencies vs a target")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--n", type=_int_list, required=True,
                   help="period or comma-separated periods")
    p.add_argument("--class", dest="cls",
                   choices=["alpha", "beta", "union"], required=True)
    p.add_argument("--cyl-len", dest="cyl_len", type=int, required=True)
    p.add_argument("--target", choices=["alpha", "beta", "mixture"])
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("mme", help="exact cylinder mass under one MME")
    p.add_argument("--side", choices=["alpha", "beta", "mixture"], required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--M", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_mme)

    pb = sub.add_parser("baker", help="cube/square map operations")
    bsub = pb.add_subparsers(dest="baker_command", required=True)

    p = bsub.add_parser("solve", help="exact periodic orbit of one word")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_baker_solve)

    p = bsub.add_parser("scatter", help="bulk-solved class ensembles as CSV")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--b", type=_rational, help="omit for the square map")
    p.add_argument("--periods", type=_int_list, required=True)
    p.add_argument("--class", dest="cls",
                   choices=["alpha", "beta", "both"], default="both")
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_baker_scatter)

    p = sub.add_parser("verify", help="run the oracle-backed check suites")
    p.add_argument("--suite", choices=["core", "counts", "measures", "baker", "all"],
                   default="all")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except (ConstraintViolationError, MatchSearchExceededError) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    except DyckBakerError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
