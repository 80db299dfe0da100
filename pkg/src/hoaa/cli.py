"""Command-line harness: reproducible experiments with machine-readable
CSV or JSON output.

Exit codes: 0 success, 2 configuration error, 3 unwritable output path.
Relative --output paths resolve against $HOAA_OUTPUT_DIR when it is set.
Identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .apps import AFSelect, CordicConfig, activation_grid
from .cases import activation_case, add_case, round_case, run_case, subtract_case
from .cells import CellKind, build_cell, truth_table
from .chains import BitWord, ChainConfig, Mode, UnsupportedChainError, subtract
from .fixedpoint import FixedPointFormat
from .metrics import CSV_COLUMNS, Method
from .reference import published_reference

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_OUTPUT = 3

_CELLS = {kind.value: kind for kind in CellKind}
_MODES = {mode.value: mode for mode in Mode}
_VARIANTS = {
    CellKind.ACCURATE_P1A.value: CellKind.ACCURATE_P1A,
    CellKind.APPROX_P1A.value: CellKind.APPROX_P1A,
}
_METHODS = {m.value: m for m in Method}


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    base = os.environ.get("HOAA_OUTPUT_DIR")
    path = output if (os.path.isabs(output) or not base) else os.path.join(base, output)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--width", type=int, default=8)
    parser.add_argument("--m", type=int, default=1)
    parser.add_argument("--variant", choices=sorted(_VARIANTS), default=CellKind.APPROX_P1A.value)
    parser.add_argument("--mode", choices=sorted(_MODES), default=Mode.OVERESTIMATE.value)
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", "-o", default=None, help="file path (default: stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoaa",
        description="Simulate P1A cells and HOAA(N, m) chains and characterize their errors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dump-cell", help="export a cell netlist as JSON")
    p.add_argument("--cell", choices=sorted(_CELLS), required=True)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("truth-table", help="print a cell truth table")
    p.add_argument("--cell", choices=sorted(_CELLS), required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("metrics", help="run one case study through the metrics engine")
    p.add_argument("--case", choices=("add", "subtract", "round", "af"), required=True)
    _add_common(p)
    p.add_argument("--method", choices=sorted(_METHODS), default=Method.MONTE_CARLO.value)
    p.add_argument("--trials", type=int, default=None, help="default: 2^(width+1)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cin", type=int, choices=(0, 1), default=0)
    p.add_argument("--random-cin", action="store_true",
                   help="draw/enumerate cin instead of holding it fixed (add case)")
    p.add_argument("--k", type=int, default=1, help="shift amount for the round case")
    p.add_argument("--af-sel", choices=tuple(s.value for s in AFSelect),
                   default=AFSelect.SIGMOID.value)
    p.add_argument("--show-reference", action="store_true",
                   help="print published reference values to stderr")
    p.add_argument("--dump-samples", default=None, metavar="PATH",
                   help="also write every (exact, approx, ed) sample as CSV")

    p = sub.add_parser("sweep", help="metrics for an (m, variant, mode) grid of adders")
    p.add_argument("--width", type=int, default=8)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--method", choices=sorted(_METHODS), default=Method.MONTE_CARLO.value)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cin", type=int, choices=(0, 1), default=0)
    p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("subtract", help="one two's-complement subtraction")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _add_common(p)

    p = sub.add_parser("round", help="one round-to-nearest-even quantization")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    _add_common(p)

    p = sub.add_parser("af", help="activation grid vs the real-valued reference")
    p.add_argument("--sel", choices=tuple(s.value for s in AFSelect) + ("both",), default="both")
    p.add_argument("--mode", choices=sorted(_MODES), default=Mode.ACCURATE.value)
    p.add_argument("--variant", choices=sorted(_VARIANTS), default=CellKind.APPROX_P1A.value)
    p.add_argument("--total-bits", type=int, default=16)
    p.add_argument("--frac-bits", type=int, default=12)
    p.add_argument("--points", type=int, default=256)
    p.add_argument("--lo", type=float, default=-1.0)
    p.add_argument("--hi", type=float, default=1.0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None)

    return parser


def _cmd_dump_cell(args: argparse.Namespace) -> int:
    netlist = build_cell(_CELLS[args.cell])
    _emit(_json_text(netlist.to_json_dict()), args.output)
    return EXIT_OK


def _cmd_truth_table(args: argparse.Namespace) -> int:
    kind = _CELLS[args.cell]
    rows = truth_table(kind)
    has_cout2 = kind is CellKind.ACCURATE_P1A
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "cell": kind.value,
            "rows": [
                {"a": a, "b": b, "cin": c, "sum": o.sum, "cout": o.cout,
                 **({"cout2": o.cout2} if has_cout2 else {})}
                for (a, b, c), o in rows
            ],
        }
        _emit(_json_text(payload), args.output)
        return EXIT_OK
    header = ["a", "b", "cin", "sum", "cout"] + (["cout2"] if has_cout2 else [])
    table = [header]
    for (a, b, c), out in rows:
        row = [str(a), str(b), str(c), str(out.sum), str(out.cout)]
        if has_cout2:
            row.append(str(out.cout2))
        table.append(row)
    _emit(_csv_text(table), args.output)
    return EXIT_OK


def _metrics_case(args: argparse.Namespace):
    mode = _MODES[args.mode]
    if args.case == "af":
        fmt = FixedPointFormat(16, 12)
        cfg = CordicConfig(format=fmt, adder_mode=mode,
                           p1a_variant=_VARIANTS[args.variant])
        return activation_case(AFSelect(args.af_sel), cfg)
    chain = ChainConfig(args.width, args.m, _VARIANTS[args.variant])
    if args.case == "subtract":
        return subtract_case(chain, mode)
    if args.case == "round":
        return round_case(chain, mode, args.k)
    return add_case(chain, mode, None if args.random_cin else args.cin)


_REFERENCE_CASE_KEY = {
    "subtract": "case1_subtraction",
    "round": "case2_round_to_even",
    "af": "case3_activation",
}


def _cmd_metrics(args: argparse.Namespace) -> int:
    case = _metrics_case(args)
    report = run_case(case, _METHODS[args.method], trials=args.trials, seed=args.seed,
                      keep_samples=args.dump_samples is not None)
    if args.dump_samples is not None:
        rows = [["exact", "approx", "ed"]]
        rows.extend([str(s.exact), str(s.approx), str(s.ed)] for s in report.samples)
        _emit(_csv_text(rows), args.dump_samples)
    reference = published_reference()["error_metrics_percent"].get(
        _REFERENCE_CASE_KEY.get(args.case)
    )
    if args.show_reference and reference:
        sys.stderr.write(
            f"published reference ({args.case}, percent scale, unstated normalization): "
            f"{json.dumps(reference, sort_keys=True)}\n"
        )
    if args.format == "json":
        payload = report.to_json_dict()
        payload["case"] = args.case
        if reference:
            payload["published_reference_percent"] = reference
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv_text([list(CSV_COLUMNS), report.to_csv_row()]), args.output)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    method = _METHODS[args.method]
    header = ["m", "variant", "mode", "status"] + list(CSV_COLUMNS)
    table = [header]
    for m in range(0, min(args.max_m, args.width) + 1):
        for variant in (CellKind.ACCURATE_P1A, CellKind.APPROX_P1A):
            for mode in (Mode.ACCURATE, Mode.OVERESTIMATE):
                case = add_case(ChainConfig(args.width, m, variant), mode, args.cin)
                prefix = [str(m), variant.value, mode.value]
                try:
                    report = run_case(case, method, trials=args.trials, seed=args.seed)
                except UnsupportedChainError as exc:
                    table.append(prefix + ["unsupported-position-%d" % exc.position]
                                 + [""] * len(CSV_COLUMNS))
                    continue
                table.append(prefix + ["ok"] + report.to_csv_row())
    _emit(_csv_text(table), args.output)
    return EXIT_OK


def _cmd_subtract(args: argparse.Namespace) -> int:
    cfg = ChainConfig(args.width, args.m, _VARIANTS[args.variant])
    mode = _MODES[args.mode]
    n = args.width
    if not (0 <= args.a < (1 << n) and 0 <= args.b < (1 << n)):
        raise ValueError(f"operands must be in 0..{(1 << n) - 1}")
    res = subtract(cfg, mode, BitWord(n, args.a), BitWord(n, args.b))
    exact = (args.a - args.b) % (1 << n)
    half = 1 << (n - 1)
    ed = ((res.result.bits - exact + half) % (1 << n)) - half
    record = {
        "a": args.a, "b": args.b, "width": n, "mode": mode.value,
        "variant": cfg.variant.value, "power_gated": cfg.power_gated,
        "result": res.result.bits, "borrow": res.borrow, "exact": exact, "ed": ed,
    }
    if args.format == "json":
        record["schema_version"] = 1
        _emit(_json_text(record), args.output)
    else:
        keys = ["a", "b", "width", "mode", "variant", "power_gated",
                "result", "borrow", "exact", "ed"]
        _emit(_csv_text([keys, [str(record[k]) for k in keys]]), args.output)
    return EXIT_OK


def _cmd_round(args: argparse.Namespace) -> int:
    from .apps import round_to_even, round_to_even_oracle

    cfg = ChainConfig(args.width, args.m, _VARIANTS[args.variant])
    mode = _MODES[args.mode]
    if not 0 <= args.x < (1 << args.width):
        raise ValueError(f"x must be in 0..{(1 << args.width) - 1}")
    result = round_to_even(BitWord(args.width, args.x), args.k, cfg, mode).bits
    oracle = round_to_even_oracle(args.x, args.k)
    record = {
        "x": args.x, "k": args.k, "width": args.width, "mode": mode.value,
        "variant": cfg.variant.value, "result": result, "oracle": oracle,
        "ed": result - oracle,
    }
    if args.format == "json":
        record["schema_version"] = 1
        _emit(_json_text(record), args.output)
    else:
        keys = ["x", "k", "width", "mode", "variant", "result", "oracle", "ed"]
        _emit(_csv_text([keys, [str(record[k]) for k in keys]]), args.output)
    return EXIT_OK


def _cmd_af(args: argparse.Namespace) -> int:
    fmt = FixedPointFormat(args.total_bits, args.frac_bits)
    cfg = CordicConfig(format=fmt, adder_mode=_MODES[args.mode],
                       p1a_variant=_VARIANTS[args.variant])
    selections = list(AFSelect) if args.sel == "both" else [AFSelect(args.sel)]
    rows = []
    for sel in selections:
        rows.extend(activation_grid(sel, cfg, points=args.points, lo=args.lo, hi=args.hi))
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "rows": [
                {"z": r.z, "sel": r.sel.value, "mode": r.mode.value,
                 "value": r.value, "oracle": r.oracle, "abs_err": r.abs_err}
                for r in rows
            ],
        }
        _emit(_json_text(payload), args.output)
        return EXIT_OK
    table = [["z", "sel", "mode", "value", "oracle", "abs_err"]]
    for r in rows:
        table.append([repr(r.z), r.sel.value, r.mode.value,
                      repr(r.value), repr(r.oracle), repr(r.abs_err)])
    _emit(_csv_text(table), args.output)
    return EXIT_OK


_HANDLERS = {
    "dump-cell": _cmd_dump_cell,
    "truth-table": _cmd_truth_table,
    "metrics": _cmd_metrics,
    "sweep": _cmd_sweep,
    "subtract": _cmd_subtract,
    "round": _cmd_round,
    "af": _cmd_af,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return _HANDLERS[args.command](args)
    except OSError as exc:
        sys.stderr.write(f"error: cannot write output: {exc}\n")
        return EXIT_OUTPUT
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
