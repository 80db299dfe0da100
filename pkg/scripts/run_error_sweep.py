#!/usr/bin/env python3
"""Produce the full error-characterization bundle for one adder width.

Writes, under --out (default ./reports):
  subtract_<N>.csv / round_<N>.csv / af.csv   per-case metric rows,
       exhaustive and Monte Carlo side by side
  adder_sweep_<N>.csv                          (m, variant, mode) grid
  reference.json                               the published constants

Everything is seeded and byte-reproducible.
"""

import argparse
import json
import os
import sys

sys.path.insert(0, "src")

from hoaa.apps import AFSelect
from hoaa.cases import activation_case, add_case, round_case, run_case, subtract_case
from hoaa.cells import CellKind
from hoaa.chains import ChainConfig, Mode, UnsupportedChainError
from hoaa.apps import CordicConfig
from hoaa.fixedpoint import FixedPointFormat
from hoaa.metrics import CSV_COLUMNS, Method
from hoaa.reference import published_reference


def write_csv(path, rows):
    import csv

    with open(path, "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)
    print("wrote", path)


def both_methods(case, trials, seed):
    rows = []
    for method in (Method.EXHAUSTIVE, Method.MONTE_CARLO):
        report = run_case(case, method, trials=trials if method is Method.MONTE_CARLO else None,
                          seed=seed)
        rows.append([method.value] + report.to_csv_row())
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--width", type=int, default=8)
    parser.add_argument("--trials", type=int, default=None, help="default 2^(width+1)")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", default="reports")
    args = parser.parse_args()

    os.makedirs(args.out, exist_ok=True)
    n = args.width
    header = ["run_method"] + list(CSV_COLUMNS)

    cfg = ChainConfig(n, 1)
    write_csv(os.path.join(args.out, f"subtract_{n}.csv"),
              [header] + both_methods(subtract_case(cfg, Mode.OVERESTIMATE),
                                      args.trials, args.seed))

    round_rows = [["k"] + header]
    for k in range(1, 5):
        for row in both_methods(round_case(cfg, Mode.OVERESTIMATE, k), args.trials, args.seed):
            round_rows.append([str(k)] + row)
    write_csv(os.path.join(args.out, f"round_{n}.csv"), round_rows)

    af_rows = [["sel"] + header]
    cordic = CordicConfig(format=FixedPointFormat(16, 12), adder_mode=Mode.OVERESTIMATE)
    for sel in AFSelect:
        for row in both_methods(activation_case(sel, cordic), args.trials, args.seed):
            af_rows.append([sel.value] + row)
    write_csv(os.path.join(args.out, "af.csv"), af_rows)

    sweep_rows = [["m", "variant", "mode", "status"] + list(CSV_COLUMNS)]
    for m in range(0, min(3, n) + 1):
        for variant in (CellKind.ACCURATE_P1A, CellKind.APPROX_P1A):
            for mode in (Mode.ACCURATE, Mode.OVERESTIMATE):
                prefix = [str(m), variant.value, mode.value]
                try:
                    report = run_case(add_case(ChainConfig(n, m, variant), mode),
                                      Method.EXHAUSTIVE)
                except UnsupportedChainError as exc:
                    sweep_rows.append(prefix + [f"unsupported-position-{exc.position}"]
                                      + [""] * len(CSV_COLUMNS))
                    continue
                sweep_rows.append(prefix + ["ok"] + report.to_csv_row())
    write_csv(os.path.join(args.out, f"adder_sweep_{n}.csv"), sweep_rows)

    ref_path = os.path.join(args.out, "reference.json")
    with open(ref_path, "w", encoding="utf-8") as fh:
        json.dump(published_reference(), fh, sort_keys=True, indent=2)
        fh.write("\n")
    print("wrote", ref_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
