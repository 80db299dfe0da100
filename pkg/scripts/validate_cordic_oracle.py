#!/usr/bin/env python3
"""Pre-validate the activation accuracy budget against the
double-precision reference.

Runs the fixed-point CORDIC activation (accurate adder mode) over the
acceptance grid and prints the worst absolute error per function, the
hyperbolic-identity residual, and the margin against the 2^-8 budget.
Exits nonzero if the budget would not hold.
"""

import math
import sys

sys.path.insert(0, "src")

from hoaa.apps import (
    AFSelect,
    CordicConfig,
    activation_grid,
    cordic_sinh_cosh,
)
from hoaa.fixedpoint import FixedPointFormat

BUDGET = 2.0 ** -8


def main() -> int:
    fmt = FixedPointFormat(total_bits=16, frac_bits=12)
    cfg = CordicConfig(format=fmt)
    print(f"format W={fmt.total_bits} F={fmt.frac_bits}, "
          f"schedule {cfg.schedule}, gain {cfg.gain:.6f}, "
          f"reach {cfg.max_argument:.4f}")

    worst = {}
    for sel in AFSelect:
        rows = activation_grid(sel, cfg, points=256, lo=-1.0, hi=1.0)
        worst[sel] = max(r.abs_err for r in rows)
        argmax = max(rows, key=lambda r: r.abs_err)
        print(f"{sel.value:8s} max |err| = {worst[sel]:.6f} "
              f"({worst[sel] / BUDGET * 100:5.1f}% of budget) at z = {argmax.z:+.4f}")

    identity = 0.0
    for idx in range(256):
        raw = fmt.encode(-1.0 + idx * 2.0 / 255)
        pair = cordic_sinh_cosh(raw, cfg)
        s, c = fmt.decode(pair.sinh), fmt.decode(pair.cosh)
        identity = max(identity, abs(c * c - s * s - 1.0))
    print(f"hyperbolic identity max |cosh^2 - sinh^2 - 1| = {identity:.6f}")

    sinh_err = cosh_err = 0.0
    for idx in range(256):
        raw = fmt.encode(-1.0 + idx * 2.0 / 255)
        z = fmt.decode(raw)
        pair = cordic_sinh_cosh(raw, cfg)
        sinh_err = max(sinh_err, abs(fmt.decode(pair.sinh) - math.sinh(z)))
        cosh_err = max(cosh_err, abs(fmt.decode(pair.cosh) - math.cosh(z)))
    print(f"sinh max |err| = {sinh_err:.6f}, cosh max |err| = {cosh_err:.6f}")

    ok = all(err <= BUDGET for err in worst.values())
    print("budget 2^-8 =", BUDGET, "->", "OK" if ok else "EXCEEDED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
