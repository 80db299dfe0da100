"""Case-study adapters binding the chains and kernels to the metrics
engine.

Each builder returns a Case whose operator/oracle pair accepts plain
unsigned ints (the BitWord payloads) so the evaluation loop stays cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .apps import (
    AFSelect,
    CordicConfig,
    activation,
    round_to_even,
    round_to_even_oracle,
)
from .chains import BitWord, ChainConfig, Mode, hoaa_add, subtract
from .metrics import Method, TrialPlan, evaluate


@dataclass(frozen=True)
class Case:
    """An operator/oracle pair plus the domain shape it runs over."""

    name: str
    operator: Callable[..., int]
    oracle: Callable[..., int]
    operand_widths: tuple[int, ...]
    width: int
    wrap_width: int | None = None


def add_case(cfg: ChainConfig, mode: Mode, cin: int | None = 0) -> Case:
    """HOAA addition against its analytic target.

    In OVERESTIMATE mode the target is a + b + cin + (2^m - 1); in
    ACCURATE mode it is plain a + b + cin.  cin=None makes the carry-in a
    third random/enumerated operand instead of a constant.
    """
    excess = ((1 << cfg.m) - 1) if mode is Mode.OVERESTIMATE else 0
    n = cfg.width
    if cin is None:
        operator = lambda a, b, c: hoaa_add(cfg, mode, BitWord(n, a), BitWord(n, b), c).value
        oracle = lambda a, b, c: a + b + c + excess
        return Case("add", operator, oracle, (n, n, 1), n)
    operator = lambda a, b: hoaa_add(cfg, mode, BitWord(n, a), BitWord(n, b), cin).value
    oracle = lambda a, b: a + b + cin + excess
    return Case("add", operator, oracle, (n, n), n)


def subtract_case(cfg: ChainConfig, mode: Mode) -> Case:
    """Two's-complement subtraction against (a - b) mod 2^N.

    Results live in the ring mod 2^N, so the case declares wrap_width
    and the error distance is the centered modular difference.
    """
    n = cfg.width
    operator = lambda a, b: subtract(cfg, mode, BitWord(n, a), BitWord(n, b)).result.bits
    oracle = lambda a, b: (a - b) % (1 << n)
    return Case("subtract", operator, oracle, (n, n), n, wrap_width=n)


def round_case(cfg: ChainConfig, mode: Mode, k: int) -> Case:
    """Round-to-nearest-even of x / 2^k against the arithmetic oracle."""
    n = cfg.width
    operator = lambda x: round_to_even(BitWord(n, x), k, cfg, mode).bits
    oracle = lambda x: round_to_even_oracle(x, k)
    return Case("round", operator, oracle, (n,), n)


def activation_case(
    sel: AFSelect,
    cfg: CordicConfig,
    grid_bits: int = 8,
    lo: float = -1.0,
    hi: float = 1.0,
) -> Case:
    """Configured-mode activation against the ACCURATE-mode datapath over
    a 2^grid_bits argument grid.

    The domain is the grid index; error distances are in raw format ulps
    and the report width is frac_bits, so NMED normalizes by the raw
    scale of the unit interval.
    """
    fmt = cfg.format
    accurate = CordicConfig(
        format=fmt,
        iterations=cfg.iterations,
        repeated_iterations=cfg.repeated_iterations,
        gain_correction=cfg.gain_correction,
        adder_mode=Mode.ACCURATE,
        p1a_variant=cfg.p1a_variant,
    )
    points = 1 << grid_bits
    step = (hi - lo) / (points - 1)

    def raw_arg(idx: int) -> int:
        return fmt.encode(lo + idx * step)

    operator = lambda idx: activation(raw_arg(idx), sel, cfg).value
    oracle = lambda idx: activation(raw_arg(idx), sel, accurate).value
    return Case("af", operator, oracle, (grid_bits,), fmt.frac_bits)


def run_case(
    case: Case,
    method: Method,
    trials: int | None = None,
    seed: int = 0,
    workers: int = 1,
    keep_samples: bool = False,
):
    """Evaluate a case under the given plan and return its ErrorReport."""
    plan = TrialPlan(
        method=method,
        width=case.width,
        operands=len(case.operand_widths),
        operand_widths=case.operand_widths,
        trials=trials,
        seed=seed,
    )
    return evaluate(
        case.operator,
        case.oracle,
        plan,
        wrap_width=case.wrap_width,
        workers=workers,
        keep_samples=keep_samples,
    )
