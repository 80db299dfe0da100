"""Application kernels built on the HOAA chains.

Case I, two's-complement subtraction, lives in chains and is re-exported
here.  Case II is round-to-nearest-even quantization whose conditional +1
runs through the HOAA LSB cell.  Case III is a hyperbolic CORDIC pipeline
computing sinh/cosh and, from them, a runtime-selectable sigmoid or tanh
activation; every addition and subtraction inside it is simulated on the
HOAA datapath.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

# subtract is Case I's entry point, re-exported from chains
from .chains import BitWord, ChainConfig, Mode, hoaa_add, subtract
from .cells import CellKind
from .fixedpoint import FixedPointFormat


def round_to_even(x: BitWord, k: int, cfg: ChainConfig, mode: Mode) -> BitWord:
    """Divide x by 2^k, rounding to nearest with ties to even.

    The guard/sticky decision uses exact bit masks; only the conditional
    +1 increment goes through the adder chain.  In OVERESTIMATE mode the
    increment is the single-cycle LSB plus-one cell (which drops its +1
    when the shifted value is odd, per the cell's error rows); ACCURATE
    mode is the exact reference increment.
    """
    if not 1 <= k < x.width:
        raise ValueError(f"k must be in 1..{x.width - 1}, got {k}")
    if cfg.m != 1:
        raise ValueError(f"rounding requires exactly one plus-one cell (m=1), got m={cfg.m}")
    if cfg.width != x.width:
        raise ValueError(f"operand width {x.width} does not match config width {cfg.width}")
    trunc = x.bits >> k
    guard = (x.bits >> (k - 1)) & 1
    sticky = x.bits & ((1 << (k - 1)) - 1)
    round_up = guard and (sticky or (trunc & 1))
    if not round_up:
        return BitWord(x.width, trunc)
    word = BitWord(x.width, trunc)
    zero = BitWord(x.width, 0)
    if mode is Mode.OVERESTIMATE:
        return hoaa_add(cfg, mode, word, zero, 0).sum
    return hoaa_add(cfg, Mode.ACCURATE, word, BitWord(x.width, 1), 0).sum


def round_to_even_oracle(x: int, k: int) -> int:
    """Arithmetic round-to-nearest-even of x / 2^k, independent of any
    adder simulation."""
    trunc, rem = divmod(x, 1 << k)
    half = 1 << (k - 1)
    if rem > half or (rem == half and trunc & 1):
        return trunc + 1
    return trunc


class AFSelect(enum.Enum):
    SIGMOID = "sigmoid"
    TANH = "tanh"


@dataclass(frozen=True)
class CordicConfig:
    """Hyperbolic CORDIC configuration.

    ``repeated_iterations`` lists the shift indices run twice for
    convergence; indices above ``iterations`` are ignored so the default
    {4, 13} composes with short schedules.  ``gain_correction`` is the
    raw fixed-point starting value of x (approximately 1/K for the
    schedule's gain K); None derives it from the schedule.
    """

    format: FixedPointFormat
    iterations: int = 12
    repeated_iterations: frozenset[int] = frozenset({4, 13})
    gain_correction: int | None = None
    adder_mode: Mode = Mode.ACCURATE
    p1a_variant: CellKind = CellKind.APPROX_P1A

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        for i in self.repeated_iterations:
            if i < 1:
                raise ValueError(f"repeated iteration index must be >= 1, got {i}")

    @property
    def schedule(self) -> tuple[int, ...]:
        steps: list[int] = []
        for i in range(1, self.iterations + 1):
            steps.append(i)
            if i in self.repeated_iterations:
                steps.append(i)
        return tuple(steps)

    @property
    def gain(self) -> float:
        return _schedule_gain(self.schedule)

    @property
    def max_argument(self) -> float:
        """Convergence bound: the largest |z| the schedule can rotate to 0."""
        return _schedule_reach(self.schedule)


@lru_cache(maxsize=None)
def _schedule_gain(schedule: tuple[int, ...]) -> float:
    gain = 1.0
    for i in schedule:
        gain *= math.sqrt(1.0 - 2.0 ** (-2 * i))
    return gain


@lru_cache(maxsize=None)
def _schedule_reach(schedule: tuple[int, ...]) -> float:
    return sum(math.atanh(2.0 ** (-i)) for i in schedule)


@lru_cache(maxsize=None)
def _angle_table(fmt: FixedPointFormat, schedule: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(fmt.encode(math.atanh(2.0 ** (-i))) for i in schedule)


@dataclass(frozen=True)
class HyperbolicPair:
    sinh: int
    cosh: int


@dataclass(frozen=True)
class ActivationResult:
    """Raw fixed-point activation value; ``saturated`` flags a quotient
    clipped to the format range."""

    value: int
    saturated: bool


def _chain_cfg(cfg: CordicConfig) -> ChainConfig:
    return ChainConfig(cfg.format.total_bits, 1, cfg.p1a_variant)


def _dp_add(cfg: CordicConfig, chain: ChainConfig, x: int, y: int) -> int:
    # plain addition keeps the plus-one block disabled, as in normal
    # addition on the reconfigurable adder
    fmt = cfg.format
    r = hoaa_add(chain, Mode.ACCURATE, BitWord(fmt.total_bits, fmt.to_unsigned(x)),
                 BitWord(fmt.total_bits, fmt.to_unsigned(y)))
    return fmt.to_signed(r.sum.bits)


def _dp_sub(cfg: CordicConfig, chain: ChainConfig, x: int, y: int) -> int:
    fmt = cfg.format
    r = subtract(chain, cfg.adder_mode, BitWord(fmt.total_bits, fmt.to_unsigned(x)),
                 BitWord(fmt.total_bits, fmt.to_unsigned(y)))
    return fmt.to_signed(r.result.bits)


def cordic_sinh_cosh(z: int, cfg: CordicConfig) -> HyperbolicPair:
    """Hyperbolic rotation-mode CORDIC on raw fixed-point z.

    x starts at the gain-corrected constant, y at 0; each step shifts,
    then adds or subtracts on the HOAA datapath depending on the sign of
    the residual angle.  The iteration runs on |z| so both signs share
    one trajectory; sinh is negated back through the datapath (the 0 - v
    subtraction is exact in every mode because the minuend LSB is 0).
    Arguments beyond the schedule's convergence bound are rejected.
    """
    fmt = cfg.format
    if abs(fmt.decode(z)) > cfg.max_argument:
        raise ValueError(
            f"|z| = {abs(fmt.decode(z)):.4f} exceeds the convergence bound "
            f"{cfg.max_argument:.4f}"
        )
    schedule = cfg.schedule
    angles = _angle_table(fmt, schedule)
    chain = _chain_cfg(cfg)
    negative = z < 0
    zz = _dp_sub(cfg, chain, 0, z) if negative else z
    x = cfg.gain_correction if cfg.gain_correction is not None else fmt.encode(1.0 / cfg.gain)
    y = 0
    for step, i in enumerate(schedule):
        dx = x >> i
        dy = y >> i
        if zz >= 0:
            x = _dp_add(cfg, chain, x, dy)
            y = _dp_add(cfg, chain, y, dx)
            zz = _dp_sub(cfg, chain, zz, angles[step])
        else:
            x = _dp_sub(cfg, chain, x, dy)
            y = _dp_sub(cfg, chain, y, dx)
            zz = _dp_add(cfg, chain, zz, angles[step])
    if negative:
        y = _dp_sub(cfg, chain, 0, y)
    return HyperbolicPair(sinh=y, cosh=x)


def nonrestoring_divide(dividend: int, divisor: int) -> tuple[int, int]:
    """Non-restoring division of non-negative ints: returns (q, r) with
    dividend = q * divisor + r and 0 <= r < divisor."""
    if divisor <= 0:
        raise ValueError(f"divisor must be positive, got {divisor}")
    if dividend < 0:
        raise ValueError(f"dividend must be non-negative, got {dividend}")
    if dividend == 0:
        return 0, 0
    q = 0
    r = 0
    for i in range(dividend.bit_length() - 1, -1, -1):
        r = (r << 1) | ((dividend >> i) & 1)
        if r >= 0:
            r -= divisor
        else:
            r += divisor
        q = (q << 1) | (1 if r >= 0 else 0)
    if r < 0:
        r += divisor
    return q, r


def _divide_fixed(num: int, den: int, fmt: FixedPointFormat) -> tuple[int, bool]:
    """Rounded fixed-point quotient num/den with saturation flag.

    Magnitudes go through non-restoring division with one extra quotient
    bit for round-to-nearest; the sign is applied afterwards, so the
    rounding is symmetric around zero.
    """
    if den == 0:
        return (fmt.max_raw if num >= 0 else fmt.min_raw), True
    sign = 1
    if num < 0:
        num, sign = -num, -sign
    if den < 0:
        den, sign = -den, -sign
    q2, _ = nonrestoring_divide(num << (fmt.frac_bits + 1), den)
    q = (q2 + 1) >> 1
    q *= sign
    sat = not (fmt.min_raw <= q <= fmt.max_raw)
    return fmt.saturate(q), sat


def activation(z: int, sel: AFSelect, cfg: CordicConfig) -> ActivationResult:
    """Runtime-selectable activation on raw fixed-point z.

    TANH divides sinh by cosh.  SIGMOID builds e^z = cosh + sinh and
    divides it by e^z + 1; both of those sums are chain additions on the
    HOAA datapath.
    """
    pair = cordic_sinh_cosh(z, cfg)
    chain = _chain_cfg(cfg)
    fmt = cfg.format
    if sel is AFSelect.TANH:
        num, den = pair.sinh, pair.cosh
    else:
        exp_z = _dp_add(cfg, chain, pair.cosh, pair.sinh)
        den = _dp_add(cfg, chain, exp_z, fmt.encode(1.0))
        num = exp_z
    value, sat = _divide_fixed(num, den, fmt)
    return ActivationResult(value=value, saturated=sat)


def sigmoid_reference(z: float) -> float:
    return 1.0 / (1.0 + math.exp(-z))


def tanh_reference(z: float) -> float:
    return math.tanh(z)


@dataclass(frozen=True)
class GridRow:
    """One activation grid point compared against the real-valued
    reference at the same (quantized) argument."""

    z: float
    sel: AFSelect
    mode: Mode
    value: float
    oracle: float
    abs_err: float


def activation_grid(
    sel: AFSelect,
    cfg: CordicConfig,
    points: int = 256,
    lo: float = -1.0,
    hi: float = 1.0,
) -> list[GridRow]:
    """Evaluate the activation over an evenly spaced argument grid."""
    if points < 2:
        raise ValueError(f"points must be >= 2, got {points}")
    fmt = cfg.format
    reference = sigmoid_reference if sel is AFSelect.SIGMOID else tanh_reference
    rows = []
    for idx in range(points):
        raw = fmt.encode(lo + idx * (hi - lo) / (points - 1))
        z = fmt.decode(raw)
        value = fmt.decode(activation(raw, sel, cfg).value)
        oracle = reference(z)
        rows.append(GridRow(z, sel, cfg.adder_mode, value, oracle, abs(value - oracle)))
    return rows
