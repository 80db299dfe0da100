"""Word-level adder chains built from the single-bit cells.

Provides the exact ripple-carry reference adder, the reconfigurable
HOAA(N, m) with runtime accurate/overestimate modes, a lower-part OR
adder (LOA) baseline, and one-cycle two's-complement subtraction.  All
operations are pure functions; every word-level result is defined by
cell-by-cell simulation of the underlying netlists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .cells import CellKind, eval_cell

MAX_WIDTH = 64


@dataclass(frozen=True)
class BitWord:
    """Fixed-width unsigned bit vector; LSB is bit position 0."""

    width: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {self.width}")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"bits {self.bits:#x} out of range for width {self.width}")

    def bit(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise ValueError(f"bit index {i} out of range for width {self.width}")
        return (self.bits >> i) & 1

    def __int__(self) -> int:
        return self.bits


class Mode(enum.Enum):
    ACCURATE = "accurate"
    OVERESTIMATE = "overestimate"


_P1A_VARIANTS = (CellKind.ACCURATE_P1A, CellKind.APPROX_P1A)


@dataclass(frozen=True)
class ChainConfig:
    """One HOAA(N, m) instance: positions 0..m-1 hold the reconfigurable
    plus-one cells, positions m..N-1 hold plain full adders.

    ``power_gated`` records whether idle plus-one blocks would be power
    gated in hardware; it has no behavioral effect here and is carried
    only as report metadata.
    """

    width: int
    m: int
    variant: CellKind = CellKind.APPROX_P1A
    power_gated: bool = False

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width must be in 1..{MAX_WIDTH}, got {self.width}")
        if not 0 <= self.m <= self.width:
            raise ValueError(f"m must be in 0..{self.width}, got {self.m}")
        if self.variant not in _P1A_VARIANTS:
            raise ValueError(f"variant must be a plus-one cell, got {self.variant}")


@dataclass(frozen=True)
class ChainResult:
    """N-bit sum plus the final carry; value = carry_out * 2^N + sum."""

    sum: BitWord
    carry_out: int
    value: int


@dataclass(frozen=True)
class SubtractResult:
    """Two's-complement difference; borrow = NOT carry_out of the chain."""

    result: BitWord
    borrow: int


class UnsupportedChainError(ValueError):
    """An accurate plus-one cell produced cout2=1 inside a ripple chain,
    which cannot be propagated as a single carry bit."""

    def __init__(self, position: int):
        self.position = position
        super().__init__(
            f"accurate plus-one cell at position {position} produced cout2=1; "
            "a ripple chain cannot propagate a 2-bit carry"
        )


@lru_cache(maxsize=None)
def _packed_table(kind: CellKind) -> tuple[int, ...]:
    """Cell outputs packed as sum | cout<<1 | cout2<<2, indexed by
    a<<2 | b<<1 | cin.  Derived from the netlist evaluation."""
    entries = []
    for key in range(8):
        out = eval_cell(kind, (key >> 2) & 1, (key >> 1) & 1, key & 1)
        entries.append(out.sum | out.cout << 1 | (out.cout2 or 0) << 2)
    return tuple(entries)


def _require_same_width(a: BitWord, b: BitWord) -> int:
    if a.width != b.width:
        raise ValueError(f"operand widths differ: {a.width} vs {b.width}")
    return a.width


def _require_bit(name: str, value: int) -> None:
    if value not in (0, 1):
        raise ValueError(f"{name} must be 0 or 1, got {value!r}")


def _ripple(a: int, b: int, cin: int, width: int, lsb_table, lsb_count: int, fa_table) -> tuple[int, int]:
    s = 0
    c = cin
    for i in range(width):
        table = lsb_table if i < lsb_count else fa_table
        e = table[((a >> i) & 1) << 2 | ((b >> i) & 1) << 1 | c]
        if e & 4:
            raise UnsupportedChainError(i)
        s |= (e & 1) << i
        c = (e >> 1) & 1
    return s, c


def rca_add(a: BitWord, b: BitWord, cin: int = 0) -> ChainResult:
    """Exact ripple-carry addition: value = a + b + cin."""
    width = _require_same_width(a, b)
    _require_bit("cin", cin)
    fa = _packed_table(CellKind.FA)
    s, c = _ripple(a.bits, b.bits, cin, width, fa, 0, fa)
    return ChainResult(BitWord(width, s), c, (c << width) | s)


def hoaa_add(cfg: ChainConfig, mode: Mode, a: BitWord, b: BitWord, cin: int = 0) -> ChainResult:
    """Simulate one HOAA(N, m) addition.

    ACCURATE mode makes every position behave as a full adder, so the
    result equals plain integer addition.  OVERESTIMATE mode evaluates
    the configured plus-one variant at positions 0..m-1 with rippled
    carries; the analytic target it approximates is
    a + b + cin + (2^m - 1).  An accurate plus-one cell that produces
    cout2=1 mid-chain raises UnsupportedChainError.
    """
    width = _require_same_width(a, b)
    if width != cfg.width:
        raise ValueError(f"operand width {width} does not match config width {cfg.width}")
    _require_bit("cin", cin)
    fa = _packed_table(CellKind.FA)
    if mode is Mode.ACCURATE:
        lsb_table, lsb_count = fa, 0
    else:
        lsb_table, lsb_count = _packed_table(cfg.variant), cfg.m
    s, c = _ripple(a.bits, b.bits, cin, width, lsb_table, lsb_count, fa)
    return ChainResult(BitWord(width, s), c, (c << width) | s)


def subtract(cfg: ChainConfig, mode: Mode, a: BitWord, b: BitWord) -> SubtractResult:
    """Two's-complement a - b on one HOAA(N, 1) chain.

    OVERESTIMATE mode adds a + ~b in a single pass, with the +1 injected
    by the LSB plus-one cell; ACCURATE mode is the two-pass reference
    (ones-complement add, then a second pass for the +1) and always
    equals (a - b) mod 2^N.  borrow is the inverted final carry.
    """
    if cfg.m != 1:
        raise ValueError(f"subtraction requires exactly one plus-one cell (m=1), got m={cfg.m}")
    width = _require_same_width(a, b)
    if width != cfg.width:
        raise ValueError(f"operand width {width} does not match config width {cfg.width}")
    nb = BitWord(width, b.bits ^ ((1 << width) - 1))
    if mode is Mode.OVERESTIMATE:
        r = hoaa_add(cfg, mode, a, nb, 0)
        return SubtractResult(r.sum, r.carry_out ^ 1)
    first = rca_add(a, nb, 0)
    second = rca_add(first.sum, BitWord(width, 0), 1)
    carry = first.carry_out | second.carry_out
    return SubtractResult(second.sum, carry ^ 1)


def loa_add(n: int, m: int, a: BitWord, b: BitWord) -> ChainResult:
    """Lower-part OR adder baseline.

    The low m result bits are the bitwise OR of the operands; the upper
    part is an exact FA chain whose carry-in is the standard estimate
    a[m-1] & b[m-1].  m=0 degenerates to exact addition.
    """
    width = _require_same_width(a, b)
    if width != n:
        raise ValueError(f"operand width {width} does not match n={n}")
    if not 0 <= m <= n:
        raise ValueError(f"m must be in 0..{n}, got {m}")
    if m == 0:
        return rca_add(a, b, 0)
    low = (a.bits | b.bits) & ((1 << m) - 1)
    cin = ((a.bits >> (m - 1)) & (b.bits >> (m - 1))) & 1
    if m == n:
        return ChainResult(BitWord(n, low), cin, (cin << n) | low)
    upper = rca_add(
        BitWord(n - m, a.bits >> m),
        BitWord(n - m, b.bits >> m),
        cin,
    )
    s = low | (upper.sum.bits << m)
    return ChainResult(BitWord(n, s), upper.carry_out, (upper.carry_out << n) | s)


ModeStrategy = Callable[[BitWord, BitWord], Mode]


def explicit(mode: Mode) -> ModeStrategy:
    """Constant strategy: always return the given mode."""

    def strategy(a: BitWord, b: BitWord) -> Mode:
        return mode

    return strategy


def msb_and(a: BitWord, b: BitWord) -> Mode:
    """Overestimate iff both operand MSBs are set (one literal reading of
    MSB-based selection; shipped as an option, never hard-wired)."""
    return Mode.OVERESTIMATE if a.bit(a.width - 1) & b.bit(b.width - 1) else Mode.ACCURATE


def select_mode(a: BitWord, b: BitWord, strategy: ModeStrategy) -> Mode:
    """Apply a comp_en strategy to one operand pair."""
    _require_same_width(a, b)
    return strategy(a, b)
