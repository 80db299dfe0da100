"""Signed two's-complement fixed-point Q(W-F).F support.

Raw values are plain Python ints holding the scaled integer; the format
object carries width bookkeeping and conversions to and from the
unsigned bit patterns the adder chains operate on.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FixedPointFormat:
    """W-bit two's complement with F fractional bits."""

    total_bits: int
    frac_bits: int

    def __post_init__(self) -> None:
        if not 2 <= self.total_bits <= 32:
            raise ValueError(f"total_bits must be in 2..32, got {self.total_bits}")
        if not 0 <= self.frac_bits < self.total_bits:
            raise ValueError(
                f"frac_bits must be in 0..{self.total_bits - 1}, got {self.frac_bits}"
            )

    @property
    def scale(self) -> int:
        return 1 << self.frac_bits

    @property
    def ulp(self) -> float:
        return 1.0 / self.scale

    @property
    def min_raw(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def max_raw(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    def encode(self, x: float) -> int:
        """Round x to the nearest representable raw value (ties to even)."""
        raw = round(x * self.scale)
        if not self.min_raw <= raw <= self.max_raw:
            raise ValueError(f"{x} is outside the representable range of {self}")
        return raw

    def decode(self, raw: int) -> float:
        return raw / self.scale

    def to_unsigned(self, raw: int) -> int:
        """Two's-complement bit pattern of a raw value."""
        if not self.min_raw <= raw <= self.max_raw:
            raise ValueError(f"raw value {raw} out of range for {self}")
        return raw & ((1 << self.total_bits) - 1)

    def to_signed(self, bits: int) -> int:
        """Raw value encoded by an unsigned W-bit pattern."""
        half = 1 << (self.total_bits - 1)
        return ((bits + half) & ((1 << self.total_bits) - 1)) - half

    def saturate(self, raw: int) -> int:
        if raw > self.max_raw:
            return self.max_raw
        if raw < self.min_raw:
            return self.min_raw
        return raw
