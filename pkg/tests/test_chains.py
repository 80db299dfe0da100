"""Chain-level tests: RCA, HOAA modes, subtraction, LOA, mode selection."""

import pytest
from hypothesis import given, strategies as st

from hoaa.cells import CellKind
from hoaa.chains import (
    BitWord,
    ChainConfig,
    Mode,
    UnsupportedChainError,
    explicit,
    hoaa_add,
    loa_add,
    msb_and,
    rca_add,
    select_mode,
    subtract,
)


def words(width):
    return st.integers(0, (1 << width) - 1)


@st.composite
def operand_pairs(draw, max_width=16):
    width = draw(st.integers(1, max_width))
    a = draw(words(width))
    b = draw(words(width))
    return width, a, b


# --- BitWord ---------------------------------------------------------------

def test_bitword_validation():
    with pytest.raises(ValueError):
        BitWord(0, 0)
    with pytest.raises(ValueError):
        BitWord(65, 0)
    with pytest.raises(ValueError):
        BitWord(4, 16)
    with pytest.raises(ValueError):
        BitWord(4, -1)


def test_bitword_bit_access():
    w = BitWord(4, 0b1010)
    assert [w.bit(i) for i in range(4)] == [0, 1, 0, 1]
    with pytest.raises(ValueError):
        w.bit(4)
    assert int(w) == 10


# --- rca_add ---------------------------------------------------------------

def test_rca_examples():
    assert rca_add(BitWord(8, 0), BitWord(8, 0), 0).value == 0
    r = rca_add(BitWord(8, 0xFF), BitWord(8, 0x01), 0)
    assert (r.sum.bits, r.carry_out) == (0x00, 1)
    assert rca_add(BitWord(8, 0x2A), BitWord(8, 0x15), 1).value == 64


@given(operand_pairs(max_width=64), st.integers(0, 1))
def test_rca_is_integer_addition(pair, cin):
    width, a, b = pair
    r = rca_add(BitWord(width, a), BitWord(width, b), cin)
    assert r.value == a + b + cin
    assert r.value == (r.carry_out << width) | r.sum.bits


def test_rca_rejects_width_mismatch():
    with pytest.raises(ValueError):
        rca_add(BitWord(8, 1), BitWord(4, 1))


def test_rca_rejects_bad_cin():
    with pytest.raises(ValueError):
        rca_add(BitWord(4, 1), BitWord(4, 1), 2)


# --- hoaa_add ---------------------------------------------------------------

def test_chain_config_validation():
    with pytest.raises(ValueError):
        ChainConfig(8, 9)
    with pytest.raises(ValueError):
        ChainConfig(8, -1)
    with pytest.raises(ValueError):
        ChainConfig(8, 1, CellKind.FA)
    assert ChainConfig(8, 1, power_gated=True).power_gated


def test_hoaa_examples():
    cfg = ChainConfig(8, 1, CellKind.APPROX_P1A)
    assert hoaa_add(cfg, Mode.OVERESTIMATE, BitWord(8, 4), BitWord(8, 2)).value == 7
    assert hoaa_add(cfg, Mode.OVERESTIMATE, BitWord(8, 1), BitWord(8, 0)).value == 1
    cfg0 = ChainConfig(8, 0)
    for a, b, c in ((3, 9, 0), (200, 100, 1), (255, 255, 1)):
        assert hoaa_add(cfg0, Mode.OVERESTIMATE, BitWord(8, a), BitWord(8, b), c).value == a + b + c


def test_hoaa_accurate_equals_rca_exhaustive_small():
    for m in range(5):
        cfg = ChainConfig(4, m)
        for a in range(16):
            for b in range(16):
                for cin in (0, 1):
                    got = hoaa_add(cfg, Mode.ACCURATE, BitWord(4, a), BitWord(4, b), cin)
                    assert got.value == a + b + cin


@given(operand_pairs(), st.integers(0, 1), st.integers(0, 8), st.sampled_from([CellKind.APPROX_P1A, CellKind.ACCURATE_P1A]))
def test_hoaa_accurate_is_integer_addition(pair, cin, m, variant):
    width, a, b = pair
    cfg = ChainConfig(width, min(m, width), variant)
    r = hoaa_add(cfg, Mode.ACCURATE, BitWord(width, a), BitWord(width, b), cin)
    assert r.value == a + b + cin


def test_overestimate_envelope_exhaustive_small():
    for width in range(1, 7):
        for m in range(min(3, width) + 1):
            cfg = ChainConfig(width, m)
            target_excess = (1 << m) - 1
            for a in range(1 << width):
                wa = BitWord(width, a)
                for b in range(1 << width):
                    wb = BitWord(width, b)
                    for cin in (0, 1):
                        v = hoaa_add(cfg, Mode.OVERESTIMATE, wa, wb, cin).value
                        assert a + b + cin <= v <= a + b + cin + target_excess


@given(operand_pairs(max_width=12), st.integers(0, 1), st.integers(0, 6))
def test_overestimate_envelope_random(pair, cin, m):
    width, a, b = pair
    m = min(m, width)
    cfg = ChainConfig(width, m)
    v = hoaa_add(cfg, Mode.OVERESTIMATE, BitWord(width, a), BitWord(width, b), cin).value
    assert a + b + cin <= v <= a + b + cin + (1 << m) - 1


def test_accurate_variant_m1_is_exact_plus_one():
    cfg = ChainConfig(6, 1, CellKind.ACCURATE_P1A)
    for a in range(64):
        for b in range(64):
            v = hoaa_add(cfg, Mode.OVERESTIMATE, BitWord(6, a), BitWord(6, b), 0).value
            assert v == a + b + 1


def test_accurate_variant_cout2_raises_with_position():
    cfg = ChainConfig(8, 2, CellKind.ACCURATE_P1A)
    with pytest.raises(UnsupportedChainError) as exc:
        hoaa_add(cfg, Mode.OVERESTIMATE, BitWord(8, 3), BitWord(8, 3))
    assert exc.value.position == 1


def test_hoaa_rejects_width_mismatch():
    cfg = ChainConfig(8, 1)
    with pytest.raises(ValueError):
        hoaa_add(cfg, Mode.ACCURATE, BitWord(4, 1), BitWord(4, 1))


# --- subtract ----------------------------------------------------------------

def test_subtract_examples():
    cfg = ChainConfig(8, 1)
    assert subtract(cfg, Mode.ACCURATE, BitWord(8, 5), BitWord(8, 3)).result.bits == 2
    assert subtract(cfg, Mode.OVERESTIMATE, BitWord(8, 5), BitWord(8, 5)).result.bits == 0xFF
    assert subtract(cfg, Mode.OVERESTIMATE, BitWord(8, 6), BitWord(8, 2)).result.bits == 4


def test_subtract_requires_single_p1a():
    with pytest.raises(ValueError):
        subtract(ChainConfig(8, 2), Mode.ACCURATE, BitWord(8, 1), BitWord(8, 1))
    with pytest.raises(ValueError):
        subtract(ChainConfig(8, 0), Mode.ACCURATE, BitWord(8, 1), BitWord(8, 1))


@given(operand_pairs())
def test_subtract_accurate_is_modular(pair):
    width, a, b = pair
    cfg = ChainConfig(width, 1)
    r = subtract(cfg, Mode.ACCURATE, BitWord(width, a), BitWord(width, b))
    assert r.result.bits == (a - b) % (1 << width)
    assert r.borrow == (1 if a < b else 0)


def test_subtract_overestimate_error_characterization():
    cfg = ChainConfig(6, 1)
    errors = 0
    for a in range(64):
        for b in range(64):
            got = subtract(cfg, Mode.OVERESTIMATE, BitWord(6, a), BitWord(6, b)).result.bits
            exact = (a - b) % 64
            if a & 1 and b & 1:
                assert got == (exact - 1) % 64
                errors += 1
            else:
                assert got == exact
    assert errors == 64 * 64 // 4


def test_subtract_accurate_variant_overestimate_is_exact():
    # cout2 cannot fire at m=1 with cin=0, so the accurate cell is exact
    cfg = ChainConfig(6, 1, CellKind.ACCURATE_P1A)
    for a in range(64):
        for b in range(64):
            got = subtract(cfg, Mode.OVERESTIMATE, BitWord(6, a), BitWord(6, b)).result.bits
            assert got == (a - b) % 64


# --- loa_add -----------------------------------------------------------------

def test_loa_examples():
    assert loa_add(8, 0, BitWord(8, 10), BitWord(8, 20)).value == 30
    assert loa_add(4, 2, BitWord(4, 0b0011), BitWord(4, 0b0001)).value == 3
    assert loa_add(4, 2, BitWord(4, 0b0010), BitWord(4, 0b0010)).value == 6


@given(operand_pairs(max_width=64))
def test_loa_m0_is_exact(pair):
    width, a, b = pair
    assert loa_add(width, 0, BitWord(width, a), BitWord(width, b)).value == a + b


@given(operand_pairs(max_width=12), st.integers(0, 12))
def test_loa_matches_reference_rule(pair, m):
    width, a, b = pair
    m = min(m, width)
    got = loa_add(width, m, BitWord(width, a), BitWord(width, b)).value
    if m == 0:
        assert got == a + b
        return
    low = (a | b) & ((1 << m) - 1)
    cin = (a >> (m - 1)) & (b >> (m - 1)) & 1
    upper = (a >> m) + (b >> m) + cin
    assert got == (upper << m) | low


def test_loa_rejects_bad_args():
    with pytest.raises(ValueError):
        loa_add(8, 0, BitWord(4, 1), BitWord(4, 1))
    with pytest.raises(ValueError):
        loa_add(4, 5, BitWord(4, 1), BitWord(4, 1))


# --- mode selection ----------------------------------------------------------

def test_select_mode_explicit():
    a, b = BitWord(8, 0xFF), BitWord(8, 0xFF)
    assert select_mode(a, b, explicit(Mode.ACCURATE)) is Mode.ACCURATE
    assert select_mode(a, b, explicit(Mode.OVERESTIMATE)) is Mode.OVERESTIMATE


def test_select_mode_msb_and():
    assert select_mode(BitWord(8, 0x80), BitWord(8, 0x80), msb_and) is Mode.OVERESTIMATE
    assert select_mode(BitWord(8, 0x7F), BitWord(8, 0xFF), msb_and) is Mode.ACCURATE


def test_select_mode_rejects_width_mismatch():
    with pytest.raises(ValueError):
        select_mode(BitWord(8, 0), BitWord(4, 0), msb_and)


# --- purity ------------------------------------------------------------------

@given(operand_pairs(max_width=10), st.integers(0, 1), st.integers(0, 3))
def test_chain_ops_are_pure(pair, cin, m):
    width, a, b = pair
    cfg = ChainConfig(width, min(m, width))
    wa, wb = BitWord(width, a), BitWord(width, b)
    assert hoaa_add(cfg, Mode.OVERESTIMATE, wa, wb, cin) == hoaa_add(
        cfg, Mode.OVERESTIMATE, wa, wb, cin
    )
    assert loa_add(width, min(m, width), wa, wb) == loa_add(width, min(m, width), wa, wb)
