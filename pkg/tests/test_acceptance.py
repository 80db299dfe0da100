"""Acceptance suite: the release gate, one test per criterion.

Each test prints a single PASS/FAIL line (run with -s to see them live).
Tolerances and runtime budgets are fixed here, not configurable.
"""

import contextlib
import math
import time

from hoaa.apps import AFSelect, CordicConfig, activation
from hoaa.cells import (
    CellKind,
    CellPort,
    cell_cost,
    critical_path,
    eval_cell,
)
from hoaa.chains import BitWord, ChainConfig, Mode, hoaa_add, subtract
from hoaa.fixedpoint import FixedPointFormat
from hoaa.metrics import Method, TrialPlan, evaluate
from hoaa.reference import published_reference


@contextlib.contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}", flush=True)
        raise
    print(f"[PASS] {name}", flush=True)


TABLE_ACCURATE = {
    (0, 0, 0): (1, 0, 0), (0, 0, 1): (0, 1, 0), (0, 1, 0): (0, 1, 0),
    (0, 1, 1): (1, 1, 0), (1, 0, 0): (0, 1, 0), (1, 0, 1): (1, 1, 0),
    (1, 1, 0): (1, 1, 0), (1, 1, 1): (0, 0, 1),
}
TABLE_APPROX = {
    (0, 0, 0): (1, 0), (0, 0, 1): (0, 1), (0, 1, 0): (0, 1), (0, 1, 1): (1, 1),
    (1, 0, 0): (1, 0), (1, 0, 1): (1, 1), (1, 1, 0): (1, 1), (1, 1, 1): (1, 1),
}


def test_criterion_1_truth_table_conformance():
    with criterion("1 truth-table conformance, both plus-one variants, < 1 ms"):
        eval_cell(CellKind.ACCURATE_P1A, 0, 0, 0)  # warm the cached tables
        eval_cell(CellKind.APPROX_P1A, 0, 0, 0)
        start = time.perf_counter()
        for (a, b, c), expected in TABLE_ACCURATE.items():
            out = eval_cell(CellKind.ACCURATE_P1A, a, b, c)
            assert (out.sum, out.cout, out.cout2) == expected
        for (a, b, c), expected in TABLE_APPROX.items():
            out = eval_cell(CellKind.APPROX_P1A, a, b, c)
            assert (out.sum, out.cout) == expected
        elapsed = time.perf_counter() - start
        assert (1, 0) == TABLE_APPROX[(1, 0, 0)] and (1, 1) == TABLE_APPROX[(1, 1, 1)]
        assert elapsed < 1e-3, f"took {elapsed * 1e3:.3f} ms"


def test_criterion_2_structural_counts():
    with criterion("2 structural counts: 3-gate plus-one cell vs 5-gate full adder"):
        approx = cell_cost(CellKind.APPROX_P1A)
        fa = cell_cost(CellKind.FA)
        assert approx.gate_count == 3
        assert fa.gate_count == 5
        reference = published_reference()["transistor_counts"]
        assert reference == {"fa": 28, "p1a": 16}
        # computed counts under the default model, reported alongside the
        # published constants; deliberately no equality gate between them
        assert approx.transistor_count == 20
        assert fa.transistor_count == 34
        print(
            f"  transistors: computed p1a={approx.transistor_count} fa={fa.transistor_count}"
            f" | published p1a={reference['p1a']} fa={reference['fa']}"
        )


def test_criterion_3_delay_model():
    with criterion("3 unit-delay critical paths: sum=2, carry=1, both < FA worst"):
        assert critical_path(CellKind.APPROX_P1A, CellPort.SUM) == 2
        assert critical_path(CellKind.APPROX_P1A, CellPort.COUT) == 1
        fa_worst = max(
            critical_path(CellKind.FA, CellPort.SUM),
            critical_path(CellKind.FA, CellPort.COUT),
        )
        assert critical_path(CellKind.APPROX_P1A, CellPort.SUM) < fa_worst
        assert critical_path(CellKind.APPROX_P1A, CellPort.COUT) < fa_worst


def test_criterion_4_chain_exactness():
    with criterion("4 accurate-mode chain = integer addition, N in {4, 8}, m in 0..3, < 10 s"):
        start = time.perf_counter()
        for width in (4, 8):
            words = [BitWord(width, v) for v in range(1 << width)]
            for m in range(4):
                cfg = ChainConfig(width, m)
                for wa in words:
                    a = wa.bits
                    for wb in words:
                        s = a + wb.bits
                        for cin in (0, 1):
                            assert hoaa_add(cfg, Mode.ACCURATE, wa, wb, cin).value == s + cin
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"took {elapsed:.1f} s"


def test_criterion_5_overestimation_envelope():
    with criterion("5 overestimation envelope a+b+cin <= value <= a+b+cin+2^m-1, N=8"):
        words = [BitWord(8, v) for v in range(256)]
        for m in range(4):
            cfg = ChainConfig(8, m)
            excess = (1 << m) - 1
            for wa in words:
                a = wa.bits
                for wb in words:
                    base = a + wb.bits
                    for cin in (0, 1):
                        value = hoaa_add(cfg, Mode.OVERESTIMATE, wa, wb, cin).value
                        assert base + cin <= value <= base + cin + excess


def test_criterion_6_case1_subtraction():
    with criterion("6 subtraction: accurate exact, overestimate errs only on odd-odd with ed=-1"):
        cfg = ChainConfig(8, 1)
        words = [BitWord(8, v) for v in range(256)]
        for wa in words:
            a = wa.bits
            for wb in words:
                exact = (a - wb.bits) % 256
                assert subtract(cfg, Mode.ACCURATE, wa, wb).result.bits == exact
                got = subtract(cfg, Mode.OVERESTIMATE, wa, wb).result.bits
                if a & 1 and wb.bits & 1:
                    assert got == (exact - 1) % 256
                else:
                    assert got == exact

        report = evaluate(
            lambda a, b: subtract(cfg, Mode.OVERESTIMATE, BitWord(8, a), BitWord(8, b)).result.bits,
            lambda a, b: (a - b) % 256,
            TrialPlan(Method.EXHAUSTIVE, width=8),
            wrap_width=8,
        )
        assert report.error_rate == 0.25
        assert report.med == 0.25
        assert report.max_abs_ed == 1
        published = published_reference()["error_metrics_percent"]["case1_subtraction"]
        assert published == {"mse": 0.02444, "nmed": 0.02444, "mred": 0.06834}
        print(
            f"  exhaustive: error_rate={report.error_rate} med={report.med} "
            f"nmed={report.nmed:.6g} | published reference (percent, unstated "
            f"normalization): {published}"
        )


def test_criterion_7_case2_rounding():
    with criterion("7 rounding: accurate = ties-to-even oracle, overestimate within 1 ulp"):
        from hoaa.apps import round_to_even, round_to_even_oracle

        cfg = ChainConfig(8, 1)
        checked = 0
        for k in range(1, 5):
            for x in range(256):
                oracle = round_to_even_oracle(x, k)
                accurate = round_to_even(BitWord(8, x), k, cfg, Mode.ACCURATE).bits
                assert accurate == oracle
                over = round_to_even(BitWord(8, x), k, cfg, Mode.OVERESTIMATE).bits
                assert abs(over - oracle) <= 1
                checked += 1
        assert checked == 1024


def test_criterion_8_case3_activation():
    with criterion("8 activation: accurate mode within 2^-8 of the real oracle, < 5 s"):
        fmt = FixedPointFormat(16, 12)
        cfg = CordicConfig(format=fmt)  # 12 iterations plus the repeated index
        start = time.perf_counter()
        budget = 2 ** -8
        for sel, ref in (
            (AFSelect.SIGMOID, lambda z: 1.0 / (1.0 + math.exp(-z))),
            (AFSelect.TANH, math.tanh),
        ):
            worst = 0.0
            for idx in range(256):
                raw = fmt.encode(-1.0 + idx * 2.0 / 255)
                z = fmt.decode(raw)
                got = fmt.decode(activation(raw, sel, cfg).value)
                worst = max(worst, abs(got - ref(z)))
            assert worst <= budget, f"{sel.value}: {worst} > {budget}"
        assert abs(activation(0, AFSelect.SIGMOID, cfg).value - fmt.encode(0.5)) <= 1
        assert abs(activation(0, AFSelect.TANH, cfg).value) <= 1
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"took {elapsed:.1f} s"


def test_criterion_9_metrics_engine():
    with criterion("9 Monte Carlo 2^18 within 3 standard errors; worker-count invariant"):
        cfg = ChainConfig(8, 1)

        def op(a, b):
            return subtract(cfg, Mode.OVERESTIMATE, BitWord(8, a), BitWord(8, b)).result.bits

        def oracle(a, b):
            return (a - b) % 256

        exact = evaluate(op, oracle, TrialPlan(Method.EXHAUSTIVE, width=8), wrap_width=8)
        plan = TrialPlan(Method.MONTE_CARLO, width=8, trials=1 << 18, seed=2024)
        mc = evaluate(op, oracle, plan, wrap_width=8)
        sigma = math.sqrt(max(mc.mse - mc.med ** 2, 0.0)) / math.sqrt(mc.n_samples)
        assert abs(mc.med - exact.med) <= 3 * sigma, (mc.med, exact.med, sigma)
        for workers in (2, 7, 32):
            assert evaluate(op, oracle, plan, wrap_width=8, workers=workers) == mc


def test_criterion_10_out_of_scope_proxies():
    with criterion("10 synthesis figures out of scope; structural/delay proxies present"):
        import hoaa

        # no silicon estimators exist anywhere in the API ...
        for name in ("area", "power", "slack", "frequency"):
            assert not any(name in attr.lower() for attr in dir(hoaa))
        # ... their role is played by the structural and delay proxies
        assert cell_cost(CellKind.APPROX_P1A).gate_count == 3
        assert critical_path(CellKind.APPROX_P1A, CellPort.SUM) == 2
