"""Bit-accurate simulation of the plus-one adder (P1A) and the hybrid
overestimating approximate adder HOAA(N, m): gate-level cells, word-level
chains, an error-metrics engine, and the subtraction / rounding /
activation case studies."""

from .cells import (
    CellCost,
    CellKind,
    CellNetlist,
    CellOutput,
    CellPort,
    CostModel,
    Gate,
    GateKind,
    build_cell,
    cell_cost,
    critical_path,
    eval_cell,
    eval_netlist,
    truth_table,
)
from .chains import (
    BitWord,
    ChainConfig,
    ChainResult,
    Mode,
    SubtractResult,
    UnsupportedChainError,
    explicit,
    hoaa_add,
    loa_add,
    msb_and,
    rca_add,
    select_mode,
    subtract,
)
from .fixedpoint import FixedPointFormat
from .metrics import (
    ComparisonVerdict,
    DomainTooLargeError,
    ErrorReport,
    ErrorSample,
    Method,
    TrialPlan,
    compare_reports,
    evaluate,
)
from .apps import (
    ActivationResult,
    AFSelect,
    CordicConfig,
    GridRow,
    HyperbolicPair,
    activation,
    activation_grid,
    cordic_sinh_cosh,
    round_to_even,
    round_to_even_oracle,
    sigmoid_reference,
    tanh_reference,
)
from .reference import published_reference

__version__ = "0.1.0"
