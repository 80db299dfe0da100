"""Gate-level models of the single-bit adder cells.

Each cell is defined once as a boolean gate netlist; truth tables,
structural cost and unit-delay critical paths are all derived from that
netlist.  The plus-one cells realize a + b + cin + 1 in one cycle: the
accurate variant emits a 3-bit result (cout2, cout, sum), the approximate
variant compresses it to 2 bits and is wrong by exactly -1 on the two
inputs (a, b, cin) = (1, 0, 0) and (1, 1, 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping


class GateKind(enum.Enum):
    """Boolean gate primitives allowed in a cell netlist."""

    NOT = "NOT"
    AND2 = "AND2"
    OR2 = "OR2"
    XOR2 = "XOR2"
    XNOR2 = "XNOR2"
    AND3 = "AND3"

    @property
    def arity(self) -> int:
        if self is GateKind.NOT:
            return 1
        if self is GateKind.AND3:
            return 3
        return 2


_GATE_FN: dict[GateKind, Callable[..., int]] = {
    GateKind.NOT: lambda a: a ^ 1,
    GateKind.AND2: lambda a, b: a & b,
    GateKind.OR2: lambda a, b: a | b,
    GateKind.XOR2: lambda a, b: a ^ b,
    GateKind.XNOR2: lambda a, b: (a ^ b) ^ 1,
    GateKind.AND3: lambda a, b, c: a & b & c,
}


@dataclass(frozen=True)
class Gate:
    """One gate instance: kind, input net names, output net name."""

    kind: GateKind
    inputs: tuple[str, ...]
    output: str

    def __post_init__(self) -> None:
        if len(self.inputs) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} takes {self.kind.arity} input(s), got {len(self.inputs)}"
            )


@dataclass(frozen=True)
class CellNetlist:
    """A named combinational gate DAG.

    Gates are stored in topological order: every gate input must be a
    primary input or the output of an earlier gate, so one forward pass
    evaluates the whole cell and no net can be left undefined.
    """

    name: str
    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    outputs: tuple[str, ...]

    def __post_init__(self) -> None:
        defined = set(self.inputs)
        if len(defined) != len(self.inputs):
            raise ValueError(f"{self.name}: duplicate primary input name")
        for gate in self.gates:
            for net in gate.inputs:
                if net not in defined:
                    raise ValueError(f"{self.name}: net {net!r} used before it is defined")
            if gate.output in defined:
                raise ValueError(f"{self.name}: net {gate.output!r} defined twice")
            defined.add(gate.output)
        for net in self.outputs:
            if net not in defined:
                raise ValueError(f"{self.name}: output net {net!r} is undefined")

    def to_json_dict(self) -> dict:
        """JSON-friendly structural dump with a stable schema."""
        return {
            "schema_version": 1,
            "name": self.name,
            "inputs": list(self.inputs),
            "gates": [
                {"kind": g.kind.value, "in": list(g.inputs), "out": g.output}
                for g in self.gates
            ],
            "outputs": list(self.outputs),
        }


def eval_netlist(netlist: CellNetlist, assignment: Mapping[str, int]) -> dict[str, int]:
    """Evaluate every net of ``netlist`` for one primary-input assignment."""
    values: dict[str, int] = {}
    for net in netlist.inputs:
        bit = assignment[net]
        if bit not in (0, 1):
            raise ValueError(f"input {net!r} must be 0 or 1, got {bit!r}")
        values[net] = bit
    for gate in netlist.gates:
        values[gate.output] = _GATE_FN[gate.kind](*(values[n] for n in gate.inputs))
    return values


class CellKind(enum.Enum):
    FA = "fa"
    HA = "ha"
    HADD = "hadd"
    ACCURATE_P1A = "accurate-p1a"
    APPROX_P1A = "approx-p1a"


class CellPort(enum.Enum):
    SUM = "sum"
    COUT = "cout"
    COUT2 = "cout2"


@dataclass(frozen=True)
class CellOutput:
    """Output bits of one cell evaluation; cout2 only exists for the
    accurate plus-one cell."""

    sum: int
    cout: int
    cout2: int | None = None

    @property
    def value(self) -> int:
        """Numeric value of the output bits, in [0, 4]."""
        return (self.cout2 or 0) * 4 + self.cout * 2 + self.sum


def _build_fa() -> CellNetlist:
    # sum = a ^ b ^ cin, cout = (a & b) | (cin & (a ^ b))
    return CellNetlist(
        name="fa",
        inputs=("a", "b", "cin"),
        gates=(
            Gate(GateKind.XOR2, ("a", "b"), "axb"),
            Gate(GateKind.XOR2, ("axb", "cin"), "sum"),
            Gate(GateKind.AND2, ("a", "b"), "ab"),
            Gate(GateKind.AND2, ("cin", "axb"), "cx"),
            Gate(GateKind.OR2, ("ab", "cx"), "cout"),
        ),
        outputs=("sum", "cout"),
    )


def _build_ha() -> CellNetlist:
    return CellNetlist(
        name="ha",
        inputs=("a", "b"),
        gates=(
            Gate(GateKind.XOR2, ("a", "b"), "sum"),
            Gate(GateKind.AND2, ("a", "b"), "cout"),
        ),
        outputs=("sum", "cout"),
    )


def _build_hadd() -> CellNetlist:
    # sum = (a | cin) ^ b, cout = (a | cin) & b; the OR node is shared
    return CellNetlist(
        name="hadd",
        inputs=("a", "b", "cin"),
        gates=(
            Gate(GateKind.OR2, ("a", "cin"), "aoc"),
            Gate(GateKind.XOR2, ("aoc", "b"), "sum"),
            Gate(GateKind.AND2, ("aoc", "b"), "cout"),
        ),
        outputs=("sum", "cout"),
    )


def _build_accurate_p1a() -> CellNetlist:
    # raw_sum is the plain sum-of-products MAJ(a,b,cin) | (~a & ~b & ~cin);
    # sum and cout are additionally gated by ~cout2 so the three output
    # bits always encode a + b + cin + 1 (at a=b=cin=1 the carry moves
    # entirely into cout2).
    return CellNetlist(
        name="accurate-p1a",
        inputs=("a", "b", "cin"),
        gates=(
            Gate(GateKind.NOT, ("a",), "na"),
            Gate(GateKind.NOT, ("b",), "nb"),
            Gate(GateKind.NOT, ("cin",), "nc"),
            Gate(GateKind.AND3, ("na", "nb", "nc"), "zero"),
            Gate(GateKind.AND2, ("a", "b"), "m_ab"),
            Gate(GateKind.AND2, ("a", "cin"), "m_ac"),
            Gate(GateKind.AND2, ("b", "cin"), "m_bc"),
            Gate(GateKind.OR2, ("m_ab", "m_ac"), "maj_lo"),
            Gate(GateKind.OR2, ("maj_lo", "m_bc"), "maj"),
            Gate(GateKind.OR2, ("maj", "zero"), "raw_sum"),
            Gate(GateKind.AND3, ("a", "b", "cin"), "cout2"),
            Gate(GateKind.NOT, ("cout2",), "ncout2"),
            Gate(GateKind.AND2, ("raw_sum", "ncout2"), "sum"),
            Gate(GateKind.OR2, ("a", "b"), "or_ab"),
            Gate(GateKind.OR2, ("or_ab", "cin"), "or_abc"),
            Gate(GateKind.AND2, ("or_abc", "ncout2"), "cout"),
        ),
        outputs=("sum", "cout", "cout2"),
    )


def _build_approx_p1a() -> CellNetlist:
    # sum = a | ~(b ^ cin), cout = b | cin
    return CellNetlist(
        name="approx-p1a",
        inputs=("a", "b", "cin"),
        gates=(
            Gate(GateKind.XNOR2, ("b", "cin"), "nbxc"),
            Gate(GateKind.OR2, ("a", "nbxc"), "sum"),
            Gate(GateKind.OR2, ("b", "cin"), "cout"),
        ),
        outputs=("sum", "cout"),
    )


_BUILDERS: dict[CellKind, Callable[[], CellNetlist]] = {
    CellKind.FA: _build_fa,
    CellKind.HA: _build_ha,
    CellKind.HADD: _build_hadd,
    CellKind.ACCURATE_P1A: _build_accurate_p1a,
    CellKind.APPROX_P1A: _build_approx_p1a,
}


@lru_cache(maxsize=None)
def build_cell(kind: CellKind) -> CellNetlist:
    """Canonical netlist for ``kind``."""
    return _BUILDERS[kind]()


@lru_cache(maxsize=None)
def _output_table(kind: CellKind) -> tuple[CellOutput | None, ...]:
    """8-entry table indexed by a<<2 | b<<1 | cin; HA slots with cin=1 are None."""
    netlist = build_cell(kind)
    rows: list[CellOutput | None] = []
    for key in range(8):
        a, b, cin = (key >> 2) & 1, (key >> 1) & 1, key & 1
        if kind is CellKind.HA:
            if cin:
                rows.append(None)
                continue
            values = eval_netlist(netlist, {"a": a, "b": b})
        else:
            values = eval_netlist(netlist, {"a": a, "b": b, "cin": cin})
        cout2 = values["cout2"] if "cout2" in values else None
        rows.append(CellOutput(values["sum"], values["cout"], cout2))
    return tuple(rows)


def eval_cell(kind: CellKind, a: int, b: int, cin: int) -> CellOutput:
    """Evaluate one cell on single bits.

    HA has no carry-in; calling it with cin=1 is an error.
    """
    for name, bit in (("a", a), ("b", b), ("cin", cin)):
        if bit not in (0, 1):
            raise ValueError(f"{name} must be 0 or 1, got {bit!r}")
    if kind is CellKind.HA and cin:
        raise ValueError("half adder has no carry-in; cin must be 0")
    out = _output_table(kind)[a << 2 | b << 1 | cin]
    assert out is not None
    return out


def truth_table(kind: CellKind) -> list[tuple[tuple[int, int, int], CellOutput]]:
    """All valid ((a, b, cin), output) rows; 4 rows for HA, 8 otherwise."""
    rows = []
    for key in range(8):
        out = _output_table(kind)[key]
        if out is not None:
            rows.append((((key >> 2) & 1, (key >> 1) & 1, key & 1), out))
    return rows


DEFAULT_GATE_COST: dict[GateKind, int] = {
    GateKind.NOT: 2,
    GateKind.AND2: 6,
    GateKind.OR2: 6,
    GateKind.XOR2: 8,
    GateKind.XNOR2: 8,
    GateKind.AND3: 8,
}


@dataclass(frozen=True)
class CostModel:
    """Per-gate transistor costs.  Defaults are static-CMOS textbook
    values; published transistor claims for specific designs live in the
    reference data, not here."""

    gate_cost: Mapping[GateKind, int] = field(
        default_factory=lambda: dict(DEFAULT_GATE_COST)
    )

    def __post_init__(self) -> None:
        for kind, cost in self.gate_cost.items():
            if cost <= 0:
                raise ValueError(f"cost for {kind.value} must be positive, got {cost}")


@dataclass(frozen=True)
class CellCost:
    gate_count: int
    transistor_count: int


def cell_cost(kind: CellKind, model: CostModel | None = None) -> CellCost:
    """Gate count and modeled transistor count of the canonical netlist."""
    model = model if model is not None else CostModel()
    netlist = build_cell(kind)
    total = 0
    for gate in netlist.gates:
        if gate.kind not in model.gate_cost:
            raise ValueError(f"cost model has no entry for {gate.kind.value}")
        total += model.gate_cost[gate.kind]
    return CellCost(gate_count=len(netlist.gates), transistor_count=total)


def critical_path(kind: CellKind, port: CellPort) -> int:
    """Longest input-to-output path in unit gate delays (every gate = 1)."""
    netlist = build_cell(kind)
    index = {CellPort.SUM: 0, CellPort.COUT: 1, CellPort.COUT2: 2}[port]
    if index >= len(netlist.outputs):
        raise ValueError(f"cell {kind.value} has no {port.value} output")
    depth: dict[str, int] = {net: 0 for net in netlist.inputs}
    for gate in netlist.gates:
        depth[gate.output] = 1 + max(depth[n] for n in gate.inputs)
    return depth[netlist.outputs[index]]
