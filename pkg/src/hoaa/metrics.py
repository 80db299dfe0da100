"""Error characterization of approximate operators against exact oracles.

The engine enumerates an input domain exhaustively or samples it with a
seeded Monte Carlo generator, runs operator and oracle on every tuple,
and aggregates the standard approximate-computing statistics: MSE, mean
signed error, MED, NMED (MED normalized by 2^N - 1), MRED (mean of
|ED| / max(|exact|, 1)), error rate and the worst-case error distance.

Determinism contract: all aggregation uses exact integer / rational
accumulators that are merged commutatively, and Monte Carlo inputs are a
pure function of (seed, trial index) via the counter-based Philox
generator.  The same TrialPlan therefore yields a bit-identical
ErrorReport for any worker count.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

RNG_ALGORITHM = "philox4x64(numpy)"

# exhaustive enumeration refuses domains larger than this
EXHAUSTIVE_LIMIT = 1 << 26


class Method(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    MONTE_CARLO = "monte-carlo"


class DomainTooLargeError(ValueError):
    """Exhaustive enumeration was requested for a domain above the cap;
    use Monte Carlo instead."""


Operator = Callable[..., int]


@dataclass(frozen=True)
class ErrorSample:
    """One evaluated input point; ed = approx - exact (possibly reduced
    to the centered representative mod 2^wrap_width, see evaluate)."""

    exact: int
    approx: int
    ed: int


@dataclass(frozen=True)
class TrialPlan:
    """What to run: domain shape, method, trial budget and seed.

    The domain is the cartesian product of unsigned integer ranges
    [0, 2^w) with one width per operand; by default every operand uses
    ``width``.  The Monte Carlo trial count defaults to 2^(width+1),
    matching the published evaluation protocol.
    """

    method: Method
    width: int
    operands: int = 2
    operand_widths: tuple[int, ...] | None = None
    trials: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.width <= 64:
            raise ValueError(f"width must be in 1..64, got {self.width}")
        if self.operands < 1:
            raise ValueError(f"operands must be >= 1, got {self.operands}")
        if self.operand_widths is not None:
            if len(self.operand_widths) != self.operands:
                raise ValueError("operand_widths length must match operands")
            for w in self.operand_widths:
                if not 1 <= w <= 64:
                    raise ValueError(f"operand width must be in 1..64, got {w}")
        if self.trials is not None and self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")

    @property
    def widths(self) -> tuple[int, ...]:
        return self.operand_widths or (self.width,) * self.operands

    @property
    def domain_size(self) -> int:
        size = 1
        for w in self.widths:
            size <<= w
        return size

    @property
    def effective_trials(self) -> int:
        if self.trials is not None:
            return self.trials
        return 1 << (self.width + 1)


CSV_COLUMNS = (
    "width",
    "method",
    "seed",
    "n_samples",
    "mse",
    "mean_signed_error",
    "med",
    "nmed",
    "mred",
    "error_rate",
    "max_abs_ed",
)


@dataclass(frozen=True)
class ErrorReport:
    """Aggregate error statistics plus provenance."""

    n_samples: int
    mse: float
    mean_signed_error: float
    med: float
    nmed: float
    mred: float
    error_rate: float
    max_abs_ed: int
    method: Method
    seed: int | None
    width: int
    rng: str | None = None
    samples: tuple[ErrorSample, ...] | None = field(
        default=None, repr=False, compare=False
    )

    def to_csv_row(self) -> list[str]:
        return [
            str(self.width),
            self.method.value,
            "" if self.seed is None else str(self.seed),
            str(self.n_samples),
            repr(self.mse),
            repr(self.mean_signed_error),
            repr(self.med),
            repr(self.nmed),
            repr(self.mred),
            repr(self.error_rate),
            str(self.max_abs_ed),
        ]

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "width": self.width,
            "method": self.method.value,
            "seed": self.seed,
            "rng": self.rng,
            "n_samples": self.n_samples,
            "mse": self.mse,
            "mean_signed_error": self.mean_signed_error,
            "med": self.med,
            "nmed": self.nmed,
            "mred": self.mred,
            "error_rate": self.error_rate,
            "max_abs_ed": self.max_abs_ed,
        }


class _Partial:
    """Exact per-chunk accumulators; merging is commutative, so any
    chunking of the input stream produces the same final report."""

    __slots__ = ("n", "n_err", "sum_ed", "sum_abs", "sum_sq", "max_abs", "red", "samples")

    def __init__(self, keep_samples: bool):
        self.n = 0
        self.n_err = 0
        self.sum_ed = 0
        self.sum_abs = 0
        self.sum_sq = 0
        self.max_abs = 0
        self.red: dict[int, int] = {}
        self.samples: list[ErrorSample] | None = [] if keep_samples else None

    def add(self, exact: int, approx: int, ed: int) -> None:
        self.n += 1
        if ed:
            self.n_err += 1
        abs_ed = ed if ed >= 0 else -ed
        self.sum_ed += ed
        self.sum_abs += abs_ed
        self.sum_sq += ed * ed
        if abs_ed > self.max_abs:
            self.max_abs = abs_ed
        denom = abs(exact)
        if denom < 1:
            denom = 1
        self.red[denom] = self.red.get(denom, 0) + abs_ed
        if self.samples is not None:
            self.samples.append(ErrorSample(exact, approx, ed))

    def merge(self, other: "_Partial") -> None:
        self.n += other.n
        self.n_err += other.n_err
        self.sum_ed += other.sum_ed
        self.sum_abs += other.sum_abs
        self.sum_sq += other.sum_sq
        if other.max_abs > self.max_abs:
            self.max_abs = other.max_abs
        for denom, s in other.red.items():
            self.red[denom] = self.red.get(denom, 0) + s
        if self.samples is not None and other.samples is not None:
            self.samples.extend(other.samples)


def _exhaustive_rows(widths: Sequence[int]) -> Iterator[tuple[int, ...]]:
    # lexicographic order, last operand fastest
    return itertools.product(*(range(1 << w) for w in widths))


def _monte_carlo_rows(widths: Sequence[int], trials: int, seed: int) -> list[tuple[int, ...]]:
    gen = np.random.Generator(np.random.Philox(key=seed))
    columns = [
        gen.integers(0, 1 << w, size=trials, dtype=np.uint64).tolist() for w in widths
    ]
    return list(zip(*columns))


def evaluate(
    operator: Operator,
    oracle: Operator,
    plan: TrialPlan,
    *,
    wrap_width: int | None = None,
    workers: int = 1,
    keep_samples: bool = False,
) -> ErrorReport:
    """Run operator and oracle over the planned domain and aggregate.

    ``wrap_width`` declares that both functions produce values in the
    ring mod 2^wrap_width (e.g. two's-complement subtraction); the error
    distance is then the centered representative of (approx - exact),
    so a wraparound from 0 to 2^N - 1 counts as -1, not +(2^N - 1).

    ``workers`` only controls how the input stream is chunked before
    aggregation; the report is bit-identical for any value.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if plan.method is Method.EXHAUSTIVE:
        if plan.domain_size > EXHAUSTIVE_LIMIT:
            raise DomainTooLargeError(
                f"domain has {plan.domain_size} points, above the exhaustive cap "
                f"{EXHAUSTIVE_LIMIT}; use Monte Carlo"
            )
        rows: Iterable[tuple[int, ...]] = _exhaustive_rows(plan.widths)
        total = plan.domain_size
        seed: int | None = None
        rng: str | None = None
    else:
        total = plan.effective_trials
        rows = _monte_carlo_rows(plan.widths, total, plan.seed)
        seed = plan.seed
        rng = RNG_ALGORITHM

    modulus = (1 << wrap_width) if wrap_width else None
    half = (modulus >> 1) if modulus else 0

    chunk_size = -(-total // workers)  # ceil
    partials: list[_Partial] = []
    current = _Partial(keep_samples)
    for row in rows:
        exact = oracle(*row)
        approx = operator(*row)
        ed = approx - exact
        if modulus:
            ed = (ed + half) % modulus - half
        current.add(exact, approx, ed)
        if current.n == chunk_size:
            partials.append(current)
            current = _Partial(keep_samples)
    if current.n:
        partials.append(current)

    merged = _Partial(keep_samples)
    for part in partials:
        merged.merge(part)
    if merged.n == 0:
        raise ValueError("empty evaluation domain")

    return _finalize(merged, plan, seed, rng)


def _finalize(acc: _Partial, plan: TrialPlan, seed: int | None, rng: str | None) -> ErrorReport:
    n = acc.n
    med = Fraction(acc.sum_abs, n)
    mred = Fraction(0)
    for denom in sorted(acc.red):
        mred += Fraction(acc.red[denom], denom)
    mred /= n
    return ErrorReport(
        n_samples=n,
        mse=float(Fraction(acc.sum_sq, n)),
        mean_signed_error=float(Fraction(acc.sum_ed, n)),
        med=float(med),
        nmed=float(med / ((1 << plan.width) - 1)),
        mred=float(mred),
        error_rate=float(Fraction(acc.n_err, n)),
        max_abs_ed=acc.max_abs,
        method=plan.method,
        seed=seed,
        width=plan.width,
        rng=rng,
        samples=tuple(acc.samples) if acc.samples is not None else None,
    )


_COMPARED_FIELDS = (
    "mse",
    "mean_signed_error",
    "med",
    "nmed",
    "mred",
    "error_rate",
    "max_abs_ed",
)


@dataclass(frozen=True)
class ComparisonVerdict:
    per_field: Mapping[str, bool]
    passed: bool


def compare_reports(
    a: ErrorReport,
    b: ErrorReport,
    tolerances: Mapping[str, float] | None = None,
) -> ComparisonVerdict:
    """Field-by-field comparison under absolute tolerances (default 0)."""
    if a.width != b.width:
        raise ValueError(f"report widths differ: {a.width} vs {b.width}")
    tol = dict(tolerances or {})
    per_field = {
        name: abs(getattr(a, name) - getattr(b, name)) <= tol.get(name, 0.0)
        for name in _COMPARED_FIELDS
    }
    return ComparisonVerdict(per_field=per_field, passed=all(per_field.values()))
