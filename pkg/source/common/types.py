"""
Data model shared by every reducer: the exact Basis, the floating GSO
state kept alongside it, reduction parameters and run statistics.
"""

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from numbers import Integral, Real
from typing import NamedTuple, Optional

import numpy as np

from common import config
from common.errors import ContractViolation


class FloatKind(str, Enum):
    HARDWARE_DOUBLE = "double"
    EXTENDED = "extended"

    @property
    def dtype(self):
        return np.float64 if self is FloatKind.HARDWARE_DOUBLE else np.longdouble


@dataclass(frozen=True)
class FloatConfig:
    kind: FloatKind = FloatKind.HARDWARE_DOUBLE
    relative_tolerance: float = config.DEFAULT_TOLERANCE

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", FloatKind(self.kind))
        except ValueError as exc:
            raise ContractViolation(f"unknown float kind {self.kind!r}") from exc
        if not 0 < self.relative_tolerance <= 1e-3:
            raise ContractViolation(
                f"relative_tolerance must lie in (0, 1e-3], got {self.relative_tolerance}"
            )

    @property
    def dtype(self):
        return self.kind.dtype

    @classmethod
    def for_basis(cls, basis: "Basis") -> "FloatConfig":
        """Float kind for a GSO of basis: env override first, then entry size."""
        forced = config.forced_float_kind()
        if forced is not None:
            return cls(kind=forced)
        if basis.max_norm_sq_log2() > config.DOUBLE_SAFE_LOG2:
            return cls(kind=FloatKind.EXTENDED)
        return cls()


def _coerce_rows(rows) -> np.ndarray:
    if isinstance(rows, np.ndarray) and rows.dtype.kind == "f":
        if rows.ndim != 2:
            raise ContractViolation("a basis must be a two-dimensional array")
        return rows.copy()
    rows = [list(row) for row in rows]
    if not rows or not rows[0]:
        raise ContractViolation("a basis needs at least one non-empty row")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ContractViolation("all basis rows must have the same length")
    entries = [x for row in rows for x in row]
    if all(isinstance(x, Integral) for x in entries):
        out = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            out[i, :] = [int(x) for x in row]
        return out
    if all(isinstance(x, Real) for x in entries):
        return np.array(rows, dtype=np.float64)
    raise ContractViolation("basis entries must be integers or real numbers")


class Basis:
    """
    Row-major lattice basis. Integer bases keep Python ints in an object
    array so entries never overflow; the critical basis is the only
    float-valued path.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = _coerce_rows(rows.rows if isinstance(rows, Basis) else rows)
        n, m = self.rows.shape
        if not 1 <= n <= m:
            raise ContractViolation(f"need 1 <= n <= m, got n={n}, m={m}")

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def m(self) -> int:
        return self.rows.shape[1]

    @property
    def is_integral(self) -> bool:
        return self.rows.dtype == object

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Basis):
            return NotImplemented
        return self.rows.shape == other.rows.shape and self.to_list() == other.to_list()

    def __repr__(self):
        return f"Basis(n={self.n}, m={self.m}, integral={self.is_integral})"

    def copy(self) -> "Basis":
        return Basis(self)

    def to_list(self) -> list:
        cast = int if self.is_integral else float
        return [[cast(x) for x in row] for row in self.rows]

    def norm_sq(self, i: int):
        row = self.rows[i]
        return row.dot(row)

    def max_norm_sq(self):
        return max(self.norm_sq(i) for i in range(self.n))

    def max_norm_sq_log2(self) -> float:
        top = self.max_norm_sq()
        if top <= 0:
            return -math.inf
        if self.is_integral:
            return float(int(top).bit_length())
        return math.log2(float(top))

    def is_zero_row(self, i: int) -> bool:
        return all(x == 0 for x in self.rows[i])

    def rotate(self, k: int, l: int) -> None:
        # (.., b_k, .., b_l, ..) -> (.., b_l, b_k, .., b_{l-1}, ..)
        order = [l, *range(k, l)]
        self.rows[k : l + 1] = self.rows[order]

    def insert_row(self, pos: int, vector) -> None:
        vector = np.asarray(vector, dtype=self.rows.dtype).reshape(1, self.m)
        self.rows = np.concatenate([self.rows[:pos], vector, self.rows[pos:]], axis=0)

    def delete_row(self, pos: int) -> None:
        self.rows = np.delete(self.rows, pos, axis=0)


@dataclass
class GSOState:
    """
    Floating Gram-Schmidt data for the first valid_prefix rows of a Basis.

    r holds the unnormalized coefficients <b_i, b*_j> and proj_sq[i, j] the
    projected squared norms |pi_j(b_i)|^2 produced while updating row i.
    gram, when set, is the exact Gram matrix of the basis, kept in step with
    every row operation; inv is the inverse of the unit lower triangular mu.
    """

    mu: np.ndarray
    r: np.ndarray
    bstar_sq: np.ndarray
    proj_sq: np.ndarray
    valid_prefix: int
    config: FloatConfig
    inv: Optional[np.ndarray] = None
    gram: Optional[np.ndarray] = None

    @classmethod
    def empty(cls, n: int, float_config: FloatConfig, gram: Optional[np.ndarray] = None) -> "GSOState":
        dtype = float_config.dtype
        return cls(
            mu=np.eye(n, dtype=dtype),
            r=np.zeros((n, n), dtype=dtype),
            bstar_sq=np.zeros(n, dtype=dtype),
            proj_sq=np.zeros((n, n), dtype=dtype),
            valid_prefix=0,
            config=float_config,
            inv=np.eye(n, dtype=dtype),
            gram=gram,
        )

    @property
    def n(self) -> int:
        return self.bstar_sq.shape[0]

    @property
    def dtype(self):
        return self.config.dtype

    def _square_grids(self):
        return [name for name in ("mu", "r", "proj_sq", "inv", "gram") if getattr(self, name) is not None]

    def require_valid(self, upto: Optional[int] = None) -> None:
        upto = self.n if upto is None else upto
        if self.valid_prefix < upto:
            raise ContractViolation(
                f"GSO valid for {self.valid_prefix} rows, {upto} required"
            )

    def projections(self, i: int) -> np.ndarray:
        return self.proj_sq[i, : i + 1]

    def insert_row(self, pos: int) -> None:
        for name in self._square_grids():
            grid = getattr(self, name)
            grid = np.insert(np.insert(grid, pos, 0, axis=0), pos, 0, axis=1)
            setattr(self, name, grid)
        self.mu[pos, pos] = 1
        if self.inv is not None:
            self.inv[pos, pos] = 1
        self.bstar_sq = np.insert(self.bstar_sq, pos, 0)
        self.valid_prefix = min(self.valid_prefix, pos)

    def delete_row(self, pos: int) -> None:
        for name in self._square_grids():
            grid = getattr(self, name)
            setattr(self, name, np.delete(np.delete(grid, pos, axis=0), pos, axis=1))
        self.bstar_sq = np.delete(self.bstar_sq, pos)
        self.valid_prefix = min(self.valid_prefix, pos)


class InsertionStrategy(str, Enum):
    MIN_POTENTIAL = "min_potential"
    FIRST_BELOW_DELTA = "first_below_delta"


@dataclass
class ReductionParams:
    delta: float = config.DEFAULT_DELTA
    beta: Optional[int] = None
    preprocess: bool = True
    insertion_strategy: InsertionStrategy = InsertionStrategy.MIN_POTENTIAL
    float_config: Optional[FloatConfig] = None
    iteration_cap: int = config.DEEP_ITERATION_CAP
    sweep_cap: int = config.BKZ_SWEEP_CAP
    debug_checks: bool = field(default_factory=config.debug_checks_enabled)

    def __post_init__(self):
        if not 0.25 < self.delta <= 1:
            raise ContractViolation(f"delta must lie in (1/4, 1], got {self.delta}")
        if self.beta is not None and self.beta < 2:
            raise ContractViolation(f"beta must be >= 2, got {self.beta}")
        self.insertion_strategy = InsertionStrategy(self.insertion_strategy)

    def require_beta(self) -> int:
        if self.beta is None:
            raise ContractViolation("this reducer needs a blocksize beta")
        return self.beta

    def float_config_for(self, basis: Basis) -> FloatConfig:
        return self.float_config or FloatConfig.for_basis(basis)


@dataclass
class ReductionStats:
    loop_iterations: int = 0
    insertions: int = 0
    size_reduction_ops: int = 0
    elapsed: float = 0.0
    sweeps: int = 0
    max_insertion_log_ratio: float = -math.inf

    def record_insertion(self, log_ratio: float) -> None:
        self.insertions += 1
        self.max_insertion_log_ratio = max(self.max_insertion_log_ratio, float(log_ratio))

    def merge(self, other: "ReductionStats") -> "ReductionStats":
        self.loop_iterations += other.loop_iterations
        self.insertions += other.insertions
        self.size_reduction_ops += other.size_reduction_ops
        self.elapsed += other.elapsed
        self.sweeps += other.sweeps
        self.max_insertion_log_ratio = max(self.max_insertion_log_ratio, other.max_insertion_log_ratio)
        return self

    def to_dict(self) -> dict:
        data = asdict(self)
        if not math.isfinite(data["max_insertion_log_ratio"]):
            data["max_insertion_log_ratio"] = None
        return data


class Violation(NamedTuple):
    """First failed condition found by an oracle; k < l are 0-based rows."""

    kind: str
    k: int
    l: int
    value: float


class OracleResult(NamedTuple):
    ok: bool
    violation: Optional[Violation] = None
