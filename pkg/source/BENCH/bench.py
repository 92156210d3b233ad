"""
Benchmark orchestration: generate, reduce, time, verify, record.

Every cell of dims x seeds x algos x preprocess flags is independent, so
cells may run in a multiprocessing pool; records come back in plan order.
"""

import logging
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Optional, Tuple

from BENCH.aggregate import aggregate
from BENCH.metrics import hermite_root_factor, worst_case_bound
from BENCH.records import STATUS_ERROR, STATUS_REJECTED, BenchRecord
from BKZ.bkz import bkz_reduce, is_bkz_reduced
from DEEPLLL.deep_lll import deep_lll_reduce, is_deep_reduced
from LLL.lll import is_lll_reduced, lll_reduce
from POTLLL.pot_lll import is_pot_reduced, pot_lll_reduce
from common import config
from common.errors import ContractViolation, LatticeError
from common.latgen import GenSpec, generate_random_hnf
from common.types import Basis, InsertionStrategy, OracleResult, ReductionParams, ReductionStats

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class AlgoSpec:
    kind: str
    beta: Optional[int] = None

    KINDS = ("lll", "potlll", "potlll2", "deeplll", "bkz")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ContractViolation(f"unknown algorithm {self.kind!r}; expected one of {', '.join(self.KINDS)}")
        if self.kind in ("deeplll", "bkz"):
            if self.beta is None:
                object.__setattr__(self, "beta", config.DEFAULT_BETA)
            if self.beta < 2:
                raise ContractViolation(f"beta must be >= 2, got {self.beta}")
            if self.kind == "bkz" and self.beta > config.MAX_BLOCKSIZE:
                raise ContractViolation(f"BKZ blocksize is capped at {config.MAX_BLOCKSIZE}")
        elif self.beta is not None:
            raise ContractViolation(f"{self.kind} takes no blocksize")

    @classmethod
    def parse(cls, token: str) -> "AlgoSpec":
        kind, _, beta = token.strip().lower().partition(":")
        if beta and not beta.isdecimal():
            raise ContractViolation(f"bad blocksize in {token!r}")
        return cls(kind, int(beta) if beta else None)

    @property
    def name(self) -> str:
        return {
            "lll": "LLL",
            "potlll": "PotLLL",
            "potlll2": "PotLLL2",
            "deeplll": f"DeepLLL{self.beta}",
            "bkz": f"BKZ{self.beta}",
        }[self.kind]

    def params(self, delta: float, preprocess: bool) -> ReductionParams:
        strategy = (InsertionStrategy.FIRST_BELOW_DELTA if self.kind == "potlll2"
                    else InsertionStrategy.MIN_POTENTIAL)
        return ReductionParams(delta=delta, beta=self.beta, preprocess=preprocess,
                               insertion_strategy=strategy)

    def reduce(self, basis: Basis, params: ReductionParams) -> ReductionStats:
        reducer = {
            "lll": lll_reduce,
            "potlll": pot_lll_reduce,
            "potlll2": pot_lll_reduce,
            "deeplll": deep_lll_reduce,
            "bkz": bkz_reduce,
        }[self.kind]
        return reducer(basis, params)

    def verify(self, basis: Basis, delta: float) -> OracleResult:
        if self.kind == "lll":
            return is_lll_reduced(basis, delta)
        if self.kind == "deeplll":
            return is_deep_reduced(basis, delta, self.beta)
        if self.kind == "bkz":
            return is_bkz_reduced(basis, delta, self.beta)
        return is_pot_reduced(basis, delta)


def parse_algos(text: str) -> Tuple[AlgoSpec, ...]:
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise ContractViolation("no algorithms given")
    return tuple(AlgoSpec.parse(t) for t in tokens)


def parse_dims(text: str) -> Tuple[int, ...]:
    """'40:100:20' (inclusive), '60', or '60,100'."""
    sep = ":" if ":" in text else ","
    parts = [p.strip() for p in text.split(sep) if p.strip()]
    if not parts or not all(p.isdecimal() for p in parts):
        raise ContractViolation(f"bad dimension range {text!r}")
    values = [int(p) for p in parts]
    if sep == ",":
        return tuple(values)
    if len(values) == 2:
        values.append(1)
    if len(values) != 3 or values[2] <= 0:
        raise ContractViolation(f"bad dimension range {text!r}")
    start, stop, step = values
    return tuple(range(start, stop + 1, step))


@dataclass(frozen=True)
class BenchCell:
    algo: AlgoSpec
    dim: int
    seed: int
    preprocess: bool
    delta: float
    bits: Optional[int] = None


@dataclass(frozen=True)
class BenchPlan:
    dims: Tuple[int, ...]
    seeds: Tuple[int, ...]
    algos: Tuple[AlgoSpec, ...]
    preprocess_flags: Tuple[bool, ...] = (True,)
    delta: float = config.DEFAULT_DELTA
    bits: Optional[int] = None
    workers: int = 1

    def __post_init__(self):
        if not self.dims or not self.seeds or not self.algos or not self.preprocess_flags:
            raise ContractViolation("a bench plan needs dims, seeds, algorithms and preprocess flags")
        bad = [d for d in self.dims if not 2 <= d <= config.DIM_CAP]
        if bad:
            raise ContractViolation(f"dimensions {bad} outside [2, {config.DIM_CAP}]")
        if not 0.25 < self.delta <= 1:
            raise ContractViolation(f"delta must lie in (1/4, 1], got {self.delta}")
        if self.workers < 1:
            raise ContractViolation("workers must be >= 1")

    def cells(self):
        for dim in self.dims:
            for seed in self.seeds:
                for algo in self.algos:
                    for preprocess in self.preprocess_flags:
                        yield BenchCell(algo, dim, seed, preprocess, self.delta, self.bits)


def run_cell(cell: BenchCell) -> BenchRecord:
    record = BenchRecord(cell.algo.name, cell.dim, cell.seed, cell.preprocess)
    try:
        basis = generate_random_hnf(GenSpec(cell.dim, cell.seed, cell.bits)).copy()
        params = cell.algo.params(cell.delta, cell.preprocess)
        t0 = time.perf_counter()
        record.stats = cell.algo.reduce(basis, params)
        record.elapsed_s = time.perf_counter() - t0
        record.hermite_root = hermite_root_factor(basis)
        verdict = cell.algo.verify(basis, cell.delta)
    except LatticeError as exc:
        record.status = STATUS_ERROR
        record.message = f"{type(exc).__name__}: {exc}"
        return record
    except Exception as exc:
        logger.exception("cell %s n=%d seed=%d crashed", cell.algo.name, cell.dim, cell.seed)
        record.status = STATUS_ERROR
        record.message = f"{type(exc).__name__}: {exc}"
        return record

    bound = worst_case_bound(cell.dim, cell.delta)
    if not verdict.ok:
        record.status = STATUS_REJECTED
        record.message = f"oracle rejected the output: {verdict.violation}"
    elif record.hermite_root > bound * (1 + BOUND_SLACK):
        record.status = STATUS_REJECTED
        record.message = f"root Hermite factor {record.hermite_root:.6f} above the worst-case bound {bound:.6f}"
    return record


def run_bench(plan: BenchPlan, on_record: Optional[Callable[[BenchRecord], None]] = None):
    """Run every cell; returns (records, aggregate rows)."""
    cells = list(plan.cells())
    logger.info("bench: %d cells, %d worker(s)", len(cells), plan.workers)

    records = []

    def collect(results):
        for record in results:
            if record.ok:
                logger.info(f"[{record.algo}] n={record.dim} seed={record.seed} "
                            f"hermite={record.hermite_root:.5f} time={record.elapsed_s:.3f}s")
            else:
                logger.error(f"[{record.algo}] n={record.dim} seed={record.seed} "
                             f"status={record.status}: {record.message}")
            if on_record is not None:
                on_record(record)
            records.append(record)

    if plan.workers > 1:
        with Pool(processes=plan.workers) as pool:
            collect(pool.imap(run_cell, cells))
    else:
        collect(map(run_cell, cells))

    return records, aggregate(records)
