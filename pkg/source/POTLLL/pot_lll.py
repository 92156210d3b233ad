"""
PotLLL and PotLLL2: deep insertions chosen by the potential.

For the current row l, P_{j,l} = Pot(sigma_{j,l} B) / Pot(B) is computed
for every j < l by the descending recurrence
    P_{l,l} = 1,  P_{j,l} = P_{j+1,l} * |pi_j(b_l)|^2 / |b*_j|^2
in log-domain. MinPotential inserts at the argmin, FirstBelowDelta at the
smallest j with P_{j,l} < delta.
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from common import config
from common.gso import compute_gso, first_size_violation, new_gso
from common.insertion import InsertionRule, check_iteration_bound, run_insertion_loop, safe_log
from common.potential import exact_gso, exact_projections
from common.types import (
    Basis,
    GSOState,
    InsertionStrategy,
    OracleResult,
    ReductionParams,
    ReductionStats,
    Violation,
)
from LLL.lll import lll_reduce

logger = logging.getLogger(__name__)


@dataclass
class PotentialRatioRow:
    log_p: np.ndarray  # log P_{j,l} for j = 0..l, log_p[l] == 0
    argmin_k: int
    log_p_min: float

    @property
    def p_min(self) -> float:
        return math.exp(self.log_p_min)


def accumulated_projections(gso: GSOState, l: int) -> np.ndarray:
    """|pi_j(b_l)|^2 = |b*_l|^2 + sum_{i=j}^{l-1} mu_{l,i}^2 |b*_i|^2, j = 0..l."""
    terms = gso.mu[l, :l] ** 2 * gso.bstar_sq[:l]
    out = np.empty(l + 1, dtype=gso.dtype)
    out[l] = gso.bstar_sq[l]
    out[:l] = gso.bstar_sq[l] + np.cumsum(terms[::-1])[::-1]
    return out


def potential_ratio_scan(gso: GSOState, l: int, proj_sq: Optional[np.ndarray] = None,
                         debug: bool = False) -> PotentialRatioRow:
    """
    All P_{j,l} and their minimum. Ties keep the larger j (strict < while
    scanning downward); when nothing is below 1 the result is (0, 1).
    """
    gso.require_valid(l + 1)
    if proj_sq is None:
        proj_sq = accumulated_projections(gso, l)
    elif debug:
        expected = accumulated_projections(gso, l)
        tol = 1e-9 * float(np.max(np.abs(expected)))
        if not np.allclose(proj_sq[: l + 1], expected, rtol=1e-9, atol=tol):
            raise AssertionError(f"projected norms of row {l} disagree between update and accumulation")

    factors = safe_log(proj_sq[:l], gso.dtype) - safe_log(gso.bstar_sq[:l], gso.dtype)
    log_p = np.zeros(l + 1, dtype=np.float64)
    log_p[:l] = np.cumsum(factors[::-1])[::-1]

    if l == 0 or log_p[:l].min() >= 0:
        return PotentialRatioRow(log_p, 0, 0.0)
    k = l - 1 - int(np.argmin(log_p[:l][::-1]))
    return PotentialRatioRow(log_p, k, float(log_p[k]))


def potential_rule(delta: float, strategy: InsertionStrategy, debug: bool = False) -> InsertionRule:
    log_delta = math.log(delta)

    def rule(gso, l, proj_sq, floor):
        row = potential_ratio_scan(gso, l, proj_sq, debug)
        if strategy is InsertionStrategy.MIN_POTENTIAL:
            k = row.argmin_k if row.log_p_min < log_delta else None
        else:
            hits = np.nonzero(row.log_p[:l] < log_delta)[0]
            k = int(hits[0]) if hits.size else None
        return k if k is not None and k >= floor else None

    return rule


def _prefix_checker(delta: float, rate: float = 0.1, seed: int = 0):
    rng = np.random.default_rng(seed)

    def hook(basis, gso, l):
        if l < 2 or rng.random() >= rate:
            return
        result = is_pot_reduced(Basis(basis.rows[:l]), delta)
        if not result.ok:
            raise AssertionError(f"rows 0..{l - 1} are no longer PotLLL reduced: {result.violation}")

    return hook


def pot_lll_reduce(basis: Basis, params: Optional[ReductionParams] = None) -> ReductionStats:
    params = params or ReductionParams()
    stats = ReductionStats()
    t0 = time.perf_counter()

    if params.preprocess:
        stats.merge(lll_reduce(basis, params))

    max_norm_sq = basis.max_norm_sq()
    gso = new_gso(basis, params.float_config_for(basis))
    hook = _prefix_checker(params.delta) if params.debug_checks and basis.n <= 20 else None
    rule = potential_rule(params.delta, params.insertion_strategy, params.debug_checks)

    loop_stats = ReductionStats()
    run_insertion_loop(basis, gso, rule, loop_stats, iteration_cap=params.iteration_cap, on_pass=hook)
    if basis.is_integral:
        check_iteration_bound(basis.n, params.delta, max_norm_sq,
                              loop_stats.loop_iterations, loop_stats.insertions)
    stats.merge(loop_stats)

    stats.elapsed = time.perf_counter() - t0
    logger.debug("PotLLL[%s] n=%d: %d passes, %d insertions in %.3fs",
                 params.insertion_strategy.value, basis.n,
                 stats.loop_iterations, stats.insertions, stats.elapsed)
    return stats


def _exact_pot_check(basis: Basis, delta: float, slack: float) -> OracleResult:
    mu, bstar_sq = exact_gso(basis, limit=config.EXACT_ORACLE_MAX_RANK)
    n = basis.n
    for i in range(1, n):
        for j in range(i):
            if abs(mu[i][j]) > 0.5 + slack:
                return OracleResult(False, Violation("size", j, i, float(mu[i][j])))
    for l in range(1, n):
        proj = exact_projections(mu, bstar_sq, l)
        ratios = [None] * l
        p = 1
        for k in range(l - 1, -1, -1):
            p *= proj[k] / bstar_sq[k]
            ratios[k] = p
        for k, p in enumerate(ratios):
            if p < delta - slack:
                return OracleResult(False, Violation("potential", k, l, float(p)))
    return OracleResult(True)


def is_pot_reduced(basis: Basis, delta: float, exact: bool = False,
                   slack: float = config.ORACLE_SLACK) -> OracleResult:
    """delta <= P_{k,l} + slack for all k < l, plus size reduction."""
    if exact:
        return _exact_pot_check(basis, delta, slack)
    gso = compute_gso(basis)
    bad = first_size_violation(gso, slack)
    if bad is not None:
        i, j, mu = bad
        return OracleResult(False, Violation("size", j, i, mu))
    for l in range(1, basis.n):
        row = potential_ratio_scan(gso, l, gso.projections(l))
        ratios = np.exp(row.log_p[:l])
        hits = np.nonzero(ratios < delta - slack)[0]
        if hits.size:
            k = int(hits[0])
            return OracleResult(False, Violation("potential", k, l, float(ratios[k])))
    return OracleResult(True)
