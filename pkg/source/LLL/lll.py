"""
Classical delta-LLL: the deep-insertion loop restricted to k = l-1, i.e.
adjacent swaps whenever the Lovasz condition fails.
"""

import logging
import time
from typing import Optional

from common import config
from common.gso import compute_gso, first_size_violation, new_gso
from common.insertion import InsertionRule, check_iteration_bound, run_insertion_loop
from common.types import Basis, GSOState, OracleResult, ReductionParams, ReductionStats, Violation

logger = logging.getLogger(__name__)


def lovasz_rule(delta: float) -> InsertionRule:
    def rule(gso, l, proj_sq, floor):
        k = l - 1
        return k if proj_sq[k] < delta * gso.bstar_sq[k] else None
    return rule


def lll_loop(basis: Basis, gso: GSOState, params: ReductionParams, stats: ReductionStats,
             start: int = 0, end: Optional[int] = None, drop_zero_rows: bool = False) -> int:
    return run_insertion_loop(
        basis, gso, lovasz_rule(params.delta), stats,
        start=start, end=end,
        iteration_cap=params.iteration_cap,
        drop_zero_rows=drop_zero_rows,
    )


def lll_reduce(basis: Basis, params: Optional[ReductionParams] = None) -> ReductionStats:
    params = params or ReductionParams()
    stats = ReductionStats()
    max_norm_sq = basis.max_norm_sq()
    t0 = time.perf_counter()

    gso = new_gso(basis, params.float_config_for(basis))
    lll_loop(basis, gso, params, stats)

    stats.elapsed = time.perf_counter() - t0
    if basis.is_integral:
        check_iteration_bound(basis.n, params.delta, max_norm_sq, stats.loop_iterations, stats.insertions)
    logger.debug("LLL n=%d: %d passes, %d swaps in %.3fs",
                 basis.n, stats.loop_iterations, stats.insertions, stats.elapsed)
    return stats


def is_lll_reduced(basis: Basis, delta: float, slack: float = config.ORACLE_SLACK) -> OracleResult:
    """Size reduction and the Lovasz condition, checked on a fresh GSO."""
    gso = compute_gso(basis)
    bad = first_size_violation(gso, slack)
    if bad is not None:
        i, j, mu = bad
        return OracleResult(False, Violation("size", j, i, mu))
    for k in range(basis.n - 1):
        ratio = float(gso.proj_sq[k + 1, k] / gso.bstar_sq[k])
        if ratio < delta - slack:
            return OracleResult(False, Violation("lovasz", k, k + 1, ratio))
    return OracleResult(True)
