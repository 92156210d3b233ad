"""
Blockwise DeepLLL (Schnorr-Euchner deep insertions). Row l is inserted at
the first k, scanning upward, with delta * |b*_k|^2 > |pi_k(b_l)|^2 among
the places allowed by the block rule: k < beta or l - k <= beta.
"""

import logging
import time
from typing import Optional

import numpy as np

from common import config
from common.gso import compute_gso, first_size_violation, new_gso
from common.insertion import InsertionRule, run_insertion_loop
from common.types import Basis, OracleResult, ReductionParams, ReductionStats, Violation
from LLL.lll import lll_reduce

logger = logging.getLogger(__name__)


def _allowed(l: int, beta: int, floor: int = 0) -> np.ndarray:
    ks = np.arange(floor, l)
    return (ks < beta) | (l - ks <= beta)


def deep_rule(delta: float, beta: int) -> InsertionRule:
    def rule(gso, l, proj_sq, floor):
        failing = proj_sq[floor:l] < delta * gso.bstar_sq[floor:l]
        hits = np.nonzero(failing & _allowed(l, beta, floor))[0]
        return floor + int(hits[0]) if hits.size else None
    return rule


def deep_lll_reduce(basis: Basis, params: Optional[ReductionParams] = None) -> ReductionStats:
    params = params or ReductionParams(beta=config.DEFAULT_BETA)
    beta = params.require_beta()
    stats = ReductionStats()
    t0 = time.perf_counter()

    if params.preprocess:
        stats.merge(lll_reduce(basis, params))

    gso = new_gso(basis, params.float_config_for(basis))
    run_insertion_loop(basis, gso, deep_rule(params.delta, beta), stats,
                       iteration_cap=params.iteration_cap)

    stats.elapsed = time.perf_counter() - t0
    logger.debug("DeepLLL-%d n=%d: %d passes, %d insertions in %.3fs",
                 beta, basis.n, stats.loop_iterations, stats.insertions, stats.elapsed)
    return stats


def is_deep_reduced(basis: Basis, delta: float, beta: int,
                    slack: float = config.ORACLE_SLACK) -> OracleResult:
    gso = compute_gso(basis)
    bad = first_size_violation(gso, slack)
    if bad is not None:
        i, j, mu = bad
        return OracleResult(False, Violation("size", j, i, mu))
    for l in range(1, basis.n):
        ratios = np.asarray(gso.proj_sq[l, :l] / gso.bstar_sq[:l], dtype=np.float64)
        hits = np.nonzero((ratios < delta - slack) & _allowed(l, beta))[0]
        if hits.size:
            k = int(hits[0])
            return OracleResult(False, Violation("deep", k, l, float(ratios[k])))
    return OracleResult(True)
