"""
BKZ-beta with Schnorr-Euchner enumeration in each block.

A tour walks the block starts k = 0..n-2 over [k, min(k+beta-1, n-1)].
When the block holds a projected vector shorter than delta * |b*_k|^2 it
is inserted at k and LLL on rows k..j+1 removes the resulting linear
dependency (the zero row is dropped). The run stops after a tour without
insertions.
"""

import logging
import time
from typing import Optional

from common import config
from common.errors import ContractViolation, LatticeError, SweepCapExceeded
from common.gso import compute_gso, insert_basis_row, new_gso
from common.types import Basis, GSOState, OracleResult, ReductionParams, ReductionStats, Violation
from BKZ.enumeration import svp_enumerate
from LLL.lll import is_lll_reduced, lll_loop, lll_reduce

logger = logging.getLogger(__name__)


def _is_trivial(coeffs) -> bool:
    return abs(coeffs[0]) == 1 and not any(coeffs[1:])


def _insert_block_vector(basis: Basis, gso: GSOState, params: ReductionParams,
                         stats: ReductionStats, k: int, j: int, coeffs) -> None:
    vector = sum(c * basis.rows[k + i] for i, c in enumerate(coeffs) if c)
    insert_basis_row(basis, gso, k, vector)
    end = lll_loop(basis, gso, params, stats, start=k, end=j + 2, drop_zero_rows=True)
    if end != j + 1:
        raise LatticeError(f"inserting at row {k} left {end - k} rows in block [{k}, {j}]")
    stats.insertions += 1


def bkz_reduce(basis: Basis, params: Optional[ReductionParams] = None) -> ReductionStats:
    params = params or ReductionParams(beta=config.DEFAULT_BETA)
    beta = params.require_beta()
    if beta > config.MAX_BLOCKSIZE:
        raise ContractViolation(f"BKZ blocksize is capped at {config.MAX_BLOCKSIZE}, got {beta}")
    n = basis.n
    stats = ReductionStats()
    t0 = time.perf_counter()

    stats.merge(lll_reduce(basis, params))
    gso = new_gso(basis, params.float_config_for(basis))
    lll_loop(basis, gso, params, stats)

    while True:
        stats.sweeps += 1
        if stats.sweeps > params.sweep_cap:
            raise SweepCapExceeded(f"BKZ-{beta} still changing after {params.sweep_cap} tours")
        clean = True
        for k in range(n - 1):
            j = min(k + beta - 1, n - 1)
            if gso.valid_prefix < j + 1:
                lll_loop(basis, gso, params, stats, start=gso.valid_prefix, end=j + 1)
            found = svp_enumerate(gso, k, j, params.delta * float(gso.bstar_sq[k]))
            if found is None or _is_trivial(found.coeffs):
                continue
            _insert_block_vector(basis, gso, params, stats, k, j, found.coeffs)
            clean = False
        logger.debug("BKZ-%d tour %d: %s", beta, stats.sweeps, "clean" if clean else "changed")
        if clean:
            break

    stats.elapsed = time.perf_counter() - t0
    logger.debug("BKZ-%d n=%d: %d tours, %d insertions in %.3fs",
                 beta, n, stats.sweeps, stats.insertions, stats.elapsed)
    return stats


def is_bkz_reduced(basis: Basis, delta: float, beta: int,
                   slack: float = config.ORACLE_SLACK) -> OracleResult:
    """LLL conditions plus: no block [k, k+beta-1] holds a vector below delta * |b*_k|^2."""
    result = is_lll_reduced(basis, delta, slack)
    if not result.ok:
        return result
    gso = compute_gso(basis)
    n = basis.n
    for k in range(n - 1):
        j = min(k + beta - 1, n - 1)
        bstar = float(gso.bstar_sq[k])
        found = svp_enumerate(gso, k, j, delta * bstar * (1 - slack))
        if found is not None and not _is_trivial(found.coeffs):
            return OracleResult(False, Violation("block", k, j, found.norm_sq / bstar))
    return OracleResult(True)
