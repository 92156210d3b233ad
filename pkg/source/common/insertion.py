"""
Deep insertion and the reduction loop shared by LLL, DeepLLL, PotLLL and
the LLL passes inside BKZ. The reducers differ only in the rule that picks
the insertion place k for the current row l.
"""

import math
from typing import Callable, Optional

import numpy as np

from common.errors import ContractViolation, IterationCapExceeded
from common.gso import check_row, delete_basis_row, rotate_rows, size_reduce_row, update_gso_row
from common.types import Basis, GSOState, ReductionStats

# rule(gso, l, proj_sq, floor) -> k in [floor, l) or None
InsertionRule = Callable[[GSOState, int, np.ndarray, int], Optional[int]]
PassHook = Callable[[Basis, GSOState, int], None]


def safe_log(values, dtype) -> np.ndarray:
    values = np.asarray(values, dtype=dtype)
    return np.log(np.maximum(values, np.finfo(dtype).tiny))


def log_ratio(gso: GSOState, proj_sq, k: int, l: int) -> float:
    """log P_{k,l}: sum over i in [k, l) of log(|pi_i(b_l)|^2 / |b*_i|^2)."""
    factors = safe_log(proj_sq[k:l], gso.dtype) - safe_log(gso.bstar_sq[k:l], gso.dtype)
    return float(np.sum(factors))


def apply_deep_insertion(basis: Basis, gso: GSOState, k: int, l: int) -> None:
    """Move b_l to position k, shifting b_k..b_{l-1} down, and refresh row k."""
    if not 0 <= k <= l < basis.n:
        raise ContractViolation(f"deep insertion needs 0 <= k <= l < {basis.n}, got k={k}, l={l}")
    if k == l:
        return
    rotate_rows(basis, gso, k, l)
    update_gso_row(basis, gso, k, check=False)


def run_insertion_loop(basis: Basis, gso: GSOState, rule: InsertionRule, stats: ReductionStats,
                       start: int = 0, end: Optional[int] = None, floor: int = 0,
                       iteration_cap: Optional[int] = None, drop_zero_rows: bool = False,
                       on_pass: Optional[PassHook] = None) -> int:
    """
    Process rows start..end-1 until every one is accepted by rule.

    Rows below start must already be GSO-valid and accepted. Insertions go
    no lower than floor. With drop_zero_rows a row that size-reduces to
    zero is removed. Returns the final end (smaller after drops).
    """
    end = basis.n if end is None else end
    gso.require_valid(start)
    l = start
    passes = 0
    while l < end:
        passes += 1
        stats.loop_iterations += 1
        if iteration_cap is not None and passes > iteration_cap:
            raise IterationCapExceeded(f"no reduced basis after {iteration_cap} loop passes (row {l})")
        if on_pass is not None:
            on_pass(basis, gso, l)

        proj = size_reduce_row(basis, gso, l, stats)
        if drop_zero_rows and basis.is_zero_row(l):
            delete_basis_row(basis, gso, l)
            end -= 1
            continue

        k = rule(gso, l, proj, floor) if l > floor else None
        if k is not None:
            stats.record_insertion(log_ratio(gso, proj, k, l))
            apply_deep_insertion(basis, gso, k, l)
            l = k
        else:
            check_row(gso, l, proj[0])
            l += 1
    return end


def check_iteration_bound(n: int, delta: float, max_norm_sq, loop_iterations: int,
                          insertions: int) -> None:
    """
    Polynomial iteration bound for potential-decreasing loops on integer
    lattices: insertions <= n(n-1)/2 * log C / log(1/delta) and
    passes - insertions <= (n-1) * insertions + n, i.e. passes <= n * (insertions + 1).
    """
    if loop_iterations - insertions > (n - 1) * insertions + n:
        raise IterationCapExceeded(
            f"{loop_iterations} loop passes exceed the bound for {insertions} insertions at n={n}"
        )
    if delta >= 1 or max_norm_sq < 1:
        return
    bound = n * (n - 1) / 2 * math.log(max_norm_sq) / math.log(1 / delta)
    if insertions > bound * (1 + 1e-12) + 1e-9:
        raise IterationCapExceeded(
            f"{insertions} insertions exceed the potential bound {bound:.1f} (n={n}, delta={delta})"
        )
