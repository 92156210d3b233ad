"""
Gram-Schmidt orthogonalization kept in floating point next to an exact
basis. Rows are orthogonalized one at a time from the exact Gram matrix
(Cholesky style), which yields the projected norms |pi_j(b_i)|^2 as a
by-product of the update.

The Gram matrix is carried along with the GSO and updated on every row
operation, so a row update never recomputes inner products of the basis.
When cancellation in the float update eats most of the mantissa, compute_gso
switches to integral Gram-Schmidt (exact divisions only) and rounds once.
"""

import warnings
from typing import Optional

import numpy as np
from scipy.linalg import solve_triangular

from common import config
from common.errors import ContractViolation, DependentRows, PrecisionWarning
from common.numeric import int_to_float, ratio_to_float, round_half_away, to_float_array
from common.types import Basis, FloatConfig, GSOState, ReductionStats

# reduce mu only beyond this; keeps exact 1/2 entries (critical basis) in place
REDUCE_THRESHOLD = 0.5 + config.ORACLE_SLACK


def new_gso(basis: Basis, float_config: Optional[FloatConfig] = None) -> GSOState:
    gram = basis.rows.dot(basis.rows.T)
    return GSOState.empty(basis.n, float_config or FloatConfig.for_basis(basis), gram=gram)


def check_row(gso: GSOState, i: int, norm_sq) -> None:
    value = gso.bstar_sq[i]
    floor = np.finfo(gso.dtype).eps ** 2
    if not np.isfinite(value) or value <= 0 or value <= norm_sq * floor:
        raise DependentRows(i, float(value))


def lost_precision(gso: GSOState, i: int, norm_sq) -> bool:
    """True when bstar_sq[i] kept fewer than GSO_PRECISION_BITS bits of |b_i|^2."""
    value = gso.bstar_sq[i]
    keep = np.finfo(gso.dtype).eps * 2.0**config.GSO_PRECISION_BITS
    return not np.isfinite(value) or value <= norm_sq * keep


def _exact_gram_row(basis: Basis, gso: GSOState, i: int) -> np.ndarray:
    if gso.gram is None or gso.gram.shape[0] != basis.n:
        raise ContractViolation(f"the GSO carries no Gram matrix for this {basis.n}-row basis")
    return gso.gram[i, : i + 1]


def _solve_prefix(gso: GSOState, i: int, g: np.ndarray) -> np.ndarray:
    # r[i, :i] solves mu[:i, :i] r = g[:i]; LAPACK has no extended kind
    if gso.dtype == np.float64:
        return solve_triangular(gso.mu[:i, :i], g[:i], lower=True, unit_diagonal=True, check_finite=False)
    return gso.inv[:i, :i] @ g[:i]


def update_gso_row(basis: Basis, gso: GSOState, i: int, check: bool = True) -> np.ndarray:
    """
    Recompute mu[i, :i], r[i, :i+1] and bstar_sq[i] from exact inner products.

    Returns the by-product sequence |pi_j(b_i)|^2 for j = 0..i, which is
    non-increasing in j and ends in bstar_sq[i].
    """
    if not 0 <= i < gso.n:
        raise ContractViolation(f"row {i} outside a GSO of {gso.n} rows")
    gso.require_valid(i)

    g = to_float_array(_exact_gram_row(basis, gso, i), gso.dtype)
    mu, r_row = gso.mu, gso.r[i]
    proj = gso.proj_sq[i]
    proj[0] = g[i]
    if i:
        r_row[:i] = _solve_prefix(gso, i, g)
        mu[i, :i] = r_row[:i] / gso.bstar_sq[:i]
        gso.inv[i, :i] = -(mu[i, :i] @ gso.inv[:i, :i])
        proj[1 : i + 1] = g[i] - np.cumsum(mu[i, :i] * r_row[:i])
    gso.bstar_sq[i] = r_row[i] = proj[i]
    gso.valid_prefix = max(gso.valid_prefix, i + 1)

    if check:
        check_row(gso, i, g[i])
    return proj[: i + 1]


def integral_gso(basis: Basis, float_config: Optional[FloatConfig] = None) -> GSOState:
    """
    Full GSO of an integral basis by integral Gram-Schmidt.

    d_i = det Gram(b_0..b_i) and lam_ij = d_j mu_ij are integers and every
    division below is exact; mu and bstar_sq are rounded once at the end.
    """
    if not basis.is_integral:
        raise ContractViolation("integral Gram-Schmidt needs an integer basis")
    gso = new_gso(basis, float_config)
    n, gram = basis.n, gso.gram
    dets = [1]
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = int(gram[i, j])
            for k in range(j):
                u = (dets[k + 1] * u - lam[i][k] * lam[j][k]) // dets[k]
            if j < i:
                lam[i][j] = u
            elif u <= 0:
                raise DependentRows(i, u)
            else:
                dets.append(u)

    dtype = gso.dtype
    for i in range(n):
        gso.bstar_sq[i] = ratio_to_float(dets[i + 1], dets[i], dtype)
        for j in range(i):
            gso.mu[i, j] = ratio_to_float(lam[i][j], dets[j + 1], dtype)
    for i in range(n):
        mu_row, bstar = gso.mu[i, :i], gso.bstar_sq[i]
        gso.r[i, :i] = mu_row * gso.bstar_sq[:i]
        gso.r[i, i] = bstar
        tail = np.cumsum((mu_row * mu_row * gso.bstar_sq[:i])[::-1])[::-1]
        gso.proj_sq[i, :i] = bstar + tail
        gso.proj_sq[i, i] = bstar
        gso.inv[i, :i] = -(mu_row @ gso.inv[:i, :i])
    gso.valid_prefix = n
    return gso


def compute_gso(basis: Basis, float_config: Optional[FloatConfig] = None) -> GSOState:
    gso = new_gso(basis, float_config)
    for i in range(basis.n):
        update_gso_row(basis, gso, i, check=False)
        norm_sq = gso.proj_sq[i, 0]
        if basis.is_integral and lost_precision(gso, i, norm_sq):
            return integral_gso(basis, gso.config)
        check_row(gso, i, norm_sq)
    return gso


def subtract_row(basis: Basis, gso: GSOState, l: int, j: int, x: int) -> None:
    """b_l -= x * b_j on the basis and on the exact Gram matrix."""
    basis.rows[l] -= x * basis.rows[j]
    gram = gso.gram
    row = gram[l] - x * gram[j]
    row[l] -= x * row[j]
    gram[l, :] = row
    gram[:, l] = row


def rotate_rows(basis: Basis, gso: GSOState, k: int, l: int) -> None:
    """Basis.rotate(k, l) mirrored on the Gram matrix; GSO rows from k go stale."""
    basis.rotate(k, l)
    order = [l, *range(k, l)]
    gso.gram[k : l + 1, :] = gso.gram[order, :]
    gso.gram[:, k : l + 1] = gso.gram[:, order]
    gso.valid_prefix = min(gso.valid_prefix, k)


def insert_basis_row(basis: Basis, gso: GSOState, pos: int, vector) -> None:
    basis.insert_row(pos, vector)
    gso.insert_row(pos)
    products = basis.rows.dot(basis.rows[pos])
    gso.gram[pos, :] = products
    gso.gram[:, pos] = products


def delete_basis_row(basis: Basis, gso: GSOState, pos: int) -> None:
    basis.delete_row(pos)
    gso.delete_row(pos)


def size_reduce_row(basis: Basis, gso: GSOState, l: int,
                    stats: Optional[ReductionStats] = None) -> np.ndarray:
    """
    Size-reduce b_l against b_0..b_{l-1}, rounding mu half away from zero
    from j = l-1 down to 0. Returns the projected norms of the final row.
    """
    proj = update_gso_row(basis, gso, l, check=False)
    if l == 0:
        return proj

    fine_passes = coarse_passes = 0
    while True:
        mu_row = gso.mu[l, :l]
        worst = float(np.max(np.abs(mu_row)))
        if worst <= REDUCE_THRESHOLD:
            return proj
        if worst >= config.COARSE_MU and coarse_passes < config.MAX_COARSE_PASSES:
            coarse_passes += 1
        elif fine_passes < config.MAX_FINE_PASSES:
            fine_passes += 1
        else:
            if worst > config.SIZE_REDUCTION_TARGET:
                warnings.warn(
                    f"size reduction of row {l} stalled at max |mu| = {worst:.3g}",
                    PrecisionWarning,
                    stacklevel=2,
                )
            return proj

        for j in range(l - 1, -1, -1):
            m = mu_row[j]
            if abs(m) <= REDUCE_THRESHOLD:
                continue
            x = round_half_away(m)
            subtract_row(basis, gso, l, j, x)
            xf = int_to_float(x, gso.dtype)
            mu_row[:j] -= xf * gso.mu[j, :j]
            mu_row[j] -= xf
            if stats is not None:
                stats.size_reduction_ops += 1

        # exact recompute; float mu updates drift for large coefficients
        proj = update_gso_row(basis, gso, l, check=False)


def first_size_violation(gso: GSOState, slack: float = config.ORACLE_SLACK):
    """(i, j, mu) of the first |mu_ij| > 1/2 + slack, scanning rows upward."""
    for i in range(1, gso.valid_prefix):
        row = np.abs(gso.mu[i, :i])
        bad = np.nonzero(row > 0.5 + slack)[0]
        if bad.size:
            j = int(bad[0])
            return i, j, float(gso.mu[i, j])
    return None
