import math
from typing import Optional

from common.errors import ContractViolation
from common.gso import compute_gso
from common.potential import log_volume
from common.types import Basis, GSOState


def hermite_root_factor(basis: Basis, gso: Optional[GSOState] = None) -> float:
    """n-th root of |b_1| / vol^(1/n), computed in log-domain from the first row."""
    gso = gso or compute_gso(basis)
    n = basis.n
    norm_sq = basis.norm_sq(0)
    log_b1 = 0.5 * math.log(int(norm_sq) if basis.is_integral else float(norm_sq))
    return math.exp((log_b1 - log_volume(gso) / n) / n)


def worst_case_bound(n: int, delta: float) -> float:
    """((delta - 1/4)^(-(n-1)/4))^(1/n): proven root Hermite factor bound for delta-LLL."""
    if not 0.25 < delta <= 1:
        raise ContractViolation(f"delta must lie in (1/4, 1], got {delta}")
    if n < 1:
        raise ContractViolation(f"n must be positive, got {n}")
    return (delta - 0.25) ** (-(n - 1) / (4 * n))


def hermite_constant_bound(n: int) -> float:
    # gamma_n <= 1 + n/4
    return 1 + n / 4


def hermite_constant_root(n: int) -> float:
    """Root Hermite factor a shortest vector can reach at most: gamma_n^(1/(2n))."""
    return hermite_constant_bound(n) ** (1 / (2 * n))
