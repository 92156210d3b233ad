"""
Potential and volume of a basis.

The float versions work in log-domain from a GSOState. The exact versions
run rational Gram-Schmidt over fractions.Fraction and are meant as test
oracles for small ranks only.
"""

import math
from fractions import Fraction

import numpy as np

from common import config
from common.errors import ContractViolation, DependentRows
from common.types import Basis, GSOState


def _log_bstar(gso: GSOState) -> np.ndarray:
    gso.require_valid()
    return np.log(np.asarray(gso.bstar_sq, dtype=np.float64))


def log_potential(gso: GSOState) -> float:
    """sum_i (n - i) * log |b*_i|^2 with 0-based i."""
    n = gso.n
    weights = np.arange(n, 0, -1, dtype=np.float64)
    return float(np.dot(weights, _log_bstar(gso)))


def log_volume(gso: GSOState) -> float:
    return 0.5 * float(np.sum(_log_bstar(gso)))


def _require_exact_rank(basis: Basis, limit: int = config.EXACT_MAX_RANK) -> None:
    if basis.n > limit:
        raise ContractViolation(f"exact mode is limited to n <= {limit}, got n={basis.n}")


def exact_gso(basis: Basis, limit: int = config.EXACT_MAX_RANK):
    """Rational mu (list of rows) and |b*_i|^2 of basis, computed exactly."""
    _require_exact_rank(basis, limit)
    cast = int if basis.is_integral else float
    rows = [[Fraction(cast(x)) for x in row] for row in basis.rows]
    n = len(rows)
    gram = [[sum(a * b for a, b in zip(rows[i], rows[j])) for j in range(n)] for i in range(n)]
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar_sq = []
    for i in range(n):
        mu[i][i] = Fraction(1)
        r = []
        for j in range(i):
            r_ij = gram[i][j] - sum(mu[j][t] * r[t] for t in range(j))
            r.append(r_ij)
            mu[i][j] = r_ij / bstar_sq[j]
        b = gram[i][i] - sum(mu[i][t] * r[t] for t in range(i))
        if b <= 0:
            raise DependentRows(i, b)
        bstar_sq.append(b)
    return mu, bstar_sq


def exact_projections(mu, bstar_sq, l: int) -> list:
    """Exact |pi_j(b_l)|^2 for j = 0..l."""
    out = [Fraction(0)] * (l + 1)
    acc = bstar_sq[l]
    out[l] = acc
    for j in range(l - 1, -1, -1):
        acc += mu[l][j] ** 2 * bstar_sq[j]
        out[j] = acc
    return out


def exact_potential(basis: Basis) -> Fraction:
    _, bstar_sq = exact_gso(basis)
    n = len(bstar_sq)
    return math.prod((b ** (n - i) for i, b in enumerate(bstar_sq)), start=Fraction(1))


def exact_volume_squared(basis: Basis) -> Fraction:
    """det(B B^T) as an exact rational (an integer for integer bases)."""
    _, bstar_sq = exact_gso(basis)
    return math.prod(bstar_sq, start=Fraction(1))


def potential(basis: Basis, gso: GSOState, exact: bool = False):
    """
    log Pot(B) from a fully valid GSO, or Pot(B) itself as a Fraction when
    exact is set (n <= 12).
    """
    gso.require_valid(basis.n)
    if exact:
        return exact_potential(basis)
    return log_potential(gso)


def volume(gso: GSOState, basis: Basis = None, exact: bool = False) -> float:
    gso.require_valid()
    if exact:
        if basis is None:
            raise ContractViolation("exact volume needs the basis")
        det = exact_volume_squared(basis)
        return math.exp(0.5 * (math.log(det.numerator) - math.log(det.denominator)))
    return math.exp(log_volume(gso))
