"""
Schnorr-Euchner enumeration of the shortest nonzero vector in a projected
block pi_k(L(b_k, .., b_j)). Depth-first from the last block row down,
coefficients visited in zig-zag order around the projected center, and
the radius shrinks whenever a shorter vector is found.
"""

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from common.errors import ContractViolation
from common.numeric import round_half_away
from common.types import GSOState


@dataclass(frozen=True)
class EnumResult:
    coeffs: Tuple[int, ...]
    norm_sq: float


def _zigzag(center: float, nonnegative: bool) -> Iterator[int]:
    """Integers by non-decreasing distance to center."""
    if nonnegative:
        value = 0
        while True:
            yield value
            value += 1
    start = round_half_away(center)
    yield start
    step = 1 if center >= start else -1
    offset = 1
    while True:
        yield start + step * offset
        yield start - step * offset
        offset += 1


def svp_enumerate(gso: GSOState, k: int, j: int, bound: float) -> Optional[EnumResult]:
    """Shortest nonzero combination of the block rows k..j with norm_sq < bound, if any."""
    if not 0 <= k <= j < gso.n:
        raise ContractViolation(f"block [{k}, {j}] outside a GSO of {gso.n} rows")
    if not bound > 0:
        raise ContractViolation(f"enumeration bound must be positive, got {bound}")
    gso.require_valid(j + 1)

    d = j - k + 1
    mu = np.asarray(gso.mu[k : j + 1, k : j + 1], dtype=np.float64)
    r = np.asarray(gso.bstar_sq[k : j + 1], dtype=np.float64)
    x = [0] * d
    best = {"coeffs": None, "radius": float(bound)}

    def descend(level: int, partial: float, above_zero: bool) -> None:
        center = -sum(x[t] * mu[t, level] for t in range(level + 1, d))
        for value in _zigzag(center, nonnegative=above_zero):
            y = value - center
            norm = partial + y * y * r[level]
            if norm >= best["radius"]:
                break
            x[level] = value
            zero = above_zero and value == 0
            if level > 0:
                descend(level - 1, norm, zero)
            elif not zero:
                best["coeffs"] = tuple(x)
                best["radius"] = norm
        x[level] = 0

    descend(d - 1, 0.0, True)
    if best["coeffs"] is None:
        return None
    return EnumResult(coeffs=best["coeffs"], norm_sq=best["radius"])
