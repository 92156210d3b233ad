"""
Lattice instances.

Random HNF bases follow the shape of the SVP-challenge lattices: row 0 is
(p, 0, .., 0) and row i is (x_i, 0, .., 1, .., 0) with the 1 in column i.
p is the smallest prime >= 2^bits and the x_i come from SplitMix64:

    state <- state + 0x9E3779B97F4A7C15            (mod 2^64)
    z <- state
    z <- (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (mod 2^64)
    z <- (z ^ (z >> 27)) * 0x94D049BB133111EB      (mod 2^64)
    output z ^ (z >> 31)

seeded with state = seed mod 2^64. A value below p takes
ceil((bitlen(p) + 32) / 64) outputs, concatenated with the first output
most significant, reduced mod p.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from sympy import nextprime

from common.errors import ContractViolation
from common.types import Basis, FloatConfig

MASK64 = (1 << 64) - 1


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        words = -(-(bound.bit_length() + 32) // 64)
        value = 0
        for _ in range(words):
            value = (value << 64) | self.next()
        return value % bound


@dataclass(frozen=True)
class GenSpec:
    dim: int
    seed: int = 0
    bits: Optional[int] = None

    def __post_init__(self):
        if self.dim < 2:
            raise ContractViolation(f"dim must be >= 2, got {self.dim}")
        if self.bits is None:
            object.__setattr__(self, "bits", 10 * self.dim)
        if self.bits < self.dim:
            raise ContractViolation(f"bits must be >= dim, got bits={self.bits}, dim={self.dim}")


@dataclass(frozen=True)
class CriticalBasisSpec:
    dim: int
    alpha_sq: Fraction = Fraction(3, 4)
    float_config: FloatConfig = FloatConfig()

    def __post_init__(self):
        if self.dim < 2:
            raise ContractViolation(f"dim must be >= 2, got {self.dim}")
        if Fraction(self.alpha_sq) != Fraction(3, 4):
            raise ContractViolation("the critical basis is defined for alpha^2 = 3/4")


def hnf_modulus(bits: int) -> int:
    return int(nextprime((1 << bits) - 1))


def generate_random_hnf(spec: GenSpec) -> Basis:
    p = hnf_modulus(spec.bits)
    rng = SplitMix64(spec.seed)
    n = spec.dim
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = p
    for i in range(1, n):
        rows[i][0] = rng.below(p)
        rows[i][i] = 1
    return Basis(rows)


def critical_basis(spec: CriticalBasisSpec) -> Basis:
    """
    Lower-triangular A_n(alpha): diagonal alpha^i and entries alpha^j / 2
    below it (0-based), alpha = sqrt(3/4) in the configured float kind.
    Every mu_ij is 1/2 and |pi_j(b_i)|^2 = alpha^(2j).
    """
    dtype = spec.float_config.dtype
    n = spec.dim
    alpha = np.sqrt(dtype(3) / dtype(4))
    powers = alpha ** np.arange(n, dtype=dtype)
    rows = np.zeros((n, n), dtype=dtype)
    for i in range(n):
        rows[i, :i] = powers[:i] / 2
        rows[i, i] = powers[i]
    return Basis(rows)
