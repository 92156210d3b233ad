"""
Shared knobs for the reducers, the generator and the bench.
Everything environment-driven is read here and nowhere else.
"""

import os

DEFAULT_DELTA = 0.99
DEFAULT_BETA = 5

# Desk-scale dimension cap (extended-precision regime)
DIM_CAP = 160

DEEP_ITERATION_CAP = 10**7
BKZ_SWEEP_CAP = 5000
MAX_BLOCKSIZE = 10

EXACT_MAX_RANK = 12
EXACT_ORACLE_MAX_RANK = 10

DEFAULT_TOLERANCE = 1e-9
ORACLE_SLACK = 1e-9

# size reduction
SIZE_REDUCTION_TARGET = 0.5 + 1e-6
MAX_FINE_PASSES = 8
MAX_COARSE_PASSES = 64
COARSE_MU = 2.0**20

# mantissa bits bstar_sq must keep before the GSO falls back to exact arithmetic
GSO_PRECISION_BITS = 33

# squared norms above this do not fit a double Gram matrix
DOUBLE_SAFE_LOG2 = 960

# stays below the interpreter limit on int <-> str conversion
MAX_TOKEN_LENGTH = 4000

CI_LEVEL = 0.999

FLOAT_ENV = "POTLLL_FLOAT"
DEBUG_ENV = "POTLLL_DEBUG"
SLOW_ENV = "POTLLL_SLOW"


def _flag(name: str) -> bool:
    return os.environ.get(name, "0").strip().lower() in ("1", "true", "yes", "on")


def forced_float_kind():
    """Value of POTLLL_FLOAT, or None when unset."""
    value = os.environ.get(FLOAT_ENV, "").strip().lower()
    return value or None


def debug_checks_enabled() -> bool:
    return _flag(DEBUG_ENV)


def slow_tests_enabled() -> bool:
    return _flag(SLOW_ENV)
