"""
Conversions between the exact integer world of a Basis and the float
kinds the GSO runs in.
"""

import numpy as np

from common.errors import FloatRangeError

# quotient bits kept when rounding a ratio to the extended kind
_RATIO_BITS = 72


def round_half_away(x) -> int:
    """Nearest integer to x, ties away from zero, as an exact Python int."""
    nearest = int(np.floor(np.abs(x) + 0.5))
    return nearest if x >= 0 else -nearest


def int_to_longdouble(value: int):
    # keep the top 64 bits; two 32-bit halves are exact in a double
    if value == 0:
        return np.longdouble(0)
    magnitude = abs(value)
    shift = max(magnitude.bit_length() - 64, 0)
    top = magnitude >> shift
    mantissa = np.longdouble(top >> 32) * np.longdouble(2**32) + np.longdouble(top & 0xFFFFFFFF)
    result = np.ldexp(mantissa, shift)
    if not np.isfinite(result):
        raise FloatRangeError(f"integer of {magnitude.bit_length()} bits exceeds the extended float range")
    return result if value > 0 else -result


def to_float_array(values, dtype) -> np.ndarray:
    """Convert exact values (Python ints in an object array) or floats to dtype."""
    values = np.asarray(values)
    dtype = np.dtype(dtype)
    if values.dtype != object:
        return values.astype(dtype)
    flat = values.ravel()
    try:
        # machine-word entries convert in one call
        return flat.astype(np.int64).astype(dtype).reshape(values.shape)
    except OverflowError:
        pass
    if dtype == np.float64:
        try:
            out = np.array([float(v) for v in flat], dtype=np.float64)
        except OverflowError as exc:
            raise FloatRangeError(
                "integer entries exceed the double range; use the extended float kind"
            ) from exc
    else:
        out = np.array([int_to_longdouble(int(v)) for v in flat], dtype=dtype)
    return out.reshape(values.shape)


def int_to_float(value: int, dtype):
    return to_float_array(np.array([int(value)], dtype=object), dtype)[0]


def ratio_to_float(num: int, den: int, dtype):
    """num / den (den > 0) rounded to dtype without forming either in floats."""
    dtype = np.dtype(dtype)
    if dtype == np.float64:
        try:
            return np.float64(num / den)
        except OverflowError as exc:
            raise FloatRangeError(f"ratio of {num.bit_length()}/{den.bit_length()}-bit integers exceeds the double range") from exc
    if num == 0:
        return dtype.type(0)
    magnitude = abs(num)
    shift = _RATIO_BITS - (magnitude.bit_length() - den.bit_length())
    if shift >= 0:
        quotient = (magnitude << shift) // den
    else:
        quotient = magnitude // (den << -shift)
    result = np.ldexp(int_to_longdouble(quotient), -shift)
    if not np.isfinite(result):
        raise FloatRangeError(f"ratio of {num.bit_length()}/{den.bit_length()}-bit integers exceeds the extended float range")
    return result if num > 0 else -result
