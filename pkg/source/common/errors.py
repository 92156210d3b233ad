class LatticeError(Exception):
    """Base class for every failure raised by the reduction library."""


class ContractViolation(LatticeError, ValueError):
    pass


class DependentRows(LatticeError):
    def __init__(self, row: int, value=None):
        self.row = row
        self.value = value
        detail = "" if value is None else f" (|b*|^2 = {value!r})"
        super().__init__(f"row {row} is linearly dependent on the previous rows{detail}")


class IterationCapExceeded(LatticeError):
    pass


class SweepCapExceeded(LatticeError):
    pass


class FloatRangeError(LatticeError, OverflowError):
    pass


class ParseError(LatticeError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


class OverlongToken(ParseError):
    pass


class PrecisionWarning(RuntimeWarning):
    pass
