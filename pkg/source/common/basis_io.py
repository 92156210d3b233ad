"""
Basis files in the fplll latticegen layout:

    basis := '[' row+ ']'
    row   := '[' integer* ']'
    integer := '-'? digit+

Whitespace (including newlines) may appear between any two tokens. The
writer puts one row per line: "[[1 0]\n[0 1]]\n".
"""

from pathlib import Path

from common import config
from common.errors import ContractViolation, OverlongToken, ParseError
from common.types import Basis


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.column)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return ch

    def skip_ws(self) -> None:
        while self.peek() and self.peek().isspace():
            self.advance()

    def expect(self, ch: str) -> None:
        self.skip_ws()
        found = self.peek()
        if found != ch:
            raise self.error(f"expected {ch!r}, found {found!r}" if found else f"expected {ch!r}, found end of input")
        self.advance()

    def integer(self) -> int:
        line, column = self.line, self.column
        start = self.pos
        if self.peek() == "-":
            self.advance()
        digits = 0
        while self.peek() and self.peek() in "0123456789":
            self.advance()
            digits += 1
            if digits > config.MAX_TOKEN_LENGTH:
                raise OverlongToken(f"integer longer than {config.MAX_TOKEN_LENGTH} digits", line, column)
        if digits == 0:
            raise ParseError(f"expected an integer, found {self.peek()!r}", line, column)
        return int(self.text[start : self.pos])


def parse_basis(text: str) -> Basis:
    scan = _Scanner(text)
    scan.expect("[")
    rows = []
    while True:
        scan.skip_ws()
        if scan.peek() == "]":
            break
        row_line, row_column = scan.line, scan.column
        scan.expect("[")
        row = []
        while True:
            scan.skip_ws()
            if scan.peek() == "]":
                scan.advance()
                break
            if not scan.peek():
                raise scan.error("unterminated row")
            row.append(scan.integer())
        if not row:
            raise ParseError("empty row", row_line, row_column)
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"row has {len(row)} entries, expected {len(rows[0])}", row_line, row_column)
        rows.append(row)
    scan.advance()
    scan.skip_ws()
    if scan.peek():
        raise scan.error(f"unexpected {scan.peek()!r} after the closing bracket")
    if not rows:
        raise scan.error("a basis needs at least one row")
    try:
        return Basis(rows)
    except ContractViolation as exc:
        raise ParseError(str(exc), scan.line, scan.column) from exc


def format_basis(basis: Basis) -> str:
    if not basis.is_integral:
        raise ContractViolation("only integer bases can be written")
    lines = ["[" + " ".join(str(int(x)) for x in row) + "]" for row in basis.rows]
    return "[" + "\n".join(lines) + "]\n"


def read_basis(path) -> Basis:
    return parse_basis(Path(path).read_text(encoding="utf-8"))


def write_basis(path, basis: Basis) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_basis(basis), encoding="utf-8")
