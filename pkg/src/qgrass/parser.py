"""Expression parser for the command-line surface.

Grammar (whitespace-insensitive):

    expr   := '-'? term (('+'|'-') term)*
    term   := atom ('*' atom)*
    atom   := 'a' '[' sint ',' sint ']'
            | 'D' '[' sints (';' sints)? ']'
            | 'q' ('^' sint)? | number ('/' number)? | '(' expr ')'

`a[i,j]` atoms build matrix-algebra elements, one-list `D[rows]` atoms build
Grassmannian generators (the list length must match the level height), and
the two-list form `D[rows;cols]` is the explicit quantum minor, which lives
in the matrix algebra and may therefore mix with `a[i,j]`.  Mixing the
Grassmannian kind with the matrix kind is an error.  A bare scalar parses to
a scalar multiple of 1 in the matrix algebra, so every rendered element of
either ring parses back to itself.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import LaurentScalar, ONE
from .qmatrix import LevelIndex, NCPoly, nc_mul
from .qsl import quantum_minor
from .grassmann import MinorExpr


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - text.rfind("\n", 0, pos)
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.column = col
        self.position = pos


_SYMBOLS = "+-*/^()[],;"


def _lex(text: str) -> list[tuple[str, str, int]]:
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            out.append(("name", ch, i))
            i += 1
            continue
        if ch in _SYMBOLS:
            out.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", text, i)
    out.append(("end", "", n))
    return out


# tagged parse values; "scalar" promotes into either ring, the other two
# kinds only combine with themselves
_SCALAR = "scalar"
_NC = "nc"
_MINOR = "minor"


class _Parser:
    def __init__(self, text: str, level: LevelIndex):
        self.text = text
        self.level = level
        self.toks = _lex(text)
        self.i = 0

    # ---- token plumbing ----

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> tuple[str, str, int]:
        t = self.take()
        if t[0] != kind:
            shown = t[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", self.text, t[2])
        return t

    def fail(self, message: str, pos: int | None = None):
        if pos is None:
            pos = self.peek()[2]
        raise ParseError(message, self.text, pos)

    # ---- value algebra ----

    def promote(self, value):
        kind, payload = value
        if kind == _SCALAR:
            return NCPoly.scalar(self.level, payload)
        return payload

    def mul(self, a, b, pos):
        ka, va = a
        kb, vb = b
        if ka == _SCALAR and kb == _SCALAR:
            return (_SCALAR, va * vb)
        if ka == _SCALAR:
            return (kb, vb.scale(va))
        if kb == _SCALAR:
            return (ka, va.scale(vb))
        if ka != kb:
            self.fail("cannot mix a[...] and D[...] generators", pos)
        if ka == _NC:
            return (_NC, nc_mul(va, vb))
        return (_MINOR, va * vb)

    def add(self, a, b, pos):
        ka, va = a
        kb, vb = b
        if ka == kb:
            return (ka, va + vb)
        if ka == _SCALAR and kb == _MINOR:
            return (_MINOR, MinorExpr.one(self.level).scale(va) + vb)
        if ka == _MINOR and kb == _SCALAR:
            return (_MINOR, va + MinorExpr.one(self.level).scale(vb))
        if ka == _SCALAR:
            return (_NC, NCPoly.scalar(self.level, va) + vb)
        if kb == _SCALAR:
            return (_NC, va + NCPoly.scalar(self.level, vb))
        self.fail("cannot mix a[...] and D[...] generators", pos)

    def negate(self, a):
        kind, v = a
        return (kind, -v)

    # ---- grammar ----

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.fail(f"unexpected trailing input {tok[1]!r}")
        return value

    def expr(self):
        if self.peek()[0] == "-":
            self.take()
            value = self.negate(self.term())
        else:
            value = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, pos = self.take()
            rhs = self.term()
            if op == "-":
                rhs = self.negate(rhs)
            value = self.add(value, rhs, pos)
        return value

    def term(self):
        value = self.atom()
        while self.peek()[0] == "*":
            _, _, pos = self.take()
            value = self.mul(value, self.atom(), pos)
        return value

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "(":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "int":
            return (_SCALAR, self.number())
        if kind == "name":
            if val == "q":
                self.take()
                e = 1
                if self.peek()[0] == "^":
                    self.take()
                    e = self.signed_int()
                return (_SCALAR, LaurentScalar({e: Fraction(1)}))
            if val == "a":
                return self.letter()
            if val == "D":
                return self.minor()
            self.fail(f"unknown name {val!r}", pos)
        self.fail(f"expected a value, found {val or 'end of input'!r}", pos)

    def number(self) -> LaurentScalar:
        whole = int(self.expect("int")[1])
        if self.peek()[0] == "/":
            self.take()
            denom_tok = self.expect("int")
            denom = int(denom_tok[1])
            if denom == 0:
                self.fail("zero denominator", denom_tok[2])
            return LaurentScalar({0: Fraction(whole, denom)})
        return LaurentScalar({0: Fraction(whole)})

    def signed_int(self) -> int:
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        v = int(self.expect("int")[1])
        return -v if neg else v

    def int_list(self) -> list[int]:
        out = [self.signed_int()]
        while self.peek()[0] == ",":
            self.take()
            out.append(self.signed_int())
        return out

    def letter(self):
        _, _, pos = self.take()
        self.expect("[")
        i = self.signed_int()
        self.expect(",")
        j = self.signed_int()
        self.expect("]")
        try:
            return (_NC, NCPoly.generator(self.level, i, j))
        except ValueError as err:
            self.fail(str(err), pos)

    def minor(self):
        _, _, pos = self.take()
        self.expect("[")
        rows = self.int_list()
        cols = None
        if self.peek()[0] == ";":
            self.take()
            cols = self.int_list()
        self.expect("]")
        if cols is not None:
            try:
                return (_NC, quantum_minor(self.level, tuple(rows), tuple(cols)))
            except ValueError as err:
                self.fail(str(err), pos)
        if len(rows) != self.level.m:
            self.fail(
                f"D[...] needs exactly {self.level.m} row indices at level "
                f"{self.level}, got {len(rows)}",
                pos,
            )
        try:
            return (_MINOR, MinorExpr.generator(self.level, tuple(rows)))
        except ValueError as err:
            self.fail(str(err), pos)


def parse_expr(text: str, level: LevelIndex):
    """Parse an expression; returns an NCPoly or a MinorExpr at the level."""
    parser = _Parser(text, level)
    return parser.promote(parser.parse())
