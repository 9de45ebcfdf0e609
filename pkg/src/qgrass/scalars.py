"""Exact arithmetic in the coefficient ring of Laurent polynomials Q[q, q^-1].

Every scalar in the engine is one of these.  No floats anywhere: coefficients
are fractions.Fraction, exponents are ints, and the zero-coefficient terms are
dropped eagerly so that equality of mappings is equality of scalars.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction


class LaurentScalar:
    """A Laurent polynomial in q with rational coefficients.

    Stored as a mapping {exponent: coefficient} holding no zero coefficients.
    Instances are immutable by convention: the internal dict is never mutated
    after construction and never handed out.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean

    # ---- factories ----

    @classmethod
    def zero(cls) -> LaurentScalar:
        return cls()

    @classmethod
    def one(cls) -> LaurentScalar:
        return cls({0: 1})

    @classmethod
    def q(cls) -> LaurentScalar:
        return cls({1: 1})

    @classmethod
    def q_inv(cls) -> LaurentScalar:
        return cls({-1: 1})

    @classmethod
    def q_power(cls, e: int) -> LaurentScalar:
        return cls({e: 1})

    @classmethod
    def from_rational(cls, c) -> LaurentScalar:
        return cls({0: Fraction(c)})

    @classmethod
    def term(cls, c, e: int) -> LaurentScalar:
        return cls({e: Fraction(c)})

    # ---- views ----

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: Fraction(1)}

    def items_desc(self) -> list[tuple[int, Fraction]]:
        """Terms as (exponent, coefficient) pairs, exponents descending."""
        return sorted(self._terms.items(), reverse=True)

    def term_count(self) -> int:
        return len(self._terms)

    def coefficient(self, e: int) -> Fraction:
        return self._terms.get(e, Fraction(0))

    def min_exponent(self):
        return min(self._terms) if self._terms else None

    def max_exponent(self):
        return max(self._terms) if self._terms else None

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # ---- arithmetic ----

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: LaurentScalar) -> LaurentScalar:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a:
            return other
        if not b:
            return self
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentScalar.__new__(LaurentScalar)
        r._terms = out
        return r

    def __sub__(self, other: LaurentScalar) -> LaurentScalar:
        return self + (-other)

    def __neg__(self) -> LaurentScalar:
        r = LaurentScalar.__new__(LaurentScalar)
        r._terms = {e: -c for e, c in self._terms.items()}
        return r

    def __mul__(self, other: LaurentScalar) -> LaurentScalar:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentScalar()
        if len(a) == 1:
            ((ea, ca),) = a.items()
            r = LaurentScalar.__new__(LaurentScalar)
            r._terms = {ea + e: ca * c for e, c in b.items()}
            return r
        out: dict[int, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = LaurentScalar.__new__(LaurentScalar)
        r._terms = out
        return r

    def scale(self, c) -> LaurentScalar:
        c = Fraction(c)
        if not c:
            return LaurentScalar()
        r = LaurentScalar.__new__(LaurentScalar)
        r._terms = {e: cc * c for e, cc in self._terms.items()}
        return r

    def __pow__(self, k: int) -> LaurentScalar:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers only defined for monomials")
            ((e, c),) = self._terms.items()
            return LaurentScalar({e * k: Fraction(1, 1) / c ** (-k)})
        out = LaurentScalar.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def specialize(self, v) -> Fraction:
        """Evaluate at q = v for a nonzero rational v."""
        v = Fraction(v)
        if not v:
            raise ValueError("q must be specialized to a nonzero value")
        return sum((c * v ** e for e, c in self._terms.items()), Fraction(0))

    # ---- text form ----

    def render(self) -> str:
        """Canonical text form: c*q^e terms, exponents descending, q^2 - q^-2 style."""
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.items_desc()):
            neg = c < 0
            mag = -c if neg else c
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}*{qpart}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    _TERM_RE = re.compile(
        r"""\s*(?P<sign>[+-])?\s*
            (?:
               (?P<num>\d+)(?:/(?P<den>\d+))?\s*(?:\*\s*(?P<qa>q(?:\^(?P<ea>-?\d+))?))?
             | (?P<qb>q(?:\^(?P<eb>-?\d+))?)
            )\s*""",
        re.VERBOSE,
    )

    @classmethod
    def parse(cls, text: str) -> LaurentScalar:
        """Inverse of render; accepts forms like '3/2*q^-1 + q - 2'."""
        pos = 0
        out = cls.zero()
        first = True
        while pos < len(text):
            m = cls._TERM_RE.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad scalar syntax at offset {pos}: {text!r}")
            sign = m.group("sign")
            if sign is None and not first:
                raise ValueError(f"missing +/- before offset {pos}: {text!r}")
            c = Fraction(1)
            e = 0
            if m.group("num") is not None:
                c = Fraction(int(m.group("num")), int(m.group("den") or 1))
                if m.group("qa"):
                    e = int(m.group("ea")) if m.group("ea") is not None else 1
            else:
                e = int(m.group("eb")) if m.group("eb") is not None else 1
            if sign == "-":
                c = -c
            out = out + cls.term(c, e)
            pos = m.end()
            first = False
        if first:
            raise ValueError("empty scalar text")
        return out

    # ---- JSON form ----

    def to_json(self) -> list[dict]:
        return [{"e": e, "c": str(c)} for e, c in self.items_desc()]

    @classmethod
    def from_json(cls, data) -> LaurentScalar:
        out: dict[int, Fraction] = {}
        for t in data:
            e = int(t["e"])
            c = Fraction(t["c"])
            if e in out:
                raise ValueError(f"duplicate exponent {e} in scalar JSON")
            out[e] = c
        return cls(out)

    def __repr__(self) -> str:
        return f"<{self.render()}>"


# handy constants
ZERO = LaurentScalar.zero()
ONE = LaurentScalar.one()
Q = LaurentScalar.q()
Q_INV = LaurentScalar.q_inv()


def divexact(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    """Exact division a / b; raises ArithmeticError when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero scalar")
    if a.is_zero():
        return ZERO
    # shift both to ordinary polynomials, divide, shift back
    sa, sb = a.min_exponent(), b.min_exponent()
    rem = {e - sa: c for e, c in a._terms.items()}
    div = {e - sb: c for e, c in b._terms.items()}
    db = max(div)
    lead = div[db]
    quot: dict[int, Fraction] = {}
    while rem:
        da = max(rem)
        if da < db:
            raise ArithmeticError("inexact scalar division")
        k = da - db
        f = rem[da] / lead
        quot[k] = f
        for e, c in div.items():
            s = rem.get(e + k, 0) - f * c
            if s:
                rem[e + k] = s
            else:
                rem.pop(e + k, None)
    return LaurentScalar({e + sa - sb: c for e, c in quot.items()})


def _poly_mod(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    db = max(b)
    lead = b[db]
    rem = dict(a)
    while rem and max(rem) >= db:
        da = max(rem)
        f = rem[da] / lead
        for e, c in b.items():
            s = rem.get(e + da - db, 0) - f * c
            if s:
                rem[e + da - db] = s
            else:
                rem.pop(e + da - db, None)
    return rem


def laurent_gcd(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    """Monic gcd with lowest exponent 0 (units of Q[q,q^-1] are quotiented away)."""
    if a.is_zero():
        a, b = b, a
    if a.is_zero():
        return ZERO
    x = {e - a.min_exponent(): c for e, c in a._terms.items()}
    if b.is_zero():
        y: dict[int, Fraction] = {}
    else:
        y = {e - b.min_exponent(): c for e, c in b._terms.items()}
    while y:
        x, y = y, _poly_mod(x, y)
        if y:
            shift = min(y)
            y = {e - shift: c for e, c in y.items()}
    lead = x[max(x)]
    return LaurentScalar({e: c / lead for e, c in x.items()})


def rational_content(vals) -> Fraction:
    """gcd of a collection of Fractions, as a positive Fraction (0 when all zero)."""
    num = 0
    den = 1
    for v in vals:
        v = Fraction(v)
        num = math.gcd(num, v.numerator)
        den = den * v.denominator // math.gcd(den, v.denominator)
    return Fraction(num, den)
