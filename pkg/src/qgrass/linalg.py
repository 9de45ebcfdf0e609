"""Exact linear algebra over the Laurent coefficient ring.

Elimination is fraction-free: rows are combined by cross-multiplication and
each updated row has its content (polynomial gcd, unit powers of q, rational
gcd) divided back out, so entries stay Laurent polynomials of modest size.
Kernel vectors come out content-removed as well; callers never see
denominators.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import LaurentScalar, ZERO, ONE, divexact, laurent_gcd, rational_content


class ScalarMatrix:
    """Sparse rows x cols matrix of LaurentScalar entries."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self._rows: list[dict[int, LaurentScalar]] = [{} for _ in range(rows)]
        if entries:
            for (r, c), v in entries.items():
                self._check(r, c)
                if v:
                    self._rows[r][c] = v

    @classmethod
    def from_rows(cls, data) -> ScalarMatrix:
        rows = len(data)
        cols = len(data[0]) if rows else 0
        m = cls(rows, cols)
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    m._rows[r][c] = v
        return m

    def _check(self, r: int, c: int) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry ({r},{c}) outside {self.rows}x{self.cols} matrix")

    def entry(self, r: int, c: int) -> LaurentScalar:
        self._check(r, c)
        return self._rows[r].get(c, ZERO)

    def set_entry(self, r: int, c: int, v: LaurentScalar) -> None:
        # construction-time only; matrices are frozen by convention afterwards
        self._check(r, c)
        if v:
            self._rows[r][c] = v
        else:
            self._rows[r].pop(c, None)

    def row_items(self, r: int):
        return sorted(self._rows[r].items())

    def mul_vector(self, v: list[LaurentScalar]) -> list[LaurentScalar]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for r in range(self.rows):
            acc = ZERO
            for c, a in self._rows[r].items():
                if v[c]:
                    acc = acc + a * v[c]
            out.append(acc)
        return out

    def specialize(self, value) -> ScalarMatrix:
        """Matrix with q fixed to a nonzero rational."""
        m = ScalarMatrix(self.rows, self.cols)
        for r in range(self.rows):
            for c, a in self._rows[r].items():
                f = a.specialize(value)
                if f:
                    m._rows[r][c] = LaurentScalar.from_rational(f)
        return m

    def __repr__(self) -> str:
        return f"<ScalarMatrix {self.rows}x{self.cols}>"


def _strip_content(row: dict[int, LaurentScalar]) -> dict[int, LaurentScalar]:
    """Divide a row by its content and normalize units away."""
    if not row:
        return row
    g = ZERO
    for v in row.values():
        g = laurent_gcd(g, v)
        if g.is_one():
            break
    if not g.is_one():
        row = {c: divexact(v, g) for c, v in row.items()}
    shift = min(v.min_exponent() for v in row.values())
    if shift:
        u = LaurentScalar.q_power(-shift)
        row = {c: v * u for c, v in row.items()}
    content = rational_content(c for v in row.values() for _, c in v.items_desc())
    lead = row[min(row)].items_desc()[0][1]
    scale = Fraction(1) / content if lead > 0 else Fraction(-1) / content
    if scale != 1:
        row = {c: v.scale(scale) for c, v in row.items()}
    return row


def _echelon(m: ScalarMatrix) -> tuple[list[dict[int, LaurentScalar]], list[int]]:
    """Fraction-free row echelon form.

    Returns (pivot_rows, pivot_cols); pivot_rows[i] has its first nonzero
    entry in pivot_cols[i].  Columns are processed left to right; within a
    column the pivot row is the candidate whose entry has the lowest term
    count, ties broken by row order.
    """
    work = [_strip_content(dict(r)) for r in m._rows]
    pivot_cols: list[int] = []
    pivot_rows: list[dict[int, LaurentScalar]] = []
    free = list(range(m.rows))
    for col in range(m.cols):
        best = None
        for idx in free:
            e = work[idx].get(col)
            if e:
                key = e.term_count()
                if best is None or key < best[0]:
                    best = (key, idx)
        if best is None:
            continue
        _, pr = best
        free.remove(pr)
        prow = work[pr]
        piv = prow[col]
        for idx in free:
            row = work[idx]
            e = row.get(col)
            if e:
                new: dict[int, LaurentScalar] = {}
                for c in set(row) | set(prow):
                    if c == col:
                        continue
                    t = piv * row.get(c, ZERO) - e * prow.get(c, ZERO)
                    if t:
                        new[c] = t
                work[idx] = _strip_content(new)
        pivot_cols.append(col)
        pivot_rows.append(prow)
    return pivot_rows, pivot_cols


def rank(m: ScalarMatrix) -> int:
    return len(_echelon(m)[1])


class _Frac:
    """Internal fraction of LaurentScalars used during back substitution."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentScalar, den: LaurentScalar = ONE):
        if den.is_zero():
            raise ZeroDivisionError
        if num.is_zero():
            den = ONE
        else:
            g = laurent_gcd(num, den)
            if not g.is_one():
                num = divexact(num, g)
                den = divexact(den, g)
            shift = den.min_exponent()
            if shift:
                # push units of q into the numerator: denominators stay true polynomials
                num = num * LaurentScalar.q_power(-shift)
                den = den * LaurentScalar.q_power(-shift)
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def add(self, other: _Frac) -> _Frac:
        return _Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    def mul_scalar(self, s: LaurentScalar) -> _Frac:
        return _Frac(self.num * s, self.den)

    def div_scalar(self, s: LaurentScalar) -> _Frac:
        return _Frac(self.num, self.den * s)

    def neg(self) -> _Frac:
        return _Frac(-self.num, self.den)


def _normalize_kernel_vector(vec: list[LaurentScalar]) -> list[LaurentScalar]:
    """Canonical form: content removed, min exponent zero, first entry positive-leading."""
    support = [v for v in vec if v]
    if not support:
        return vec
    g = ZERO
    for v in support:
        g = laurent_gcd(g, v)
        if g.is_one():
            break
    if not g.is_one():
        vec = [divexact(v, g) if v else v for v in vec]
        support = [v for v in vec if v]
    shift = min(v.min_exponent() for v in support)
    if shift:
        u = LaurentScalar.q_power(-shift)
        vec = [v * u if v else v for v in vec]
    content = rational_content(c for v in vec for _, c in v.items_desc())
    first = next(v for v in vec if v)
    lead = first.items_desc()[0][1]
    scale = Fraction(1) / content if lead > 0 else Fraction(-1) / content
    if scale != 1:
        vec = [v.scale(scale) if v else v for v in vec]
    return vec


def kernel_basis(m: ScalarMatrix) -> list[list[LaurentScalar]]:
    """Exact basis of the right kernel {v : m v = 0}.

    One vector per non-pivot column, in column order, each cleared to
    Laurent-polynomial entries with content removed.  len(result) equals
    cols - rank(m).
    """
    rows, pivot_cols = _echelon(m)
    pivot_set = set(pivot_cols)
    basis: list[list[LaurentScalar]] = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        sol: dict[int, _Frac] = {f: _Frac(ONE)}
        for i in range(len(rows) - 1, -1, -1):
            p = pivot_cols[i]
            acc = _Frac(ZERO)
            for c, a in rows[i].items():
                if c == p:
                    continue
                x = sol.get(c)
                if x is not None and not x.is_zero():
                    acc = acc.add(x.mul_scalar(a))
            if not acc.is_zero():
                sol[p] = acc.neg().div_scalar(rows[i][p])
        den = ONE
        for x in sol.values():
            if x.den.is_one():
                continue
            g = laurent_gcd(den, x.den)
            den = divexact(den * x.den, g)
        vec = []
        for c in range(m.cols):
            x = sol.get(c)
            if x is None or x.is_zero():
                vec.append(ZERO)
            else:
                vec.append(x.num * divexact(den, x.den))
        basis.append(_normalize_kernel_vector(vec))
    return basis
