"""Quantum Grassmannian rings at a finite level.

The ring is the subalgebra of the quantum matrix algebra generated by the
maximal minors D[rows] with columns -m..-1.  Elements are handled in two
layers: formal words in the minor generators (MinorWord / MinorExpr) and
their evaluations in the ambient algebra.  Relation discovery finds the
kernel of the evaluation map degree by degree, so the defining ideal needs no
presentation up front.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .scalars import LaurentScalar, ZERO, ONE
from .linalg import ScalarMatrix, kernel_basis, rank
from .qmatrix import LevelIndex, NCPoly, nc_mul
from .qsl import quantum_minor
from .result import CheckItem, clip

RowSet = tuple[int, ...]


def minor_cols(level: LevelIndex) -> tuple[int, ...]:
    return tuple(range(-level.m, 0))


def minor_generators(level: LevelIndex) -> list[RowSet]:
    """All m-element row-sets in the window, in lexicographic order."""
    window = range(-level.m, level.n)
    return [tuple(c) for c in combinations(window, level.m)]


@dataclass(frozen=True)
class MinorWord:
    """An ordered product of maximal-minor generators, not yet evaluated."""

    level: LevelIndex
    factors: tuple[RowSet, ...]

    def __post_init__(self):
        window = self.level.row_range()
        for rows in self.factors:
            if len(rows) != self.level.m:
                raise ValueError(f"row-set {rows} does not have {self.level.m} rows")
            if any(b <= a for a, b in zip(rows, rows[1:])):
                raise ValueError(f"row-set {rows} must strictly increase")
            if any(r not in window for r in rows):
                raise ValueError(f"row-set {rows} leaves the window {self.level}")

    @property
    def degree(self) -> int:
        return len(self.factors)

    def render(self) -> str:
        if not self.factors:
            return "1"
        return "*".join("D[" + ",".join(str(r) for r in rows) + "]" for rows in self.factors)

    def to_json(self):
        return [list(rows) for rows in self.factors]


class MinorExpr:
    """A linear combination of minor words.

    Equality is congruence: two expressions are equal when their evaluations
    in the ambient algebra agree, not when their term mappings do.
    """

    __slots__ = ("level", "_terms")

    def __init__(self, level: LevelIndex, terms: dict[MinorWord, LaurentScalar]):
        self.level = level
        self._terms = terms

    @classmethod
    def zero(cls, level: LevelIndex) -> MinorExpr:
        return cls(level, {})

    @classmethod
    def one(cls, level: LevelIndex) -> MinorExpr:
        return cls(level, {MinorWord(level, ()): ONE})

    @classmethod
    def generator(cls, level: LevelIndex, rows) -> MinorExpr:
        rows = tuple(int(r) for r in rows)
        return cls(level, {MinorWord(level, (rows,)): ONE})

    @classmethod
    def from_word(cls, word: MinorWord, coeff: LaurentScalar = ONE) -> MinorExpr:
        return cls(word.level, {word: coeff} if coeff else {})

    def terms_sorted(self):
        return sorted(self._terms.items(), key=lambda t: (t[0].degree, t[0].factors))

    def is_mapping_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: MinorExpr) -> MinorExpr:
        if not isinstance(other, MinorExpr):
            return NotImplemented
        if self.level != other.level:
            raise ValueError("level mismatch")
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return MinorExpr(self.level, out)

    def __sub__(self, other: MinorExpr) -> MinorExpr:
        return self + (-other)

    def __neg__(self) -> MinorExpr:
        return MinorExpr(self.level, {w: -c for w, c in self._terms.items()})

    def scale(self, s: LaurentScalar) -> MinorExpr:
        if s.is_zero():
            return MinorExpr.zero(self.level)
        return MinorExpr(self.level, {w: c * s for w, c in self._terms.items()})

    def __mul__(self, other: MinorExpr) -> MinorExpr:
        if not isinstance(other, MinorExpr):
            return NotImplemented
        if self.level != other.level:
            raise ValueError("level mismatch")
        out: dict[MinorWord, LaurentScalar] = {}
        for u, cu in self._terms.items():
            for v, cv in other._terms.items():
                w = MinorWord(self.level, u.factors + v.factors)
                s = out.get(w, ZERO) + cu * cv
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return MinorExpr(self.level, out)

    def congruent(self, other: MinorExpr) -> bool:
        return eval_embed(self - other).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MinorExpr):
            return NotImplemented
        return self.congruent(other)

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for w, c in self.terms_sorted():
            cs = c.render()
            body = w.render()
            if cs == "1":
                pieces.append(body)
            elif cs == "-1":
                pieces.append(f"-{body}")
            elif c.term_count() > 1:
                pieces.append(f"({cs})*{body}")
            else:
                pieces.append(f"{cs}*{body}")
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += f" - {piece[1:]}"
            else:
                out += f" + {piece}"
        return out

    def to_json(self) -> dict:
        return {
            "level": self.level.to_json(),
            "terms": [
                {"coeff": c.to_json(), "factors": w.to_json()}
                for w, c in self.terms_sorted()
            ],
        }

    def __repr__(self) -> str:
        return f"<MinorExpr {self.level} {self.render()}>"


_EVAL_CACHE: dict[MinorWord, NCPoly] = {}


def eval_word(word: MinorWord) -> NCPoly:
    hit = _EVAL_CACHE.get(word)
    if hit is not None:
        return hit
    level = word.level
    cols = minor_cols(level)
    out = NCPoly.one(level)
    for rows in word.factors:
        out = nc_mul(out, quantum_minor(level, rows, cols))
    _EVAL_CACHE[word] = out
    return out


def eval_embed(x) -> NCPoly:
    """Evaluate a minor word or expression in the ambient algebra."""
    if isinstance(x, MinorWord):
        return eval_word(x)
    out = NCPoly.zero(x.level)
    for w, c in x._terms.items():
        out = out + eval_word(w).scale(c)
    return out


def degree_words(level: LevelIndex, degree: int) -> list[MinorWord]:
    """All formal degree-d words in the minor generators, in column order."""
    if degree < 0:
        raise ValueError("negative degree")
    gens = minor_generators(level)
    return [MinorWord(level, f) for f in product(gens, repeat=degree)]


def evaluation_matrix(level: LevelIndex, degree: int):
    """Matrix of the evaluation map on degree-d words over the normal word basis."""
    words = degree_words(level, degree)
    evals = [eval_word(w) for w in words]
    row_words = sorted(
        {w for e in evals for w, _ in e.terms_sorted()}, key=lambda w: (len(w), w)
    )
    index = {w: i for i, w in enumerate(row_words)}
    mat = ScalarMatrix(len(row_words), len(words))
    for j, e in enumerate(evals):
        for w, c in e.terms_sorted():
            mat.set_entry(index[w], j, c)
    return mat, words, row_words


def graded_dimension(level: LevelIndex, degree: int) -> int:
    mat, _, _ = evaluation_matrix(level, degree)
    return rank(mat)


@dataclass
class RelationVector:
    """A kernel vector of the evaluation map: sum coeffs[t]*support[t] = 0."""

    degree: int
    support: tuple[MinorWord, ...]
    coeffs: tuple[LaurentScalar, ...]

    def as_expr(self) -> MinorExpr:
        level = self.support[0].level
        out = MinorExpr.zero(level)
        for w, c in zip(self.support, self.coeffs):
            out = out + MinorExpr.from_word(w, c)
        return out

    def render(self) -> str:
        return self.as_expr().render()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {"coeff": c.to_json(), "factors": w.to_json()}
                for w, c in zip(self.support, self.coeffs)
            ],
        }


def relation_basis(level: LevelIndex, degree: int) -> list[RelationVector]:
    """Canonical kernel basis of the degree-d evaluation map."""
    mat, words, _ = evaluation_matrix(level, degree)
    out = []
    for vec in kernel_basis(mat):
        support = tuple(words[j] for j, c in enumerate(vec) if c)
        coeffs = tuple(c for c in vec if c)
        out.append(RelationVector(degree, support, coeffs))
    return out


# ---------------------------------------------------------------------------
# the e/r ladder between levels


def _ladder_block(small: LevelIndex, big: LevelIndex) -> tuple[int, ...]:
    if not big.dominates(small) or big.rect or small.rect:
        raise ValueError(f"{big} does not dominate {small}")
    return tuple(range(-big.m, -small.m))


def r_embed(x, to_level: LevelIndex):
    """Send a row-set I to block + I, where the block is the new negative rows."""
    if isinstance(x, MinorWord):
        x = MinorExpr.from_word(x)
    block = _ladder_block(x.level, to_level)
    out = MinorExpr.zero(to_level)
    for w, c in x._terms.items():
        factors = tuple(block + rows for rows in w.factors)
        out = out + MinorExpr.from_word(MinorWord(to_level, factors), c)
    return out


def e_project(x, to_level: LevelIndex):
    """Keep row-sets of the form block + I with I in the small window; kill the rest."""
    if isinstance(x, MinorWord):
        x = MinorExpr.from_word(x)
    block = _ladder_block(to_level, x.level)
    k = len(block)
    window = to_level.row_range()
    out = MinorExpr.zero(to_level)
    for w, c in x._terms.items():
        factors = []
        dead = False
        for rows in w.factors:
            if rows[:k] != block or any(r not in window for r in rows[k:]):
                dead = True
                break
            factors.append(rows[k:])
        if not dead:
            out = out + MinorExpr.from_word(MinorWord(to_level, tuple(factors)), c)
    return out


def relation_transport_check(
    from_level: LevelIndex, to_level: LevelIndex, degree: int
) -> list[CheckItem]:
    """Push each discovered relation up the ladder and re-evaluate it."""
    items = []
    for idx, rel in enumerate(relation_basis(from_level, degree)):
        moved = r_embed(rel.as_expr(), to_level)
        resid = eval_embed(moved)
        items.append(
            CheckItem(
                f"transport {from_level}->{to_level} relation {idx}",
                resid.is_zero(),
                "" if resid.is_zero() else clip(resid.render()),
            )
        )
    return items
