"""Quantum minors, the quantum determinant, the antipode, and the SL quotient.

The quotient ring divides the square level algebra by the two-sided ideal
generated by D_full - 1, where D_full is the full quantum determinant.  Since
D_full is central and homogeneous, ideal membership reduces to a graded
back-substitution instead of a Groebner computation.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .scalars import LaurentScalar, ZERO, ONE
from .qmatrix import (
    LevelIndex,
    LevelMismatchError,
    NCPoly,
    TensorPoly,
    Word,
    comul,
    counit,
    level_project_E,
    nc_mul,
)
from .result import CheckItem, clip

_MINOR_CACHE: dict[tuple[LevelIndex, tuple[int, ...], tuple[int, ...]], NCPoly] = {}
_DET_CACHE: dict[LevelIndex, NCPoly] = {}


def _check_index_set(name: str, seq, valid) -> tuple[int, ...]:
    out = tuple(int(v) for v in seq)
    if not out:
        raise ValueError(f"empty {name} set")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ValueError(f"{name} indices must strictly increase: {out}")
    for v in out:
        if v not in valid:
            raise ValueError(f"{name} index {v} outside the level window")
    return out


def quantum_minor(level: LevelIndex, rows, cols) -> NCPoly:
    """Sum over bijections rows -> cols of (-q)^(-l) times the row-ordered word."""
    rows = _check_index_set("row", rows, level.row_range())
    cols = _check_index_set("col", cols, level.col_range())
    if len(rows) != len(cols):
        raise ValueError("row and column sets differ in size")
    key = (level, rows, cols)
    hit = _MINOR_CACHE.get(key)
    if hit is not None:
        return hit
    p = len(rows)
    terms: dict[Word, LaurentScalar] = {}
    for sigma in permutations(range(p)):
        inv = sum(
            1 for t in range(p) for s in range(t + 1, p) if sigma[t] > sigma[s]
        )
        word = tuple((rows[t], cols[sigma[t]]) for t in range(p))
        # rows strictly ascend, so the word is already normal
        terms[word] = LaurentScalar({-inv: 1 if inv % 2 == 0 else -1})
    out = NCPoly(level, terms)
    _MINOR_CACHE[key] = out
    return out


def quantum_det(level: LevelIndex) -> NCPoly:
    if level.rect:
        raise ValueError("the determinant lives on the square algebra")
    hit = _DET_CACHE.get(level)
    if hit is None:
        window = tuple(level.row_range())
        hit = quantum_minor(level, window, window)
        _DET_CACHE[level] = hit
    return hit


# ---------------------------------------------------------------------------
# antipode

_ANTIPODE_CACHE: dict[tuple[LevelIndex, int, int, bool], NCPoly] = {}


def _antipode_letter(level: LevelIndex, i: int, j: int, literal: bool) -> NCPoly:
    key = (level, i, j, literal)
    hit = _ANTIPODE_CACHE.get(key)
    if hit is not None:
        return hit
    drop_row = i if literal else j
    drop_col = j if literal else i
    e = (i - j) if literal else (j - i)
    rows = [r for r in level.row_range() if r != drop_row]
    cols = [c for c in level.col_range() if c != drop_col]
    if rows:
        minor = quantum_minor(level, rows, cols)
    else:
        minor = NCPoly.one(level)
    out = minor.scale(LaurentScalar({e: 1 if e % 2 == 0 else -1}))
    _ANTIPODE_CACHE[key] = out
    return out


def antipode(x: NCPoly, literal: bool = False) -> NCPoly:
    """Cofactor antipode representative, extended anti-multiplicatively.

    The default convention is the one validated by the antipode axiom:
    S(a[i,j]) = (-q)^(j-i) times the minor omitting row j and column i.  The
    literal flag switches to the transposed variant kept as a negative
    control; it fails the axiom already at the 2x2 level.
    """
    level = x.level
    if level.rect:
        raise ValueError("the antipode lives on the square algebra")
    out = NCPoly.zero(level)
    for w, c in x.terms_sorted():
        piece = NCPoly.one(level).scale(c)
        for (i, j) in reversed(w):
            piece = nc_mul(piece, _antipode_letter(level, i, j, literal))
        out = out + piece
    return out


# ---------------------------------------------------------------------------
# the quotient by (D_full - 1)


def sl_ideal_membership(x: NCPoly) -> bool:
    """Decide membership in the two-sided ideal (D_full - 1).

    Writing x = sum x_d by word length and h_d = D*h_(d-N) - x_d with N the
    determinant degree, x lies in the ideal iff the top N residues h_d vanish.
    """
    level = x.level
    if level.rect:
        raise ValueError("the quotient lives on the square algebra")
    if x.is_zero():
        return True
    det = quantum_det(level)
    n_deg = level.total()
    parts = x.graded_parts()
    top = max(parts)
    h: dict[int, NCPoly] = {}
    for d in range(top + 1):
        part = parts.get(d, NCPoly.zero(level))
        prev = h.get(d - n_deg)
        val = -part if prev is None else nc_mul(det, prev) - part
        h[d] = val
        if d > top - n_deg and not val.is_zero():
            return False
    return True


def sl_equal(x: NCPoly, y: NCPoly) -> bool:
    if x.level != y.level:
        raise LevelMismatchError(f"{x.level} vs {y.level}")
    return sl_ideal_membership(x - y)


@dataclass
class SLElement:
    """An element of the quotient ring, carried by a representative."""

    level: LevelIndex
    rep: NCPoly

    def __post_init__(self):
        if self.level.rect:
            raise ValueError("SL elements live on square levels")
        if self.rep.level != self.level:
            raise LevelMismatchError("representative level differs")

    @classmethod
    def unit(cls, level: LevelIndex) -> SLElement:
        return cls(level, NCPoly.one(level))

    @classmethod
    def generator(cls, level: LevelIndex, i: int, j: int) -> SLElement:
        return cls(level, NCPoly.generator(level, i, j))

    def __mul__(self, other: SLElement) -> SLElement:
        return SLElement(self.level, nc_mul(self.rep, other.rep))

    def __add__(self, other: SLElement) -> SLElement:
        return SLElement(self.level, self.rep + other.rep)

    def __sub__(self, other: SLElement) -> SLElement:
        return SLElement(self.level, self.rep - other.rep)

    def scale(self, s: LaurentScalar) -> SLElement:
        return SLElement(self.level, self.rep.scale(s))

    def is_zero(self) -> bool:
        return sl_ideal_membership(self.rep)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SLElement):
            return NotImplemented
        return sl_equal(self.rep, other.rep)

    def render(self) -> str:
        return self.rep.render()


# ---------------------------------------------------------------------------
# the phi ladder between SL levels


def phi_project(x, to_level: LevelIndex):
    """Window substitution viewed on the quotient rings.

    Same per-letter rule as the level projection; out-of-window diagonal
    generators become 1, which is exactly what the smaller determinant needs
    to stay equal to 1.
    """
    if to_level.rect:
        raise ValueError("phi targets a square level")
    if isinstance(x, SLElement):
        return SLElement(to_level, level_project_E(x.rep, to_level))
    return level_project_E(x, to_level)


# ---------------------------------------------------------------------------
# Hopf axiom suite


def _gens(level: LevelIndex):
    return [(i, j) for i in level.row_range() for j in level.col_range()]


def _triple_expand(x: NCPoly, first: bool) -> dict:
    """(comul (x) id) or (id (x) comul) applied to comul(x), as word triples."""
    level = x.level
    out: dict[tuple[Word, Word, Word], LaurentScalar] = {}
    for (u, v), c in comul(x).terms_sorted():
        if first:
            inner = comul(NCPoly(level, {u: ONE}))
            for (u1, u2), cc in inner.terms_sorted():
                key = (u1, u2, v)
                s = out.get(key, ZERO) + c * cc
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        else:
            inner = comul(NCPoly(level, {v: ONE}))
            for (v1, v2), cc in inner.terms_sorted():
                key = (u, v1, v2)
                s = out.get(key, ZERO) + c * cc
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return out


def antipode_convolution(level: LevelIndex, i: int, j: int, left: bool, literal: bool = False) -> NCPoly:
    """Sum_k S(a[i,k])*a[k,j] (left) or a[i,k]*S(a[k,j]) (right)."""
    acc = NCPoly.zero(level)
    for k in level.row_range():
        if left:
            term = nc_mul(
                _antipode_letter(level, i, k, literal), NCPoly.generator(level, k, j)
            )
        else:
            term = nc_mul(
                NCPoly.generator(level, i, k), _antipode_letter(level, k, j, literal)
            )
        acc = acc + term
    return acc


def hopf_check(level: LevelIndex, literal_antipode: bool = False) -> list[CheckItem]:
    """Verify the bialgebra and pre-quotient antipode identities on generators."""
    if level.rect:
        raise ValueError("the Hopf structure lives on square levels")
    items: list[CheckItem] = []
    det = quantum_det(level)

    bad = None
    for (i, j) in _gens(level):
        g = NCPoly.generator(level, i, j)
        if _triple_expand(g, True) != _triple_expand(g, False):
            bad = f"a[{i},{j}]"
            break
    items.append(CheckItem("coassociativity on generators", bad is None, bad or ""))

    bad = None
    for (i, j) in _gens(level):
        g = NCPoly.generator(level, i, j)
        left = NCPoly.zero(level)
        right = NCPoly.zero(level)
        for (u, v), c in comul(g).terms_sorted():
            left = left + NCPoly(level, {v: c}).scale(counit(NCPoly(level, {u: ONE})))
            right = right + NCPoly(level, {u: c}).scale(counit(NCPoly(level, {v: ONE})))
        if left != g or right != g:
            bad = f"a[{i},{j}]"
            break
    items.append(CheckItem("counit on generators", bad is None, bad or ""))

    for left_side in (True, False):
        side = "left" if left_side else "right"
        bad = None
        for (i, j) in _gens(level):
            want = det if i == j else NCPoly.zero(level)
            got = antipode_convolution(level, i, j, left_side, literal_antipode)
            if got != want:
                bad = f"a[{i},{j}]: residual {clip((got - want).render())}"
                break
        items.append(CheckItem(f"antipode axiom ({side})", bad is None, bad or ""))

    grouplike = comul(det) == TensorPoly.outer(det, det)
    items.append(CheckItem("determinant is grouplike", grouplike))
    items.append(CheckItem("determinant counit is 1", counit(det) == ONE))
    return items


def det_centrality_items(level: LevelIndex) -> list[CheckItem]:
    det = quantum_det(level)
    items = []
    for (i, j) in _gens(level):
        g = NCPoly.generator(level, i, j)
        comm = nc_mul(det, g) - nc_mul(g, det)
        items.append(
            CheckItem(
                f"[D_full, a[{i},{j}]] = 0",
                comm.is_zero(),
                "" if comm.is_zero() else clip(comm.render()),
            )
        )
    return items


def phi_square_items(high: LevelIndex, low: LevelIndex) -> list[CheckItem]:
    """Window-collapse squares: comultiplication and counit commute exactly,
    the antipode square commutes modulo the determinant ideal."""
    if not high.dominates(low) or high.rect or low.rect:
        raise ValueError(f"{high} does not dominate {low}")

    def phi_word(w: Word) -> NCPoly:
        return phi_project(NCPoly(high, {w: ONE}), low)

    gens = [NCPoly.generator(high, i, j) for (i, j) in _gens(high)]
    items = []

    bad = None
    for g in gens:
        lhs = comul(g).map_factors(phi_word, phi_word)
        if lhs != comul(phi_project(g, low)):
            bad = clip(g.render())
            break
    items.append(CheckItem("comultiplication square", bad is None, bad or ""))

    bad = None
    for g in gens:
        if counit(phi_project(g, low)) != counit(g):
            bad = clip(g.render())
            break
    items.append(CheckItem("counit square", bad is None, bad or ""))

    bad = None
    for g in gens:
        if not sl_equal(phi_project(antipode(g), low), antipode(phi_project(g, low))):
            bad = clip(g.render())
            break
    items.append(CheckItem("antipode square (mod ideal)", bad is None, bad or ""))
    return items
