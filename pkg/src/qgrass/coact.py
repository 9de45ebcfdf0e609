"""Coactions of the SL levels on the matrix algebra and the Grassmannian.

The left coaction is the matrix comultiplication with the left tensor factor
read in the quotient ring, a_ij -> sum_k g_ik (x) a_kj.  The right coaction
acts on the column-restricted algebra, b_ij -> sum_k b_ik (x) g_kj with the
g's in the level-(m,0) quotient.  Coinvariance and the commuting squares are
decided exactly: homogeneous pieces against a determinant power, everything
else via ideal membership in the SL factor.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .scalars import LaurentScalar, ZERO, ONE
from .linalg import ScalarMatrix, kernel_basis
from .qmatrix import (
    LevelIndex,
    LevelMismatchError,
    NCPoly,
    TensorPoly,
    Word,
    comul,
    level_project_E,
    nc_mul,
    normalize,
)
from .qsl import quantum_det, sl_equal, sl_ideal_membership
from .grassmann import MinorExpr, e_project, eval_embed, minor_generators
from .limits import LimitElement, rho_project, row_support
from .result import CheckItem, clip


@dataclass
class CoactionValue:
    """A tensor whose flagged factor lives in an SL quotient."""

    tensor: TensorPoly
    sl_side: str

    def __post_init__(self):
        if self.sl_side not in ("left", "right"):
            raise ValueError(f"bad sl_side {self.sl_side!r}")

    def _groups(self) -> dict[Word, NCPoly]:
        if self.sl_side == "left":
            return self.tensor.group_by_right()
        return self.tensor.group_by_left()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoactionValue):
            return NotImplemented
        if self.sl_side != other.sl_side:
            return False
        t, u = self.tensor, other.tensor
        if t.left_level != u.left_level or t.right_level != u.right_level:
            return False
        mine = self._groups()
        theirs = other._groups()
        sl_level = t.left_level if self.sl_side == "left" else t.right_level
        for w in set(mine) | set(theirs):
            a = mine.get(w, NCPoly.zero(sl_level))
            b = theirs.get(w, NCPoly.zero(sl_level))
            if not sl_equal(a, b):
                return False
        return True

    def render(self) -> str:
        return f"{self.tensor.render()}  [sl {self.sl_side}]"


def left_coaction(x, level: LevelIndex | None = None) -> CoactionValue:
    """g_ik (x) a_kj coaction; the matrix comultiplication with a quotient tag."""
    if isinstance(x, MinorExpr):
        x = eval_embed(x)
    if level is not None and x.level != level:
        raise LevelMismatchError(f"{x.level} vs {level}")
    return CoactionValue(comul(x), "left")


def right_coaction(x: NCPoly, level: LevelIndex | None = None) -> CoactionValue:
    """b_ik (x) g_kj coaction on the column-restricted algebra."""
    if level is not None and x.level != level:
        raise LevelMismatchError(f"{x.level} vs {level}")
    lvl = x.level
    if not lvl.rect:
        raise ValueError("the right coaction lives on the rectangular algebra")
    g_level = LevelIndex(lvl.m, 0)
    cols = list(lvl.col_range())
    out: dict[tuple[Word, Word], LaurentScalar] = {}
    for w, c in x.terms_sorted():
        pairs: dict[tuple[Word, Word], LaurentScalar] = {((), ()): c}
        for (i, j) in w:
            step: dict[tuple[Word, Word], LaurentScalar] = {}
            for (u, v), cc in pairs.items():
                for k in cols:
                    lp = nc_mul(NCPoly(lvl, {u: cc}), NCPoly.generator(lvl, i, k))
                    rp = nc_mul(
                        NCPoly(g_level, {v: ONE}), NCPoly.generator(g_level, k, j)
                    )
                    for u2, cu in lp.terms_sorted():
                        for v2, cv in rp.terms_sorted():
                            key = (u2, v2)
                            s = step.get(key, ZERO) + cu * cv
                            if s:
                                step[key] = s
                            else:
                                step.pop(key, None)
            pairs = step
        for key, cc in pairs.items():
            s = out.get(key, ZERO) + cc
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return CoactionValue(TensorPoly(lvl, g_level, out), "right")


def rect_restrict(x: NCPoly) -> NCPoly:
    """View a column-restricted element of the square algebra rectangularly."""
    if x.level.rect:
        return x
    lvl = LevelIndex(x.level.m, x.level.n, rect=True)
    for w, _ in x.terms_sorted():
        for (_, j) in w:
            if j >= 0:
                raise ValueError(f"column {j} is not restricted")
    return NCPoly(lvl, dict(x.terms_sorted()))


def is_coinvariant(x: NCPoly, level: LevelIndex | None = None) -> bool:
    """True iff right_coaction(x) - x (x) 1 has ideal entries in every SL slot."""
    if not x.level.rect:
        x = rect_restrict(x)
    if level is not None and x.level != level:
        raise LevelMismatchError(f"{x.level} vs {level}")
    g_level = LevelIndex(x.level.m, 0)
    delta = right_coaction(x).tensor - TensorPoly.outer(x, NCPoly.one(g_level))
    for _, coeff in delta.group_by_left().items():
        if not sl_ideal_membership(coeff):
            return False
    return True


_DET_POWERS: dict[tuple[LevelIndex, int], NCPoly] = {}


def _det_power(g_level: LevelIndex, r: int) -> NCPoly:
    key = (g_level, r)
    hit = _DET_POWERS.get(key)
    if hit is None:
        hit = NCPoly.one(g_level)
        for _ in range(r):
            hit = nc_mul(hit, quantum_det(g_level))
        _DET_POWERS[key] = hit
    return hit


def coinvariant_basis(level: LevelIndex, degree: int) -> list[NCPoly]:
    """Kernel of rho(x) = x (x) D_full^(degree/m) on the degree-d graded piece.

    Homogeneity makes the quotient condition linear: a degree-d element is
    coinvariant iff its coaction hits exactly the determinant power.  Degrees
    not divisible by m have no coinvariants at all.
    """
    if degree < 0:
        raise ValueError("negative degree")
    lvl = level if level.rect else LevelIndex(level.m, level.n, rect=True)
    if degree % lvl.m != 0:
        return []
    g_level = LevelIndex(lvl.m, 0)
    target = _det_power(g_level, degree // lvl.m)
    letters = sorted((i, j) for i in lvl.row_range() for j in lvl.col_range())
    words = list(combinations_with_replacement(letters, degree))

    row_index: dict[tuple[Word, Word], int] = {}
    entries: dict[tuple[int, int], LaurentScalar] = {}

    def bump(key, col, val):
        r = row_index.setdefault(key, len(row_index))
        s = entries.get((r, col), ZERO) + val
        if s:
            entries[(r, col)] = s
        else:
            entries.pop((r, col), None)

    for col, w in enumerate(words):
        rho = right_coaction(NCPoly(lvl, {w: ONE}))
        for (u, v), c in rho.tensor.terms_sorted():
            bump((u, v), col, c)
        for v, c in target.terms_sorted():
            bump((w, v), col, -c)

    mat = ScalarMatrix(len(row_index), len(words), entries)
    out = []
    for vec in kernel_basis(mat):
        terms = {w: c for w, c in zip(words, vec) if c}
        out.append(NCPoly(lvl, terms))
    return out


# ---------------------------------------------------------------------------
# ladder squares and limit slices


def _phi_word(word: Word, from_level: LevelIndex, to_level: LevelIndex) -> NCPoly:
    return level_project_E(NCPoly(from_level, {word: ONE}), to_level)


def coaction_square_items(
    high: LevelIndex, low: LevelIndex, phi_word=None
) -> list[CheckItem]:
    """Compare (phi (x) e) after the high coaction with the low coaction after e."""
    if not high.dominates(low):
        raise ValueError(f"{high} does not dominate {low}")
    if phi_word is None:
        phi_word = _phi_word
    items = []
    for rows in minor_generators(high):
        gen = MinorExpr.generator(high, rows)
        lam = left_coaction(gen).tensor
        if lam.is_zero():
            lhs = TensorPoly.zero(low, low)
        else:
            lhs = lam.map_factors(
                lambda u: phi_word(u, high, low),
                lambda v: _phi_word(v, high, low),
            )
        rhs = left_coaction(e_project(gen, low)).tensor
        same = CoactionValue(lhs, "left") == CoactionValue(rhs, "left")
        items.append(
            CheckItem(
                "coaction square D[" + ",".join(str(r) for r in rows) + "]",
                same,
                "" if same else clip((lhs - rhs).render()),
            )
        )
    return items


def coaction_square_check(high: LevelIndex, low: LevelIndex, phi_word=None) -> bool:
    return all(item.passed for item in coaction_square_items(high, low, phi_word))


def limit_coaction_slice(x: LimitElement, level: LevelIndex) -> CoactionValue:
    """The left coaction applied to the finite shadow of a limit element."""
    for d in x.diagrams():
        if level.m < d.order - 1 or row_support(d, level.m)[-1] > level.n - 1:
            raise LevelMismatchError(f"{level} does not dominate diagram {d.render()}")
    return left_coaction(rho_project(x, level))


# ---------------------------------------------------------------------------
# aggregated check items for the reporting surfaces


def cauchy_binet_items(level: LevelIndex) -> list[CheckItem]:
    """left_coaction(D_rows) against the minor-sum expansion, exactly."""
    from .qsl import quantum_minor

    cols = tuple(range(-level.m, 0))
    items = []
    for rows in minor_generators(level):
        got = left_coaction(MinorExpr.generator(level, rows)).tensor
        want = TensorPoly.zero(level, level)
        for ks in minor_generators(level):
            want = want + TensorPoly.outer(
                quantum_minor(level, rows, ks), quantum_minor(level, ks, cols)
            )
        same = got == want
        items.append(
            CheckItem(
                "cauchy-binet D[" + ",".join(str(r) for r in rows) + "]",
                same,
                "" if same else clip((got - want).render()),
            )
        )
    return items


def _triple_left(x: NCPoly, first: bool) -> dict:
    out: dict[tuple[Word, Word, Word], LaurentScalar] = {}
    for (u, v), c in comul(x)._terms.items():
        inner = comul(NCPoly(x.level, {u if first else v: ONE}))
        for (w1, w2), c2 in inner._terms.items():
            key = (w1, w2, v) if first else (u, w1, w2)
            s = out.get(key, ZERO) + c * c2
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _triple_right(x: NCPoly, first: bool) -> dict:
    g_level = LevelIndex(x.level.m, 0)
    out: dict[tuple[Word, Word, Word], LaurentScalar] = {}
    for (u, v), c in right_coaction(x).tensor._terms.items():
        if first:
            inner = right_coaction(NCPoly(x.level, {u: ONE})).tensor._terms
        else:
            inner = comul(NCPoly(g_level, {v: ONE}))._terms
        for (w1, w2), c2 in inner.items():
            key = (w1, w2, v) if first else (u, w1, w2)
            s = out.get(key, ZERO) + c * c2
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def coaction_axiom_items(level: LevelIndex, rng=None, samples: int = 0) -> list[CheckItem]:
    """Coassociativity and counit laws for both coactions on generators,
    plus optional seeded degree-2 samples."""
    from .qmatrix import counit

    square = level if not level.rect else LevelIndex(level.m, level.n)
    rect = LevelIndex(square.m, square.n, rect=True)
    g_level = LevelIndex(square.m, 0)

    left_pool = [
        NCPoly.generator(square, i, j)
        for i in square.row_range()
        for j in square.col_range()
    ]
    right_pool = [
        NCPoly.generator(rect, i, j)
        for i in rect.row_range()
        for j in rect.col_range()
    ]
    if rng is not None:
        for _ in range(samples):
            w = tuple(
                (rng.choice(range(-square.m, square.n)), rng.choice(range(-square.m, square.n)))
                for _ in range(2)
            )
            left_pool.append(normalize(square, w))
            wr = tuple(
                (rng.choice(range(-rect.m, rect.n)), rng.choice(range(-rect.m, 0)))
                for _ in range(2)
            )
            right_pool.append(normalize(rect, wr))

    items = []

    bad = None
    for x in left_pool:
        if _triple_left(x, True) != _triple_left(x, False):
            bad = clip(x.render())
            break
    items.append(CheckItem("left coaction coassociativity", bad is None, bad or ""))

    bad = None
    for x in left_pool:
        acc = NCPoly.zero(square)
        for (u, v), c in left_coaction(x).tensor._terms.items():
            eps = counit(NCPoly(square, {u: ONE}))
            acc = acc + NCPoly(square, {v: ONE}).scale(c * eps)
        if acc != x:
            bad = clip(x.render())
            break
    items.append(CheckItem("left coaction counit", bad is None, bad or ""))

    bad = None
    for x in right_pool:
        if _triple_right(x, True) != _triple_right(x, False):
            bad = clip(x.render())
            break
    items.append(CheckItem("right coaction coassociativity", bad is None, bad or ""))

    bad = None
    for x in right_pool:
        acc = NCPoly.zero(rect)
        for (u, v), c in right_coaction(x).tensor._terms.items():
            eps = counit(NCPoly(g_level, {v: ONE}))
            acc = acc + NCPoly(rect, {u: ONE}).scale(c * eps)
        if acc != x:
            bad = clip(x.render())
            break
    items.append(CheckItem("right coaction counit", bad is None, bad or ""))
    return items
