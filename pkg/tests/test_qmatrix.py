"""Tests for the quantum matrix algebra and its rewriting engine."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qgrass.scalars import LaurentScalar, ZERO, ONE, Q, Q_INV
from qgrass import qmatrix as qm
from qgrass.qmatrix import (
    LevelIndex,
    LevelMismatchError,
    NCPoly,
    RewriteFuelError,
    TensorPoly,
    comul,
    counit,
    level_project_E,
    nc_mul,
    normalize,
    render_word,
    substitute_letters,
    tensor_mul,
)

Q_MINUS_QINV = Q - Q_INV


# ---------------------------------------------------------------------------
# Reference rewriter.  Independent of the engine: repeatedly locates the last
# descending adjacent pair anywhere in the word and applies the matching
# exchange relation, until every pending word is sorted.


def _add_term(acc, word, coeff):
    s = acc.get(word, ZERO) + coeff
    if s:
        acc[word] = s
    else:
        acc.pop(word, None)


def oracle_normalize(word, coeff=ONE):
    pending = {}
    _add_term(pending, tuple(word), coeff)
    done = {}
    while pending:
        w, c = pending.popitem()
        idx = None
        for t in range(len(w) - 1, 0, -1):
            if w[t - 1] > w[t]:
                idx = t - 1
                break
        if idx is None:
            _add_term(done, w, c)
            continue
        y, x = w[idx], w[idx + 1]
        head, tail = w[:idx], w[idx + 2 :]
        (r1, c1), (r2, c2) = y, x
        if r1 == r2 or c1 == c2:
            _add_term(pending, head + (x, y) + tail, c * Q)
        elif c1 < c2:
            _add_term(pending, head + (x, y) + tail, c)
        else:
            _add_term(pending, head + (x, y) + tail, c)
            _add_term(pending, head + ((r2, c1), (r1, c2)) + tail, c * Q_MINUS_QINV)
    return done


def engine_terms(level, word):
    return dict(normalize(level, word).terms_sorted())


def letters_of(level):
    return [(i, j) for i in level.row_range() for j in level.col_range()]


L11 = LevelIndex(1, 1)
L12 = LevelIndex(1, 2)
L22 = LevelIndex(2, 2)
L21R = LevelIndex(2, 1, rect=True)


def words_at(level, max_len=3):
    return st.lists(st.sampled_from(letters_of(level)), max_size=max_len).map(tuple)


class TestLevelIndex:
    def test_windows(self):
        assert list(L12.row_range()) == [-1, 0, 1]
        assert list(L12.col_range()) == [-1, 0, 1]
        assert list(L21R.row_range()) == [-2, -1, 0]
        assert list(L21R.col_range()) == [-2, -1]

    def test_dominates(self):
        assert L22.dominates(L11)
        assert L22.dominates(L12)
        assert not L11.dominates(L12)
        assert not LevelIndex(2, 2, rect=True).dominates(L11)

    def test_degenerate_column_algebra(self):
        lvl = LevelIndex(1, 0)
        assert list(lvl.row_range()) == [-1]
        assert list(lvl.col_range()) == [-1]
        with pytest.raises(ValueError):
            LevelIndex(0, 2)


class TestRewriting:
    def test_sorted_word_is_fixed(self):
        w = ((-1, -1), (-1, 0), (0, -1))
        assert engine_terms(L11, w) == {w: ONE}

    def test_quartic_pair(self):
        """Hand-checked: the descending diagonal pair picks up a correction."""
        got = engine_terms(L22, ((-1, -1), (-2, -2)))
        assert got == {
            ((-2, -2), (-1, -1)): ONE,
            ((-2, -1), (-1, -2)): Q_MINUS_QINV,
        }

    def test_same_column_swap(self):
        got = engine_terms(L11, ((0, -1), (-1, -1)))
        assert got == {((-1, -1), (0, -1)): Q}

    def test_same_row_swap(self):
        got = engine_terms(L11, ((-1, 0), (-1, -1)))
        assert got == {((-1, -1), (-1, 0)): Q}

    def test_antidiagonal_commutes(self):
        got = engine_terms(L22, ((-1, -2), (-2, -1)))
        assert got == {((-2, -1), (-1, -2)): ONE}

    def test_defining_relations_vanish(self):
        for level in (L11, L12, L22):
            lets = letters_of(level)
            for a in lets:
                for b in lets:
                    if a >= b:
                        continue
                    (i, j), (k, l) = a, b
                    lhs = normalize(level, (a, b))
                    rhs = normalize(level, (b, a))
                    if i == k or j == l:
                        assert (lhs - rhs.scale(Q_INV)).is_zero()
                    elif j > l:
                        assert (lhs - rhs).is_zero()
                    else:
                        corr = normalize(level, ((k, j), (i, l)), Q_MINUS_QINV)
                        assert (rhs - lhs - corr).is_zero()

    @settings(max_examples=120, deadline=None)
    @given(words_at(L12, 4))
    def test_matches_oracle(self, w):
        assert engine_terms(L12, w) == oracle_normalize(w)

    @settings(max_examples=60, deadline=None)
    @given(words_at(L22, 4))
    def test_matches_oracle_bigger_window(self, w):
        assert engine_terms(L22, w) == oracle_normalize(w)

    @settings(max_examples=40, deadline=None)
    @given(words_at(L21R, 4))
    def test_matches_oracle_rect(self, w):
        assert engine_terms(L21R, w) == oracle_normalize(w)

    def test_worst_case_word_terminates(self):
        w = tuple(sorted(letters_of(L22), reverse=True))[:8]
        poly = normalize(L22, w)
        assert poly.max_word_length() == 8
        assert engine_terms(L22, w) == oracle_normalize(w)

    def test_letter_outside_window_rejected(self):
        with pytest.raises(ValueError):
            normalize(L11, ((2, 0),))

    def test_fuel_guard_trips(self):
        old = qm._FUEL[0]
        try:
            qm._FUEL[0] = 0
            with pytest.raises(RewriteFuelError):
                qm._wtl(((3, 50),), (2, 60))
        finally:
            qm._FUEL[0] = old

    def test_comul_refills_fuel(self):
        # a process whose first rewrite happens inside comul must not stall
        x = normalize(L22, ((-1, -2), (-2, -1)))
        qm._WTL_CACHE.clear()
        qm._FUEL[0] = 0
        t = comul(x)
        left = NCPoly.zero(L22)
        for (u, v), c in t.terms_sorted():
            left = left + normalize(L22, v, c * counit(normalize(L22, u)))
        assert left == x


class TestAlgebra:
    def test_level_mismatch(self):
        with pytest.raises(LevelMismatchError):
            nc_mul(NCPoly.one(L11), NCPoly.one(L12))

    @settings(max_examples=50, deadline=None)
    @given(words_at(L12), words_at(L12), words_at(L12))
    def test_associative(self, u, v, w):
        x = normalize(L12, u)
        y = normalize(L12, v)
        z = normalize(L12, w)
        assert nc_mul(nc_mul(x, y), z) == nc_mul(x, nc_mul(y, z))

    @settings(max_examples=50, deadline=None)
    @given(words_at(L12), words_at(L12))
    def test_commutative_at_q_one(self, u, v):
        x = normalize(L12, u)
        y = normalize(L12, v)
        diff = nc_mul(x, y) - nc_mul(y, x)
        for _, c in diff.terms_sorted():
            assert c.specialize(Fraction(1)) == 0

    def test_graded_parts(self):
        x = NCPoly.one(L22) + normalize(L22, ((-1, -1), (-2, -2)))
        parts = x.graded_parts()
        assert sorted(parts) == [0, 2]
        assert parts[0] == NCPoly.one(L22)

    def test_scale_and_neg(self):
        g = NCPoly.generator(L11, -1, 0)
        assert (g.scale(Q) + g.scale(-Q)).is_zero()
        assert -(-g) == g


class TestCoalgebra:
    def test_comul_generator(self):
        got = comul(NCPoly.generator(L11, -1, -1))
        want = TensorPoly.outer(
            NCPoly.generator(L11, -1, -1), NCPoly.generator(L11, -1, -1)
        ) + TensorPoly.outer(NCPoly.generator(L11, -1, 0), NCPoly.generator(L11, 0, -1))
        assert got == want

    def test_comul_rejects_rect(self):
        with pytest.raises(ValueError):
            comul(NCPoly.one(L21R))

    def test_counit_values(self):
        assert counit(NCPoly.generator(L11, -1, -1)) == ONE
        assert counit(NCPoly.generator(L11, -1, 0)) == ZERO
        assert counit(normalize(L22, ((-1, -1), (-2, -2)))) == ONE

    @settings(max_examples=30, deadline=None)
    @given(words_at(L11, 3), words_at(L11, 3))
    def test_comul_is_multiplicative(self, u, v):
        x = normalize(L11, u)
        y = normalize(L11, v)
        assert comul(nc_mul(x, y)) == tensor_mul(comul(x), comul(y))

    @settings(max_examples=30, deadline=None)
    @given(words_at(L11, 3), words_at(L11, 3))
    def test_counit_is_multiplicative(self, u, v):
        x = normalize(L11, u)
        y = normalize(L11, v)
        assert counit(nc_mul(x, y)) == counit(x) * counit(y)

    @settings(max_examples=25, deadline=None)
    @given(words_at(L11, 3))
    def test_coassociative(self, w):
        x = normalize(L11, w)
        lhs = {}
        rhs = {}
        for (u, v), c in comul(x).terms_sorted():
            for (u1, u2), cu in comul(normalize(L11, u)).terms_sorted():
                _add_term(lhs, (u1, u2, v), c * cu)
            for (v1, v2), cv in comul(normalize(L11, v)).terms_sorted():
                _add_term(rhs, (u, v1, v2), c * cv)
        assert lhs == rhs

    @settings(max_examples=25, deadline=None)
    @given(words_at(L11, 3))
    def test_counit_axiom(self, w):
        x = normalize(L11, w)
        left = NCPoly.zero(L11)
        right = NCPoly.zero(L11)
        for (u, v), c in comul(x).terms_sorted():
            left = left + normalize(L11, v, c * counit(normalize(L11, u)))
            right = right + normalize(L11, u, c * counit(normalize(L11, v)))
        assert left == x
        assert right == x

    def test_comul_of_quartic_relation(self):
        x = NCPoly.generator(L22, -1, -1)
        y = NCPoly.generator(L22, -2, -2)
        assert comul(nc_mul(x, y)) == tensor_mul(comul(x), comul(y))


class TestProjection:
    def test_frozen_single_letters(self):
        cases = {
            (-2, -2): NCPoly.one(L11),
            (-1, -1): NCPoly.generator(L11, -1, -1),
            (1, 1): NCPoly.one(L11),
            (-2, -1): NCPoly.zero(L11),
            (-1, 1): NCPoly.zero(L11),
        }
        for letter, want in cases.items():
            got = level_project_E(NCPoly.generator(L22, *letter), L11)
            assert got == want, letter

    def test_quartic_image(self):
        x = normalize(L22, ((-1, -1), (-2, -2)))
        assert level_project_E(x, L11) == NCPoly.generator(L11, -1, -1)

    def test_requires_domination(self):
        with pytest.raises(LevelMismatchError):
            level_project_E(NCPoly.one(L11), L22)

    @settings(max_examples=40, deadline=None)
    @given(words_at(L22, 3), words_at(L22, 3))
    def test_is_multiplicative(self, u, v):
        """The window substitution respects the exchange relations."""
        x = normalize(L22, u)
        y = normalize(L22, v)
        lhs = level_project_E(nc_mul(x, y), L11)
        rhs = nc_mul(level_project_E(x, L11), level_project_E(y, L11))
        assert lhs == rhs

    def test_rect_projection(self):
        big = LevelIndex(2, 2, rect=True)
        small = LevelIndex(1, 2, rect=True)
        assert level_project_E(NCPoly.generator(big, -2, -2), small) == NCPoly.one(small)
        assert level_project_E(NCPoly.generator(big, 1, -1), small) == NCPoly.generator(
            small, 1, -1
        )
        assert level_project_E(NCPoly.generator(big, -2, -1), small).is_zero()
        assert level_project_E(NCPoly.generator(big, 1, -2), small).is_zero()

    def test_custom_fate_rejected(self):
        with pytest.raises(ValueError):
            substitute_letters(NCPoly.generator(L11, -1, -1), L11, lambda l, t: "boom")


class TestText:
    def test_render_frozen(self):
        assert NCPoly.zero(L11).render() == "0"
        assert NCPoly.one(L11).render() == "1"
        assert (-NCPoly.generator(L11, -1, -1)).render() == "-a[-1,-1]"
        x = normalize(L22, ((-1, -1), (-2, -2)))
        assert x.render() == "a[-2,-2]*a[-1,-1] + (q - q^-1)*a[-2,-1]*a[-1,-2]"
        y = NCPoly.generator(L11, -1, -1) - NCPoly.one(L11)
        assert y.render() == "-1 + a[-1,-1]"

    def test_render_word(self):
        assert render_word(((-1, 0), (0, -1))) == "a[-1,0]*a[0,-1]"
        assert render_word(()) == ""

    @settings(max_examples=40, deadline=None)
    @given(words_at(L12, 3))
    def test_json_round_trip(self, w):
        x = normalize(L12, w)
        assert NCPoly.from_json(x.to_json()) == x

    def test_json_rect_flag(self):
        x = NCPoly.generator(L21R, 0, -2)
        data = x.to_json()
        assert data["rect"] is True
        assert NCPoly.from_json(data) == x
