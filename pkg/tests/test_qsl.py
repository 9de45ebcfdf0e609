"""Tests for minors, the determinant, the antipode and the SL quotient."""
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from qgrass.scalars import LaurentScalar, ZERO, ONE, Q, Q_INV
from qgrass.qmatrix import (
    LevelIndex,
    LevelMismatchError,
    NCPoly,
    TensorPoly,
    comul,
    counit,
    nc_mul,
    normalize,
)
from qgrass.qsl import (
    SLElement,
    antipode,
    antipode_convolution,
    det_centrality_items,
    hopf_check,
    phi_project,
    phi_square_items,
    quantum_det,
    quantum_minor,
    sl_equal,
    sl_ideal_membership,
)

L11 = LevelIndex(1, 1)
L12 = LevelIndex(1, 2)
L22 = LevelIndex(2, 2)


def classical_det_terms(rows, cols):
    """Commutative determinant oracle: word -> sign, rows kept in order."""
    out = {}
    p = len(rows)
    for sigma in permutations(range(p)):
        inv = sum(1 for t in range(p) for s in range(t + 1, p) if sigma[t] > sigma[s])
        word = tuple((rows[t], cols[sigma[t]]) for t in range(p))
        out[word] = Fraction(1 if inv % 2 == 0 else -1)
    return out


def spec1(poly):
    """q = 1 specialization as a word -> Fraction mapping."""
    out = {}
    for w, c in poly.terms_sorted():
        v = c.specialize(Fraction(1))
        if v:
            out[w] = v
    return out


def words_at(level, max_len=2):
    letters = [(i, j) for i in level.row_range() for j in level.col_range()]
    return st.lists(st.sampled_from(letters), max_size=max_len).map(tuple)


class TestMinor:
    def test_rank_one_is_generator(self):
        assert quantum_minor(L11, (-1,), (-1,)) == NCPoly.generator(L11, -1, -1)

    def test_two_by_two_frozen(self):
        got = quantum_minor(L22, (-2, -1), (-2, -1))
        want = normalize(L22, ((-2, -2), (-1, -1))) - normalize(
            L22, ((-2, -1), (-1, -2)), Q_INV
        )
        assert got == want

    def test_classical_specialization(self):
        for level, rows, cols in (
            (L22, (-2, -1), (-2, -1)),
            (L22, (-2, 0), (-1, 1)),
            (L12, (-1, 0, 1), (-1, 0, 1)),
        ):
            assert spec1(quantum_minor(level, rows, cols)) == classical_det_terms(
                rows, cols
            )

    def test_bad_keys(self):
        with pytest.raises(ValueError):
            quantum_minor(L11, (-1, -1), (-1, 0))
        with pytest.raises(ValueError):
            quantum_minor(L11, (-1,), (5,))
        with pytest.raises(ValueError):
            quantum_minor(L11, (-1, 0), (-1,))
        with pytest.raises(ValueError):
            quantum_minor(L11, (), ())

    def test_det_frozen(self):
        want = normalize(L11, ((-1, -1), (0, 0))) - normalize(
            L11, ((-1, 0), (0, -1)), Q_INV
        )
        assert quantum_det(L11) == want

    def test_det_rejects_rect(self):
        with pytest.raises(ValueError):
            quantum_det(LevelIndex(2, 1, rect=True))


class TestCentrality:
    def test_level_11(self):
        det = quantum_det(L11)
        for i in L11.row_range():
            for j in L11.col_range():
                g = NCPoly.generator(L11, i, j)
                assert nc_mul(det, g) == nc_mul(g, det), (i, j)

    def test_items_helper(self):
        assert all(item.passed for item in det_centrality_items(L11))


class TestAntipode:
    def test_frozen_generator_images(self):
        assert antipode(NCPoly.generator(L11, -1, -1)) == NCPoly.generator(L11, 0, 0)
        assert antipode(NCPoly.generator(L11, 0, 0)) == NCPoly.generator(L11, -1, -1)
        assert antipode(NCPoly.generator(L11, -1, 0)) == NCPoly.generator(
            L11, -1, 0
        ).scale(-Q)
        assert antipode(NCPoly.generator(L11, 0, -1)) == NCPoly.generator(
            L11, 0, -1
        ).scale(-Q_INV)

    def test_axiom_both_sides(self):
        """The axiom is the oracle that forces the generator images."""
        det = quantum_det(L11)
        for i in L11.row_range():
            for j in L11.col_range():
                want = det if i == j else NCPoly.zero(L11)
                assert antipode_convolution(L11, i, j, True) == want
                assert antipode_convolution(L11, i, j, False) == want

    def test_literal_convention_fails(self):
        det = quantum_det(L11)
        got = antipode_convolution(L11, -1, -1, True, literal=True)
        assert got != det

    @settings(max_examples=40, deadline=None)
    @given(words_at(L11), words_at(L11))
    def test_anti_morphism(self, u, v):
        x = normalize(L11, u)
        y = normalize(L11, v)
        assert antipode(nc_mul(x, y)) == nc_mul(antipode(y), antipode(x))

    def test_det_is_fixed(self):
        det = quantum_det(L11)
        assert antipode(det) == det

    def test_rejects_rect(self):
        with pytest.raises(ValueError):
            antipode(NCPoly.one(LevelIndex(1, 1, rect=True)))


class TestSLQuotient:
    def test_generator_of_ideal(self):
        det = quantum_det(L11)
        assert sl_ideal_membership(det - NCPoly.one(L11))

    def test_det_squared(self):
        det = quantum_det(L11)
        assert sl_ideal_membership(nc_mul(det, det) - NCPoly.one(L11))

    def test_nonmembers(self):
        assert not sl_ideal_membership(NCPoly.generator(L11, -1, -1))
        assert not sl_ideal_membership(NCPoly.one(L11))
        assert sl_ideal_membership(NCPoly.zero(L11))

    @settings(max_examples=30, deadline=None)
    @given(words_at(L11))
    def test_multiples_are_members(self, w):
        det = quantum_det(L11)
        x = normalize(L11, w)
        gen = det - NCPoly.one(L11)
        assert sl_ideal_membership(nc_mul(gen, x))
        assert sl_ideal_membership(nc_mul(x, gen))

    def test_sl_equal(self):
        det = quantum_det(L11)
        assert sl_equal(det, NCPoly.one(L11))
        g = NCPoly.generator(L11, -1, -1)
        assert sl_equal(g, g)
        assert not sl_equal(g, NCPoly.generator(L11, 0, 0))
        with pytest.raises(LevelMismatchError):
            sl_equal(g, NCPoly.one(L12))

    def test_sl_elements(self):
        det = SLElement(L11, quantum_det(L11))
        assert det == SLElement.unit(L11)
        a = SLElement.generator(L11, -1, -1)
        assert a != SLElement.generator(L11, 0, 0)
        assert (a - a).is_zero()
        assert (det * a) == a

    def test_degenerate_level(self):
        lvl = LevelIndex(1, 0)
        g = NCPoly.generator(lvl, -1, -1)
        assert quantum_det(lvl) == g
        assert sl_equal(g, NCPoly.one(lvl))


class TestPhi:
    def test_frozen_cases(self):
        assert phi_project(NCPoly.generator(L22, -2, -2), L11) == NCPoly.one(L11)
        assert phi_project(NCPoly.generator(L22, -1, 0), L11) == NCPoly.generator(
            L11, -1, 0
        )
        assert phi_project(NCPoly.generator(L22, -2, 0), L11).is_zero()

    def test_det_goes_to_det(self):
        assert phi_project(quantum_det(L22), L11) == quantum_det(L11)
        assert phi_project(quantum_det(LevelIndex(3, 3)), L22) == quantum_det(L22)

    def test_comul_square_exact(self):
        for i in L22.row_range():
            for j in L22.col_range():
                g = NCPoly.generator(L22, i, j)
                lhs = comul(phi_project(g, L11))
                rhs = TensorPoly.zero(L11, L11)
                for (u, v), c in comul(g).terms_sorted():
                    fu = phi_project(normalize(L22, u), L11)
                    fv = phi_project(normalize(L22, v), L11)
                    rhs = rhs + TensorPoly.outer(fu, fv).scale(c)
                assert lhs == rhs, (i, j)

    def test_counit_square(self):
        for i in L22.row_range():
            for j in L22.col_range():
                g = NCPoly.generator(L22, i, j)
                assert counit(phi_project(g, L11)) == counit(g)

    def test_antipode_square_mod_ideal(self):
        for i in L22.row_range():
            for j in L22.col_range():
                g = NCPoly.generator(L22, i, j)
                lhs = phi_project(antipode(g), L11)
                rhs = antipode(phi_project(g, L11))
                assert sl_equal(lhs, rhs), (i, j)

    def test_rejects_rect_target(self):
        with pytest.raises(ValueError):
            phi_project(NCPoly.one(L22), LevelIndex(1, 1, rect=True))

    def test_sl_wrapper(self):
        x = SLElement(L22, quantum_det(L22))
        y = phi_project(x, L11)
        assert isinstance(y, SLElement)
        assert y == SLElement.unit(L11)


class TestHopfCheck:
    def test_level_11(self):
        items = hopf_check(L11)
        assert len(items) == 6
        assert all(item.passed for item in items), [i.name for i in items if not i.passed]

    def test_level_12(self):
        assert all(item.passed for item in hopf_check(L12))

    def test_literal_negative_control(self):
        items = hopf_check(L11, literal_antipode=True)
        failed = [i.name for i in items if not i.passed]
        assert "antipode axiom (left)" in failed
        assert "antipode axiom (right)" in failed
        assert "coassociativity on generators" not in failed


class TestPhiSquareItems:
    def test_22_to_11_all_pass(self):
        items = phi_square_items(L22, L11)
        assert [i.name for i in items] == [
            "comultiplication square",
            "counit square",
            "antipode square (mod ideal)",
        ]
        assert all(i.passed for i in items)

    def test_identity_pair(self):
        assert all(i.passed for i in phi_square_items(L11, L11))

    def test_requires_domination(self):
        with pytest.raises(ValueError):
            phi_square_items(L11, L22)
