"""Monomial ideal combinatorics: staircases, sectional matrices, Betti data."""

import itertools
import math
import random

import pytest

from arrfree import (INFINITE, MonomialIdeal, NotStronglyStableError,
                     PowerProduct, StronglyStableIdeal,
                     betti_eliahou_kervaire, codimension, contains,
                     is_cm_codim2_stable, is_cohen_macaulay,
                     is_strongly_stable, minimalize, reduction_number,
                     regularity_stable, sectional_matrix, triangle_equality)
from arrfree.monomial import count_standard_monomials, degree_monomials
from helpers import random_borel_ideal


def B(gens, nvars):
    return MonomialIdeal([PowerProduct(g) for g in gens], nvars)


FIVE = B([(4, 0, 0), (3, 1, 0), (2, 2, 0), (1, 4, 0), (0, 6, 0)], 3)
FIVE_Z = B([(4, 0, 0), (3, 1, 0), (2, 2, 0), (1, 4, 0), (0, 5, 0), (1, 3, 2)], 3)


class TestMinimalizeContains:
    def test_examples(self):
        assert B([(2,), (3,)], 1).generators == (PowerProduct((2,)),)
        already = B([(2, 0), (0, 3)], 2)
        assert minimalize(already.generators, 2) == already
        mixed = minimalize([PowerProduct(g) for g in
                            [(1, 1), (2, 1), (0, 3), (1, 3)]], 2)
        assert mixed == B([(1, 1), (0, 3)], 2)

    def test_membership(self):
        I = B([(2, 0)], 2)
        assert contains(I, PowerProduct((3, 1)))
        assert not contains(I, PowerProduct((1, 5)))
        assert not contains(MonomialIdeal.zero(2), PowerProduct((0, 0)))

    def test_unit_and_zero(self):
        assert MonomialIdeal.unit(2).is_unit
        assert MonomialIdeal.zero(2).is_zero
        # the unit generator swallows everything else
        assert B([(0, 0), (2, 1)], 2) == MonomialIdeal.unit(2)


class TestBorel:
    def test_examples(self):
        assert is_strongly_stable(B([(2, 0), (1, 1), (0, 5)], 2))
        assert not is_strongly_stable(B([(0, 1)], 2))
        assert is_strongly_stable(FIVE)

    def test_unit_and_zero_are_stable(self):
        assert is_strongly_stable(MonomialIdeal.unit(3))
        assert is_strongly_stable(MonomialIdeal.zero(3))

    def test_closure_is_stable(self):
        rng = random.Random(5)
        for _ in range(25):
            I = random_borel_ideal(rng.randint(2, 4), 5, rng.randint(1, 3), rng)
            assert is_strongly_stable(I)

    def test_certified_constructor_rejects(self):
        with pytest.raises(NotStronglyStableError):
            StronglyStableIdeal([PowerProduct((0, 1))], 2)


def counting_oracle(I, i, d):
    """Inclusion-exclusion count of degree-d standard monomials in x_1..x_i."""
    gens = [g[:i] for g in I.generators if all(e == 0 for e in g[i:])]
    total = math.comb(d + i - 1, i - 1)
    inside = 0
    for r in range(1, len(gens) + 1):
        for sub in itertools.combinations(gens, r):
            lcm = tuple(max(col) for col in zip(*sub))
            rest = d - sum(lcm)
            if rest >= 0:
                inside += (-1) ** (r + 1) * math.comb(rest + i - 1, i - 1)
    return total - inside


class TestCounting:
    def test_direct_examples(self):
        assert count_standard_monomials(MonomialIdeal.zero(3), 3, 5) == 21
        assert count_standard_monomials(B([(1, 0, 0)], 3), 3, 4) == 5

    def test_against_inclusion_exclusion(self):
        rng = random.Random(31)
        checked = 0
        while checked < 25:
            nv = rng.randint(2, 4)
            I = random_borel_ideal(nv, 5, rng.randint(1, 2), rng)
            if len(I.generators) > 9:
                continue  # keep the 2^gens oracle affordable
            checked += 1
            for i in range(1, nv + 1):
                for d in range(0, 8):
                    assert count_standard_monomials(I, i, d) == counting_oracle(I, i, d)

    def test_degree_monomials_count(self):
        assert sum(1 for _ in degree_monomials(6, 3)) == math.comb(8, 2)


class TestSectionalMatrix:
    def test_five_planes_rows(self):
        M = sectional_matrix(FIVE, 8)
        assert M.row(2)[:7] == (1, 2, 3, 4, 2, 1, 0)
        assert M.row(3)[:8] == (1, 3, 6, 10, 12, 13, 13, 13)

    def test_nonfree_rows(self):
        M = sectional_matrix(FIVE_Z, 8)
        assert M.row(3)[:8] == (1, 3, 6, 10, 12, 12, 11, 11)

    def test_whole_ring_is_zero(self):
        M = sectional_matrix(MonomialIdeal.unit(3), 4)
        assert M.is_zero

    def test_refuses_non_borel(self):
        I = B([(0, 1)], 2)
        with pytest.raises(NotStronglyStableError):
            sectional_matrix(I, 3)
        raw = sectional_matrix(I, 3, raw=True)
        assert raw.row(2) == (1, 1, 1, 1)

    def test_triangle_inequality_everywhere(self):
        rng = random.Random(77)
        for _ in range(30):
            I = random_borel_ideal(rng.randint(2, 4), 5, rng.randint(1, 3), rng)
            M = sectional_matrix(I)
            for i in range(2, M.nrows + 1):
                for d in range(1, M.dmax + 1):
                    assert M.m(i, d) <= M.m(i - 1, d) + M.m(i, d - 1)

    def test_stable_rows_beyond_top_degree(self):
        rng = random.Random(78)
        for _ in range(20):
            I = random_borel_ideal(rng.randint(2, 4), 4, rng.randint(1, 3), rng)
            if I.is_zero or I.is_unit:
                continue
            top = I.max_generator_degree()
            M = sectional_matrix(I, top + 3)
            for i in range(1, M.nrows + 1):
                for d in range(top, top + 3):
                    assert M.m(i, d + 1) == sum(M.m(j, d) for j in range(1, i + 1))
                    if i >= 2:
                        assert M.m(i, d + 1) == M.m(i - 1, d + 1) + M.m(i, d)


class TestTriangleEquality:
    def test_example_positions(self):
        I = B([(3, 0, 0), (2, 2, 0), (1, 4, 0), (0, 6, 0)], 3)
        M = sectional_matrix(I, 8)
        assert M.row(3)[:8] == (1, 3, 6, 9, 11, 12, 12, 12)
        assert triangle_equality(M, 3, 4)
        # equality in the third row does not imply the full-sum growth
        assert M.m(3, 4) < sum(M.m(j, 3) for j in range(1, 4))

    def test_failure_position(self):
        J2 = B([(2, 0, 0, 0), (1, 2, 0, 0), (1, 1, 1, 0), (0, 4, 0, 0)], 4)
        M = sectional_matrix(J2, 5)
        assert M.m(3, 3) == 5
        assert not triangle_equality(M, 3, 3)
        assert M.m(3, 2) + M.m(2, 3) == 6

    def test_zero_ideal_always_equal(self):
        M = sectional_matrix(MonomialIdeal.zero(3), 6)
        for i in (2, 3):
            for d in range(1, 7):
                assert triangle_equality(M, i, d)

    def test_position_bounds(self):
        M = sectional_matrix(MonomialIdeal.zero(2), 3)
        with pytest.raises(IndexError):
            triangle_equality(M, 1, 1)
        with pytest.raises(IndexError):
            triangle_equality(M, 2, 0)

    def test_row_propagation(self):
        rng = random.Random(79)
        for _ in range(25):
            I = random_borel_ideal(rng.randint(3, 4), 5, rng.randint(1, 2), rng)
            if I.is_zero or I.is_unit:
                continue
            reg = regularity_stable(I)
            M = sectional_matrix(I, reg + 3)
            for i in range(2, M.nrows + 1):
                if all(triangle_equality(M, i, d) for d in range(1, reg + 1)):
                    for s in range(i, M.nrows + 1):
                        for d in range(1, M.dmax + 1):
                            assert triangle_equality(M, s, d)

    def test_summation_form(self):
        rng = random.Random(80)
        for _ in range(25):
            I = random_borel_ideal(rng.randint(2, 4), 5, rng.randint(1, 2), rng)
            if I.is_zero or I.is_unit:
                continue
            reg = regularity_stable(I)
            M = sectional_matrix(I, reg + 1)
            for i in range(1, M.nrows):
                lhs = all(triangle_equality(M, i + 1, d) for d in range(1, reg + 1))
                rhs = M.m(i + 1, reg) == sum(M.m(i, d) for d in range(0, reg + 1))
                assert lhs == rhs


class TestReductionNumbers:
    def test_examples(self):
        assert reduction_number(FIVE, 1) == 5
        assert reduction_number(FIVE_Z, 1) == 4
        # no pure power of the last variable
        assert reduction_number(B([(1, 0)], 2), 0) is INFINITE
        # the first variable does have a pure power here
        assert reduction_number(B([(1, 0)], 2), 1) == 0

    def test_matches_vanishing_row(self):
        rng = random.Random(81)
        for _ in range(25):
            nv = rng.randint(2, 4)
            I = random_borel_ideal(nv, 5, rng.randint(1, 2), rng)
            if I.is_zero or I.is_unit:
                continue
            reg = regularity_stable(I)
            M = sectional_matrix(I, reg + 2)
            for i in range(0, nv):
                r = reduction_number(I, i)
                row = M.row(nv - i)
                if r is INFINITE:
                    assert row[-1] != 0
                else:
                    assert max((d for d, v in enumerate(row) if v), default=-1) == r

    def test_bounds(self):
        with pytest.raises(IndexError):
            reduction_number(FIVE, 3)


class TestRegularity:
    def test_examples(self):
        assert regularity_stable(B([(2, 0), (1, 1), (0, 5)], 2)) == 5
        assert regularity_stable(B([(1, 0)], 2)) == 1
        assert regularity_stable(FIVE) == 6

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            regularity_stable(MonomialIdeal.zero(2))


class TestBetti:
    def test_staircase_example(self):
        bt = betti_eliahou_kervaire(B([(3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 4, 0)], 3))
        assert bt.beta0 == {3: 3, 4: 1}
        assert bt.beta1 == {4: 2, 5: 1}

    def test_koszul_pair(self):
        bt = betti_eliahou_kervaire(B([(1, 0), (0, 1)], 2))
        assert bt.beta0 == {1: 2}
        assert bt.beta1 == {2: 1}

    def test_five_planes(self):
        bt = betti_eliahou_kervaire(FIVE)
        assert bt.beta0 == {4: 3, 5: 1, 6: 1}
        assert bt.beta1 == {5: 2, 6: 1, 7: 1}
        assert bt.m_table == {(1, 4): 1, (2, 4): 2, (2, 5): 1, (2, 6): 1}

    def test_generator_count(self):
        rng = random.Random(82)
        for _ in range(25):
            I = random_borel_ideal(rng.randint(2, 4), 5, rng.randint(1, 3), rng)
            if I.is_zero or I.is_unit:
                continue
            bt = betti_eliahou_kervaire(I)
            assert sum(bt.beta0.values()) == len(I.generators)
            assert bt.beta(0, 4) == bt.beta0.get(4, 0)


class TestLexSegmentShape:
    def test_examples(self):
        shape = is_cm_codim2_stable(FIVE)
        assert shape and shape.n == 5 and shape.lambdas == (1, 2, 4, 6)
        assert is_cm_codim2_stable(FIVE_Z) is None
        assert is_cm_codim2_stable(B([(1, 0)], 2)) is None

    def test_maximal_ideal(self):
        shape = is_cm_codim2_stable(B([(1, 0), (0, 1)], 2))
        assert shape and shape.n == 2 and shape.lambdas == (1,)


class TestCohenMacaulay:
    def test_codimension(self):
        assert codimension(FIVE) == 2
        assert codimension(B([(1, 0, 0)], 3)) == 1
        assert codimension(MonomialIdeal.unit(3)) == 3

    def test_verdicts(self):
        assert is_cohen_macaulay(FIVE)
        J2 = B([(2, 0, 0, 0), (1, 2, 0, 0), (1, 1, 1, 0), (0, 4, 0, 0)], 4)
        assert not is_cohen_macaulay(J2)
        assert is_cohen_macaulay(MonomialIdeal.zero(3))
