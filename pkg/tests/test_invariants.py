from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from smt.combinat import Pair, UIndex, tuples
from smt.errors import PolynomialAlgebraRegime, SizeBoundError
from smt.exactalg import SparsePoly, det_bareiss, det_leibniz, det_symbolic, identity, mat_mul
from smt.invariants import (InvariantContext, act, cayley, gram_entry, gram_independence_check,
                            invariance_check, invariance_suite, lemma_residual, p_minor,
                            preserves_form, random_orthogonal, swap_first_last, u_det,
                            word_invariance_check)


def test_gram_entry_small_cases():
    c1 = InvariantContext(2, 1)
    assert gram_entry(c1, 1, 1) == c1.u(1, 1) * c1.u(1, 1)
    c = InvariantContext(3, 2)
    assert gram_entry(c, 1, 2) == c.u(1, 1) * c.u(2, 2) + c.u(1, 2) * c.u(2, 1)
    assert gram_entry(c, 1, 2) == gram_entry(c, 2, 1)
    with pytest.raises(ValueError):
        gram_entry(c, 0, 1)


def test_identity_form():
    c = InvariantContext(3, 2, "identity")
    assert gram_entry(c, 1, 2) == c.u(1, 1) * c.u(2, 1) + c.u(1, 2) * c.u(2, 2)


def test_p_minor_conventions():
    c = InvariantContext(4, 2)
    assert p_minor(c, (), ()) == SparsePoly.const(c.vars, 1)
    assert p_minor(c, (3,), (1,)) == gram_entry(c, 3, 1)
    with pytest.raises(SizeBoundError):
        p_minor(c, (1, 2, 3), (1, 2, 3))


def test_p_minor_matches_leibniz():
    c = InvariantContext(4, 3)
    for A in tuples(2, 4):
        for B in tuples(2, 4):
            G = [[gram_entry(c, a, b) for b in B] for a in A]
            assert p_minor(c, A, B) == det_leibniz(G)


def test_p_minor_symmetry():
    c = InvariantContext(4, 3)
    for r in (1, 2, 3):
        for A in tuples(r, 4):
            for B in tuples(r, 4):
                assert p_minor(c, A, B) == p_minor(c, B, A)


def test_u_det():
    c1 = InvariantContext(3, 1)
    assert u_det(c1, (2,)) == c1.u(2, 1)
    c = InvariantContext(3, 2)
    assert u_det(c, (1, 2)) == c.u(1, 1) * c.u(2, 2) - c.u(1, 2) * c.u(2, 1)
    with pytest.raises(ValueError):
        u_det(c, (1,))


def test_polynomial_algebra_regime():
    with pytest.raises(PolynomialAlgebraRegime):
        u_det(InvariantContext(1, 2), (1, 2))


@pytest.mark.parametrize("n,m", [(1, 3), (2, 4), (3, 5)])
def test_u_products_are_gram_minors_for_the_identity_form(n, m):
    c = InvariantContext(m, n, "identity")
    for I in tuples(n, m):
        for J in tuples(n, m):
            assert lemma_residual(c, I, J).is_zero()


@pytest.mark.parametrize("n,m", [(2, 4), (3, 4)])
def test_u_products_carry_the_form_determinant(n, m):
    # with the anti-diagonal form u(I)u(J) = det(J_n) p(I, J), det(J_n) = -1 for n = 2, 3
    c = InvariantContext(m, n)
    assert c.form_det == -1
    for I in tuples(n, m):
        for J in tuples(n, m):
            assert u_det(c, I) * u_det(c, J) == p_minor(c, I, J).scale(c.form_det)


def test_square_of_off_diagonal_minor():
    c = InvariantContext(4, 2)
    for I, J in combinations(tuples(2, 4), 2):
        assert p_minor(c, I, J) ** 2 == p_minor(c, I, I) * p_minor(c, J, J)


def test_gram_minors_beyond_rank_vanish():
    c = InvariantContext(4, 2)
    for A in tuples(3, 4):
        for B in tuples(3, 4):
            assert det_symbolic([[gram_entry(c, a, b) for b in B] for a in A]).is_zero()


def test_cayley_of_zero_is_identity():
    assert cayley([[Fraction(0)] * 3 for _ in range(3)]) == identity(3)


def test_swap_is_orthogonal_with_det_minus_one():
    c = InvariantContext(2, 2)
    P = swap_first_last(2)
    assert P == [[0, 1], [1, 0]]
    assert det_bareiss(P) == -1 and preserves_form(P, c.form_matrix())


@given(st.integers(0, 10_000), st.sampled_from([2, 3]), st.sampled_from([1, -1]),
       st.sampled_from(["antidiagonal", "identity"]))
def test_random_orthogonal_postcondition(seed, n, sign, form):
    c = InvariantContext(n, n, form)
    g = random_orthogonal(c, seed, sign)
    F = c.form_matrix()
    M = g.matrix()
    assert mat_mul(mat_mul([list(r) for r in zip(*M)], F), M) == F
    assert det_bareiss(M) == sign


def test_invariance_examples():
    c = InvariantContext(3, 2)
    plus = random_orthogonal(c, 7, 1)
    minus = random_orthogonal(c, 7, -1)
    p11 = p_minor(c, (1,), (1,))
    u12 = u_det(c, (1, 2))
    assert invariance_check(c, p11, plus)
    assert invariance_check(c, p11, minus)
    assert invariance_check(c, u12, plus, u_count=1)
    assert act(c, u12, minus) == -u12
    assert invariance_check(c, u12, minus, u_count=1)


def test_coordinates_are_not_invariant():
    # negative control: a single coordinate function is moved
    c = InvariantContext(3, 2)
    rep = invariance_check(c, c.u(1, 1), random_orthogonal(c, 3, 1))
    assert not rep.passed


def test_word_invariance():
    c = InvariantContext(4, 2)
    g = random_orthogonal(c, 11, -1)
    assert word_invariance_check(c, (Pair((2,), (1,)), UIndex((1, 3))), g)
    assert word_invariance_check(c, (UIndex((1, 2)), UIndex((3, 4))), g)


def test_invariance_suite_small():
    assert invariance_suite(InvariantContext(3, 2), seed=5, samples=3)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_gram_entries_independent_when_m_le_n(m):
    assert gram_independence_check(m, 3, seed=2)


def test_gram_entries_dependent_when_m_gt_n():
    with pytest.raises(ValueError):
        gram_independence_check(4, 2, seed=0)
