import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from smt.combinat import EMPTY_PAIR, Pair, dt_pairs, is_standard, tuples
from smt.detvar import (SymContext, build_dt_catalog, dim_check, expected_dim, hilbert_Dt,
                        independence_by_points, minor_on, presentation_Dt, shape_check_dt,
                        singular_locus_check, straighten_sym, sym_minor, word_on)
from smt.exactalg import SparsePoly, det_leibniz
from smt.straighten import verify_shape

P = Pair


def z_matrix(m):
    c = SymContext(m, m + 1)
    return [[c.z(i, j) for j in range(1, m + 1)] for i in range(1, m + 1)]


def laplace(M, along_row=True):
    if len(M) == 1:
        return M[0][0]
    if not along_row:
        M = [list(r) for r in zip(*M)]
    out = None
    for j, x in enumerate(M[0]):
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = x * laplace(sub)
        term = term if j % 2 == 0 else -term
        out = term if out is None else out + term
    return out


def test_sym_minor_examples():
    assert sym_minor(3, (), ()) == SparsePoly.const(SymContext(3, 4).z_vars, 1)
    c = SymContext(2, 3)
    assert sym_minor(2, (1, 2), (1, 2)) == c.z(1, 1) * c.z(2, 2) - c.z(1, 2) * c.z(1, 2)
    with pytest.raises(ValueError):
        sym_minor(2, (1, 2, 3), (1, 2, 3))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_sym_minor_against_leibniz_and_laplace(m):
    Z = z_matrix(m)
    for r in range(1, min(m, 3) + 1):
        for A in tuples(r, m):
            for B in tuples(r, m):
                sub = [[Z[a - 1][b - 1] for b in B] for a in A]
                p = sym_minor(m, A, B)
                assert p == det_leibniz(sub)
                assert p == sym_minor(m, B, A)
    full = tuple(range(1, m + 1))
    assert laplace(Z) == laplace(Z, along_row=False) == sym_minor(m, full, full)


def test_minor_vanishes_beyond_rank():
    c = SymContext(3, 2)
    assert minor_on(c, (1, 2), (1, 3)).is_zero()
    assert not minor_on(c, (2,), (1,)).is_zero()


def test_context_bounds():
    with pytest.raises(ValueError):
        SymContext(2, 4)
    with pytest.raises(ValueError):
        SymContext(2, 0)


def test_straighten_sym_full_space():
    rel = straighten_sym([P((2,), (1,)), P((2,), (1,))], 2, 3)
    assert sorted(rel.rhs, key=lambda t: t[0]) == [
        (Fraction(-1), (EMPTY_PAIR, P((1, 2), (1, 2)))),
        (Fraction(1), (P((2,), (2,)), P((1,), (1,)))),
    ]


def test_straighten_sym_rank_one():
    rel = straighten_sym([P((2,), (1,)), P((2,), (1,))], 2, 2)
    assert rel.rhs == [(Fraction(1), (P((2,), (2,)), P((1,), (1,))))]


def test_straighten_sym_standard_word():
    w = (P((2,), (2,)), P((1,), (1,)))
    assert straighten_sym(w, 2, 3).rhs == [(Fraction(1), w)]


def test_straighten_sym_truncates_sizes():
    c = SymContext(3, 2)
    lhs = [P((2,), (1,)), P((3,), (1,))]
    rel = straighten_sym(lhs, 3, 2)
    assert all(len(d.A) <= 1 for _, w in rel.rhs for d in w)
    assert all(is_standard(w) for _, w in rel.rhs)
    # oracle: both sides agree as functions on rank <= 1 matrices
    total = word_on(c, lhs)
    for coef, w in rel.rhs:
        total = total - word_on(c, w).scale(coef)
    assert total.is_zero()


def dt_oracle(m, t, d):
    if t == m + 1:
        N = m * (m + 1) // 2
        return comb(d + N - 1, N - 1)
    if t == 1:
        return int(d == 0)
    if (m, t) == (2, 2):
        # K[z11, z12, z22] / (det): degree d minus degree d - 2
        return comb(d + 2, 2) - (comb(d, 2) if d >= 2 else 0)
    raise NotImplementedError


@pytest.mark.parametrize("m,t", [(2, 2), (2, 3), (3, 4), (3, 1), (2, 1)])
@pytest.mark.parametrize("d", range(4))
def test_hilbert_against_closed_forms(m, t, d):
    assert hilbert_Dt(m, t, d) == dt_oracle(m, t, d)


def test_hilbert_examples():
    assert hilbert_Dt(2, 2, 2) == 5
    assert hilbert_Dt(2, 3, 1) == 3
    assert all(hilbert_Dt(m, t, 0) == 1 for m in (1, 2, 3) for t in range(1, m + 2))


@pytest.mark.parametrize("m,t,d", [(m, t, d) for m in (1, 2, 3) for t in range(1, m + 2)
                                   for d in range(3)])
def test_independence_by_points(m, t, d):
    count = hilbert_Dt(m, t, d)
    rep = independence_by_points(m, t, d, max(3 * count, 1), seed=4)
    assert rep and rep.details["rank"] == count


def test_independence_example():
    rep = independence_by_points(2, 2, 2, 12, seed=0)
    assert rep.details["rank"] == 5


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_dim_check(m):
    for t in range(1, m + 2):
        rep = dim_check(m, t, seed=m + t)
        assert rep and rep.details["rank"] == expected_dim(m, t)
    assert expected_dim(m, 1) == 0
    assert expected_dim(m, m + 1) == m * (m + 1) // 2


def test_dim_example():
    assert expected_dim(3, 2) == 3


@pytest.mark.parametrize("m,t", [(2, 2), (3, 2), (3, 3), (4, 3)])
def test_singular_locus(m, t):
    rep = singular_locus_check(m, t, seed=1)
    assert rep
    assert rep.details["rank_at_rank_t_minus_2"] < rep.details["rank_at_rank_t_minus_1"]


def test_singular_locus_quadric_cone():
    rep = singular_locus_check(2, 2, seed=3)
    assert rep.details["rank_at_rank_t_minus_1"] == 1
    assert rep.details["rank_at_rank_t_minus_2"] == 0


def test_presentation_examples():
    full = presentation_Dt(2, 3, use_cache=False)
    assert len(full["relations"]) == 1
    rank_one = presentation_Dt(2, 2, use_cache=False)
    assert len(rank_one["relations"]) == 1
    assert len(rank_one["relations"][0]["rhs"]) == 1


@pytest.mark.parametrize("m,t", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_catalog_shape(m, t):
    cat = build_dt_catalog(m, t)
    assert shape_check_dt(m, t, cat)
    for rel in cat:
        assert verify_shape(rel, t=t), rel
        assert not is_standard(rel.lhs) and not is_standard(rel.lhs[::-1])


@given(st.integers(0, 1000), st.sampled_from([(2, 2), (3, 2), (3, 3), (3, 4)]))
def test_straighten_sym_agrees_on_the_variety(seed, mt):
    m, t = mt
    rng = random.Random(seed)
    pool = dt_pairs(m, t, with_empty=False)
    lhs = [rng.choice(pool) for _ in range(2)]
    rel = straighten_sym(lhs, m, t)
    c = SymContext(m, t)
    total = word_on(c, lhs)
    for coef, w in rel.rhs:
        total = total - word_on(c, w).scale(coef)
    assert total.is_zero()
