import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from smt.combinat import ONE, Doset, Pair, UIndex, block_multidegree, is_standard
from smt.exactalg import SparsePoly
from smt.invariants import InvariantContext, gram_entry, p_minor, u_det
from smt.straighten import (Relation, WeightContext, basis_check, build_catalog,
                            catalog_integrity_check, catalog_path, expand, load_catalog,
                            max_weight_word, nonstandard_pairs, presentation, residual,
                            rewrite_agreement_check, straighten_rewrite, straighten_solve,
                            verify_shape, weight, weight_law_check)

P, U = Pair, UIndex
PLUCKER_LHS = (U((1, 4)), U((2, 3)))
P21_SQ = (P((2,), (1,)), P((2,), (1,)))


@pytest.fixture(scope="module")
def ctx24():
    return InvariantContext(4, 2)


@pytest.fixture(scope="module")
def cat24(ctx24):
    return build_catalog(ctx24)


def test_expand_basics(ctx24):
    assert expand(ctx24, ()) == SparsePoly.const(ctx24.vars, 1)
    assert expand(ctx24, [P((3,), (1,))]) == gram_entry(ctx24, 3, 1)
    assert expand(ctx24, [U((1, 2)), U((3, 4))]) == u_det(ctx24, (1, 2)) * u_det(ctx24, (3, 4))


def test_two_u_symbols_expand_to_a_general_minor():
    c = InvariantContext(4, 2, "identity")
    assert expand(c, [U((1, 3)), U((2, 4))]) == p_minor(c, (1, 3), (2, 4))


def test_block_multidegree_is_the_expansion_multidegree(ctx24):
    for w in [(P((2,), (1,)),), (U((1, 2)),), (P((4,), (2,)), U((1, 3)), P((1, 2), (1, 2)))]:
        md = block_multidegree(w, 4)
        for mono in expand(ctx24, w).terms:
            got = tuple(sum(mono[(i - 1) * 2:(i - 1) * 2 + 2]) for i in range(1, 5))
            assert got == md


def test_standard_word_straightens_to_itself(ctx24):
    w = (U((2, 4)), U((1, 3)))
    assert straighten_solve(ctx24, w).rhs == [(Fraction(1), w)]


@pytest.mark.parametrize("form", ["antidiagonal", "identity"])
def test_plucker_relation(form):
    c = InvariantContext(4, 2, form)
    rel = straighten_solve(c, PLUCKER_LHS)
    assert rel.rhs == [(Fraction(1), (U((2, 4)), U((1, 3)))),
                       (Fraction(-1), (U((3, 4)), U((1, 2))))]
    # oracle: u14 u23 - u13 u24 + u12 u34 vanishes identically
    u = lambda *I: u_det(c, I)
    assert (u(1, 4) * u(2, 3) - u(1, 3) * u(2, 4) + u(1, 2) * u(3, 4)).is_zero()


def test_square_of_off_diagonal_entry_identity_form():
    c = InvariantContext(2, 2, "identity")
    rel = straighten_solve(c, P21_SQ)
    assert rel.rhs == [(Fraction(1), (P((2,), (2,)), P((1,), (1,)))),
                       (Fraction(-1), (U((1, 2)), U((1, 2))))]
    assert residual(c, rel).is_zero()


def test_square_of_off_diagonal_entry_carries_form_sign():
    c = InvariantContext(2, 2)
    rel = straighten_solve(c, P21_SQ)
    assert rel.coefficient((U((1, 2)), U((1, 2)))) == -c.form_det


@pytest.mark.parametrize("m,size", [(2, 1), (3, 9), (4, 36)])
def test_catalog_covers_nonstandard_pairs(m, size):
    c = InvariantContext(m, 2)
    cat = build_catalog(c)
    assert len(cat) == size == len(nonstandard_pairs(Doset(m, 2).H))
    lhs = [r.lhs for r in cat]
    assert len(set(lhs)) == len(lhs)
    assert catalog_integrity_check(c, cat)


def test_degenerate_catalog_for_n1():
    c = InvariantContext(2, 1)
    assert build_catalog(c) == []
    bundle = presentation(c)
    # H_p is empty; the p(i, j) generators live in the orthogonal sub-bundle
    assert bundle["relations"] == [] and len(bundle["generators"]) == 2
    assert len(bundle["orthogonal"]["generators"]) == 3


def test_every_catalog_relation_passes_shape(cat24):
    for rel in cat24:
        assert all(is_standard(w) for _, w in rel.rhs)
        assert verify_shape(rel), rel


def test_shape_examples(ctx24):
    assert verify_shape(straighten_solve(ctx24, PLUCKER_LHS)).details["case"] == "uu"
    rep = verify_shape(straighten_solve(InvariantContext(2, 2), P21_SQ))
    assert rep and rep.details["case"] == "pp"


def test_shape_negative_control():
    rel = straighten_solve(InvariantContext(2, 2), P21_SQ)
    bad = Relation(rel.lhs, [(c * 2 if w == (P((2,), (2,)), P((1,), (1,))) else c, w)
                             for c, w in rel.rhs])
    rep = verify_shape(bad)
    assert not rep
    assert any(v["clause"].startswith("pp") for v in rep.violations)


def test_weight_monotone_in_digits():
    w = WeightContext(4, 2)
    assert weight((P((2,), (1,)),), w) < weight((P((3,), (1,)),), w)
    assert weight((U((1, 3)),), w) < weight((U((1, 4)),), w)
    assert weight((ONE,), w) == w.value([4] * 6)


def test_max_weight_word():
    w = WeightContext(4, 2)
    gens = Doset(4, 2).H
    top = max_weight_word(4, 2, 1, 1)
    for p in [g for g in gens if isinstance(g, Pair)]:
        for u in [g for g in gens if isinstance(g, UIndex)]:
            assert weight((p, u), w) <= weight(top, w)


@pytest.mark.parametrize("n,m", [(2, 3), (2, 4)])
def test_weight_law(n, m):
    c = InvariantContext(m, n)
    cat = build_catalog(c)
    assert weight_law_check(c, cat)
    assert weight_law_check(c, cat, WeightContext.strict(m, n))


def test_weight_law_strict_encoding_n3():
    c = InvariantContext(4, 3)
    assert weight_law_check(c, build_catalog(c), WeightContext.strict(4, 3))


def test_rewrite_examples(ctx24, cat24):
    w = (U((2, 4)), U((1, 3)))
    assert straighten_rewrite(ctx24, w, cat24).rhs == [(Fraction(1), w)]
    for rel in cat24[:10]:
        assert straighten_rewrite(ctx24, rel.lhs, cat24).rhs == rel.rhs


def test_rewrite_agrees_with_solve(ctx24, cat24):
    assert rewrite_agreement_check(ctx24, cat24, seed=1, count=30)


@given(st.integers(0, 10_000))
def test_solve_has_zero_residual(seed):
    c = InvariantContext(4, 2)
    rng = random.Random(seed)
    gens = Doset(4, 2).H
    w = tuple(rng.choice(gens) for _ in range(rng.randint(1, 3)))
    rel = straighten_solve(c, w)
    assert residual(c, rel).is_zero()
    assert all(is_standard(x) for _, x in rel.rhs)


def test_basis_small():
    rep = basis_check(InvariantContext(3, 2), 2)
    assert rep and rep.details["standard_words"] > 0


def test_catalog_cache_round_trip(ctx24):
    first = load_catalog(ctx24)
    assert catalog_path(ctx24).exists()
    again = load_catalog(ctx24)
    assert [r.to_json() for r in first] == [r.to_json() for r in again]


def test_corrupted_cache_is_detected(tmp_path, monkeypatch):
    monkeypatch.setenv("SMT_CACHE_DIR", str(tmp_path))
    c = InvariantContext(3, 2)
    load_catalog(c)
    path = catalog_path(c)
    data = json.loads(path.read_text())
    data["relations"][0]["rhs"][0]["c"] = "7/1"
    path.write_text(json.dumps(data))
    rep = catalog_integrity_check(c, load_catalog(c))
    assert not rep
    assert all(v["message"].startswith("THEOREM-VIOLATION") for v in rep.violations)


def test_relation_json_round_trip(cat24):
    for rel in cat24:
        assert Relation.from_json(rel.to_json()) == rel


def test_presentation_bundle_contains_plucker():
    bundle = presentation(InvariantContext(4, 2), use_cache=False)
    rels = [Relation.from_json(r) for r in bundle["relations"]]
    plucker = straighten_solve(InvariantContext(4, 2), PLUCKER_LHS)
    assert any(set(r.lhs) == set(PLUCKER_LHS) and r.rhs == plucker.rhs for r in rels)
    assert bundle["orthogonal"]["relations"]["size"] == 3
