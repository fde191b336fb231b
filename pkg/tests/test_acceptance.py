"""Acceptance criteria, one test each.  Every test records a
``CRITERION k: PASS|FAIL`` line, printed in the terminal summary."""
import time
from fractions import Fraction
from itertools import product
from math import comb

import pytest

import conftest
from smt.combinat import EMPTY_PAIR, Pair, doset_axioms_check, lattice_check, tuples
from smt.detvar import (dim_check, expected_dim, hilbert_Dt, independence_by_points,
                        singular_locus_check, straighten_sym)
from smt.dosetalg import dalg_axioms_check, hilbert_report
from smt.invariants import InvariantContext, invariance_suite, lemma_residual
from smt.sl2traces import theta_embed_check, trace_basis_check, transition_report
from smt.straighten import (basis_check, build_catalog, rewrite_agreement_check, verify_shape,
                            weight_law_check, WeightContext)


def record(k, ok, start, budget, info=""):
    took = time.perf_counter() - start
    ok = bool(ok) and took < budget
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} ({took:.1f}s, budget {budget}s) {info}"
    conftest.ACCEPTANCE_LINES.append(line.rstrip())
    return ok


def test_criterion_01_worked_example():
    start = time.perf_counter()
    rel = straighten_sym([Pair((2,), (1,)), Pair((2,), (1,))], 2, 3)
    want = {(Pair((2,), (2,)), Pair((1,), (1,))): Fraction(1),
            (EMPTY_PAIR, Pair((1, 2), (1, 2))): Fraction(-1)}
    got = {w: c for c, w in rel.rhs}
    assert record(1, got == want, start, 1, f"rhs={rel.rhs}")


def test_criterion_02_u_products_are_minors():
    start = time.perf_counter()
    bad = []
    for n, m in [(1, 3), (2, 4), (3, 5)]:
        ctx = InvariantContext(m, n, "identity")
        bad += [(n, m, I, J) for I in tuples(n, m) for J in tuples(n, m)
                if not lemma_residual(ctx, I, J).is_zero()]
    assert record(2, not bad, start, 30, f"nonzero residuals={len(bad)}")


def test_criterion_03_basis_and_spanning():
    start = time.perf_counter()
    rep = basis_check(InvariantContext(4, 2), 3)
    d = rep.details
    assert record(3, rep, start, 300, f"multidegrees={d['multidegrees']} "
                  f"standard={d['standard_words']} nonstandard={d['nonstandard_monomials']}"), \
        rep.violations[:5]


def test_criterion_04_hilbert_oracle():
    start = time.perf_counter()
    rows = []
    for d in range(6):
        cone = comb(d + 2, 2) - (comb(d, 2) if d >= 2 else 0)
        count = hilbert_Dt(2, 2, d)
        rank = independence_by_points(2, 2, d, 3 * count + 2, seed=d).details["rank"]
        rows.append((d, count, cone, rank))
    ok = all(c == 2 * d + 1 == cone == r for d, c, cone, r in rows)
    assert record(4, ok, start, 10, f"(d,count,cone,rank)={rows}")


def test_criterion_05_dimension_formula():
    start = time.perf_counter()
    failed = [(m, t) for m in range(1, 5) for t in range(1, m + 2)
              if not dim_check(m, t, seed=10 * m + t)]
    dims = {(m, t): expected_dim(m, t) for m, t in [(3, 2), (4, 3)]}
    assert record(5, not failed, start, 30, f"failed={failed} sample dims={dims}")


def test_criterion_06_singular_locus():
    start = time.perf_counter()
    reps = {(m, t): singular_locus_check(m, t, seed=m + t)
            for m in range(2, 4) for t in range(2, m + 1)}
    ranks = {k: (r.details["rank_at_rank_t_minus_1"], r.details["rank_at_rank_t_minus_2"])
             for k, r in reps.items()}
    assert record(6, all(reps.values()), start, 30, f"ranks={ranks}")


def test_criterion_07_shape_constraints():
    start = time.perf_counter()
    counts, bad = {}, []
    for m in (3, 4):
        cat = build_catalog(InvariantContext(m, 2))
        counts[(2, m)] = len(cat)
        bad += [r.lhs for r in cat if not verify_shape(r)]
    assert record(7, not bad, start, 120, f"relations={counts} failing={len(bad)}")


def test_criterion_08_weight_law_and_rewriting():
    start = time.perf_counter()
    ctx = InvariantContext(4, 2)
    cat = build_catalog(ctx)
    law = weight_law_check(ctx, cat, WeightContext(4, 2))
    agree = rewrite_agreement_check(ctx, cat, seed=2024, count=100, max_degree=4)
    ok = law.passed and agree.passed
    assert record(8, ok, start, 300, f"radix={law.details['radix']} terms={law.details['terms']} "
                  f"rewrite words={agree.details['count']}"), law.violations + agree.violations


def test_criterion_09_doset_and_lattice():
    start = time.perf_counter()
    cases = [(m, n) for n in range(1, 4) for m in range(n, 5)]
    failed = [(m, n) for m, n in cases if not (doset_axioms_check(m, n) and lattice_check(m, n))]
    assert record(9, not failed, start, 60, f"cases={len(cases)} failed={failed}")


def test_criterion_10_doset_algebra():
    start = time.perf_counter()
    reps = [dalg_axioms_check(m, 2) for m in (3, 4)] + [hilbert_report(m, 2, 3) for m in (3, 4)]
    rows = {m: [r["R(D)"] for r in rep.details["rows"]] for m, rep in zip((3, 4), reps[2:])}
    assert record(10, all(reps), start, 120, f"R(D)=K{{D}} counts={rows}")


# The degree-(1,1,0) trace monomials of mixed type collide under omega
# (126 standard monomials, 110 distinct images at m=4), so this criterion
# cannot hold as stated; it is run unweakened.
@pytest.mark.xfail(strict=True, reason="omega is not injective on the (1,1,0) monomials")
def test_criterion_11_sl2_traces():
    start = time.perf_counter()
    triples = [(r, s, t) for r, s, t in product(range(3), repeat=3) if r + s + t <= 2]
    trans = {x: transition_report(4, x) for x in triples}
    basis = {x: trace_basis_check(4, x, seed=11) for x in triples}
    theta = theta_embed_check(3)
    failed = sorted({x for x in triples if not (trans[x] and basis[x])})
    info = f"failed triples={failed}"
    for x in failed:
        info += f" {x}: count={basis[x].details['count']} rank={basis[x].details['rank']}"
    assert record(11, not failed and theta.passed, start, 180, info)


def test_criterion_12_invariance():
    start = time.perf_counter()
    reps = {(n, m): invariance_suite(InvariantContext(m, n), seed=12, samples=20, max_degree=2)
            for n, m in [(2, 4), (3, 4)]}
    info = " ".join(f"(n,m)={k}: det signs {sorted(set(r.details['det_signs']))}"
                    for k, r in reps.items())
    assert record(12, all(reps.values()), start, 120, info)
