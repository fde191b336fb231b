"""Symmetric determinantal varieties D_t = {Y in Sym M_m : rank Y < t}.

Functions on D_t (t <= m) are handled through the parametrization
Y = B B^T with B a generic m x (t-1) matrix: two polynomials in the z_ij
agree on D_t iff their pullbacks agree, and pullbacks have rational
coefficients, so straightening stays exact without any ideal arithmetic.
For t = m+1 the z_ij themselves are used.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinat import (Pair, block_multidegree, doset_cmp, dt_pairs,
                       enumerate_standard, is_standard, padded_dt_words, tuple_ge, tuples,
                       word_key, word_to_json)
from .errors import IndependenceViolation, SizeBoundError, TheoremViolation
from .exactalg import SparsePoly, SpanSolver, det_bareiss, det_symbolic, exact_rank
from .report import Report
from .straighten import (Relation, _cache_path, atomic_write_json, sort_terms,
                         verify_shape)


@dataclass(frozen=True)
class SymContext:
    m: int
    t: int

    def __post_init__(self):
        if self.m < 1 or not 1 <= self.t <= self.m + 1:
            raise ValueError(f"need m >= 1 and 1 <= t <= m+1 (got m={self.m}, t={self.t})")

    @property
    def z_vars(self) -> tuple:
        return tuple(f"z{i},{j}" for i in range(1, self.m + 1) for j in range(i, self.m + 1))

    def z_index(self, i: int, j: int) -> int:
        i, j = min(i, j), max(i, j)
        m = self.m
        return (i - 1) * m - (i - 1) * (i - 2) // 2 + (j - i)

    def z(self, i: int, j: int) -> SparsePoly:
        return SparsePoly.var(self.z_vars, self.z_index(i, j))

    @property
    def full(self) -> bool:
        return self.t == self.m + 1

    @property
    def rank(self) -> int:
        return self.t - 1

    @property
    def b_vars(self) -> tuple:
        return tuple(f"b{i},{l}" for i in range(1, self.m + 1) for l in range(1, self.t))

    def coords(self) -> tuple:
        """Universe in which functions on D_t are compared."""
        return self.z_vars if self.full else self.b_vars

    def entry(self, i: int, j: int) -> SparsePoly:
        """(i, j) entry of Y as a function on D_t."""
        if self.full:
            return self.z(i, j)
        k = self.t - 1
        out = SparsePoly(self.b_vars)
        for l in range(k):
            out = out + (SparsePoly.var(self.b_vars, (i - 1) * k + l)
                         * SparsePoly.var(self.b_vars, (j - 1) * k + l))
        return out


def _check_minor(m: int, A, B):
    if len(A) != len(B):
        raise ValueError("row and column tuples differ in length")
    if len(A) > m:
        raise SizeBoundError(f"minor of size {len(A)} exceeds m={m}")
    for i in tuple(A) + tuple(B):
        if not 1 <= i <= m:
            raise ValueError(f"index {i} outside [1, {m}]")


@lru_cache(maxsize=None)
def sym_minor(m: int, A: tuple, B: tuple) -> SparsePoly:
    """Minor of the generic symmetric matrix (z_ij) with rows A, columns B."""
    A, B = tuple(A), tuple(B)
    _check_minor(m, A, B)
    ctx = SymContext(m, m + 1)
    if not A:
        return SparsePoly.const(ctx.z_vars, 1)
    return det_symbolic([[ctx.z(a, b) for b in B] for a in A])


@lru_cache(maxsize=None)
def minor_on(ctx: SymContext, A: tuple, B: tuple) -> SparsePoly:
    """p(A, B) restricted to D_t (zero for |A| >= t)."""
    A, B = tuple(A), tuple(B)
    _check_minor(ctx.m, A, B)
    if not A:
        return SparsePoly.const(ctx.coords(), 1)
    if len(A) > ctx.rank:
        return SparsePoly(ctx.coords())
    return det_symbolic([[ctx.entry(a, b) for b in B] for a in A])


def word_on(ctx: SymContext, word: Sequence[Pair]) -> SparsePoly:
    out = SparsePoly.const(ctx.coords(), 1)
    for d in word:
        out = out * minor_on(ctx, d.A, d.B)
    return out


def check_dt_word(ctx: SymContext, word: Sequence):
    for k, d in enumerate(word):
        if not isinstance(d, Pair):
            raise ValueError(f"word position {k}: only minors p(A,B) are allowed here")
        if len(d.A) > ctx.t - 1:
            raise ValueError(f"word position {k}: {d!r} has size > t-1 = {ctx.t - 1}")
        _check_minor(ctx.m, d.A, d.B)
        if not tuple_ge(d.A, d.B) or tuple(sorted(set(d.A))) != d.A or tuple(sorted(set(d.B))) != d.B:
            raise ValueError(f"word position {k}: {d!r} is not in H_(t-1)")


@lru_cache(maxsize=None)
def _dt_basis(ctx: SymContext, length: int, md: tuple):
    words = padded_dt_words(ctx.m, ctx.t, length, md)
    solver = SpanSolver([word_on(ctx, w) for w in words])
    if not solver.independent:
        raise IndependenceViolation(
            f"standard words of length {length}, multidegree {md} are dependent on D_{ctx.t}")
    return words, solver


def straighten_sym(word: Sequence[Pair], m: int, t: int) -> Relation:
    """Standard expression of a word in minors on D_t.  rhs words have the
    same length as the lhs, padded in front with p(empty, empty)."""
    ctx = SymContext(m, t)
    word = tuple(word)
    check_dt_word(ctx, word)
    if is_standard(word):
        return Relation(word, [(Fraction(1), word)])
    words, solver = _dt_basis(ctx, len(word), block_multidegree(word, m))
    x = solver.solve(word_on(ctx, word))
    if x is None:
        raise TheoremViolation(f"{list(word)} is not in the span of standard words on D_{t}")
    return Relation(word, sort_terms(zip(x, words)))


def hilbert_Dt(m: int, t: int, d: int) -> int:
    """Standard words over H_(t-1) of z-degree d (p(A,B) has degree |A|)."""
    return len(enumerate_standard(m, family="dt", t=t, degree=d))


# ---------------------------------------------------------------------------
# random points


def _rand_q(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 4))


def random_factor(m: int, k: int, rng: random.Random) -> list[list[Fraction]]:
    return [[_rand_q(rng) for _ in range(k)] for _ in range(m)]


def gram_of(B: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    m = len(B)
    return [[sum((x * y for x, y in zip(B[i], B[j])), Fraction(0)) for j in range(m)]
            for i in range(m)]


def random_symmetric(m: int, rank: int, rng: random.Random) -> list[list[Fraction]]:
    """Y = B B^T with B of size m x rank; rank = m+? gives unconstrained points."""
    if rank >= m:
        Y = [[Fraction(0)] * m for _ in range(m)]
        for i in range(m):
            for j in range(i, m):
                Y[i][j] = Y[j][i] = _rand_q(rng)
        return Y
    return gram_of(random_factor(m, rank, rng))


def minor_value(Y, A, B) -> Fraction:
    if not A:
        return Fraction(1)
    return det_bareiss([[Y[a - 1][b - 1] for b in B] for a in A])


def independence_by_points(m: int, t: int, d: int, sample_count: int, seed: int) -> Report:
    """Evaluate all standard words of z-degree d at random points of D_t and
    compare the exact rank with the number of words."""
    words = enumerate_standard(m, family="dt", t=t, degree=d)
    rng = random.Random(seed)
    points = [random_symmetric(m, t - 1, rng) for _ in range(sample_count)]
    rows = []
    for Y in points:
        row = []
        for w in words:
            v = Fraction(1)
            for p in w:
                v *= minor_value(Y, p.A, p.B)
            row.append(v)
        rows.append(row)
    r = exact_rank(rows) if words and rows else 0
    rep = Report("independence_by_points", True,
                 {"m": m, "t": t, "d": d, "words": len(words), "points": sample_count,
                  "rank": r}, seed=seed)
    if r != len(words):
        rep.fail("rank", f"INDEPENDENCE-VIOLATION: rank {r} < {len(words)} standard words")
    return rep


def expected_dim(m: int, t: int) -> int:
    return (t - 1) * (2 * m + 2 - t) // 2


def param_jacobian_rank(m: int, t: int, B) -> int:
    """Rank of the differential of B -> B B^T at B (m x (t-1))."""
    k = t - 1
    rows = []
    for i in range(m):
        for j in range(i, m):
            row = []
            for a in range(m):
                for l in range(k):
                    # d(sum_l b_il b_jl)/d b_al
                    v = Fraction(0)
                    if a == i:
                        v += B[j][l]
                    if a == j:
                        v += B[i][l]
                    row.append(v)
            rows.append(row)
    if k == 0:
        return 0
    return exact_rank(rows)


def dim_check(m: int, t: int, seed: int, attempts: int = 3) -> Report:
    if not 1 <= t <= m + 1:
        raise ValueError(f"need 1 <= t <= m+1 (got t={t}, m={m})")
    want = expected_dim(m, t)
    rep = Report("dim_check", True, {"m": m, "t": t, "expected": want}, seed=seed)
    rng = random.Random(seed)
    for attempt in range(attempts):
        r = param_jacobian_rank(m, t, random_factor(m, t - 1, rng))
        rep.details["rank"] = r
        rep.details["attempts"] = attempt + 1
        if r == want:
            return rep
    rep.fail("dimension", f"Jacobian rank {r} != {want} at {attempts} random points")
    return rep


def generator_minors(m: int, size: int) -> list[tuple]:
    ts = tuples(size, m)
    return [(A, B) for k, A in enumerate(ts) for B in ts[k:]]


def minor_jacobian_rank(m: int, t: int, Y) -> int:
    """Rank of the Jacobian (w.r.t. the z_ij) of all t-minors at Y."""
    ctx = SymContext(m, m + 1)
    gens = [sym_minor(m, A, B) for A, B in generator_minors(m, t)]
    point = [Y[i - 1][j - 1] for i in range(1, m + 1) for j in range(i, m + 1)]
    rows = [[g.derivative(k).evaluate(point) for k in range(len(ctx.z_vars))] for g in gens]
    return exact_rank(rows) if rows else 0


def singular_locus_check(m: int, t: int, seed: int) -> Report:
    """Smooth at a random rank-(t-1) point (Jacobian rank = codimension),
    singular at a random rank-(t-2) point (strictly smaller rank)."""
    if not 2 <= t <= m:
        raise ValueError(f"need 2 <= t <= m (got t={t}, m={m})")
    rng = random.Random(seed)
    codim = m * (m + 1) // 2 - expected_dim(m, t)
    smooth = minor_jacobian_rank(m, t, random_symmetric(m, t - 1, rng))
    sing = minor_jacobian_rank(m, t, random_symmetric(m, t - 2, rng))
    rep = Report("singular_locus", True, {"m": m, "t": t, "codim": codim,
                                          "rank_at_rank_t_minus_1": smooth,
                                          "rank_at_rank_t_minus_2": sing}, seed=seed)
    if smooth != codim:
        rep.fail("smooth", f"Jacobian rank {smooth} != codimension {codim} at a rank-{t - 1} point")
    if sing >= codim:
        rep.fail("singular", f"Jacobian rank {sing} not below {codim} at a rank-{t - 2} point")
    return rep


# ---------------------------------------------------------------------------
# presentation


def dt_catalog_lhs(m: int, t: int) -> list[tuple]:
    gens = dt_pairs(m, t, with_empty=False)
    out = set()
    for i, x in enumerate(gens):
        for y in gens[i:]:
            if not doset_cmp(x, y) and not doset_cmp(y, x):
                out.add(tuple(sorted((x, y), key=lambda d: word_key((d,)))))
    return sorted(out, key=word_key)


def build_dt_catalog(m: int, t: int) -> list[Relation]:
    return [straighten_sym(w, m, t) for w in dt_catalog_lhs(m, t)]


def load_dt_catalog(m: int, t: int, use_cache: bool = True) -> list[Relation]:
    if not use_cache:
        return build_dt_catalog(m, t)
    path = _cache_path("dt", f"m{m}-t{t}")
    if path.exists():
        with open(path) as fh:
            return [Relation.from_json(r) for r in json.load(fh)["relations"]]
    cat = build_dt_catalog(m, t)
    atomic_write_json(path, {"m": m, "t": t, "relations": [r.to_json() for r in cat]})
    return cat


def presentation_Dt(m: int, t: int, use_cache: bool = True) -> dict:
    SymContext(m, t)
    return {
        "kind": "presentation",
        "family": "dt",
        "m": m,
        "t": t,
        "generators": word_to_json(dt_pairs(m, t, with_empty=False)),
        "relations": [r.to_json() for r in load_dt_catalog(m, t, use_cache)],
    }


def shape_check_dt(m: int, t: int, catalog: Sequence[Relation] | None = None) -> Report:
    catalog = load_dt_catalog(m, t) if catalog is None else catalog
    rep = Report("shape_dt", True, {"m": m, "t": t, "relations": len(catalog)})
    for rel in catalog:
        sub = verify_shape(rel, t=t)
        for v in sub.violations:
            rep.fail(v["clause"], f"{list(rel.lhs)}: {v['message']}")
    return rep
