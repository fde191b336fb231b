"""Straightening in the algebra S generated by the Gram minors p(A, B),
(A, B) in H_p, and the row determinants u(I), I in H_u.

Any word is expanded to a polynomial in the u_{ik} and solved exactly
against the standard words of the same block multidegree.  Degree-2
relations are cataloged (and cached on disk); the rewrite engine replays
them on longer words and checks that the weight strictly increases.
"""
from __future__ import annotations

import json
import os
import random
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .combinat import (ONE, Doset, One, Pair, UIndex, block_multidegree, canonical, doset_cmp,
                       enumerate_standard, is_standard, monomials_of_length, shape_order,
                       tuple_ge, tuples, word_from_json, word_key, word_to_json)
from .errors import IndependenceViolation, TheoremViolation
from .exactalg import SparsePoly, SpanSolver, q_str
from .invariants import InvariantContext, symbol_poly
from .report import Report

# ---------------------------------------------------------------------------
# relations


@dataclass
class Relation:
    """lhs = sum of c * word over rhs; rhs words are standard."""

    lhs: tuple
    rhs: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"lhs": word_to_json(self.lhs),
                "rhs": [{"c": q_str(c), "w": word_to_json(w)} for c, w in self.rhs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Relation":
        return cls(word_from_json(obj["lhs"]),
                   [(Fraction(t["c"]), word_from_json(t["w"])) for t in obj["rhs"]])

    def coefficient(self, word) -> Fraction:
        return sum((c for c, w in self.rhs if w == tuple(word)), Fraction(0))

    def __repr__(self):
        terms = " + ".join(f"({c})*{list(w)}" for c, w in self.rhs) or "0"
        return f"{list(self.lhs)} = {terms}"


def sort_terms(terms: Iterable[tuple]) -> list[tuple]:
    return sorted(((Fraction(c), tuple(w)) for c, w in terms if c), key=lambda t: word_key(t[1]))


# ---------------------------------------------------------------------------
# expansion


def expand(ctx: InvariantContext, word: Sequence) -> SparsePoly:
    out = SparsePoly.const(ctx.vars, 1)
    for d in word:
        out = out * symbol_poly(ctx, d)
    return out


def check_word(ctx: InvariantContext, word: Sequence):
    ctx.require_u()
    Doset(ctx.m, ctx.n).check_word(word)


class _Basis:
    """Standard words of one block multidegree and their span solver."""

    def __init__(self, ctx: InvariantContext, md: tuple):
        self.md = md
        self.words = enumerate_standard(ctx.m, ctx.n, "s", multidegree=md)
        self.solver = SpanSolver([expand(ctx, w) for w in self.words])
        if not self.solver.independent:
            raise IndependenceViolation(
                f"standard words of multidegree {md} are dependent: "
                f"rank {self.solver.rank} < {len(self.words)}")

    def solve(self, poly: SparsePoly, label="") -> list[Fraction]:
        x = self.solver.solve(poly)
        if x is None:
            raise TheoremViolation(f"{label} is not in the span of standard words "
                                   f"of multidegree {self.md}")
        return x


@lru_cache(maxsize=None)
def standard_basis(ctx: InvariantContext, md: tuple) -> _Basis:
    return _Basis(ctx, tuple(md))


def straighten_solve(ctx: InvariantContext, word: Sequence) -> Relation:
    """The unique expression of ``word`` in standard words of its multidegree."""
    word = tuple(word)
    check_word(ctx, word)
    if is_standard(word):
        return Relation(word, [(Fraction(1), word)])
    basis = standard_basis(ctx, block_multidegree(word, ctx.m))
    x = basis.solve(expand(ctx, word), label=repr(list(word)))
    return Relation(word, sort_terms(zip(x, basis.words)))


def residual(ctx: InvariantContext, rel: Relation) -> SparsePoly:
    out = expand(ctx, rel.lhs)
    for c, w in rel.rhs:
        out = out - expand(ctx, w).scale(c)
    return out


# ---------------------------------------------------------------------------
# the degree-2 catalog


def nonstandard_pairs(gens: Sequence) -> list[tuple]:
    """Degree-2 monomials admitting no standard arrangement, in canonical order."""
    gens = sorted(gens, key=word_key_single, reverse=False)
    out = []
    for i, x in enumerate(gens):
        for y in gens[i:]:
            if not doset_cmp(x, y) and not doset_cmp(y, x):
                out.append(canonical((x, y)))
    return sorted(set(out), key=word_key)


def word_key_single(d):
    return word_key((d,))


CACHE_ENV = "SMT_CACHE_DIR"


def cache_dir() -> Path:
    base = os.environ.get(CACHE_ENV) or os.path.join(
        os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache")), "smt")
    return Path(base)


def _cache_path(family: str, ctx_key: str) -> Path:
    return cache_dir() / f"catalog-{family}-{ctx_key}-v{__version__}.json"


def atomic_write_json(path: Path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(obj, fh, sort_keys=True)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def catalog_key(ctx: InvariantContext) -> str:
    return f"n{ctx.n}-m{ctx.m}-{ctx.form}"


def build_catalog(ctx: InvariantContext) -> list[Relation]:
    return [straighten_solve(ctx, w) for w in nonstandard_pairs(Doset(ctx.m, ctx.n).H)]


def load_catalog(ctx: InvariantContext, use_cache: bool = True) -> list[Relation]:
    """Degree-2 catalog for S, read from / written to the cache directory."""
    if not use_cache:
        return build_catalog(ctx)
    path = _cache_path("s", catalog_key(ctx))
    if path.exists():
        with open(path) as fh:
            data = json.load(fh)
        return [Relation.from_json(r) for r in data["relations"]]
    cat = build_catalog(ctx)
    atomic_write_json(path, {"n": ctx.n, "m": ctx.m, "form": ctx.form,
                             "relations": [r.to_json() for r in cat]})
    return cat


def catalog_path(ctx: InvariantContext) -> Path:
    return _cache_path("s", catalog_key(ctx))


# ---------------------------------------------------------------------------
# weight


@dataclass(frozen=True)
class WeightContext:
    """Digit encoding of words: radix N, each tuple padded to n+1 digits
    (pad digit, then a final 1), One contributes 2n+2 pad digits.

    The defaults follow the classical encoding (N = m+1, pad digit m).  It
    is not injective: (1) and (1, m) both pad to (1, m, .., m, 1).  The
    ``strict`` variant pads with m+1 in radix m+2, which is injective and
    order-preserving on tuples.
    """

    m: int
    n: int
    N: int | None = None
    pad: int | None = None

    def __post_init__(self):
        if self.N is None:
            object.__setattr__(self, "N", self.m + 1)
        if self.pad is None:
            object.__setattr__(self, "pad", self.m)
        if self.N <= max(self.m, self.pad):
            raise ValueError("radix must exceed every digit")

    @classmethod
    def strict(cls, m: int, n: int) -> "WeightContext":
        return cls(m, n, N=m + 2, pad=m + 1)

    def tuple_digits(self, A: Sequence[int]) -> list[int]:
        A = list(A)
        if len(A) > self.n:
            raise ValueError(f"tuple {A} longer than n={self.n}")
        return A + [self.pad] * (self.n - len(A)) + [1]

    def digits(self, word: Sequence) -> list[int]:
        """All pair tuples (A, B in order), then all u-tuples; One first."""
        ones = [d for d in word if isinstance(d, One)]
        pairs = [d for d in word if isinstance(d, Pair)]
        us = [d for d in word if isinstance(d, UIndex)]
        out = [self.pad] * ((2 * self.n + 2) * len(ones))
        for d in pairs:
            out += self.tuple_digits(d.A) + self.tuple_digits(d.B)
        for d in us:
            out += self.tuple_digits(d.I)
        return out

    def value(self, digits: Sequence[int]) -> int:
        v = 0
        for x in digits:
            v = v * self.N + x
        return v


def weight(word: Sequence, wctx: WeightContext) -> int:
    return wctx.value(wctx.digits(word))


def homogeneous_digits(word: Sequence, wctx: WeightContext, width: int) -> list[int]:
    """Digits left-padded with One-digits to ``width`` (the x(1) homogenization)."""
    d = wctx.digits(word)
    if len(d) > width:
        raise ValueError(f"word has {len(d)} digits, more than the width {width}")
    return [wctx.pad] * (width - len(d)) + d


def homogeneous_weight(word: Sequence, wctx: WeightContext, width: int) -> int:
    return wctx.value(homogeneous_digits(word, wctx, width))


def max_weight_word(m: int, n: int, r: int, s: int) -> tuple:
    return (Pair((m,), (m,)),) * r + (UIndex(tuple(range(m + 1 - n, m + 1))),) * s


def weight_law_check(ctx: InvariantContext, catalog: Sequence[Relation],
                     wctx: WeightContext | None = None) -> Report:
    """Every rhs word outweighs the lhs; lhs measured at its heaviest
    arrangement, rhs homogenized to the lhs digit width."""
    wctx = wctx or WeightContext(ctx.m, ctx.n)
    rep = Report("weight_law", True, {"n": ctx.n, "m": ctx.m, "radix": wctx.N, "pad": wctx.pad})
    literal_failures = 0
    for rel in catalog:
        arrangements = [rel.lhs, tuple(reversed(rel.lhs))]
        width = len(wctx.digits(rel.lhs))
        lhs_w = max(homogeneous_weight(a, wctx, width) for a in arrangements)
        lhs_lit = max(weight(a, wctx) for a in arrangements)
        for c, w in rel.rhs:
            if weight(w, wctx) <= lhs_lit:
                literal_failures += 1
            if len(wctx.digits(w)) > width or homogeneous_weight(w, wctx, width) <= lhs_w:
                rep.fail("weight", f"{list(w)} does not outweigh {list(rel.lhs)}")
    rep.details["relations"] = len(catalog)
    rep.details["terms"] = sum(len(r.rhs) for r in catalog)
    rep.details["literal_weight_failures"] = literal_failures
    return rep


# ---------------------------------------------------------------------------
# rewriting


def _catalog_index(catalog: Iterable[Relation]) -> dict:
    return {canonical(r.lhs): r for r in catalog}


def straighten_rewrite(ctx: InvariantContext, word: Sequence, catalog: Sequence[Relation],
                       wctx: WeightContext | None = None, max_steps: int = 100000) -> Relation:
    """Rewrite with the degree-2 catalog: leftmost violating adjacent pair
    first; a pair whose reverse is standard is swapped, otherwise the
    catalog relation is substituted.  Every produced word must outweigh
    the word it came from."""
    word = tuple(word)
    check_word(ctx, word)
    wctx = wctx or WeightContext.strict(ctx.m, ctx.n)
    index = _catalog_index(catalog)
    start = shape_order(word)
    width = len(wctx.digits(start))
    done: dict = {}
    todo: dict = {start: Fraction(1)}
    steps = 0
    while todo:
        w, c = todo.popitem()
        if not c:
            continue
        pos = next((i for i in range(len(w) - 1) if not doset_cmp(w[i], w[i + 1])), None)
        if pos is None:
            done[w] = done.get(w, Fraction(0)) + c
            continue
        steps += 1
        if steps > max_steps:
            raise TheoremViolation(f"rewriting {list(word)} exceeded {max_steps} steps")
        x, y = w[pos], w[pos + 1]
        if doset_cmp(y, x):
            images = [(Fraction(1), (y, x))]
        else:
            rel = index.get(canonical((x, y)))
            if rel is None:
                raise TheoremViolation(f"no catalog relation for {[x, y]}")
            images = rel.rhs
        w_weight = homogeneous_weight(w, wctx, width)
        for coef, img in images:
            new = shape_order(w[:pos] + tuple(img) + w[pos + 2:])
            if len(wctx.digits(new)) > width or homogeneous_weight(new, wctx, width) <= w_weight:
                raise TheoremViolation(
                    f"weight did not increase rewriting {list(w)} into {list(new)}")
            todo[new] = todo.get(new, Fraction(0)) + c * coef
    return Relation(word, sort_terms((c, w) for w, c in done.items()))


# ---------------------------------------------------------------------------
# shape constraints


def _strict_ge(X, Y) -> bool:
    return tuple_ge(X, Y) and tuple(X) != tuple(Y)


def as_pair_word(word: Sequence) -> list[tuple]:
    """Read a word as a chain of (row, column) tuple pairs: consecutive
    u-symbols combine into one pair (u(C)u(C') = +-p(C, C')), One becomes
    (empty, empty)."""
    out = []
    us = []
    for d in word:
        if isinstance(d, One):
            out.append(((), ()))
        elif isinstance(d, Pair):
            out.append((d.A, d.B))
        else:
            us.append(d.I)
    if len(us) % 2:
        raise ValueError("odd number of u-symbols")
    out += [(us[i], us[i + 1]) for i in range(0, len(us), 2)]
    return out


def _reshuffle_chain(tuples4: Sequence[tuple]) -> tuple | None:
    """A chain arrangement of four tuples, if any (sorted by the linear
    extension of tuple_ge, then tested)."""
    from .combinat import tuple_key
    srt = sorted(tuples4, key=tuple_key, reverse=True)
    if all(tuple_ge(a, b) for a, b in zip(srt, srt[1:])):
        return tuple(srt)
    return None


def _check_pp(rep: Report, A: tuple, B: tuple, rhs_pairs: list, size_bound: int):
    """Clauses for p(A1, A2) p(B1, B2) = sum a_i p(C_i1, C_i2) p(D_i1, D_i2)."""
    (A1, A2), (B1, B2) = A, B
    for k, (coef, pw) in enumerate(rhs_pairs):
        if len(pw) != 2:
            rep.fail("pp.length", f"term {k}: expected two pairs, got {pw}")
            continue
        (C1, C2), (D1, D2) = pw
        for T in (C1, C2, D1, D2):
            if len(T) > size_bound:
                rep.fail("pp.size", f"term {k}: tuple {T} longer than {size_bound}")
        if not (tuple_ge(C1, C2) and tuple_ge(C2, D1) and tuple_ge(D1, D2)):
            rep.fail("pp.chain", f"term {k}: {pw} is not a chain")
        if not (tuple_ge(C1, A1) and tuple_ge(C1, B1)):
            rep.fail("pp.1", f"term {k}: {C1} is not >= both {A1}, {B1}")
        if C1 == A1 and not _strict_ge(C2, A2):
            rep.fail("pp.1-strict", f"term {k}: C1 = A1 but {C2} is not > {A2}")
        if C1 == B1 and not _strict_ge(C2, B2):
            rep.fail("pp.1-strict", f"term {k}: C1 = B1 but {C2} is not > {B2}")
        if not (tuple_ge(A2, D2) and tuple_ge(B2, D2)):
            rep.fail("pp.2", f"term {k}: {D2} is not <= both {A2}, {B2}")
        if D2 == A2 and not _strict_ge(A1, D1):
            rep.fail("pp.2-strict", f"term {k}: D2 = A2 but {D1} is not < {A1}")
        if D2 == B2 and not _strict_ge(B1, D1):
            rep.fail("pp.2-strict", f"term {k}: D2 = B2 but {D1} is not < {B1}")
    chain = _reshuffle_chain([A1, A2, B1, B2])
    rep.details["reshuffle"] = [list(t) for t in chain] if chain else None
    if chain is not None:
        target = ((chain[0], chain[1]), (chain[2], chain[3]))
        coefs = [c for c, pw in rhs_pairs if tuple(pw) == target]
        if len(coefs) != 1 or abs(coefs[0]) != 1:
            rep.fail("pp.3", f"reshuffled chain {target} has coefficient "
                     f"{[str(c) for c in coefs] or 0}, expected +-1")


def verify_shape(rel: Relation, t: int | None = None) -> Report:
    """Shape clauses of a degree-2 relation (u.u, p.p or p.u case).

    For the S family, rhs words are first read as chains of two pairs: two
    u-symbols form one pair and a missing pair is (empty, empty).  ``t``
    selects the D_t size bound t-1; for S the bound is n (read from lhs).
    """
    lhs = tuple(rel.lhs)
    rep = Report("verify_shape", True, {"lhs": word_to_json(lhs)})
    if len(lhs) != 2:
        rep.fail("degree", "lhs must have degree 2")
        return rep
    for c, w in rel.rhs:
        if not is_standard(w):
            rep.fail("standard", f"rhs word {list(w)} is not standard")
    x, y = lhs
    kinds = {type(x), type(y)}
    if kinds == {UIndex}:
        rep.details["case"] = "uu"
        I, I2 = x.I, y.I
        for k, (c, w) in enumerate(rel.rhs):
            if len(w) != 2 or not all(isinstance(d, UIndex) for d in w):
                rep.fail("uu.form", f"term {k}: {list(w)} is not a product of two u's")
                continue
            Ir, Ir2 = w[0].I, w[1].I
            if not (_strict_ge(Ir, I) and _strict_ge(Ir, I2)):
                rep.fail("uu.1", f"term {k}: {Ir} is not > both {I}, {I2}")
            if not (tuple_ge(I, Ir2) and tuple_ge(I2, Ir2)):
                rep.fail("uu.2", f"term {k}: {Ir2} is not <= both {I}, {I2}")
        return rep
    if kinds == {Pair, UIndex}:
        rep.details["case"] = "pu"
        p, u = (x, y) if isinstance(x, Pair) else (y, x)
        for k, (c, w) in enumerate(rel.rhs):
            if len(w) != 2 or not (isinstance(w[0], Pair) and isinstance(w[1], UIndex)):
                rep.fail("pu.form", f"term {k}: {list(w)} is not p(A_t,B_t) u(I_t)")
                continue
            At, Bt, It = w[0].A, w[0].B, w[1].I
            if not tuple_ge(Bt, It):
                rep.fail("pu.chain", f"term {k}: {Bt} is not >= {It}")
            if not (tuple_ge(At, p.A) and tuple_ge(At, u.I)):
                rep.fail("pu.1", f"term {k}: {At} is not >= both {p.A}, {u.I}")
            if At == p.A and not _strict_ge(Bt, p.B):
                rep.fail("pu.1-strict", f"term {k}: A_t = A but {Bt} is not > {p.B}")
        return rep
    if Pair in kinds and One not in kinds and UIndex not in kinds:
        rep.details["case"] = "pp"
        bound = t - 1 if t is not None else None
        rhs_pairs = []
        for k, (c, w) in enumerate(rel.rhs):
            try:
                pw = as_pair_word(w)
            except ValueError as exc:
                rep.fail("pp.form", f"term {k}: {exc}")
                continue
            pw = [((), ())] * (2 - len(pw)) + pw
            rhs_pairs.append((c, [tuple(p) for p in pw]))
        if bound is None:
            bound = max((len(T) for _, pw in rhs_pairs for pr in pw for T in pr), default=0)
            bound = max(bound, len(x.A), len(y.A))
        _check_pp(rep, (x.A, x.B), (y.A, y.B), rhs_pairs, bound)
        return rep
    rep.fail("case", f"unsupported lhs {list(lhs)}")
    return rep


def sign_parity_check(rel: Relation) -> bool:
    """The number of u-symbols mod 2 is the same on both sides."""
    par = sum(isinstance(d, UIndex) for d in rel.lhs) % 2
    return all(sum(isinstance(d, UIndex) for d in w) % 2 == par for _, w in rel.rhs)


# ---------------------------------------------------------------------------
# presentations


def on_presentation(ctx: InvariantContext) -> dict:
    """O_n invariants: generators phi_ij (i <= j) modulo the (n+1)-minors of
    the symmetric m x m matrix (phi_ij)."""
    m, n = ctx.m, ctx.n
    gens = [[i, j] for i in range(1, m + 1) for j in range(i, m + 1)]
    rels = []
    if n + 1 <= m:
        ts = tuples(n + 1, m)
        # p(A, B) = p(B, A): one entry per unordered pair
        rels = [{"A": list(A), "B": list(B)} for k, A in enumerate(ts) for B in ts[k:]]
    return {"generators": [{"i": i, "j": j} for i, j in gens],
            "relations": {"kind": "symmetric minors", "size": n + 1, "minors": rels}}


def presentation(ctx: InvariantContext, use_cache: bool = True) -> dict:
    """Generators H_p and H_u and the full degree-2 catalog, plus the O_n
    sub-bundle."""
    ctx.require_u()
    D = Doset(ctx.m, ctx.n)
    catalog = load_catalog(ctx, use_cache)
    return {
        "kind": "presentation",
        "family": "s",
        "n": ctx.n,
        "m": ctx.m,
        "form": ctx.form,
        "generators": word_to_json(D.H),
        "relations": [r.to_json() for r in catalog],
        "orthogonal": on_presentation(ctx),
    }



# ---------------------------------------------------------------------------
# suite checks


def basis_check(ctx: InvariantContext, max_degree: int) -> Report:
    """For every block multidegree reached by words of length <= max_degree:
    the standard words of that multidegree have independent expansions, and
    every non-standard monomial straightens with zero residual."""
    ctx.require_u()
    gens = Doset(ctx.m, ctx.n).H
    groups: dict = {}
    for L in range(1, max_degree + 1):
        for mono in monomials_of_length(gens, L):
            groups.setdefault(block_multidegree(mono, ctx.m), []).append(mono)
    rep = Report("basis_spanning", True, {"n": ctx.n, "m": ctx.m, "form": ctx.form,
                                          "max_degree": max_degree,
                                          "multidegrees": len(groups)})
    standard = nonstandard = 0
    for md in sorted(groups):
        words = enumerate_standard(ctx.m, ctx.n, "s", multidegree=md)
        solver = SpanSolver([expand(ctx, w) for w in words])
        standard += len(words)
        if solver.rank != len(words):
            rep.fail("independence", f"multidegree {md}: rank {solver.rank} < {len(words)}")
            continue
        for mono in groups[md]:
            if is_standard(mono):
                continue
            nonstandard += 1
            try:
                rel = straighten_solve(ctx, mono)
            except (TheoremViolation, IndependenceViolation) as exc:
                rep.fail("spanning", str(exc))
                continue
            if residual(ctx, rel):
                rep.fail("residual", f"{list(mono)} straightens with a nonzero residual")
    rep.details.update(standard_words=standard, nonstandard_monomials=nonstandard)
    return rep


def catalog_integrity_check(ctx: InvariantContext, catalog: Sequence[Relation]) -> Report:
    """A (possibly cached) catalog covers exactly the non-standard degree-2
    monomials, every rhs word is standard, and every residual is zero."""
    rep = Report("catalog_integrity", True, {"n": ctx.n, "m": ctx.m, "form": ctx.form,
                                             "relations": len(catalog)})
    want = set(nonstandard_pairs(Doset(ctx.m, ctx.n).H))
    have = [canonical(r.lhs) for r in catalog]
    if set(have) != want or len(have) != len(want):
        rep.fail("coverage", f"THEOREM-VIOLATION: catalog lhs set differs from the "
                 f"{len(want)} non-standard degree-2 monomials")
    for rel in catalog:
        if not all(is_standard(w) for c, w in rel.rhs):
            rep.fail("standard", f"THEOREM-VIOLATION: {list(rel.lhs)} has a non-standard rhs word")
            continue
        if residual(ctx, rel):
            rep.fail("residual", f"THEOREM-VIOLATION: {list(rel.lhs)} has a nonzero residual")
    return rep


def random_word(gens: Sequence, rng: random.Random, min_len: int, max_len: int) -> tuple:
    return tuple(rng.choice(gens) for _ in range(rng.randint(min_len, max_len)))


def rewrite_agreement_check(ctx: InvariantContext, catalog: Sequence[Relation], seed: int,
                            count: int = 100, max_degree: int = 4,
                            wctx: WeightContext | None = None) -> Report:
    """The rewrite engine terminates with increasing weight and agrees with
    the solver on seeded random words of length 2..max_degree."""
    rng = random.Random(seed)
    gens = Doset(ctx.m, ctx.n).H
    wctx = wctx or WeightContext.strict(ctx.m, ctx.n)
    rep = Report("rewrite_agreement", True, {"n": ctx.n, "m": ctx.m, "form": ctx.form,
                                             "count": count, "max_degree": max_degree,
                                             "radix": wctx.N, "pad": wctx.pad}, seed=seed)
    for _ in range(count):
        w = random_word(gens, rng, 2, max_degree)
        try:
            a = straighten_rewrite(ctx, w, catalog, wctx)
        except TheoremViolation as exc:
            rep.fail("rewrite", str(exc))
            continue
        b = straighten_solve(ctx, w)
        if sorted(a.rhs, key=lambda t: word_key(t[1])) != sorted(b.rhs, key=lambda t: word_key(t[1])):
            rep.fail("agreement", f"rewrite and solve differ on {list(w)}")
    return rep


__all__ = ["Relation", "expand", "straighten_solve", "straighten_rewrite", "load_catalog",
           "build_catalog", "WeightContext", "weight", "homogeneous_weight", "verify_shape",
           "presentation", "residual", "weight_law_check", "basis_check",
           "catalog_integrity_check", "rewrite_agreement_check", "ONE"]
