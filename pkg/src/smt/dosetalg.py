"""Doset algebras over D = H_p u H_u u {One} inside P x P.

R(D) is the graded algebra of the homogenized straightening relations (One
stands for the formal generator x(1)); K{D} is the discrete doset algebra
where a product is either the reshuffled standard monomial or zero; K{P}
is the Stanley-Reisner algebra of the poset P, whose graded pieces are
counted by multichains.
"""
from __future__ import annotations

from typing import Sequence

from .combinat import (ONE, Doset, One, Pair, UIndex, enumerate_standard, is_standard,
                       poset_elements, poset_ge, realize, tuple_key)
from .invariants import InvariantContext
from .report import Report
from .straighten import Relation, WeightContext, load_catalog, sort_terms


def homogenize(rel: Relation) -> Relation:
    """Pad every rhs word in front with One up to the lhs length; a factor
    p(empty, empty) becomes One."""
    L = len(rel.lhs)
    rhs = []
    for c, w in rel.rhs:
        w = tuple(ONE if isinstance(d, Pair) and not d.A else d for d in w)
        if len(w) > L:
            raise ValueError(f"rhs word {list(w)} is longer than the lhs; "
                             "the relation is not homogeneous in generator degree")
        ones = sum(isinstance(d, One) for d in w)
        rest = tuple(d for d in w if not isinstance(d, One))
        rhs.append((c, (ONE,) * (L - len(w) + ones) + rest))
    return Relation(tuple(rel.lhs), sort_terms(rhs))


def dehomogenize(rel: Relation) -> Relation:
    """Set One to 1."""
    strip = lambda w: tuple(d for d in w if not isinstance(d, One))
    return Relation(strip(rel.lhs), sort_terms((c, strip(w)) for c, w in rel.rhs))


def hilbert_RD(m: int, n: int, d: int) -> int:
    """Standard words of length d over D = H_p u H_u u {One}."""
    return len(enumerate_standard(m, n, "rd", degree=d))


# ---------------------------------------------------------------------------
# counts on the poset side


def _poset_order(m: int, n: int):
    P = poset_elements(m, n)
    P.sort(key=_p_key, reverse=True)
    return P


def _p_key(a):
    return (1,) if isinstance(a, One) else (0, tuple_key(a))


def doset_pairs(m: int, n: int) -> set:
    return {realize(d) for d in Doset(m, n).D}


def discrete_standard_count(m: int, n: int, d: int) -> int:
    """Chains a_1 >= b_1 >= a_2 >= ... >= b_d in P with every (a_i, b_i) in D."""
    P = _poset_order(m, n)
    D = doset_pairs(m, n)
    if d == 0:
        return 1
    # ways[b] = number of admissible chains of i pairs ending at b
    ways = {b: sum(1 for a in P if (a, b) in D) for b in P}
    for _ in range(d - 1):
        ways = {b2: sum(ways[b] for b in P for a in P
                        if poset_ge(b, a) and (a, b2) in D)
                for b2 in P}
    return sum(ways.values())


def hilbert_KP(m: int, n: int, d: int) -> int:
    """Multichains x_1 >= ... >= x_d in P (the Stanley-Reisner monomials)."""
    P = poset_elements(m, n)
    if d == 0:
        return 1
    ways = {x: 1 for x in P}
    for _ in range(d - 1):
        ways = {y: sum(ways[x] for x in P if poset_ge(x, y)) for y in P}
    return sum(ways.values())


# ---------------------------------------------------------------------------
# the discrete doset algebra


def symbol_of(a, b, n: int):
    if isinstance(a, One) or isinstance(b, One):
        return ONE if isinstance(a, One) and isinstance(b, One) else None
    if a == b and len(a) == n:
        return UIndex(a)
    if len(a) >= n:
        return None
    return Pair(a, b)


def reshuffle(elements: Sequence, m: int, n: int):
    """Pair 2r poset elements into a standard word if some ordering is a
    chain with consecutive pairs in D, else None.

    Search order: sort descending by a fixed linear extension of P; a chain
    arrangement, if any, is this one (up to equal elements).
    """
    srt = sorted(elements, key=_p_key, reverse=True)
    if not all(poset_ge(a, b) for a, b in zip(srt, srt[1:])):
        return None
    D = doset_pairs(m, n)
    word = []
    for a, b in zip(srt[0::2], srt[1::2]):
        if (a, b) not in D:
            return None
        d = symbol_of(a, b, n)
        if d is None:
            return None
        word.append(d)
    return tuple(word)


def discrete_mul(w1: Sequence, w2: Sequence, m: int, n: int):
    """Product in K{D}: the reshuffled standard word, or None for zero."""
    elements = []
    for d in tuple(w1) + tuple(w2):
        a, b = realize(d)
        elements += [a, b]
    return reshuffle(elements, m, n)


# ---------------------------------------------------------------------------
# doset algebra with straightening law, degree 2 clauses


def _block_digits(a, wctx: WeightContext) -> list[int]:
    if isinstance(a, One):
        return [wctx.pad] * (wctx.n + 1)
    return wctx.tuple_digits(a)


def tuple_string(word: Sequence) -> list:
    """Tuples of a word in weight order: One gives the element 1 twice, a
    pair gives A and B, a u-symbol gives I once."""
    out = []
    for d in word:
        if isinstance(d, One):
            out += [ONE, ONE]
        elif isinstance(d, Pair):
            out += [d.A, d.B]
    out += [d.I for d in word if isinstance(d, UIndex)]
    return out


def flat_digits(blocks: Sequence, wctx: WeightContext, width: int | None = None) -> list[int]:
    """Concatenated block digits, left-padded with One-digits to ``width``."""
    out = []
    for a in blocks:
        out += _block_digits(a, wctx)
    if width is not None:
        if len(out) > width:
            raise ValueError("tuple string wider than the lhs")
        out = [wctx.pad] * (width - len(out)) + out
    return out


def realized_elements(word: Sequence) -> list:
    out = []
    for d in word:
        out += list(realize(d))
    return out


def dalg_relation_check(rel: Relation, m: int, n: int, wctx: WeightContext | None = None,
                        rep: Report | None = None) -> Report:
    """Straightening-law clauses for one homogenized relation.

    lex: the flattened tuple string of every rhs word, padded in front with
    One-digits to the lhs width, is >= the largest reshuffle of the lhs
    tuple string (its blocks sorted in decreasing digit order).
    reshuffle: if the lhs tuples, realized in P x P, rearrange into a chain with
    consecutive pairs in D, that standard word occurs with coefficient +-1.
    """
    wctx = wctx or WeightContext(m, n)
    rep = rep or Report("dalg_relation", True, {})
    lhs_blocks = tuple_string(rel.lhs)
    width = len(flat_digits(lhs_blocks, wctx))
    best = flat_digits(sorted(lhs_blocks, key=lambda a: _block_digits(a, wctx), reverse=True), wctx)
    for c, w in rel.rhs:
        if len(w) != len(rel.lhs):
            rep.fail("degree", f"{list(rel.lhs)}: rhs word {list(w)} has the wrong degree")
            continue
        if not is_standard(w):
            rep.fail("standard", f"{list(rel.lhs)}: rhs word {list(w)} is not standard")
        try:
            digits = flat_digits(tuple_string(w), wctx, width)
        except ValueError:
            rep.fail("lex", f"{list(rel.lhs)}: rhs word {list(w)} is wider than the lhs")
            continue
        if digits < best:
            rep.fail("lex", f"{list(rel.lhs)}: rhs word {list(w)} is lexicographically "
                     "below a reshuffle of the lhs")
    chain = reshuffle(realized_elements(rel.lhs), m, n)
    if chain is not None:
        coefs = [c for c, w in rel.rhs if tuple(w) == chain]
        if len(coefs) != 1 or abs(coefs[0]) != 1:
            rep.fail("reshuffle", f"{list(rel.lhs)}: reshuffled chain {list(chain)} has coefficient "
                     f"{[str(c) for c in coefs] or 0}, expected +-1")
    return rep


def dalg_axioms_check(m: int, n: int, degree_bound: int = 2, catalog=None,
                      form: str = "antidiagonal", wctx: WeightContext | None = None) -> Report:
    """The lex and reshuffle clauses on the homogenized degree-2 catalog; degree 2
    suffices, so ``degree_bound`` above 2 is recorded but not used."""
    ctx = InvariantContext(m, n, form)
    catalog = load_catalog(ctx) if catalog is None else catalog
    rep = Report("dalg_axioms", True, {"m": m, "n": n, "degree_bound": degree_bound,
                                       "relations": len(catalog)})
    cases = {"uu": 0, "pu": 0, "pp": 0}
    for rel in catalog:
        kinds = {type(d) for d in rel.lhs}
        cases["uu" if kinds == {UIndex} else "pu" if UIndex in kinds else "pp"] += 1
        try:
            hom = homogenize(rel)
        except ValueError as exc:
            rep.fail("degree", str(exc))
            continue
        dalg_relation_check(hom, m, n, wctx, rep)
    rep.details["cases"] = cases
    return rep


def discrete_associativity_check(m: int, n: int) -> Report:
    """(xy)z = x(yz) in K{D} for all degree-1 standard words x, y, z."""
    gens = [(d,) for d in Doset(m, n).D]
    rep = Report("discrete_associativity", True, {"m": m, "n": n, "generators": len(gens)})
    mul = lambda a, b: None if a is None or b is None else discrete_mul(a, b, m, n)
    for x in gens:
        for y in gens:
            xy = mul(x, y)
            for z in gens:
                if mul(xy, z) != mul(x, mul(y, z)):
                    rep.fail("assoc", f"{x}{y}{z}")
                    return rep
    return rep


def hilbert_report(m: int, n: int, max_degree: int) -> Report:
    rep = Report("hilbert_RD_vs_discrete", True, {"m": m, "n": n, "rows": []})
    for d in range(max_degree + 1):
        a, b, c = hilbert_RD(m, n, d), discrete_standard_count(m, n, d), hilbert_KP(m, n, d)
        rep.details["rows"].append({"d": d, "R(D)": a, "K{D}": b, "K{P}": c})
        if a != b:
            rep.fail("hilbert", f"degree {d}: R(D) count {a} != discrete count {b}")
    return rep
