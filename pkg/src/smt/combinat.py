"""Index combinatorics: tuples, the partial order on tuples, the comparison
order on generator symbols, standard words and their enumeration, and the
finite poset/doset checks.

Tuples are plain strictly increasing ``tuple[int, ...]`` over ``[1, m]``;
the empty tuple is allowed.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .report import Report

IndexTuple = tuple


def check_tuple(A: Sequence[int], m: int) -> tuple:
    A = tuple(A)
    if any(not isinstance(a, int) or isinstance(a, bool) for a in A):
        raise TypeError(f"tuple entries must be integers: {A}")
    if any(a < 1 or a > m for a in A):
        raise ValueError(f"tuple {A} has entries outside [1, {m}]")
    if any(x >= y for x, y in zip(A, A[1:])):
        raise ValueError(f"tuple {A} is not strictly increasing")
    return A


def tuples(r: int, m: int) -> list[tuple]:
    """I(r, m): strictly increasing r-tuples over [1, m], in lexicographic order."""
    return list(combinations(range(1, m + 1), r))


def tuple_ge(A: Sequence[int], B: Sequence[int]) -> bool:
    """A >= B: A is no longer than B and dominates B entrywise on its length."""
    if len(A) > len(B):
        return False
    return all(a >= b for a, b in zip(A, B))


def tuple_key(A: Sequence[int]) -> tuple:
    # a linear extension of tuple_ge: shorter first, then lexicographically larger
    return (-len(A), tuple(A))


# ---------------------------------------------------------------------------
# generator symbols


@dataclass(frozen=True)
class One:
    """The formal top element 1 of the doset."""

    def __repr__(self):
        return "One"


ONE = One()


@dataclass(frozen=True)
class Pair:
    """Minor symbol p(A, B)."""

    A: tuple
    B: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        if len(self.A) != len(self.B):
            raise ValueError(f"pair {self.A},{self.B} has unequal lengths")

    @property
    def size(self) -> int:
        return len(self.A)

    def __repr__(self):
        return f"P({self.A},{self.B})"


@dataclass(frozen=True)
class UIndex:
    """Row-determinant symbol u(I)."""

    I: tuple

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))

    def __repr__(self):
        return f"U{self.I}"


EMPTY_PAIR = Pair((), ())


def doset_cmp(d1, d2) -> bool:
    """d1 >= d2 in the comparison order on generator symbols (not reflexive)."""
    if isinstance(d1, One):
        return True
    if isinstance(d2, One):
        return False
    if isinstance(d1, Pair):
        if isinstance(d2, Pair):
            return tuple_ge(d1.B, d2.A)
        return tuple_ge(d1.B, d2.I)
    if isinstance(d2, Pair):
        return False
    return tuple_ge(d1.I, d2.I)


def is_standard(word: Sequence) -> bool:
    return all(doset_cmp(x, y) for x, y in zip(word, word[1:]))


def elem_sort_key(d) -> tuple:
    """Key whose descending order is a linear extension of the comparison order
    (One first, then pairs, then u-symbols)."""
    if isinstance(d, One):
        return (2,)
    if isinstance(d, Pair):
        return (1, tuple_key(d.A), tuple_key(d.B))
    return (0, tuple_key(d.I))


def canonical(word: Iterable) -> tuple:
    """The ordering of a monomial that is standard whenever any ordering is."""
    return tuple(sorted(word, key=elem_sort_key, reverse=True))


def shape_order(word: Iterable) -> tuple:
    """Stable partition into One's, pairs, u-symbols (order inside groups kept)."""
    word = tuple(word)
    return (tuple(d for d in word if isinstance(d, One))
            + tuple(d for d in word if isinstance(d, Pair))
            + tuple(d for d in word if isinstance(d, UIndex)))


def encode(d) -> tuple:
    if isinstance(d, One):
        return (0,)
    if isinstance(d, Pair):
        return (1, d.A, d.B)
    return (2, d.I)


def word_key(word: Sequence) -> tuple:
    return tuple(encode(d) for d in word)


def block_multidegree(word: Sequence, m: int) -> tuple:
    """Occurrences of each index 1..m across all tuples of the word."""
    md = [0] * m
    for d in word:
        for t in _tuples_of(d):
            for i in t:
                md[i - 1] += 1
    return tuple(md)


def _tuples_of(d) -> tuple:
    if isinstance(d, Pair):
        return (d.A, d.B)
    if isinstance(d, UIndex):
        return (d.I,)
    return ()


# -- JSON


def elem_to_json(d) -> dict:
    if isinstance(d, One):
        return {"t": "one"}
    if isinstance(d, Pair):
        return {"t": "p", "A": list(d.A), "B": list(d.B)}
    return {"t": "u", "I": list(d.I)}


def elem_from_json(obj) -> object:
    if not isinstance(obj, dict) or "t" not in obj:
        raise ValueError("symbol must be an object with a 't' field")
    t = obj["t"]
    if t == "one":
        return ONE
    if t == "p":
        return Pair(tuple(obj["A"]), tuple(obj["B"]))
    if t == "u":
        return UIndex(tuple(obj["I"]))
    raise ValueError(f"unknown symbol tag {t!r}")


def word_to_json(word: Sequence) -> list:
    return [elem_to_json(d) for d in word]


def word_from_json(obj) -> tuple:
    if not isinstance(obj, list):
        raise ValueError("word must be a JSON array")
    out = []
    for k, item in enumerate(obj):
        try:
            out.append(elem_from_json(item))
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError(f"word position {k}: {exc}") from None
    return tuple(out)


# ---------------------------------------------------------------------------
# generator sets


def minor_pairs(m: int, sizes: Iterable[int]) -> list[Pair]:
    """All (A, B) with A >= B for the given sizes."""
    out = []
    for r in sizes:
        ts = tuples(r, m)
        out.extend(Pair(A, B) for A in ts for B in ts if tuple_ge(A, B))
    return out


@dataclass(frozen=True)
class Doset:
    """Generator symbols over (m, n): H_p, H_u and One."""

    m: int
    n: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("need m >= 1 and n >= 1")

    @property
    def H_p(self) -> list[Pair]:
        return minor_pairs(self.m, range(1, self.n))

    @property
    def H_u(self) -> list[UIndex]:
        return [UIndex(I) for I in tuples(self.n, self.m)]

    @property
    def H(self) -> list:
        return self.H_p + self.H_u

    @property
    def D(self) -> list:
        return [ONE] + self.H

    def __contains__(self, d) -> bool:
        if isinstance(d, One):
            return True
        try:
            if isinstance(d, Pair):
                check_tuple(d.A, self.m), check_tuple(d.B, self.m)
                return 1 <= d.size <= self.n - 1 and tuple_ge(d.A, d.B)
            if isinstance(d, UIndex):
                check_tuple(d.I, self.m)
                return len(d.I) == self.n
        except (ValueError, TypeError):
            return False
        return False

    def cmp(self, d1, d2) -> bool:
        for d in (d1, d2):
            if d not in self:
                raise ValueError(f"{d!r} is not a symbol over (m={self.m}, n={self.n})")
        return doset_cmp(d1, d2)

    def check_word(self, word: Sequence, allow_one: bool = False):
        for k, d in enumerate(word):
            if isinstance(d, One) and not allow_one:
                raise ValueError(f"word position {k}: One is not a generator here")
            if d not in self:
                raise ValueError(f"word position {k}: {d!r} is not a symbol over "
                                 f"(m={self.m}, n={self.n})")


def dt_pairs(m: int, t: int, with_empty: bool = True) -> list[Pair]:
    """H_{t-1}: pairs of size <= t-1 (optionally including (empty, empty))."""
    if not 1 <= t <= m + 1:
        raise ValueError(f"need 1 <= t <= m+1, got t={t}, m={m}")
    start = 0 if with_empty else 1
    return minor_pairs(m, range(start, t))


# ---------------------------------------------------------------------------
# enumeration of standard words


def _chains(gens: Sequence, deg: Callable[[object], tuple], target: tuple,
            cmp: Callable = doset_cmp) -> list[tuple]:
    """All cmp-chains of generators whose degree vectors sum to ``target``.

    Every generator must have a degree vector with some positive entry.
    """
    gens = list(gens)
    degs = [deg(g) for g in gens]
    if any(not any(d) for d in degs):
        raise ValueError("every generator needs a positive degree")
    succ = [[j for j, h in enumerate(gens) if cmp(g, h)] for g in gens]
    out: list[tuple] = []
    k = len(target)

    def fits(j, rem):
        d = degs[j]
        return all(d[i] <= rem[i] for i in range(k))

    def dfs(prefix, last, rem):
        if not any(rem):
            out.append(tuple(prefix))
            return
        cands = range(len(gens)) if last is None else succ[last]
        for j in cands:
            if fits(j, rem):
                prefix.append(gens[j])
                dfs(prefix, j, tuple(r - d for r, d in zip(rem, degs[j])))
                prefix.pop()

    dfs([], None, tuple(target))
    return out


def _sorted_unique(words: Iterable[tuple]) -> list[tuple]:
    uniq = {word_key(w): w for w in words}
    return [uniq[k] for k in sorted(uniq)]


FAMILIES = ("s", "dt", "rd", "traces")


def family_generators(family: str, m: int, n: int | None = None, t: int | None = None) -> list:
    if family == "s":
        _need_mn(m, n)
        return Doset(m, n).H
    if family == "rd":
        _need_mn(m, n)
        return Doset(m, n).D
    if family == "dt":
        if t is None:
            raise ValueError("family dt needs t")
        return dt_pairs(m, t, with_empty=False)
    if family == "traces":
        if m < 1:
            raise ValueError("need m >= 1")
        return minor_pairs(m, (1, 2)) + [UIndex(I) for I in tuples(3, m)]
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")


def _need_mn(m, n):
    if n is None or n < 1:
        raise ValueError("this family needs n >= 1")
    if m < n:
        raise ValueError(f"this family needs m >= n (got m={m}, n={n})")


def enumerate_standard(m: int, n: int | None = None, family: str = "s",
                       degree=None, multidegree: Sequence[int] | None = None,
                       t: int | None = None) -> list[tuple]:
    """Complete, duplicate-free list of standard words, sorted by encoding.

    Gradings: ``s`` and ``rd`` by word length; ``dt`` by minor size (the
    z-degree, (empty, empty) omitted); ``traces`` by the type triple (r, s, t)
    counting size-1 pairs, size-2 pairs and 3-subsets.  ``multidegree``
    selects by block multidegree instead (families s and dt).
    """
    gens = family_generators(family, m, n, t)
    if multidegree is not None:
        md = tuple(multidegree)
        if len(md) != m:
            raise ValueError("multidegree must have m entries")
        gens = [g for g in gens if not isinstance(g, One)]
        words = _chains(gens, lambda g: block_multidegree((g,), m), md)
        if degree is not None:
            words = [w for w in words if len(w) == degree]
        return _sorted_unique(words)
    if degree is None:
        raise ValueError("give a degree or a multidegree")
    if family in ("s", "rd"):
        if not isinstance(degree, int) or degree < 0:
            raise ValueError("degree must be a nonnegative integer")
        return _sorted_unique(_chains(gens, lambda g: (1,), (degree,)))
    if family == "dt":
        if not isinstance(degree, int) or degree < 0:
            raise ValueError("degree must be a nonnegative integer")
        return _sorted_unique(_chains(gens, lambda g: (g.size,), (degree,)))
    r, s, tt = degree

    def tdeg(g):
        if isinstance(g, UIndex):
            return (0, 0, 1)
        return (1, 0, 0) if g.size == 1 else (0, 1, 0)

    return _sorted_unique(_chains(gens, tdeg, (r, s, tt)))


def padded_dt_words(m: int, t: int, length: int, multidegree: Sequence[int]) -> list[tuple]:
    """Standard words of exactly ``length`` symbols over H_{t-1} including
    (empty, empty), with the given block multidegree."""
    gens = dt_pairs(m, t, with_empty=True)

    def deg(g):
        return (1,) + block_multidegree((g,), m)

    return _sorted_unique(_chains(gens, deg, (length,) + tuple(multidegree)))


def words_by_multidegree(gens: Sequence, m: int, multidegree: Sequence[int]) -> list[tuple]:
    """Every monomial (multiset, in canonical order) with this block multidegree."""
    gens = sorted(gens, key=elem_sort_key, reverse=True)
    md = tuple(multidegree)
    degs = [block_multidegree((g,), m) for g in gens]
    out = []

    def dfs(start, prefix, rem):
        if not any(rem):
            out.append(canonical(prefix))
            return
        for j in range(start, len(gens)):
            d = degs[j]
            if all(a <= b for a, b in zip(d, rem)):
                prefix.append(gens[j])
                dfs(j, prefix, tuple(b - a for a, b in zip(d, rem)))
                prefix.pop()

    dfs(0, [], md)
    return _sorted_unique(out)


def monomials_of_length(gens: Sequence, length: int) -> list[tuple]:
    from itertools import combinations_with_replacement
    return _sorted_unique(canonical(c) for c in combinations_with_replacement(gens, length))


# ---------------------------------------------------------------------------
# the poset P and the doset D inside P x P


def poset_elements(m: int, n: int) -> list:
    out: list = [ONE]
    for r in range(1, n + 1):
        out.extend(tuples(r, m))
    return out


def poset_ge(a, b) -> bool:
    if isinstance(a, One):
        return True
    if isinstance(b, One):
        return False
    return tuple_ge(a, b)


def realize(d) -> tuple:
    """The element of P x P a symbol stands for."""
    if isinstance(d, One):
        return (ONE, ONE)
    if isinstance(d, Pair):
        return (d.A, d.B)
    return (d.I, d.I)


def doset_axioms_check(m: int, n: int) -> Report:
    rep = Report("doset_axioms", True, {"m": m, "n": n})
    P = poset_elements(m, n)
    D = {realize(d) for d in Doset(m, n).D}
    rep.details["poset_size"] = len(P)
    rep.details["doset_size"] = len(D)
    for a in P:
        if (a, a) not in D:
            rep.fail("diagonal", f"diagonal element ({a},{a}) missing")
            return rep
    for a, b in D:
        if not poset_ge(a, b):
            rep.fail("order", f"({a},{b}) in D but not a >= b")
            return rep
    chains = 0
    for a in P:
        for b in P:
            if not poset_ge(a, b):
                continue
            for c in P:
                if not poset_ge(b, c):
                    continue
                chains += 1
                if (a, b) in D and (b, c) in D and (a, c) not in D:
                    rep.fail("compose", f"chain {a} >= {b} >= {c}")
                    return rep
                if (a, c) in D and not ((a, b) in D and (b, c) in D):
                    rep.fail("split", f"chain {a} >= {b} >= {c}")
                    return rep
    rep.details["chains_checked"] = chains
    return rep


def lattice_check(m: int, n: int) -> Report:
    rep = Report("lattice", True, {"m": m, "n": n})
    P = poset_elements(m, n)
    N = len(P)
    ge = [[poset_ge(P[i], P[j]) for j in range(N)] for i in range(N)]

    def bound(i, j, upper):
        cands = [k for k in range(N)
                 if (ge[k][i] and ge[k][j] if upper else ge[i][k] and ge[j][k])]
        best = [k for k in cands
                if all((ge[c][k] if upper else ge[k][c]) for c in cands)]
        return best[0] if len(best) == 1 else None

    join = [[0] * N for _ in range(N)]
    meet = [[0] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            jn, mt = bound(i, j, True), bound(i, j, False)
            if jn is None or mt is None:
                rep.fail("lattice", f"{P[i]} and {P[j]} lack a "
                         f"{'join' if jn is None else 'meet'}")
                return rep
            join[i][j], meet[i][j] = jn, mt
    for x, y, z in product(range(N), repeat=3):
        if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
            rep.fail("distributive", f"meet/join law fails at {P[x]}, {P[y]}, {P[z]}")
            return rep
        if join[x][meet[y][z]] != meet[join[x][y]][join[x][z]]:
            rep.fail("distributive", f"join/meet law fails at {P[x]}, {P[y]}, {P[z]}")
            return rep
    rep.details["poset_size"] = N
    return rep


# ---------------------------------------------------------------------------
# I_G(m, 2m) and theta


def is_symplectic(i: Sequence[int], m: int) -> bool:
    i = tuple(i)
    if len(i) != m:
        return False
    try:
        check_tuple(i, 2 * m)
    except (ValueError, TypeError):
        return False
    s = set(i)
    return all((j in s) != ((2 * m + 1 - j) in s) for j in range(1, 2 * m + 1))


def symplectic_indices(m: int) -> list[tuple]:
    return [i for i in tuples(m, 2 * m) if is_symplectic(i, m)]


def theta_map(i: Sequence[int], m: int) -> Pair:
    i = tuple(i)
    if not is_symplectic(i, m):
        raise ValueError(f"{i} is not in I_G({m},{2 * m})")
    r = sum(1 for x in i if x <= m)
    A = tuple(sorted(2 * m + 1 - x for x in i[r:]))
    B = tuple(x for x in range(1, m + 1) if x not in i[:r])
    return Pair(A, B)
