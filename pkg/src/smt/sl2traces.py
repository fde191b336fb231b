"""Adjoint SL_2 invariants of m traceless 2x2 matrices A_i = [[a_i, b_i], [c_i, -a_i]].

The invariant ring is generated by the traces U(i, j) = tr(A_i A_j) and
U(i, j, k) = tr(A_i A_j A_k).  Through theta(A) = (b/sqrt2, -a, c/sqrt2) the
adjoint action becomes SO_3 acting on K^3 with the anti-diagonal form, so
the SO_3 standard monomials p(alpha) p(A, B) u(I) (n = 3) translate into
trace monomials via

    p(i, j) = U(i, j) / 2,
    p(A, B) = (U(a, c) U(b, d) - U(b, c) U(a, d)) / 4,
    u(I)    = U(I) / 2.

The trace-side standard monomials of type (r, s, t) are the images of the
SO_3 standard monomials under omega, which sends each 2x2 Gram minor to a
non-standard degree-2 product of quadratic traces.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinat import Pair, UIndex, enumerate_standard, tuples
from .errors import TheoremViolation
from .exactalg import SQRT2, QuadExt, SparsePoly, det_symbolic, exact_rank, q_str
from .report import Report


@dataclass(frozen=True)
class Sl2Context:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need m >= 1")

    @property
    def vars(self) -> tuple:
        return tuple(f"{x}{i}" for i in range(1, self.m + 1) for x in "abc")

    def _var(self, x: str, i: int) -> SparsePoly:
        if not 1 <= i <= self.m:
            raise ValueError(f"matrix index {i} outside [1, {self.m}]")
        return SparsePoly.var(self.vars, f"{x}{i}")

    def a(self, i): return self._var("a", i)
    def b(self, i): return self._var("b", i)
    def c(self, i): return self._var("c", i)

    def matrix(self, i: int) -> list[list[SparsePoly]]:
        return [[self.a(i), self.b(i)], [self.c(i), -self.a(i)]]

    @property
    def caveat(self) -> str | None:
        if self.m <= 3:
            return f"m={self.m} <= 3: the basis theorem is stated for m > 3"
        return None


# ---------------------------------------------------------------------------
# traces


def _mul2(X, Y):
    return [[X[i][0] * Y[0][j] + X[i][1] * Y[1][j] for j in range(2)] for i in range(2)]


def trace_product(ctx: Sl2Context, *indices: int) -> SparsePoly:
    """tr(A_{i1} ... A_{ik}) by multiplying the symbolic matrices."""
    if not indices:
        return SparsePoly.const(ctx.vars, 2)
    P = ctx.matrix(indices[0])
    for i in indices[1:]:
        P = _mul2(P, ctx.matrix(i))
    return P[0][0] + P[1][1]


def trace2(ctx: Sl2Context, i: int, j: int) -> SparsePoly:
    return (ctx.a(i) * ctx.a(j)).scale(2) + ctx.b(i) * ctx.c(j) + ctx.b(j) * ctx.c(i)


def trace3(ctx: Sl2Context, i: int, j: int, k: int) -> SparsePoly:
    """tr(A_i A_j A_k); any index order is accepted (repeated indices give 0)."""
    return trace_product(ctx, i, j, k)


# ---------------------------------------------------------------------------
# trace symbols and formal trace polynomials


@dataclass(frozen=True, order=True)
class U2:
    """U(i, j) = tr(A_i A_j), stored with i >= j."""

    i: int
    j: int

    def __post_init__(self):
        if self.i < self.j:
            raise ValueError(f"U2 needs i >= j, got ({self.i}, {self.j})")

    def __repr__(self):
        return f"U({self.i},{self.j})"


@dataclass(frozen=True, order=True)
class U3:
    """U(i, j, k) = tr(A_i A_j A_k), stored with i < j < k."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not self.i < self.j < self.k:
            raise ValueError(f"U3 needs i < j < k, got ({self.i}, {self.j}, {self.k})")

    def __repr__(self):
        return f"U({self.i},{self.j},{self.k})"


def u2(i: int, j: int) -> U2:
    return U2(max(i, j), min(i, j))


def _sym_key(x) -> tuple:
    return (0, x.i, x.j) if isinstance(x, U2) else (1, x.i, x.j, x.k)


def tmono(symbols) -> tuple:
    """A commutative trace monomial as a sorted tuple of symbols."""
    return tuple(sorted(symbols, key=_sym_key))


def _tp_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            mono = tmono(m1 + m2)
            out[mono] = out.get(mono, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def symbol_traces(d) -> dict:
    """The trace polynomial of one SO_3 generator symbol."""
    if isinstance(d, UIndex):
        return {(U3(*d.I),): Fraction(1, 2)}
    if isinstance(d, Pair) and d.size == 1:
        return {(u2(d.A[0], d.B[0]),): Fraction(1, 2)}
    if isinstance(d, Pair) and d.size == 2:
        (a, b), (c, dd) = d.A, d.B
        out: dict = {}
        for mono, coef in ((tmono([u2(a, c), u2(b, dd)]), Fraction(1, 4)),
                           (tmono([u2(b, c), u2(a, dd)]), Fraction(-1, 4))):
            out[mono] = out.get(mono, 0) + coef
        return {k: v for k, v in out.items() if v}
    raise ValueError(f"no trace expansion for {d!r}")


def word_traces(word: Sequence) -> dict:
    out = {(): Fraction(1)}
    for d in word:
        out = _tp_mul(out, symbol_traces(d))
    return out


def tmono_poly(ctx: Sl2Context, mono: Sequence) -> SparsePoly:
    out = SparsePoly.const(ctx.vars, 1)
    for x in mono:
        out = out * (trace2(ctx, x.i, x.j) if isinstance(x, U2) else trace3(ctx, x.i, x.j, x.k))
    return out


def tmono_value(ctx: Sl2Context, mono: Sequence, point: Sequence, cache: dict) -> Fraction:
    v = Fraction(1)
    for x in mono:
        if x not in cache:
            p = (trace2(ctx, x.i, x.j) if isinstance(x, U2) else trace3(ctx, x.i, x.j, x.k))
            cache[x] = p.evaluate(point)
        v *= cache[x]
    return v


# ---------------------------------------------------------------------------
# omega


def omega(pair: Pair) -> tuple[U2, U2]:
    """omega(p(A, B)) for A = (a, b), B = (c, d), A >= B:
    U(b, c) U(d, a) if d >= a, else U(b, d) U(a, c)."""
    if not isinstance(pair, Pair) or pair.size != 2:
        raise ValueError(f"omega needs a 2x2 minor pair, got {pair!r}")
    (a, b), (c, d) = pair.A, pair.B
    if not (a < b and c < d):
        raise ValueError(f"pair {pair!r} needs increasing tuples")
    if not (b >= d and a >= c):
        raise ValueError(f"pair {pair!r} needs A >= B")
    if d >= a:
        return U2(b, c), U2(d, a)
    return U2(b, d), U2(a, c)


def is_nonstandard_type1(x: U2, y: U2) -> bool:
    """U(j, i) U(l, k) with j the largest index and i not >= l (for j == l
    neither order may be standard)."""
    if y.i > x.i:
        x, y = y, x
    if x.i == y.i:
        return not (x.j >= y.i or y.j >= x.i)
    return not x.j >= y.i


def omega_word(word: Sequence) -> tuple:
    syms = []
    for d in word:
        if isinstance(d, UIndex):
            syms.append(U3(*d.I))
        elif d.size == 1:
            syms.append(u2(d.A[0], d.B[0]))
        else:
            syms.extend(omega(d))
    return tmono(syms)


def omega_bijection_check(m: int) -> Report:
    """omega maps {p(A, B): |A| = 2} one-to-one onto the non-standard
    Type I degree-2 products of quadratic traces."""
    pairs = [Pair(A, B) for A in tuples(2, m) for B in tuples(2, m) if A[0] >= B[0] and A[1] >= B[1]]
    rep = Report("omega_bijection", True, {"m": m, "pairs": len(pairs)})
    images = {}
    for p in pairs:
        x, y = omega(p)
        if not is_nonstandard_type1(x, y):
            rep.fail("image", f"omega({p!r}) = {x!r}{y!r} is standard")
        mono = tmono([x, y])
        if mono in images:
            rep.fail("injective", f"{p!r} and {images[mono]!r} share the image {mono!r}")
        images[mono] = p
    syms = [U2(i, j) for i in range(1, m + 1) for j in range(1, i + 1)]
    target = {tmono([x, y]) for k, x in enumerate(syms) for y in syms[k:]
              if is_nonstandard_type1(x, y)}
    rep.details["nonstandard_products"] = len(target)
    if set(images) != target:
        rep.fail("surjective", f"{len(target - set(images))} non-standard products are not hit")
    return rep


# ---------------------------------------------------------------------------
# transition matrix


def standard_monomials(m: int, triple: Sequence[int]) -> list[tuple]:
    """M_{r,s,t}: SO_3 standard monomials with r size-1 minors, s size-2
    minors and t row determinants."""
    r, s, t = triple
    if min(r, s, t) < 0:
        raise ValueError("type degrees must be nonnegative")
    return enumerate_standard(m, family="traces", degree=(r, s, t))


def index_tuple(word: Sequence) -> tuple:
    """(a12, a11, b12, b11, ..., alpha, I): the size-2 pairs first, each
    tuple written largest entry first, then the alpha chain, then the I's."""
    big, alpha, us = [], [], []
    for d in word:
        if isinstance(d, UIndex):
            us.extend(d.I)
        elif d.size == 1:
            alpha.extend((d.A[0], d.B[0]))
        else:
            big.extend((d.A[1], d.A[0], d.B[1], d.B[0]))
    return tuple(big + alpha + us)


@dataclass
class TransitionMatrix:
    m: int
    triple: tuple
    rows: list          # M_{r,s,t}, sorted by index_tuple descending
    columns: list       # omega(rows), same indexing
    matrix: list        # rows x columns, Fraction entries
    outside: int        # nonzero coefficients on trace monomials outside N_{r,s,t}

    def diagonal(self) -> list:
        return [self.matrix[k][k] for k in range(len(self.rows))]

    def is_upper_triangular(self) -> bool:
        return all(self.matrix[k][l] == 0 for k in range(len(self.rows)) for l in range(k))


def transition_matrix(m: int, triple: Sequence[int], check: bool = True) -> TransitionMatrix:
    """Coefficients of the trace expansions of M_{r,s,t} on N_{r,s,t}.

    Rows are indexed by decreasing index_tuple and columns by omega of the
    row; with that indexing the matrix is upper triangular with diagonal
    entries +-1/2^(r+t) 4^-s.  ``check`` raises TheoremViolation otherwise.
    """
    triple = tuple(triple)
    rows = sorted(standard_monomials(m, triple), key=index_tuple, reverse=True)
    columns = [omega_word(w) for w in rows]
    if len(set(columns)) != len(columns):
        raise TheoremViolation(f"omega is not injective on M{triple} at m={m}")
    col_index = {c: k for k, c in enumerate(columns)}
    mat = [[Fraction(0)] * len(columns) for _ in rows]
    outside = 0
    for k, w in enumerate(rows):
        for mono, coef in word_traces(w).items():
            if mono in col_index:
                mat[k][col_index[mono]] = coef
            else:
                outside += 1
    tm = TransitionMatrix(m, triple, rows, columns, mat, outside)
    if check:
        if not tm.is_upper_triangular():
            raise TheoremViolation(f"transition matrix for {triple} at m={m} is not upper triangular")
        if any(x == 0 for x in tm.diagonal()):
            raise TheoremViolation(f"transition matrix for {triple} at m={m} has a zero diagonal entry")
    return tm


def transition_report(m: int, triple: Sequence[int]) -> Report:
    ctx = Sl2Context(m)
    rep = Report("transition_matrix", True, {"m": m, "triple": list(triple), "caveat": ctx.caveat})
    try:
        tm = transition_matrix(m, triple, check=False)
    except TheoremViolation as exc:
        words = standard_monomials(m, triple)
        rep.details.update(size=len(words), distinct_images=len({omega_word(w) for w in words}))
        rep.fail("bijection", str(exc))
        return rep
    rep.details.update(size=len(tm.rows), outside_terms=tm.outside,
                       diagonal=sorted({q_str(x) for x in tm.diagonal()}))
    if not tm.is_upper_triangular():
        rep.fail("triangular", f"THEOREM-VIOLATION: not upper triangular for {tm.triple}")
    if any(x == 0 for x in tm.diagonal()):
        rep.fail("diagonal", f"THEOREM-VIOLATION: zero diagonal entry for {tm.triple}")
    return rep


# ---------------------------------------------------------------------------
# independence by evaluation


def random_point(ctx: Sl2Context, rng: random.Random) -> list[Fraction]:
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in ctx.vars]


def trace_basis_check(m: int, triple: Sequence[int], seed: int, extra_points: int = 4) -> Report:
    """Evaluate the trace monomials N_{r,s,t} at random sl_2 tuples; the
    evaluation matrix must have rank |N_{r,s,t}| = |M_{r,s,t}|."""
    ctx = Sl2Context(m)
    words = standard_monomials(m, triple)
    monos = [omega_word(w) for w in words]
    rep = Report("trace_basis", True, {"m": m, "triple": list(triple), "count": len(words),
                                       "distinct_images": len(set(monos)),
                                       "caveat": ctx.caveat}, seed=seed)
    rng = random.Random(seed)
    rows = []
    for _ in range(len(monos) + extra_points):
        pt = random_point(ctx, rng)
        cache: dict = {}
        rows.append([tmono_value(ctx, mo, pt, cache) for mo in monos])
    rank = exact_rank(rows) if monos else 0
    rep.details["rank"] = rank
    if rank != len(words):
        rep.fail("rank", f"evaluation rank {rank} < {len(words)} standard monomials")
    return rep


# ---------------------------------------------------------------------------
# theta and the SO_3 identities


def theta(ctx: Sl2Context, i: int) -> list[SparsePoly]:
    """(b/sqrt2, -a, c/sqrt2) with coefficients in Q(sqrt 2)."""
    inv = QuadExt(0, Fraction(1, 2))  # 1/sqrt2 = sqrt2/2
    lift = lambda p: p.map_coeffs(QuadExt.coerce)
    return [lift(ctx.b(i)).scale(inv), lift(-ctx.a(i)), lift(ctx.c(i)).scale(inv)]


def antidiag_form(v: Sequence[SparsePoly], w: Sequence[SparsePoly]) -> SparsePoly:
    return v[0] * w[2] + v[1] * w[1] + v[2] * w[0]


def theta_embed_check(m: int) -> Report:
    """2<theta A_i, theta A_j> = tr(A_i A_j) for all i <= j and
    2 det(theta A_i, theta A_j, theta A_k) = sign * tr(A_i A_j A_k) for i < j < k,
    with sign = +1 (the theta coordinates absorb det J_3 = -1 through the -a entry)."""
    ctx = Sl2Context(m)
    rep = Report("theta_embed", True, {"m": m})
    th = {i: theta(ctx, i) for i in range(1, m + 1)}
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            lhs = antidiag_form(th[i], th[j]).scale(2)
            if not lhs.is_rational():
                rep.fail("rational", f"<theta A_{i}, theta A_{j}> leaves Q")
                continue
            if lhs.to_rational() != trace2(ctx, i, j):
                rep.fail("trace2", f"2<theta A_{i}, theta A_{j}> != tr(A_{i} A_{j})")
    signs = set()
    # theta carries the adjoint action into SO_3 of the anti-diagonal form
    for I in tuples(3, m):
        d = det_symbolic([th[i] for i in I]).scale(2)
        if not d.is_rational():
            rep.fail("rational", f"det(theta rows {I}) leaves Q")
            continue
        d = d.to_rational()
        tr = trace3(ctx, *I)
        if d == tr:
            signs.add(1)
        elif d == -tr:
            signs.add(-1)
        else:
            rep.fail("trace3", f"2 det(theta rows {I}) is not +-tr(A_i A_j A_k)")
    rep.details["det_sign"] = sorted(signs)
    if signs - {1}:
        rep.fail("trace3", "2 det(theta rows) = -tr(A_i A_j A_k) for some I")
    return rep


# ---------------------------------------------------------------------------
# adjoint invariance


def random_sl2(rng: random.Random, bound: int = 5) -> tuple[list, list]:
    """An integer matrix with nonzero determinant, first row divided by the
    determinant; returns (g, g^-1)."""
    while True:
        p, q, r, s = (rng.randint(-bound, bound) for _ in range(4))
        det = p * s - q * r
        if det:
            break
    g = [[Fraction(p, det), Fraction(q, det)], [Fraction(r), Fraction(s)]]
    ginv = [[g[1][1], -g[0][1]], [-g[1][0], g[0][0]]]
    return g, ginv


def conjugate(ctx: Sl2Context, poly: SparsePoly, g, ginv) -> SparsePoly:
    """f(A_1, ..., A_m) -> f(g A_1 g^-1, ..., g A_m g^-1)."""
    images = []
    for i in range(1, ctx.m + 1):
        A = ctx.matrix(i)
        G = [[SparsePoly.const(ctx.vars, x) for x in row] for row in g]
        Gi = [[SparsePoly.const(ctx.vars, x) for x in row] for row in ginv]
        B = _mul2(_mul2(G, A), Gi)
        images += [B[0][0], B[0][1], B[1][0]]
    return poly.substitute(images)


def adjoint_invariance_check(m: int, seed: int, samples: int = 3) -> Report:
    ctx = Sl2Context(m)
    rng = random.Random(seed)
    rep = Report("adjoint_invariance", True, {"m": m, "samples": samples}, seed=seed)
    gens = [trace2(ctx, i, j) for i in range(1, m + 1) for j in range(1, i + 1)]
    gens += [trace3(ctx, *I) for I in tuples(3, m)]
    for _ in range(samples):
        g, ginv = random_sl2(rng)
        for f in gens:
            if conjugate(ctx, f, g, ginv) != f:
                rep.fail("invariance", f"a trace is moved by g = {g}")
                return rep
    return rep


__all__ = ["Sl2Context", "trace_product", "trace2", "trace3", "U2", "U3", "u2", "tmono",
           "symbol_traces", "word_traces", "omega", "omega_word", "is_nonstandard_type1",
           "omega_bijection_check", "standard_monomials", "index_tuple", "TransitionMatrix",
           "transition_matrix", "transition_report", "trace_basis_check", "theta",
           "theta_embed_check", "random_sl2", "conjugate", "adjoint_invariance_check",
           "random_point", "tmono_value", "tmono_poly", "SQRT2"]
