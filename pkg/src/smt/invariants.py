"""Generators of the SO_n invariants of m vectors: Gram minors p(A, B) and
row determinants u(I), as explicit polynomials in the coordinates u_{ik},
together with exact invariance testing at sampled group elements.

The symmetric form defaults to the anti-diagonal matrix J_n; ``form="identity"``
switches to the standard dot product.  The only form-dependent identity is

    u(I) u(J) = det(F) p(I, J),

so with the identity form (det 1) row-determinant products are Gram minors on
the nose, while for J_n the sign is (-1)^(n(n-1)/2).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinat import ONE, One, Pair, UIndex, tuples
from .errors import PolynomialAlgebraRegime, SizeBoundError
from .exactalg import (SparsePoly, det_bareiss, det_symbolic, exact_rank, identity,
                       inverse, mat_mul, transpose)
from .report import Report

FORMS = ("antidiagonal", "identity")


@dataclass(frozen=True)
class InvariantContext:
    m: int
    n: int
    form: str = "antidiagonal"

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("need m >= 1 and n >= 1")
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}")

    @property
    def vars(self) -> tuple:
        return tuple(f"u{i},{k}" for i in range(1, self.m + 1) for k in range(1, self.n + 1))

    def u(self, i: int, k: int) -> SparsePoly:
        return SparsePoly.var(self.vars, (i - 1) * self.n + (k - 1))

    def form_matrix(self) -> list[list[Fraction]]:
        n = self.n
        if self.form == "identity":
            return identity(n)
        return [[Fraction(int(i + j == n - 1)) for j in range(n)] for i in range(n)]

    @property
    def form_det(self) -> int:
        if self.form == "identity":
            return 1
        return -1 if (self.n * (self.n - 1) // 2) % 2 else 1

    def require_u(self):
        if self.m < self.n:
            raise PolynomialAlgebraRegime(
                f"m={self.m} < n={self.n}: the invariants form the polynomial algebra "
                "on the Gram entries and row determinants u(I) are not defined")

    def blocks(self) -> list[list[int]]:
        """Variable indices of each row block u_{i,*}."""
        return [[(i - 1) * self.n + k for k in range(self.n)] for i in range(1, self.m + 1)]


def _check_index(ctx: InvariantContext, i: int):
    if not 1 <= i <= ctx.m:
        raise ValueError(f"row index {i} outside [1, {ctx.m}]")


@lru_cache(maxsize=None)
def gram_entry(ctx: InvariantContext, i: int, j: int) -> SparsePoly:
    """<u_i, u_j> in the context's form."""
    _check_index(ctx, i)
    _check_index(ctx, j)
    n = ctx.n
    out = SparsePoly(ctx.vars)
    for k in range(1, n + 1):
        l = n + 1 - k if ctx.form == "antidiagonal" else k
        out = out + ctx.u(i, k) * ctx.u(j, l)
    return out


@lru_cache(maxsize=None)
def p_minor(ctx: InvariantContext, A: tuple, B: tuple) -> SparsePoly:
    """Minor of the Gram matrix with rows A and columns B; p(empty, empty) = 1."""
    A, B = tuple(A), tuple(B)
    if len(A) != len(B):
        raise ValueError("row and column tuples differ in length")
    if len(A) > ctx.n:
        raise SizeBoundError(f"minor of size {len(A)} > n={ctx.n} is identically zero beyond rank")
    for i in A + B:
        _check_index(ctx, i)
    if not A:
        return SparsePoly.const(ctx.vars, 1)
    return det_symbolic([[gram_entry(ctx, a, b) for b in B] for a in A])


@lru_cache(maxsize=None)
def u_det(ctx: InvariantContext, I: tuple) -> SparsePoly:
    """n x n minor of (u_{ik}) with rows I."""
    ctx.require_u()
    I = tuple(I)
    if len(I) != ctx.n:
        raise ValueError(f"u(I) needs |I| = n = {ctx.n}, got {I}")
    for i in I:
        _check_index(ctx, i)
    return det_symbolic([[ctx.u(i, k) for k in range(1, ctx.n + 1)] for i in I])


def symbol_poly(ctx: InvariantContext, d) -> SparsePoly:
    if isinstance(d, One):
        return SparsePoly.const(ctx.vars, 1)
    if isinstance(d, Pair):
        return p_minor(ctx, d.A, d.B)
    if isinstance(d, UIndex):
        return u_det(ctx, d.I)
    raise TypeError(f"not a generator symbol: {d!r}")


def lemma_residual(ctx: InvariantContext, I: tuple, J: tuple) -> SparsePoly:
    """u(I) u(J) - p(I, J); zero for the identity form."""
    return u_det(ctx, I) * u_det(ctx, J) - p_minor(ctx, I, J)


# ---------------------------------------------------------------------------
# orthogonal samples


@dataclass(frozen=True)
class OrthogonalSample:
    g: tuple
    det_sign: int

    def matrix(self) -> list[list[Fraction]]:
        return [list(r) for r in self.g]


def cayley(S: Sequence[Sequence]) -> list[list[Fraction]]:
    """(Id - S)(Id + S)^{-1}; raises ZeroDivisionError when Id + S is singular."""
    n = len(S)
    Id = identity(n)
    plus = [[Id[i][j] + S[i][j] for j in range(n)] for i in range(n)]
    minus = [[Id[i][j] - S[i][j] for j in range(n)] for i in range(n)]
    return mat_mul(minus, inverse(plus))


def preserves_form(g, F) -> bool:
    return mat_mul(mat_mul(transpose(g), F), g) == [list(r) for r in F]


def swap_first_last(n: int) -> list[list[Fraction]]:
    P = identity(n)
    P[0], P[n - 1] = P[n - 1], P[0]
    return P


def random_orthogonal(ctx: InvariantContext, seed: int, det_sign: int = 1,
                      max_tries: int = 50, entry_bound: int = 3) -> OrthogonalSample:
    """Cayley transform of S = F^{-1} K with K random skew-symmetric, so that
    S^T F = -F S; for det_sign = -1 compose with the swap of e_1 and e_n."""
    n = ctx.n
    if det_sign not in (1, -1):
        raise ValueError("det_sign must be +1 or -1")
    if det_sign == -1 and n < 2:
        raise ValueError("a det -1 sample via the swap needs n >= 2")
    F = ctx.form_matrix()
    Finv = inverse(F)
    rng = random.Random(seed)
    for _ in range(max_tries):
        K = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                x = Fraction(rng.randint(-entry_bound, entry_bound), rng.randint(1, entry_bound))
                K[i][j], K[j][i] = x, -x
        S = mat_mul(Finv, K)
        try:
            g = cayley(S)
        except ZeroDivisionError:
            continue
        if det_sign == -1:
            g = mat_mul(g, swap_first_last(n))
        if not preserves_form(g, F) or det_bareiss(g) != det_sign:
            raise ArithmeticError("Cayley sample failed its exact postcondition")
        return OrthogonalSample(tuple(tuple(r) for r in g), det_sign)
    raise RuntimeError(f"no nonsingular Id + S found in {max_tries} tries")


def act(ctx: InvariantContext, poly: SparsePoly, sample: OrthogonalSample) -> SparsePoly:
    """f(U) -> f(U g): every row u_i is replaced by u_i g."""
    g = sample.g
    images = []
    for i in range(1, ctx.m + 1):
        for k in range(ctx.n):
            img = SparsePoly(ctx.vars)
            for l in range(ctx.n):
                if g[l][k]:
                    img = img + ctx.u(i, l + 1).scale(g[l][k])
            images.append(img)
    return poly.substitute(images)


def invariance_check(ctx: InvariantContext, poly: SparsePoly, sample: OrthogonalSample,
                     u_count: int = 0, label: str = "") -> Report:
    """Exact test that g.f = det(g)^u_count f."""
    expected = poly if sample.det_sign ** u_count == 1 else -poly
    moved = act(ctx, poly, sample)
    rep = Report("invariance", True,
                 {"label": label, "det_sign": sample.det_sign, "u_count": u_count})
    if moved != expected:
        rep.fail("invariance", f"{label or 'polynomial'} not scaled by det(g)^{u_count}")
    return rep


def word_invariance_check(ctx: InvariantContext, word: Sequence, sample: OrthogonalSample,
                          moved_cache: dict | None = None) -> Report:
    """Invariance of a word via the images of its generators (the action is a
    ring homomorphism, so the image of the product is the product of images)."""
    cache = {} if moved_cache is None else moved_cache
    lhs = SparsePoly.const(ctx.vars, 1)
    rhs = SparsePoly.const(ctx.vars, 1)
    for d in word:
        if d not in cache:
            cache[d] = act(ctx, symbol_poly(ctx, d), sample)
        lhs = lhs * cache[d]
        rhs = rhs * symbol_poly(ctx, d)
    u_count = sum(isinstance(d, UIndex) for d in word)
    if sample.det_sign == -1 and u_count % 2:
        rhs = -rhs
    rep = Report("word_invariance", True, {"word": repr(tuple(word)), "det_sign": sample.det_sign})
    if lhs != rhs:
        rep.fail("invariance", f"{tuple(word)!r} not scaled by det(g)^{u_count}")
    return rep


# ---------------------------------------------------------------------------
# the m <= n regime


def gram_jacobian_rank(m: int, n: int, seed: int, form: str = "antidiagonal") -> int:
    """Rank of d(phi_ij)/d(u) at a random rational point, i <= j."""
    ctx = InvariantContext(m, n, form)
    rng = random.Random(seed)
    point = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in ctx.vars]
    rows = []
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            phi = gram_entry(ctx, i, j)
            rows.append([phi.derivative(k).evaluate(point) for k in range(len(ctx.vars))])
    return exact_rank(rows)


def gram_independence_check(m: int, n: int, seed: int, form: str = "antidiagonal") -> Report:
    """For m <= n the Gram entries are algebraically independent: the Jacobian
    has full rank m(m+1)/2 at a generic point."""
    if m > n:
        raise ValueError("the Gram entries are dependent when m > n")
    want = m * (m + 1) // 2
    rep = Report("gram_independence", True, {"m": m, "n": n, "expected_rank": want}, seed=seed)
    for attempt in range(3):
        r = gram_jacobian_rank(m, n, seed + attempt, form)
        rep.details["rank"] = r
        if r == want:
            return rep
    rep.fail("jacobian", f"rank {r} < {want} at three sampled points")
    return rep


def all_u_indices(ctx: InvariantContext) -> list[tuple]:
    ctx.require_u()
    return tuples(ctx.n, ctx.m)



def invariance_suite(ctx: InvariantContext, seed: int, samples: int = 20,
                     max_degree: int = 2) -> Report:
    """``samples`` Cayley elements of det +1 (seeds seed, seed+1, ...) and one
    of det -1 act on every word of length <= max_degree over H_p and H_u;
    each word must be scaled by det(g)^(number of u-symbols)."""
    from itertools import combinations_with_replacement

    from .combinat import Doset
    D = Doset(ctx.m, ctx.n)
    words = [w for L in range(1, max_degree + 1)
             for w in combinations_with_replacement(D.H, L)]
    rep = Report("invariance_suite", True,
                 {"n": ctx.n, "m": ctx.m, "form": ctx.form, "samples": samples,
                  "words": len(words)}, seed=seed)
    draws = [random_orthogonal(ctx, seed + k) for k in range(samples)]
    if ctx.n >= 2:
        draws.append(random_orthogonal(ctx, seed + samples, det_sign=-1))
    for sample in draws:
        cache: dict = {}
        for w in words:
            sub = word_invariance_check(ctx, w, sample, cache)
            if not sub:
                rep.fail("invariance", f"det {sample.det_sign}: " + sub.violations[0]["message"])
                break
    rep.details["det_signs"] = sorted({s.det_sign for s in draws})
    return rep


__all__ = ["InvariantContext", "gram_entry", "p_minor", "u_det", "symbol_poly",
           "lemma_residual", "OrthogonalSample", "random_orthogonal", "cayley",
           "invariance_check", "word_invariance_check", "gram_independence_check",
           "invariance_suite",
           "ONE"]
