"""Exact arithmetic: sparse polynomials over Q (or Q(sqrt 2)), symbolic
determinants, fraction-free rank and exact linear solves.

Nothing in here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Iterable, Mapping, Sequence

DET_SIZE_BOUND = 6


def to_q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


def q_str(x: Fraction) -> str:
    """Canonical 'p/q' string (denominator always present, positive)."""
    x = to_q(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Q(s), s^2 = 2


@dataclass(frozen=True)
class QuadExt:
    """p + q*s with s*s == 2."""

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", to_q(self.p))
        object.__setattr__(self, "q", to_q(self.q))

    @staticmethod
    def coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt(to_q(x), Fraction(0))

    def __add__(self, other):
        o = QuadExt.coerce(other)
        return QuadExt(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.p, -self.q)

    def __sub__(self, other):
        return self + (-QuadExt.coerce(other))

    def __rsub__(self, other):
        return QuadExt.coerce(other) - self

    def __mul__(self, other):
        o = QuadExt.coerce(other)
        return QuadExt(self.p * o.p + 2 * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.p, -self.q)

    def norm(self) -> Fraction:
        return self.p * self.p - 2 * self.q * self.q

    def inverse(self) -> "QuadExt":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        c = self.conjugate()
        return QuadExt(c.p / nrm, c.q / nrm)

    def __truediv__(self, other):
        return self * QuadExt.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QuadExt.coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if isinstance(other, QuadExt):
            return self.p == other.p and self.q == other.q
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.q))

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def is_rational(self) -> bool:
        return self.q == 0

    def __repr__(self):
        return f"QuadExt({self.p}, {self.q})"


SQRT2 = QuadExt(0, 1)


# ---------------------------------------------------------------------------
# sparse polynomials


def _add_exp(e1: tuple, e2: tuple) -> tuple:
    return tuple(a + b for a, b in zip(e1, e2))


class SparsePoly:
    """Polynomial over a declared variable universe.

    ``terms`` maps dense exponent tuples to nonzero coefficients (Fraction, or
    QuadExt when working over Q(sqrt 2)).  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            width = len(self.vars)
            for e, c in terms.items():
                if len(e) != width:
                    raise ValueError(f"exponent {e} does not fit universe of {width} variables")
                if c:
                    clean[tuple(e)] = c if isinstance(c, (Fraction, QuadExt)) else to_q(c)
        self.terms = clean
        self._hash = None

    # -- constructors
    @classmethod
    def const(cls, vars: Sequence[str], c=1) -> "SparsePoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "SparsePoly":
        return cls(vars)

    @classmethod
    def var(cls, vars: Sequence[str], name_or_index) -> "SparsePoly":
        vars = tuple(vars)
        k = vars.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * len(vars)
        e[k] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    # -- basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _check(self, other: "SparsePoly"):
        if self.vars != other.vars:
            raise ValueError("variable universe mismatch")

    def _lift(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        return SparsePoly.const(self.vars, other)

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, QuadExt)):
            return self == SparsePoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- ring operations
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "SparsePoly":
        if not c:
            return SparsePoly(self.vars)
        return SparsePoly(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            return self.scale(other if isinstance(other, (Fraction, QuadExt)) else to_q(other))
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = SparsePoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def block_degrees(self, blocks: Sequence[Sequence[int]]) -> set[tuple]:
        """Set of block-degree vectors occurring; blocks are lists of variable indices."""
        return {tuple(sum(e[k] for k in blk) for blk in blocks) for e in self.terms}

    def derivative(self, k) -> "SparsePoly":
        if isinstance(k, str):
            k = self.vars.index(k)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = c * e[k]
        return SparsePoly(self.vars, out)

    def evaluate(self, point: Sequence):
        """Value at a point given as a sequence aligned with ``vars``."""
        if len(point) != len(self.vars):
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def substitute(self, images: Sequence["SparsePoly"]) -> "SparsePoly":
        """Compose: variable k is replaced by images[k] (all in one target universe)."""
        if len(images) != len(self.vars):
            raise ValueError("need one image per variable")
        target = images[0].vars if images else ()
        powers: dict = {}

        def pw(k, d):
            key = (k, d)
            if key not in powers:
                powers[key] = images[k] ** d
            return powers[key]

        out = SparsePoly(target)
        for e, c in self.terms.items():
            term = SparsePoly.const(target, c)
            for k, d in enumerate(e):
                if d:
                    term = term * pw(k, d)
            out = out + term
        return out

    def map_coeffs(self, f) -> "SparsePoly":
        return SparsePoly(self.vars, {e: f(c) for e, c in self.terms.items()})

    def is_rational(self) -> bool:
        return all(not isinstance(c, QuadExt) or c.is_rational() for c in self.terms.values())

    def to_rational(self) -> "SparsePoly":
        if not self.is_rational():
            raise ValueError("polynomial has irrational coefficients")
        return self.map_coeffs(lambda c: c.p if isinstance(c, QuadExt) else c)

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        # graded reverse order: higher total degree first, then lexicographically larger
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    # -- serialization
    def to_json(self) -> dict:
        if not self.is_rational():
            raise ValueError("only rational polynomials serialize")
        rows = []
        for e, c in self.sorted_terms():
            c = c.p if isinstance(c, QuadExt) else c
            rows.append({"e": list(e), "c": q_str(c)})
        return {"vars": list(self.vars), "terms": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "SparsePoly":
        return cls(obj["vars"], {tuple(t["e"]): Fraction(t["c"]) for t in obj["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# determinants


def det_symbolic(M: Sequence[Sequence[SparsePoly]], bound: int = DET_SIZE_BOUND,
                 vars: Sequence[str] | None = None) -> SparsePoly:
    """Laplace expansion along rows, memoized on the set of remaining columns."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix is not square")
    if n > bound:
        raise ValueError(f"symbolic determinant of size {n} exceeds bound {bound}")
    if n == 0:
        if vars is None:
            raise ValueError("empty determinant needs an explicit variable universe")
        return SparsePoly.const(vars, 1)
    universe = M[0][0].vars
    memo: dict[int, SparsePoly] = {}
    full = (1 << n) - 1

    def minor(cols: int) -> SparsePoly:
        # rows consumed so far = n - popcount(cols)
        if cols == 0:
            return SparsePoly.const(universe, 1)
        if cols in memo:
            return memo[cols]
        row = n - bin(cols).count("1")
        acc = SparsePoly(universe)
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                entry = M[row][j]
                if entry:
                    sub = minor(cols & ~(1 << j))
                    acc = acc + (entry * sub if sign > 0 else -(entry * sub))
                sign = -sign
        memo[cols] = acc
        return acc

    return minor(full)


def det_leibniz(M: Sequence[Sequence]):
    """Permutation-sum determinant; used as an independent check."""
    n = len(M)
    total = None
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = None
        for i in range(n):
            term = M[i][perm[i]] if term is None else term * M[i][perm[i]]
        if term is None:
            term = 1
        if inv % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in M:
        qs = [to_q(x) for x in row]
        d = lcm(*(x.denominator for x in qs)) if qs else 1
        rows.append([int(x * d) for x in qs])
    return rows


def exact_rank(M: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination over the integers."""
    A = _integer_rows(M)
    if not A or not A[0]:
        return 0
    nrows, ncols = len(A), len(A[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if A[r][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, nrows):
            a = A[r][col]
            row_r, row_p = A[r], A[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def det_bareiss(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a rational matrix via fraction-free elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix is not square")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    A = []
    for row in M:
        qs = [to_q(x) for x in row]
        d = lcm(*(x.denominator for x in qs))
        scale *= d
        A.append([int(x * d) for x in qs])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if A[r][k]), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return Fraction(sign * A[n - 1][n - 1]) / scale


@dataclass
class SolveResult:
    solution: list[Fraction] | None
    rank: int
    unique: bool


def exact_solve(M: Sequence[Sequence], v: Sequence) -> SolveResult:
    """Solve M x = v over Q by Gauss-Jordan; ``solution`` is None if inconsistent.

    When the system is consistent but underdetermined, free variables are set
    to zero and ``unique`` is False.
    """
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    if len(v) != nrows:
        raise ValueError("right-hand side has wrong length")
    A = [[to_q(x) for x in row] + [to_q(b)] for row, b in zip(M, v)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    rank = r
    if any(A[i][ncols] for i in range(rank, nrows)):
        return SolveResult(None, rank, rank == ncols)
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = A[i][ncols]
    return SolveResult(x, rank, rank == ncols)


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)] if M else []


def mat_mul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(M) -> list[list[Fraction]]:
    n = len(M)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        res = exact_solve(M, e)
        if res.solution is None or not res.unique:
            raise ZeroDivisionError("matrix is singular")
        cols.append(res.solution)
    return transpose(cols)


def coefficient_matrix(polys: Iterable[SparsePoly]) -> tuple[list[tuple], list[list[Fraction]]]:
    """Stack polynomials as columns over the union of their supports.

    Returns (monomials, matrix) with one row per monomial.
    """
    polys = list(polys)
    monos = sorted({e for p in polys for e in p.terms})
    index = {e: i for i, e in enumerate(monos)}
    mat = [[Fraction(0)] * len(polys) for _ in monos]
    for j, p in enumerate(polys):
        for e, c in p.terms.items():
            mat[index[e]][j] = c
    return monos, mat


class SpanSolver:
    """Exact coordinates with respect to a fixed list of polynomials.

    The polynomials must be linearly independent (``rank`` is reported so
    callers can raise their own error otherwise).  ``solve`` returns None when
    the target is outside the span.
    """

    def __init__(self, polys: Sequence[SparsePoly]):
        self.polys = list(polys)
        monos = sorted({e for p in self.polys for e in p.terms})
        self.index = {e: i for i, e in enumerate(monos)}
        k = len(self.polys)
        rows = [[Fraction(0)] * k for _ in monos]
        for j, p in enumerate(self.polys):
            for e, c in p.terms.items():
                rows[self.index[e]][j] = c
        self.rows = rows
        self.rank = exact_rank(rows) if k and rows else 0
        self.independent = self.rank == k
        self.pivots = _independent_rows(rows, k) if self.independent else []
        self.inv = inverse([rows[i] for i in self.pivots]) if self.independent and k else []

    def solve(self, poly: SparsePoly) -> list[Fraction] | None:
        if not self.independent:
            raise ValueError("basis polynomials are dependent")
        k = len(self.polys)
        v = [Fraction(0)] * len(self.rows)
        for e, c in poly.terms.items():
            if e not in self.index:
                return None
            v[self.index[e]] = c
        rhs = [v[i] for i in self.pivots]
        x = [sum((self.inv[r][c] * rhs[c] for c in range(k) if rhs[c]), Fraction(0))
             for r in range(k)]
        for i, row in enumerate(self.rows):
            if sum((a * b for a, b in zip(row, x) if a), Fraction(0)) != v[i]:
                return None
        return x


def _independent_rows(rows: Sequence[Sequence[Fraction]], k: int) -> list[int]:
    """Indices of k linearly independent rows, chosen greedily."""
    basis: list[tuple[int, list[Fraction]]] = []
    chosen = []
    for i, row in enumerate(rows):
        r = list(row)
        for piv, b in basis:
            if r[piv]:
                f = r[piv]
                r = [x - f * y for x, y in zip(r, b)]
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            continue
        inv = 1 / r[piv]
        r = [x * inv for x in r]
        basis = [(p, [x - b[piv] * y for x, y in zip(b, r)]) for p, b in basis]
        basis.append((piv, r))
        chosen.append(i)
        if len(chosen) == k:
            break
    return chosen
