"""Graded Bezout problems  G*A + H*B = F  inside fixed graded pieces.

With G in S_u, H in S_w and F in S_{u+w+i}, the unknowns live in
A in S_{w+i} and B in S_{u+i}.  The map (A, B) -> G*A + H*B is linear on
the monomial bases, so the problem is an exact linear system.

Canonical solution: columns are the A-basis then the B-basis, each in
ascending lexicographic order; rows are the target basis in the same order;
elimination runs left to right and free variables are set to zero.  A
consequence is that B never contains a monomial divisible by the
lexicographically largest monomial of G, which pins the solution down
uniquely.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .algebra import Field, upoly_gcd
from .grading import decompose, fiber, segment_form
from .polyhedron import check_direction, primitive
from .series import Series

__all__ = [
    "Mode",
    "BezoutProblem",
    "BezoutSolution",
    "BezoutError",
    "Unsolvable",
    "NotCoprime",
    "PreconditionError",
    "solve_graded_bezout",
    "solve_chain",
    "are_coprime",
    "divisible_by_variable",
    "is_monic_in",
]


class Mode(str, Enum):
    NO_VARIABLE_DIVIDES = "NoVariableDivides"
    MONIC_IN_LAST = "MonicInLast"


class BezoutError(Exception):
    pass


class Unsolvable(BezoutError):
    """The linear system is inconsistent."""


class NotCoprime(BezoutError):
    pass


class PreconditionError(BezoutError):
    pass


@dataclass(frozen=True)
class BezoutProblem:
    G: Series
    H: Series
    F: Series
    delta: tuple
    mode: Mode = Mode.NO_VARIABLE_DIVIDES
    pivot: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(int(x) for x in self.delta))
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "pivot", check_direction(self.delta, self.pivot))


@dataclass(frozen=True)
class BezoutSolution:
    A: Series
    B: Series
    kernel_dim: int


def _index_of(X: Series, delta, pivot, name: str) -> tuple:
    comps = decompose(X, delta, pivot)
    if len(comps) != 1:
        raise PreconditionError(f"{name} is not homogeneous for the grading ({len(comps)} components)")
    return next(iter(comps))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def divisible_by_variable(G: Series) -> bool:
    return any(all(e[i] > 0 for e in G.terms) for i in range(G.n))


def is_monic_in(G: Series, var: int) -> bool:
    """A unique term of top degree in ``var``, equal to ``var^top``."""
    top = G.max_exponent(var)
    tops = [(e, c) for e, c in G.items() if e[var] == top]
    if len(tops) != 1:
        return False
    e, c = tops[0]
    return c == 1 and all(x == 0 for i, x in enumerate(e) if i != var)


def are_coprime(G: Series, H: Series, delta: Sequence[int], pivot: int | None = None) -> bool:
    """Exact coprimality test for two homogeneous elements.

    Both are monomials times segment polynomials along the primitive
    direction d, and gcd(X^a hom(p), X^b hom(q)) = X^min(a,b) hom(gcd(p, q)).
    """
    c = check_direction(delta, pivot)
    d, _ = primitive(delta)
    if G.is_zero() or H.is_zero():
        return False
    bg, pg = segment_form(G, d, c)
    bh, ph = segment_form(H, d, c)
    if any(min(x, y) > 0 for x, y in zip(bg, bh)):
        return False
    return upoly_gcd(pg, ph).degree == 0


def _eliminate(field: Field, matrix: list[list], rhs: list):
    """Row-reduce ``matrix | rhs``; returns (solution with free vars 0, rank)."""
    F = field
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    nrows = len(rows)
    ncols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][ncols] != 0:
            raise Unsolvable("inconsistent graded system")
    x = [F.zero] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][ncols]
    return x, len(pivots)


def solve_graded_bezout(problem: BezoutProblem, check: bool = True) -> BezoutSolution:
    G, H, F = problem.G, problem.H, problem.F
    delta, c = problem.delta, problem.pivot
    for X in (H, F):
        if X.n != G.n or X.field != G.field:
            raise PreconditionError("G, H, F live in different rings")
    if G.is_zero() or H.is_zero():
        raise PreconditionError("G and H must be nonzero")
    u = _index_of(G, delta, c, "G")
    w = _index_of(H, delta, c, "H")
    if check:
        if problem.mode is Mode.NO_VARIABLE_DIVIDES and divisible_by_variable(G):
            raise PreconditionError("G is divisible by a variable")
        if problem.mode is Mode.MONIC_IN_LAST and not is_monic_in(G, G.n - 1):
            raise PreconditionError("G is not monic in the last variable")
        if not are_coprime(G, H, delta, c):
            raise NotCoprime("G and H have a common factor")
    n, field = G.n, G.field
    if F.is_zero():
        return BezoutSolution(Series.zero(n, field), Series.zero(n, field), 0)
    t = _index_of(F, delta, c, "F")

    a_basis = fiber(delta, _sub(t, u), pivot=c).basis
    b_basis = fiber(delta, _sub(t, w), pivot=c).basis
    targets = fiber(delta, t, pivot=c).basis
    row_of = {e: i for i, e in enumerate(targets)}
    ncols = len(a_basis) + len(b_basis)
    matrix = [[field.zero] * ncols for _ in targets]
    for j, (factor, mono) in enumerate(
        [(G, m) for m in a_basis] + [(H, m) for m in b_basis]
    ):
        for e, coeff in factor.items():
            matrix[row_of[tuple(x + y for x, y in zip(e, mono))]][j] = coeff
    rhs = [F.coeff(e) for e in targets]
    if ncols == 0:
        raise Unsolvable("no unknowns for a nonzero target")
    x, rank = _eliminate(field, matrix, rhs)
    A = Series._raw(n, field, {m: x[j] for j, m in enumerate(a_basis)})
    B = Series._raw(n, field, {m: x[len(a_basis) + j] for j, m in enumerate(b_basis)})
    return BezoutSolution(A, B, ncols - rank)


def solve_chain(
    G: Series,
    H1: Series,
    H2: Series,
    F: Series,
    delta: Sequence[int],
    mode: Mode = Mode.NO_VARIABLE_DIVIDES,
    pivot: int | None = None,
) -> BezoutSolution:
    """Solve G*A + (H1*H2)*B = F through two solves against H1 and H2.

    From F = G*A1 + H1*B1 and B1 = G*A2 + H2*B2 one gets
    A = A1 + H1*A2 and B = B2.
    """
    n, field = G.n, G.field
    H = H1 * H2
    if F.is_zero():
        return BezoutSolution(Series.zero(n, field), Series.zero(n, field), 0)
    if H2.is_unit() and len(H2) == 1:
        return solve_graded_bezout(BezoutProblem(G, H, F, delta, mode, pivot))
    first = solve_graded_bezout(BezoutProblem(G, H1, F, delta, mode, pivot))
    if first.B.is_zero():
        A, B = first.A, first.B
    else:
        second = solve_graded_bezout(BezoutProblem(G, H2, first.B, delta, mode, pivot))
        A, B = first.A + H1 * second.A, second.B
    c = check_direction(delta, pivot)
    t = _index_of(F, delta, c, "F")
    u = _index_of(G, delta, c, "G")
    w = _index_of(H, delta, c, "H")
    dims = [fiber(delta, idx, pivot=c).dim for idx in (_sub(t, u), _sub(t, w), t)]
    return BezoutSolution(A, B, dims[0] + dims[1] - dims[2])
