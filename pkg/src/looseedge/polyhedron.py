"""Newton polyhedra: vertices, compact edges, loose edges, projections.

Everything is decided by exact rational LP feasibility on the weight vector
lambda of a linear form.  Strict inequalities and strict positivity are
encoded as ``>= 1``; the systems are positively homogeneous in lambda, so
this loses nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import lp
from .series import LinearForm, Series

__all__ = [
    "EdgeFrame",
    "NewtonPolyhedron",
    "ProjectedFSubset",
    "newton_vertices",
    "compact_edges",
    "is_loose",
    "project",
    "project_point",
    "check_direction",
    "is_delta_orthant",
    "orthant_vertex",
    "on_segment",
    "is_compact_edge",
]


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _unit(n: int, i: int, scale=1):
    return tuple(scale if j == i else 0 for j in range(n))


def primitive(v: Sequence[int]) -> tuple[tuple, int]:
    """Split an integer vector into (primitive direction, lattice length)."""
    k = 0
    for x in v:
        k = math.gcd(k, int(x))
    if k == 0:
        raise ValueError("zero vector has no direction")
    return tuple(int(x) // k for x in v), k


def on_segment(v, a, b) -> bool:
    """Whether the point v lies on the closed segment [a, b]."""
    d = _sub(b, a)
    w = _sub(v, a)
    t = None
    for di, wi in zip(d, w):
        if di == 0:
            if wi != 0:
                return False
            continue
        ti = Fraction(wi, 1) / di
        if t is None:
            t = ti
        elif ti != t:
            return False
    if t is None:
        return True
    return 0 <= t <= 1


def _integer_form(lam: Sequence[Fraction]) -> LinearForm:
    den = 1
    for c in lam:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in lam]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return LinearForm(tuple(x // g for x in ints))


@dataclass(frozen=True)
class EdgeFrame:
    """A compact edge with ends ``alpha`` and ``beta = alpha + k*d``.

    ``pivot`` is the coordinate playing the role of the last one: it is
    the one where ``beta`` is strictly smaller than ``alpha``.  ``perm`` lists
    the coordinates with the pivot moved to the end.  ``L`` is the integer
    witness form with ``L(alpha) == L(beta)`` minimal over the support.
    """

    alpha: tuple
    beta: tuple
    d: tuple
    k: int
    L: LinearForm
    pivot: int
    loose: bool | None = None

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def delta(self) -> tuple:
        return _sub(self.beta, self.alpha)

    @property
    def value(self) -> Fraction:
        return self.L(self.alpha)

    @property
    def base(self) -> tuple:
        return tuple(min(a, b) for a, b in zip(self.alpha, self.beta))

    @property
    def perm(self) -> tuple:
        order = list(range(self.n))
        order[self.pivot], order[-1] = order[-1], order[self.pivot]
        return tuple(order)

    @property
    def is_descendant(self) -> bool:
        """Parallel to delta with delta_i >= 0 off the last coordinate, delta_n < 0."""
        dl = self.delta
        return self.pivot == self.n - 1 and all(x >= 0 for x in dl[:-1])

    @property
    def ends(self) -> tuple:
        return (self.alpha, self.beta)

    @classmethod
    def from_ends(cls, a, b, L: LinearForm, loose=None) -> "EdgeFrame":
        a, b = tuple(a), tuple(b)
        n = len(a)
        if a == b:
            raise ValueError("edge ends must differ")
        pivot = n - 1 if a[-1] != b[-1] else max(i for i in range(n) if a[i] != b[i])
        alpha, beta = (a, b) if a[pivot] > b[pivot] else (b, a)
        d, k = primitive(_sub(beta, alpha))
        return cls(alpha, beta, d, k, L, pivot, loose)


def _dominated_filter(points):
    pts = sorted(set(points))
    keep = []
    for p in pts:
        if any(q != p and all(x <= y for x, y in zip(q, p)) for q in pts):
            continue
        keep.append(p)
    return keep


def newton_vertices(generators: Iterable) -> frozenset:
    """Vertices of conv(generators) + R^n_{>=0}.

    s is a vertex iff some positive lambda makes s the unique minimiser of
    <lambda, .> over the generators.
    """
    gens = sorted({tuple(int(x) for x in g) for g in generators})
    if not gens:
        raise ValueError("empty generator set")
    n = len(gens[0])
    candidates = _dominated_filter(gens)
    out = set()
    for s in candidates:
        cons = [lp.ge(_unit(n, i), 1) for i in range(n)]
        cons += [lp.ge(_sub(g, s), 1) for g in gens if g != s]
        if lp.feasible(n, cons):
            out.add(s)
    return frozenset(out)


def _edge_witness(gens, a, b) -> LinearForm | None:
    n = len(a)
    cons = [lp.ge(_unit(n, i), 1) for i in range(n)]
    cons.append(lp.eq(_sub(b, a), 0))
    cons += [lp.ge(_sub(v, a), 1) for v in gens if not on_segment(v, a, b)]
    lam = lp.lexmin(n, cons)
    return None if lam is None else _integer_form(lam)


class NewtonPolyhedron:
    """conv(generators) + R^n_{>=0} with its vertices and compact edges.

    ``edges`` are ordered by the sorted pair of end points and carry their
    ``loose`` flag.
    """

    def __init__(self, generators: Iterable):
        gens = sorted({tuple(int(x) for x in g) for g in generators})
        if not gens:
            raise ValueError("empty generator set")
        self.n = len(gens[0])
        if any(len(g) != self.n for g in gens):
            raise ValueError("generators of different lengths")
        self.generators = tuple(gens)

    @classmethod
    def of(cls, f: Series) -> "NewtonPolyhedron":
        if f.is_zero():
            raise ValueError("the zero series has no Newton polyhedron")
        return cls(f.terms.keys())

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted(newton_vertices(self.generators)))

    @cached_property
    def edges(self) -> tuple:
        raw = compact_edges(self)
        return tuple(replace(e, loose=is_loose(self, e)) for e in raw)

    @property
    def loose_edges(self) -> tuple:
        return tuple(e for e in self.edges if e.loose)

    def edge_between(self, a, b) -> EdgeFrame | None:
        key = {tuple(a), tuple(b)}
        for e in self.edges:
            if {e.alpha, e.beta} == key:
                return e
        return None

    def __repr__(self):
        return f"NewtonPolyhedron(vertices={list(self.vertices)})"


def _as_polyhedron(np_or_points) -> NewtonPolyhedron:
    if isinstance(np_or_points, NewtonPolyhedron):
        return np_or_points
    return NewtonPolyhedron(np_or_points)


def compact_edges(np_or_points) -> list[EdgeFrame]:
    """Compact one-dimensional faces, with loose flags left unset."""
    P = _as_polyhedron(np_or_points)
    verts = P.vertices
    out = []
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            L = _edge_witness(P.generators, a, b)
            if L is not None:
                out.append(EdgeFrame.from_ends(a, b, L))
    return out


def is_loose(np_or_points, e: EdgeFrame) -> bool:
    """True iff no compact face of dimension >= 2 contains the edge."""
    P = _as_polyhedron(np_or_points)
    a, b = e.alpha, e.beta
    if not _is_edge(P, e):
        raise ValueError("not a compact edge of the polyhedron")
    n = P.n
    delta = _sub(b, a)
    for gamma in P.vertices:
        if gamma in (a, b) or on_line(gamma, a, b):
            continue
        cons = [lp.ge(_unit(n, i), 1) for i in range(n)]
        cons.append(lp.eq(delta, 0))
        cons.append(lp.eq(_sub(gamma, a), 0))
        cons += [lp.ge(_sub(v, a), 0) for v in P.generators]
        if lp.feasible(n, cons):
            return False
    return True


def is_compact_edge(np_or_points, e: EdgeFrame) -> bool:
    """Whether ``e`` (ends and witness form) is a compact edge of the polyhedron."""
    return _is_edge(_as_polyhedron(np_or_points), e)


def _is_edge(P: NewtonPolyhedron, e: EdgeFrame) -> bool:
    if e.alpha not in P.vertices or e.beta not in P.vertices:
        return False
    L = e.L
    nu = L(e.alpha)
    if L(e.beta) != nu or not L.is_positive:
        return _edge_witness(P.generators, e.alpha, e.beta) is not None
    for v in P.generators:
        lv = L(v)
        if lv < nu or (lv == nu and not on_segment(v, e.alpha, e.beta)):
            return _edge_witness(P.generators, e.alpha, e.beta) is not None
    return True


def on_line(v, a, b) -> bool:
    d = _sub(b, a)
    w = _sub(v, a)
    # w parallel to d iff all 2x2 minors vanish
    n = len(d)
    return all(w[i] * d[j] == w[j] * d[i] for i in range(n) for j in range(i + 1, n))


def check_direction(delta: Sequence, pivot: int | None = None) -> int:
    """Validate a projecting direction; returns the pivot coordinate."""
    n = len(delta)
    c = n - 1 if pivot is None else pivot
    if not delta[c] < 0:
        raise ValueError(f"direction {tuple(delta)} needs a negative pivot entry")
    if not any(delta[i] > 0 for i in range(n) if i != c):
        raise ValueError(f"direction {tuple(delta)} needs a positive entry off the pivot")
    return c


def project_point(v: Sequence, delta: Sequence, pivot: int | None = None) -> tuple:
    """pr_delta(v): remove v_c / delta_c copies of delta, drop coordinate c."""
    c = check_direction(delta, pivot)
    t = Fraction(v[c]) / Fraction(delta[c])
    return tuple(Fraction(v[i]) - t * delta[i] for i in range(len(v)) if i != c)


@dataclass(frozen=True)
class ProjectedFSubset:
    """pr_delta(generators) + pr_delta(R^n_{>=0}) + R^{n-1}_{>=0}."""

    generators: tuple
    delta: tuple
    pivot: int
    recession_note: bool

    @property
    def m(self) -> int:
        return len(self.delta) - 1

    @property
    def cone_direction(self) -> tuple:
        # pr_delta(e_pivot); the remaining pr_delta(e_i) are unit vectors.
        c = self.pivot
        return tuple(Fraction(self.delta[i], -self.delta[c]) for i in range(len(self.delta)) if i != c)

    def contains(self, w, x) -> bool:
        """Whether x lies in w + pr_delta(R^n_{>=0}) + R^{m}_{>=0}."""
        q = self.cone_direction
        diff = _sub(x, w)
        cons = [lp.ge((1,), 0)]
        cons += [lp.ge((-qi,), -di) for qi, di in zip(q, diff)]
        return lp.feasible(1, cons)


def project(np_or_points, delta: Sequence, pivot: int | None = None) -> ProjectedFSubset:
    pts = np_or_points.generators if isinstance(np_or_points, NewtonPolyhedron) else np_or_points
    delta = tuple(int(x) for x in delta)
    c = check_direction(delta, pivot)
    gens = tuple(sorted({project_point(v, delta, c) for v in pts}))
    note = any(delta[i] < 0 for i in range(len(delta)) if i != c)
    return ProjectedFSubset(gens, delta, c, note)


def orthant_vertex(proj: ProjectedFSubset):
    """The unique vertex w when the projection is delta-orthant, else None."""
    for w in proj.generators:
        if all(proj.contains(w, x) for x in proj.generators):
            return w
    return None


def is_delta_orthant(proj: ProjectedFSubset) -> bool:
    return orthant_vertex(proj) is not None
