"""The grading of K[X_1..X_n] by the projection along an edge direction.

For an admissible integer direction delta the projection ``pr_delta`` sends
each exponent to a rational vector w in Q^(n-1).  The fibers
I_{delta,w} are the lattice points of a segment parallel to delta, so
every graded piece S_{delta,w} is finite dimensional and every
homogeneous element is a monomial times a "segment polynomial".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import UPoly
from .polyhedron import check_direction, primitive, project_point
from .series import Series

__all__ = [
    "GradedPiece",
    "as_index",
    "fiber",
    "in_monoid",
    "decompose",
    "homogeneous_index",
    "split_direction",
    "segment_form",
    "homogenize",
    "FiberBoundExceeded",
]

DEFAULT_FIBER_BOUND = 10**6


class FiberBoundExceeded(RuntimeError):
    pass


def as_index(w) -> tuple:
    """Graded index as a tuple of Fractions; scalars become 1-tuples."""
    if isinstance(w, (int, float, Fraction, str)):
        return (Fraction(w),)
    return tuple(Fraction(x) for x in w)


@dataclass(frozen=True)
class GradedPiece:
    index: tuple
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, exp) -> bool:
        return tuple(exp) in self.basis


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def fiber(delta: Sequence[int], w, bound: int = DEFAULT_FIBER_BOUND, pivot: int | None = None) -> GradedPiece:
    """All v in Z^n_{>=0} with pr_delta(v) = w, sorted lexicographically.

    The pivot coordinate ``m = v_c`` parametrises the fiber line, and
    lattice points recur every ``|d_c|`` steps for the primitive direction d.
    """
    delta = tuple(int(x) for x in delta)
    c = check_direction(delta, pivot)
    w = as_index(w)
    n = len(delta)
    if len(w) != n - 1:
        raise ValueError(f"index {w} has wrong length for direction {delta}")
    d, _k = primitive(delta)
    period = -d[c]
    others = [i for i in range(n) if i != c]
    ratio = {i: Fraction(delta[i], delta[c]) for i in others}
    wi = dict(zip(others, w))

    lo, hi = 0, None
    for i in others:
        r = ratio[i]
        if r == 0:
            if wi[i] < 0 or wi[i].denominator != 1:
                return GradedPiece(w, ())
        elif r > 0:
            lo = max(lo, _ceil(-wi[i] / r))
        else:
            b = _floor(wi[i] / -r)
            hi = b if hi is None else min(hi, b)
    if hi is None:
        # cannot happen for admissible directions
        raise ValueError("unbounded fiber")
    if hi < lo:
        return GradedPiece(w, ())

    start = None
    for m0 in range(period):
        if all((wi[i] + m0 * ratio[i]).denominator == 1 for i in others):
            start = m0
            break
    if start is None:
        return GradedPiece(w, ())
    first = lo + (start - lo) % period
    steps = (hi - first) // period + 1 if first <= hi else 0
    if steps > bound:
        raise FiberBoundExceeded(f"fiber {w} along {delta} exceeds {bound} steps")
    out = []
    for m in range(first, hi + 1, period):
        v = [0] * n
        v[c] = m
        for i in others:
            v[i] = int(wi[i] + m * ratio[i])
        out.append(tuple(v))
    return GradedPiece(w, tuple(sorted(out)))


def in_monoid(delta: Sequence[int], w, pivot: int | None = None) -> bool:
    """Whether w = pr_delta(v) for some v in Z^n_{>=0}."""
    return fiber(delta, w, pivot=pivot).dim > 0


def decompose(F: Series, delta: Sequence[int], pivot: int | None = None) -> dict:
    """Split F into its homogeneous components, keyed by graded index."""
    groups: dict[tuple, dict] = {}
    for exp, c in F.items():
        groups.setdefault(project_point(exp, delta, pivot), {})[exp] = c
    return {w: Series(F.n, F.field, groups[w]) for w in sorted(groups)}


def homogeneous_index(F: Series, delta: Sequence[int], pivot: int | None = None) -> tuple:
    comps = decompose(F, delta, pivot)
    if len(comps) != 1:
        raise ValueError(f"expected a homogeneous element, found {len(comps)} components")
    return next(iter(comps))


def split_direction(d: Sequence[int]) -> tuple[tuple, tuple]:
    """Disjoint nonnegative parts (d_plus, d_minus) with d = d_plus - d_minus."""
    return tuple(max(x, 0) for x in d), tuple(max(-x, 0) for x in d)


def segment_form(F: Series, d: Sequence[int], pivot: int) -> tuple[tuple, UPoly]:
    """Write F = X^base * sum_j p_j X^(j*d_plus + (m-j)*d_minus).

    Requires the support of F on one line parallel to the primitive vector d
    with ``d[pivot] < 0``; j = 0 is the end with the largest pivot exponent.
    """
    if F.is_zero():
        raise ValueError("zero has no segment form")
    d = tuple(d)
    if d[pivot] >= 0:
        raise ValueError("direction must be negative on the pivot")
    exps = list(F.terms)
    a0 = max(exps, key=lambda e: e[pivot])
    step = -d[pivot]
    coeffs: dict[int, object] = {}
    for e in exps:
        j, r = divmod(a0[pivot] - e[pivot], step)
        if r or tuple(a + j * x for a, x in zip(a0, d)) != e:
            raise ValueError("support is not on a segment parallel to the direction")
        coeffs[j] = F.coeff(e)
    m = max(coeffs)
    end = tuple(a + m * x for a, x in zip(a0, d))
    base = tuple(min(a, b) for a, b in zip(a0, end))
    p = UPoly(F.field, tuple(coeffs.get(j, 0) for j in range(m + 1)))
    return base, p


def homogenize(p: UPoly, d: Sequence[int], base: Sequence[int] | None = None) -> Series:
    """Inverse of :func:`segment_form`."""
    dp, dm = split_direction(d)
    n = len(dp)
    base = tuple(base) if base is not None else (0,) * n
    m = p.degree
    terms = {}
    for j, c in enumerate(p.coeffs):
        if c == 0:
            continue
        terms[tuple(b + j * x + (m - j) * y for b, x, y in zip(base, dp, dm))] = c
    return Series(n, p.field, terms)


def monoid_elements(delta: Sequence[int], limit, pivot: int | None = None) -> list[tuple]:
    """Elements of pr_delta(Z^n_{>=0}) whose entries all lie in [-limit, limit].

    Only meaningful in small dimension; used for enumeration in tests and
    diagnostics.
    """
    delta = tuple(int(x) for x in delta)
    c = check_direction(delta, pivot)
    n = len(delta)
    limit = Fraction(limit)
    # Every coordinate of a preimage is bounded once the projection is.
    span = int(math.ceil(limit * (1 + max(abs(x) for x in delta)))) + 1
    seen = set()

    def rec(prefix):
        if len(prefix) == n:
            w = project_point(prefix, delta, c)
            if all(-limit <= x <= limit for x in w):
                seen.add(w)
            return
        for x in range(span + 1):
            rec(prefix + (x,))

    rec(())
    return sorted(seen)
