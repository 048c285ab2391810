"""Independent reference computations used by the tests.

Nothing here calls into the package's LP, grading or lifting code: these
are brute-force or floating-point routes to the same answers.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog


def naive_mul(f: dict, g: dict, p: int | None = None) -> dict:
    out: dict = {}
    for a, x in f.items():
        for b, y in g.items():
            e = tuple(i + j for i, j in zip(a, b))
            out[e] = out.get(e, 0) + x * y
    if p is not None:
        return {e: c % p for e, c in out.items() if c % p}
    return {e: c for e, c in out.items() if c}


def naive_sub(f: dict, g: dict, p: int | None = None) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) - c
    if p is not None:
        return {e: c % p for e, c in out.items() if c % p}
    return {e: c for e, c in out.items() if c}


def form_min(terms: dict, weights) -> Fraction | float:
    if not terms:
        return math.inf
    return min(sum(Fraction(w) * x for w, x in zip(weights, e)) for e in terms)


def proj(v, delta):
    """pr_delta along the last coordinate, computed directly."""
    t = Fraction(v[-1], delta[-1])
    return tuple(Fraction(v[i]) - t * delta[i] for i in range(len(v) - 1))


def brute_fiber(delta, w, box: int = 60) -> list:
    """Every lattice point of [0, box]^n projecting to w (n = 2 or 3)."""
    n = len(delta)
    w = tuple(Fraction(x) for x in (w if isinstance(w, (tuple, list)) else (w,)))
    return sorted(
        v for v in itertools.product(range(box + 1), repeat=n) if proj(v, delta) == w
    )


def rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = np.array(points[0], dtype=float)
    m = np.array([np.array(p, dtype=float) - base for p in points[1:]])
    return int(np.linalg.matrix_rank(m))


def is_face_set(points, subset) -> bool:
    """Is ``subset`` exactly the set of minimisers of some positive form?

    Maximise t subject to lam . s = nu on the subset, lam . v >= nu + t
    off it, lam_i >= t and t <= 1; the set is a compact face iff t > 0.
    """
    n = len(points[0])
    inside = [p for p in points if p in subset]
    outside = [p for p in points if p not in subset]
    # variables: lam_1..lam_n, nu, t
    c = np.zeros(n + 2)
    c[-1] = -1.0
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for v in outside:
        A_ub.append([-x for x in v] + [1.0, 1.0])
        b_ub.append(0.0)
    for i in range(n):
        row = [0.0] * (n + 2)
        row[i] = -1.0
        row[-1] = 1.0
        A_ub.append(row)
        b_ub.append(0.0)
    for s in inside:
        A_eq.append(list(s) + [-1.0, 0.0])
        b_eq.append(0.0)
    bounds = [(0, None)] * n + [(None, None), (None, 1.0)]
    res = linprog(
        c,
        A_ub=np.array(A_ub) if A_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(A_eq) if A_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=bounds,
        method="highs",
    )
    return res.status == 0 and -res.fun >= 0.5


def compact_faces(points) -> list:
    """All compact faces, as frozensets of the support points they contain."""
    points = sorted(set(map(tuple, points)))
    faces = []
    for r in range(1, len(points) + 1):
        for sub in itertools.combinations(points, r):
            if is_face_set(points, set(sub)):
                faces.append(frozenset(sub))
    return faces


def loose_edges_bruteforce(points) -> dict:
    """Map {frozenset of end points: loose flag} from exhaustive enumeration."""
    faces = compact_faces(points)
    dims = {F: rank(sorted(F)) for F in faces}
    out = {}
    for F, dim in dims.items():
        if dim != 1:
            continue
        pts = sorted(F)
        ends = frozenset((pts[0], pts[-1]))
        out[ends] = not any(dims[K] >= 2 and F <= K for K in faces)
    return out


def vertices_bruteforce(points) -> set:
    return {next(iter(F)) for F in compact_faces(points) if len(F) == 1}


def sqrt_one_minus_x(k: int) -> Fraction:
    """Coefficient of x^k in (1 - x)^(1/2)."""
    c = Fraction(1)
    for j in range(k):
        c *= Fraction(1, 2) - j
    c /= math.factorial(k)
    return c * (-1) ** k


def linprog_feasible(nvars, cons) -> bool:
    """Feasibility of a list of (coeffs, rhs, is_equality) by floating LP."""
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for coeffs, rhs, equality in cons:
        if equality:
            A_eq.append([float(c) for c in coeffs])
            b_eq.append(float(rhs))
        else:
            A_ub.append([-float(c) for c in coeffs])
            b_ub.append(-float(rhs))
    res = linprog(
        np.zeros(nvars),
        A_ub=np.array(A_ub) if A_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(A_eq) if A_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=[(None, None)] * nvars,
        method="highs",
    )
    return res.status == 0


def brute_irreducible_factors_modp(coeffs, p):
    """Exhaustive check of irreducibility over GF(p) by trial division."""
    deg = len(coeffs) - 1
    if deg <= 0:
        return False
    for dd in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=dd):
            divisor = list(tail) + [1]
            # polynomial remainder mod p
            rem = [c % p for c in coeffs]
            inv = pow(coeffs[-1], -1, p)
            rem = [(c * inv) % p for c in rem]
            for i in range(len(rem) - 1, dd - 1, -1):
                q = rem[i]
                if q:
                    for j in range(dd + 1):
                        rem[i - dd + j] = (rem[i - dd + j] - q * divisor[j]) % p
            if not any(rem[:dd]):
                return False
    return True
