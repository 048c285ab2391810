"""Factorization of a series along a loose edge of its Newton polyhedron.

The initial form of f along a compact edge is a monomial times a segment
polynomial, which is encoded by a univariate polynomial p(T).  A coprime
split p = p1 * p2 gives f's initial form as G * H, and the lifting loop
corrects g = G + ... and h = H + ... level by level of the edge's linear
form L by solving graded Bezout problems.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .algebra import UPoly, upoly_factor, upoly_gcd
from .bezout import BezoutError, BezoutProblem, Mode, solve_graded_bezout
from .grading import decompose, homogenize, split_direction
from .polyhedron import EdgeFrame, NewtonPolyhedron, is_loose, on_segment
from .series import INF, LinearForm, Series, initial_form, mul_truncated, valuation
from .weierstrass import (
    divide_monic,
    weierstrass_prepare,
    x_order_form,
    z_degree,
)

__all__ = [
    "EdgePolynomial",
    "Split",
    "Face",
    "FactorizationResult",
    "Report",
    "LiftError",
    "NotAnEdge",
    "InvalidSplit",
    "NotLoose",
    "NotDescendant",
    "BezoutFailure",
    "IterationCap",
    "IncompleteFactorization",
    "edge_to_univariate",
    "univariate_to_edge",
    "make_split",
    "default_split",
    "automatic_split",
    "default_target",
    "lift_factorization",
    "lift_monic",
    "factor_weierstrass",
    "irreducibility_report",
]

DEFAULT_ITER_CAP = 10_000
DEFAULT_STEPS = 10


class LiftError(Exception):
    pass


class NotAnEdge(LiftError, ValueError):
    pass


class InvalidSplit(LiftError, ValueError):
    pass


class NotLoose(LiftError):
    pass


class NotDescendant(LiftError):
    pass


class BezoutFailure(LiftError):
    pass


class IterationCap(LiftError):
    pass


class IncompleteFactorization(LiftError):
    pass


def _iter_cap(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("LOOSEEDGE_ITER_CAP")
    return int(env) if env else DEFAULT_ITER_CAP


@dataclass(frozen=True)
class EdgePolynomial:
    """in_E(f) = X^base * sum_j p_j X^(j*d_plus + (k-j)*d_minus)."""

    base: tuple
    d_plus: tuple
    d_minus: tuple
    k: int
    p: UPoly
    edge: EdgeFrame

    @property
    def d(self) -> tuple:
        return tuple(a - b for a, b in zip(self.d_plus, self.d_minus))

    def initial_form(self) -> Series:
        return homogenize(self.p, self.d, self.base)


def _check_edge(f: Series, e: EdgeFrame) -> None:
    L = e.L
    if len(e.alpha) != f.n:
        raise NotAnEdge("edge lives in a different dimension")
    if not L.is_positive or L(e.alpha) != L(e.beta):
        raise NotAnEdge("edge form is not a positive form constant on the edge")
    nu = valuation(f, L)
    if L(e.alpha) != nu or f.coeff(e.alpha) == 0 or f.coeff(e.beta) == 0:
        raise NotAnEdge("edge ends are not L-minimal support points of f")
    for exp in f.terms:
        if L(exp) == nu and not on_segment(exp, e.alpha, e.beta):
            raise NotAnEdge("the L-minimal face of f is larger than the edge")


def edge_to_univariate(f: Series, e: EdgeFrame) -> EdgePolynomial:
    """Read p_j off the coefficient of f at alpha + j*d, j = 0..k."""
    _check_edge(f, e)
    coeffs = [f.coeff(tuple(a + j * x for a, x in zip(e.alpha, e.d))) for j in range(e.k + 1)]
    p = UPoly(f.field, tuple(coeffs))
    dp, dm = split_direction(e.d)
    return EdgePolynomial(e.base, dp, dm, e.k, p, e)


@dataclass(frozen=True)
class Split:
    p1: UPoly
    p2: UPoly
    origin: str = "auto"
    mode: Mode = Mode.NO_VARIABLE_DIVIDES


def make_split(
    ep: EdgePolynomial,
    p1: UPoly,
    p2: UPoly | None = None,
    mode: Mode = Mode.NO_VARIABLE_DIVIDES,
    origin: str = "user",
) -> Split:
    """Validate and normalize p = p1 * p2.

    p1 is made monic, or p1(0) = 1 in ``MonicInLast`` mode; the scalar goes
    into p2.  When p2 is given, p1 * p2 only has to equal p up to a unit.
    """
    mode = Mode(mode)
    p = ep.p
    if p1.field != p.field or (p2 is not None and p2.field != p.field):
        raise InvalidSplit("split factors are over a different field")
    if p1.degree < 1:
        raise InvalidSplit("p1 must have degree >= 1")
    if p2 is None:
        q, r = divmod(p, p1)
        if not r.is_zero():
            raise InvalidSplit(f"{p1} does not divide {p}")
        p2 = q
    else:
        prod = p1 * p2
        if prod.is_zero() or prod.degree != p.degree or prod.scale(p.lc) != p.scale(prod.lc):
            raise InvalidSplit(f"({p1})*({p2}) is not {p} up to a unit")
        p2 = p2.scale(p.field.div(p.lc, prod.lc))
    F = p.field
    s = p1[0] if mode is Mode.MONIC_IN_LAST else p1.lc
    if s == 0:
        raise InvalidSplit("p1 vanishes at 0")
    p1, p2 = p1.scale(F.inv(s)), p2.scale(s)
    if upoly_gcd(p1, p2).degree != 0:
        raise InvalidSplit(f"{p1} and {p2} are not coprime")
    return Split(p1, p2, origin, mode)


def default_split(ep: EdgePolynomial, mode: Mode = Mode.NO_VARIABLE_DIVIDES) -> Split | None:
    """Split off the power of the smallest irreducible factor of p.

    Returns None when p is a unit times a power of one irreducible.
    """
    if ep.p.degree < 1:
        return None
    fac = upoly_factor(ep.p)
    if len(fac.factors) == 1:
        if fac.maybe_reducible:
            raise IncompleteFactorization(
                f"cannot decide whether {fac.factors[0][0]} is irreducible over Q"
            )
        return None
    q, e = min(fac.factors, key=lambda qe: (qe[0].sort_key(), qe[1]))
    return make_split(ep, q**e, mode=mode, origin="auto")


def automatic_split(ep: EdgePolynomial, mode: Mode = Mode.NO_VARIABLE_DIVIDES) -> Split | None:
    """default_split, else p1 = p when the edge carries a monomial factor."""
    s = default_split(ep, mode)
    if s is None and any(ep.base):
        s = make_split(ep, ep.p, mode=mode, origin="auto")
    return s


def univariate_to_edge(ep: EdgePolynomial, s: Split) -> tuple[Series, Series]:
    """G = hom(p1), H = X^base * hom(p2)."""
    if s.p1 * s.p2 != ep.p:
        raise InvalidSplit("split does not multiply to the edge polynomial")
    G = homogenize(s.p1, ep.d)
    H = homogenize(s.p2, ep.d, ep.base)
    return G, H


@dataclass(frozen=True)
class Face:
    """A compact face of dimension <= 1, given by its one or two ends."""

    ends: tuple

    @property
    def is_vertex(self) -> bool:
        return len(self.ends) == 1

    @classmethod
    def of(cls, form: Series) -> "Face":
        pts = sorted(form.terms)
        return cls((pts[0],) if len(pts) == 1 else (pts[0], pts[-1]))

    def __add__(self, other: "Face") -> "Face":
        pts = sorted(tuple(x + y for x, y in zip(a, b)) for a in self.ends for b in other.ends)
        return Face((pts[0],) if pts[0] == pts[-1] else (pts[0], pts[-1]))


@dataclass(frozen=True)
class FactorizationResult:
    g: Series
    h: Series
    G: Series
    H: Series
    E1: Face
    E2: Face
    residual_valuation: object
    trace: tuple
    target: Fraction
    edge: EdgeFrame
    split: Split
    loose_checked: bool = True
    form: LinearForm | None = None
    unit: Series | None = None
    extra: dict = dc_field(default_factory=dict)


def default_target(f: Series, e: EdgeFrame) -> Fraction:
    return valuation(f, e.L) + DEFAULT_STEPS * e.L.increment()


def lift_factorization(
    f: Series,
    edge: EdgeFrame,
    split: Split,
    target=None,
    *,
    check_loose: bool = True,
    mode: Mode | None = None,
    iter_cap: int | None = None,
) -> FactorizationResult:
    """Lift in_E(f) = G*H to f = g*h modulo L-values above ``target``."""
    mode = Mode(mode if mode is not None else split.mode)
    ep = edge_to_univariate(f, edge)
    L = edge.L
    a0 = valuation(f, L)
    target = default_target(f, edge) if target is None else Fraction(target)
    if target < a0:
        raise ValueError(f"target {target} is below the valuation {a0}")
    if f.truncation is not None and f.truncation.form == L and f.truncation.cutoff < target:
        raise ValueError("f is not known to the requested target")
    if check_loose:
        loose = edge.loose
        if loose is None:
            loose = is_loose(NewtonPolyhedron.of(f), edge)
        if not loose:
            raise NotLoose("edge is contained in a higher-dimensional compact face")

    G, H = univariate_to_edge(ep, split)
    delta, pivot = edge.d, edge.pivot
    cap = _iter_cap(iter_cap)
    fx = f.exact()
    g, h = G, H
    residual = (fx.truncated(L, target) - mul_truncated(G, H, L, target)).exact()
    trace = [(0, a0, 0)]
    checked = False
    iteration = 0
    while not residual.is_zero():
        iteration += 1
        if iteration > cap:
            raise IterationCap(f"iteration cap {cap} exceeded")
        level = valuation(residual, L)
        dg = Series.zero(f.n, f.field)
        dh = Series.zero(f.n, f.field)
        comps = decompose(initial_form(residual, L), delta, pivot)
        for comp in comps.values():
            try:
                sol = solve_graded_bezout(BezoutProblem(G, H, comp, delta, mode, pivot), check=not checked)
            except BezoutError as exc:
                raise BezoutFailure(str(exc)) from exc
            checked = True
            dh = dh + sol.A
            dg = dg + sol.B
        trace.append((iteration, level, len(comps)))
        # (g + dg)(h + dh) = g*h + g*dh + dg*(h + dh)
        residual = (
            residual - mul_truncated(g, dh, L, target) - mul_truncated(dg, h + dh, L, target)
        ).exact()
        g, h = g + dg, h + dh

    rem = fx - g * h
    res_val = valuation(rem, L)
    if res_val != INF:
        g = g.truncated(L, target - valuation(H, L))
        h = h.truncated(L, target - valuation(G, L))
    return FactorizationResult(
        g=g, h=h, G=G, H=H,
        E1=Face.of(G), E2=Face.of(H),
        residual_valuation=res_val,
        trace=tuple(trace),
        target=target,
        edge=edge,
        split=split,
        loose_checked=check_loose,
        form=L,
    )


def lift_monic(f: Series, edge: EdgeFrame, split: Split, target=None, **kwargs) -> FactorizationResult:
    """The lifting loop for a descendant edge, with G monic in the last variable."""
    if not edge.is_descendant:
        raise NotDescendant("edge direction is not descendant in the last variable")
    if split.mode is not Mode.MONIC_IN_LAST or split.p1[0] != 1:
        raise InvalidSplit("monic lifting needs a split normalized by p1(0) = 1")
    return lift_factorization(f, edge, split, target, mode=Mode.MONIC_IN_LAST, **kwargs)


def _box_level(L: LinearForm, order: int, z_limit: int):
    # Largest L-value over x-order <= order and z-degree < z_limit.
    lx = max(L.coeffs[:-1])
    return lx * order + L.coeffs[-1] * (z_limit - 1)


def factor_weierstrass(
    f: Series,
    edge: EdgeFrame,
    split: Split,
    order: int,
    target=None,
    **kwargs,
) -> FactorizationResult:
    """f = ghat * hhat with ghat monic in z, modulo x-order above ``order``.

    ``hhat`` is obtained by dividing f by ghat in (K[[x]]/x^(order+1))[z],
    which agrees with unit * hbar.
    """
    d = split.p1.degree * (-edge.d[-1])
    L = edge.L
    z_bound = max(2 * d, 1)
    need = _box_level(L, order, d * (order + 1) + z_bound)
    # g is correct up to L-level target - nu(H), so shift by nu(H).
    ep = edge_to_univariate(f, edge)
    _, H = univariate_to_edge(ep, split)
    need = need + valuation(H, L)
    target = need if target is None else max(Fraction(target), need)
    lifted = lift_monic(f, edge, split, target, **kwargs)
    prep = weierstrass_prepare(lifted.g.exact(), d, order, z_bound)
    ghat = prep.ghat
    hhat, rem = divide_monic(f, ghat, order)
    form = x_order_form(f.n)
    residual = f.exact() - ghat * hhat
    res_val = valuation(residual, form)
    extra = {
        "gbar": lifted.g,
        "hbar": lifted.h,
        "order": order,
        "d": d,
        "lift_target": target,
        "division_remainder": rem,
    }
    if res_val != INF:
        ghat = ghat.truncated(form, order)
        hhat = hhat.truncated(form, order)
    return FactorizationResult(
        g=ghat, h=hhat, G=lifted.G, H=lifted.H,
        E1=lifted.E1, E2=lifted.E2,
        residual_valuation=res_val,
        trace=lifted.trace,
        target=Fraction(order),
        edge=edge,
        split=split,
        loose_checked=lifted.loose_checked,
        form=form,
        unit=prep.unit,
        extra=extra,
    )


REDUCIBLE = "Reducible"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Report:
    verdict: str
    code: str
    reason: str
    vertices: tuple
    edge: EdgeFrame | None = None
    split: Split | None = None
    result: FactorizationResult | None = None

    @property
    def reducible(self) -> bool:
        return self.verdict == REDUCIBLE


def irreducibility_report(f: Series, target=None) -> Report:
    """Look for a loose edge that yields a nontrivial factorization."""
    if f.is_zero() or f.is_unit():
        raise ValueError("irreducibility is only analysed for nonzero non-units")
    P = NewtonPolyhedron.of(f)
    verts = P.vertices
    loose = P.loose_edges
    if not loose:
        if not P.edges:
            reason = "single vertex: a unit times a monomial, no compact edge"
        else:
            reason = "no loose edge"
        return Report(INCONCLUSIVE, "no-loose-edge", reason, verts)
    incomplete = []
    for e in loose:
        ep = edge_to_univariate(f, e)
        try:
            s = automatic_split(ep)
        except IncompleteFactorization as exc:
            incomplete.append(str(exc))
            continue
        if s is None:
            continue
        result = lift_factorization(f, e, s, target)
        why = (
            "segment polynomial has coprime factors"
            if s.p2.degree > 0
            else "edge carries a monomial factor"
        )
        return Report(REDUCIBLE, "reducible", why, verts, e, s, result)
    if incomplete:
        return Report(INCONCLUSIVE, "incomplete-factorization", "; ".join(incomplete), verts)
    e = loose[0]
    p = edge_to_univariate(f, e).p
    q, k = upoly_factor(p).factors[0]
    reason = f"initial form is a unit times ({q.to_str()})^{k} with an irreducible base, on every loose edge"
    return Report(INCONCLUSIVE, "power-of-irreducible", reason, verts)
