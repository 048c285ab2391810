"""Exact rational linear feasibility by Fourier-Motzkin elimination.

Systems are small (a handful of variables, a few dozen constraints), so
exactness is cheap.  Equalities are eliminated by substitution; inequalities
by pairwise combination.  Rows are normalised and only the tightest row per
coefficient vector is kept, which holds the row count in check without
discarding anything needed for exact bounds.

Constraints read ``coeffs . x >= rhs`` or ``coeffs . x == rhs``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = ["Constraint", "ge", "eq", "feasible", "lexmin", "variable_bounds"]


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    rhs: Fraction
    equality: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def satisfied_by(self, x: Sequence) -> bool:
        lhs = sum((a * v for a, v in zip(self.coeffs, x)), Fraction(0))
        return lhs == self.rhs if self.equality else lhs >= self.rhs


def ge(coeffs, rhs=0) -> Constraint:
    return Constraint(tuple(coeffs), rhs)


def eq(coeffs, rhs=0) -> Constraint:
    return Constraint(tuple(coeffs), rhs, equality=True)


class Infeasible(Exception):
    pass


def _normalize(coeffs, rhs):
    for c in coeffs:
        if c:
            s = abs(c)
            return tuple(a / s for a in coeffs), rhs / s
    return coeffs, rhs


class _System:
    # Rows: ineq maps coeffs -> rhs; eq is a list of (coeffs, rhs).

    def __init__(self, nvars: int, constraints: Iterable[Constraint], fixed: dict | None = None):
        self.nvars = nvars
        self.ineqs: dict = {}
        self.eqs: list = []
        fixed = fixed or {}
        for c in constraints:
            if len(c.coeffs) != nvars:
                raise ValueError("constraint has wrong number of coefficients")
            coeffs = list(c.coeffs)
            rhs = c.rhs
            for var, val in fixed.items():
                rhs -= coeffs[var] * val
                coeffs[var] = Fraction(0)
            if c.equality:
                self._add_eq(tuple(coeffs), rhs)
            else:
                self._add_ineq(tuple(coeffs), rhs)

    def _add_eq(self, coeffs, rhs):
        if not any(coeffs):
            if rhs != 0:
                raise Infeasible
            return
        self.eqs.append(_normalize(coeffs, rhs))

    def _add_ineq(self, coeffs, rhs):
        if not any(coeffs):
            if rhs > 0:
                raise Infeasible
            return
        coeffs, rhs = _normalize(coeffs, rhs)
        old = self.ineqs.get(coeffs)
        if old is None or rhs > old:
            self.ineqs[coeffs] = rhs

    def _substitute(self, var: int, row):
        coeffs, rhs = row
        a = coeffs[var]
        # x_var = (rhs - sum_{j != var} coeffs_j x_j) / a

        def apply(cs, r):
            b = cs[var]
            if not b:
                return cs, r
            t = b / a
            return tuple(x - t * y for x, y in zip(cs, coeffs)), r - t * rhs

        old_ineqs = self.ineqs
        self.ineqs = {}
        for cs, r in old_ineqs.items():
            self._add_ineq(*apply(cs, r))
        old_eqs = self.eqs
        self.eqs = []
        for item in old_eqs:
            if item is row:
                continue
            self._add_eq(*apply(*item))

    def _fourier_motzkin(self, var: int):
        pos, neg, keep = [], [], []
        for cs, r in self.ineqs.items():
            if cs[var] > 0:
                pos.append((cs, r))
            elif cs[var] < 0:
                neg.append((cs, r))
            else:
                keep.append((cs, r))
        self.ineqs = {}
        for cs, r in keep:
            self._add_ineq(cs, r)
        for cp, rp in pos:
            ap = cp[var]
            for cn, rn in neg:
                an = -cn[var]
                cs = tuple(an * x + ap * y for x, y in zip(cp, cn))
                self._add_ineq(cs, an * rp + ap * rn)

    def eliminate(self, variables: Iterable[int]):
        todo = set(variables)
        while todo:
            row = next((r for r in self.eqs if any(r[0][v] for v in todo)), None)
            if row is not None:
                var = min((v for v in todo if row[0][v]), key=lambda v: v)
                self._substitute(var, row)
                todo.discard(var)
                continue

            def cost(v):
                p = sum(1 for cs in self.ineqs if cs[v] > 0)
                q = sum(1 for cs in self.ineqs if cs[v] < 0)
                return (p * q - p - q, v)

            var = min(todo, key=cost)
            self._fourier_motzkin(var)
            todo.discard(var)

    def bounds(self, var: int):
        lo = hi = None
        for cs, r in self.eqs:
            val = r / cs[var]
            if lo is not None and val < lo or hi is not None and val > hi:
                raise Infeasible
            lo = hi = val
        for cs, r in self.ineqs.items():
            a = cs[var]
            val = r / a
            if a > 0:
                lo = val if lo is None else max(lo, val)
            else:
                hi = val if hi is None else min(hi, val)
        if lo is not None and hi is not None and lo > hi:
            raise Infeasible
        return lo, hi


def feasible(nvars: int, constraints: Iterable[Constraint]) -> bool:
    """True iff some rational point satisfies every constraint."""
    try:
        system = _System(nvars, list(constraints))
        system.eliminate(range(nvars))
    except Infeasible:
        return False
    return True


def variable_bounds(nvars: int, constraints: Iterable[Constraint], var: int, fixed: dict | None = None):
    """Projection of the feasible set onto ``var`` as ``(lo, hi)``.

    ``None`` stands for an unbounded side; raises ``ValueError`` when the
    system is infeasible.
    """
    try:
        system = _System(nvars, list(constraints), fixed)
        system.eliminate(v for v in range(nvars) if v != var and v not in (fixed or {}))
        return system.bounds(var)
    except Infeasible:
        raise ValueError("infeasible system") from None


def lexmin(nvars: int, constraints: Iterable[Constraint]) -> tuple | None:
    """Lexicographically smallest feasible point, or None if infeasible.

    Every coordinate must be bounded below on the feasible set.
    """
    constraints = list(constraints)
    if not feasible(nvars, constraints):
        return None
    fixed: dict[int, Fraction] = {}
    for var in range(nvars):
        lo, _hi = variable_bounds(nvars, constraints, var, fixed)
        if lo is None:
            raise ValueError(f"variable {var} is unbounded below")
        fixed[var] = lo
    return tuple(fixed[v] for v in range(nvars))
