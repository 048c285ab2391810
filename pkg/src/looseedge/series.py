"""Sparse multivariate polynomials and truncated power series.

A :class:`Series` maps exponent tuples to nonzero field elements.  It stands
both for elements f of K[[x_1, ..., x_n]] known up to some precision and for
elements of the graded ring gr_L(R) = K[X_1, ..., X_n] (initial forms).

Precision is tracked as an optional :class:`Truncation` ``(form, cutoff)``:
every term whose ``form``-value exceeds ``cutoff`` is unknown, and none is
stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .algebra import Field

__all__ = [
    "INF",
    "LinearForm",
    "Truncation",
    "Series",
    "support",
    "valuation",
    "initial_form",
    "mul_truncated",
    "add",
    "sub",
    "default_names",
]

# Valuation of the zero series; compares greater than every Fraction.
INF = math.inf


@dataclass(frozen=True)
class LinearForm:
    """v -> <coeffs, v> with nonnegative rational coefficients."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if any(c < 0 for c in cs):
            raise ValueError(f"linear form needs nonnegative entries, got {cs}")
        object.__setattr__(self, "coeffs", cs)

    def __call__(self, v: Iterable) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, v)), Fraction(0))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    @property
    def is_positive(self) -> bool:
        return all(c > 0 for c in self.coeffs)

    def increment(self) -> Fraction:
        """Smallest positive value of the form on differences of lattice points."""
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class Truncation:
    form: LinearForm
    cutoff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cutoff", Fraction(self.cutoff))


def _merge_truncations(a: Truncation | None, b: Truncation | None) -> Truncation | None:
    if a is None:
        return b
    if b is None:
        return a
    if a.form != b.form:
        raise ValueError("cannot combine series truncated along different forms")
    return a if a.cutoff <= b.cutoff else b


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


class Series:
    """Immutable sparse series in ``n`` variables over ``field``.

    Terms are kept sorted by ascending lexicographic order of exponents.
    Equality compares the ambient data and the terms, not the truncation.
    """

    __slots__ = ("n", "field", "_terms", "truncation")

    def __init__(
        self,
        n: int,
        field: Field,
        terms: Mapping | Iterable | None = None,
        truncation: Truncation | None = None,
    ):
        self.n = n
        self.field = field
        self.truncation = truncation
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[tuple, object] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not have length {n}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = field(c)
            if exp in acc:
                c = field.add(acc[exp], c)
            acc[exp] = c
        if truncation is not None:
            if len(truncation.form) != n:
                raise ValueError("truncation form has wrong length")
            acc = {e: c for e, c in acc.items() if truncation.form(e) <= truncation.cutoff}
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e] != 0}

    @classmethod
    def _raw(cls, n, field, terms: dict, truncation=None) -> "Series":
        # Trusted constructor: canonical nonzero coefficients, valid exponents.
        s = cls.__new__(cls)
        s.n = n
        s.field = field
        s.truncation = truncation
        if truncation is not None:
            form, cut = truncation.form, truncation.cutoff
            terms = {e: c for e, c in terms.items() if form(e) <= cut}
        s._terms = {e: terms[e] for e in sorted(terms) if terms[e] != 0}
        return s

    @classmethod
    def zero(cls, n: int, field: Field) -> "Series":
        return cls._raw(n, field, {})

    @classmethod
    def constant(cls, n: int, field: Field, c=1) -> "Series":
        return cls(n, field, {(0,) * n: c})

    @classmethod
    def monomial(cls, n: int, field: Field, exp, c=1) -> "Series":
        return cls(n, field, {tuple(exp): c})

    @classmethod
    def variable(cls, n: int, field: Field, i: int) -> "Series":
        exp = [0] * n
        exp[i] = 1
        return cls(n, field, {tuple(exp): 1})

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp) -> object:
        return self._terms.get(tuple(exp), self.field.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        return self.coeff((0,) * self.n) != 0

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.field, tuple(self._terms.items())))

    def _compatible(self, other: "Series"):
        if self.n != other.n or self.field != other.field:
            raise ValueError("series over different ambient rings")

    def _lift_scalar(self, other) -> "Series | None":
        if isinstance(other, Series):
            return other
        if isinstance(other, (int, Fraction, str)):
            return Series.constant(self.n, self.field, other)
        return None

    def __add__(self, other):
        other = self._lift_scalar(other)
        if other is None:
            return NotImplemented
        self._compatible(other)
        F = self.field
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = F.add(acc[e], c) if e in acc else c
        return Series._raw(self.n, F, acc, _merge_truncations(self.truncation, other.truncation))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Series._raw(self.n, F, {e: F.neg(c) for e, c in self._terms.items()}, self.truncation)

    def __sub__(self, other):
        other = self._lift_scalar(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift_scalar(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "Series":
        F = self.field
        c = F(c)
        if c == 0:
            return Series._raw(self.n, F, {}, self.truncation)
        return Series._raw(self.n, F, {e: F.mul(c, a) for e, a in self._terms.items()}, self.truncation)

    def shift(self, exp) -> "Series":
        """Multiply by the monomial x^exp."""
        exp = tuple(exp)
        terms = {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()}
        trunc = self.truncation
        if trunc is not None:
            trunc = Truncation(trunc.form, trunc.cutoff + trunc.form(exp))
        return Series._raw(self.n, self.field, terms, trunc)

    def __mul__(self, other):
        if not isinstance(other, Series):
            if isinstance(other, (int, Fraction, str)):
                return self.scale(other)
            return NotImplemented
        self._compatible(other)
        trunc = _product_truncation(self, other)
        terms = _mul_terms(self, other, trunc)
        return Series._raw(self.n, self.field, terms, trunc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Series.constant(self.n, self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def truncated(self, form: LinearForm, cutoff) -> "Series":
        """Drop terms with ``form``-value above ``cutoff`` and record the precision."""
        trunc = Truncation(form, Fraction(cutoff))
        if self.truncation is not None:
            trunc = _merge_truncations(self.truncation, trunc)
        return Series._raw(self.n, self.field, self._terms, trunc)

    def exact(self) -> "Series":
        """The same terms with the truncation metadata removed."""
        return Series._raw(self.n, self.field, self._terms)

    def filter(self, keep) -> "Series":
        """Sub-series of the terms whose exponent satisfies ``keep``."""
        return Series._raw(self.n, self.field, {e: c for e, c in self._terms.items() if keep(e)})

    def max_exponent(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def to_str(self, names=None) -> str:
        names = list(names) if names is not None else default_names(self.n)
        if not self._terms:
            return "0"
        F = self.field
        parts = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            neg = F.p is None and c < 0
            mag = -c if neg else c
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(names, exp) if k
            )
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Series({self.n}, {self.field}, {self.to_str()!r})"


def _product_truncation(f: Series, g: Series) -> Truncation | None:
    bounds = []
    for a, b in ((f, g), (g, f)):
        if a.truncation is not None:
            nu = valuation(b, a.truncation.form)
            if nu != INF:
                bounds.append(Truncation(a.truncation.form, a.truncation.cutoff + nu))
    result = None
    for t in bounds:
        result = _merge_truncations(result, t)
    return result


def _mul_terms(f: Series, g: Series, trunc: Truncation | None) -> dict:
    F = f.field
    acc: dict[tuple, object] = {}
    if trunc is None:
        for ea, ca in f._terms.items():
            for eb, cb in g._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                acc[e] = acc.get(e, 0) + ca * cb
    else:
        form, cut = trunc.form, trunc.cutoff
        fv = [(e, c, form(e)) for e, c in f._terms.items()]
        gv = sorted(((e, c, form(e)) for e, c in g._terms.items()), key=lambda t: t[2])
        for ea, ca, la in fv:
            for eb, cb, lb in gv:
                if la + lb > cut:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                acc[e] = acc.get(e, 0) + ca * cb
    if F.p is not None:
        p = F.p
        return {e: c % p for e, c in acc.items() if c % p}
    return {e: Fraction(c) for e, c in acc.items() if c}


def support(f: Series) -> frozenset:
    return frozenset(f._terms)


def valuation(f: Series, L: LinearForm):
    """min L(A) over the support; ``INF`` for the zero series."""
    if not f._terms:
        return INF
    return min(L(e) for e in f._terms)


def initial_form(f: Series, L: LinearForm) -> Series:
    """Terms of ``f`` attaining the valuation ``valuation(f, L)``."""
    if not f._terms:
        raise ValueError("the zero series has no initial form")
    nu = valuation(f, L)
    return Series._raw(f.n, f.field, {e: c for e, c in f._terms.items() if L(e) == nu})


def mul_truncated(f: Series, g: Series, L: LinearForm, cutoff) -> Series:
    """f*g with every term of L-value above ``cutoff`` discarded."""
    f._compatible(g)
    trunc = Truncation(L, Fraction(cutoff))
    inherent = _product_truncation(f, g)
    if inherent is not None:
        trunc = _merge_truncations(inherent, trunc)
    return Series._raw(f.n, f.field, _mul_terms(f, g, trunc), trunc)


def add(f: Series, g: Series) -> Series:
    return f + g


def sub(f: Series, g: Series) -> Series:
    return f - g
