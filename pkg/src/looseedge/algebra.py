"""Exact coefficient fields and univariate polynomials over them.

Two fields are supported: the rationals (elements are ``Fraction``) and
prime fields GF(p) (elements are ``int`` in ``range(p)``).  Elements are
plain Python values in canonical form, so equality is structural.

Univariate polynomials (:class:`UPoly`) carry their field and a tuple of
coefficients ordered by degree.  Over GF(p) they factor completely
(square-free decomposition, distinct-degree and Cantor-Zassenhaus
equal-degree splitting).  Over Q only rational roots are extracted; a
remainder of degree >= 4 is returned as-is and flagged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

__all__ = [
    "Field",
    "QQ",
    "GF",
    "UPoly",
    "Factorization",
    "field_arith",
    "upoly_gcd",
    "upoly_squarefree",
    "upoly_factor",
    "is_irreducible",
]

CZ_RETRY_CAP = 64


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for q in range(3, isqrt(p) + 1, 2):
        if p % q == 0:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p`` is None, otherwise the prime field GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p is None else "PrimeField"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, value):
        """Canonical element for an int, Fraction or string literal."""
        if isinstance(value, str):
            return self.parse(value)
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        if not isinstance(value, int):
            raise TypeError(f"cannot coerce {value!r} into {self}")
        return value % self.p

    def parse(self, text: str):
        text = text.strip()
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid coefficient {text!r}") from exc
        return self(q)

    def format(self, a) -> str:
        return str(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "Rationals"}
        return {"kind": "PrimeField", "p": self.p}

    @classmethod
    def from_json(cls, doc) -> "Field":
        if isinstance(doc, str):
            key = doc.strip().upper()
            if key in ("Q", "QQ", "RATIONALS"):
                return cls()
            if key.startswith("GF(") and key.endswith(")"):
                return cls(int(key[3:-1]))
            if key.startswith("F") and key[1:].isdigit():
                return cls(int(key[1:]))
            raise ValueError(f"unknown field {doc!r}")
        kind = doc.get("kind")
        if kind == "Rationals":
            return cls()
        if kind == "PrimeField":
            return cls(int(doc["p"]))
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def field_arith(field: Field, a, b, op: str):
    """Apply ``op`` in {add, sub, mul, div} to canonical elements of ``field``."""
    ops = {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](field(a), field(b))


@dataclass(frozen=True)
class UPoly:
    """Univariate polynomial in T; ``coeffs[j]`` is the coefficient of T^j."""

    field: Field
    coeffs: tuple = ()

    def __post_init__(self):
        cs = [self.field(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def constant(cls, field: Field, c) -> "UPoly":
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: Field, degree: int, c=1) -> "UPoly":
        return cls(field, (0,) * degree + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, j: int):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return self.field.zero

    def _check(self, other: "UPoly"):
        if not isinstance(other, UPoly):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("polynomials over different fields")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(F, tuple(F.add(self[j], other[j]) for j in range(n)))

    def __neg__(self):
        return UPoly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self.scale(other)
        self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return UPoly(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return UPoly(F, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = UPoly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "UPoly":
        F = self.field
        c = F(c)
        return UPoly(F, tuple(F.mul(c, a) for a in self.coeffs))

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc))

    def __divmod__(self, other: "UPoly"):
        self._check(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UPoly(F), self
        q = [F.zero] * (dq + 1)
        inv_lc = F.inv(other.lc)
        m = len(other.coeffs) - 1
        for i in range(dq, -1, -1):
            c = F.mul(rem[i + m], inv_lc)
            q[i] = c
            if c == 0:
                continue
            for j, b in enumerate(other.coeffs):
                rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return UPoly(F, tuple(q)), UPoly(F, tuple(rem[:m]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def derivative(self) -> "UPoly":
        F = self.field
        return UPoly(F, tuple(F.mul(F(j), c) for j, c in enumerate(self.coeffs) if j))

    def __call__(self, t):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, t), c)
        return acc

    def pow_mod(self, e: int, modulus: "UPoly") -> "UPoly":
        result = UPoly.constant(self.field, 1) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def sort_key(self):
        """Degree first, then the coefficient sequence from low to high."""
        return (self.degree, self.coeffs)

    def to_str(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            neg = self.field.p is None and c < 0
            mag = -c if neg else c
            if j == 0:
                body = str(mag)
            else:
                mono = var if j == 1 else f"{var}^{j}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UPoly({self.field}, {self.to_str()!r})"


def upoly_gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic greatest common divisor."""
    if p.field != q.field:
        raise ValueError("polynomials over different fields")
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def _pth_root(f: UPoly) -> UPoly:
    # Over GF(p) the Frobenius is the identity on coefficients.
    p = f.field.p
    return UPoly(f.field, f.coeffs[::p])


def _sqf_char0(f: UPoly) -> list[tuple[UPoly, int]]:
    # Yun's algorithm.
    out = []
    df = f.derivative()
    a = upoly_gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = upoly_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def _sqf_charp(f: UPoly) -> list[tuple[UPoly, int]]:
    p = f.field.p
    out: list[tuple[UPoly, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, e * p) for g, e in _sqf_charp(_pth_root(f))]
    c = upoly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = upoly_gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        out.extend((g, e * p) for g, e in _sqf_charp(_pth_root(c).monic()))
    return out


def _merge(parts: list[tuple[UPoly, int]]) -> list[tuple[UPoly, int]]:
    acc: dict[UPoly, int] = {}
    for g, e in parts:
        g = g.monic()
        acc[g] = acc.get(g, 0) + e
    return sorted(acc.items(), key=lambda ge: (ge[0].sort_key(), ge[1]))


def upoly_squarefree(p: UPoly) -> list[tuple[UPoly, int]]:
    """Square-free decomposition into monic, pairwise coprime parts.

    The product of ``g**e`` over the result equals ``p`` up to the unit
    ``p.lc``.
    """
    if p.degree < 1:
        raise ValueError("square-free decomposition needs degree >= 1")
    f = p.monic()
    parts = _sqf_char0(f) if p.field.p is None else _sqf_charp(f)
    return _merge(parts)


def _distinct_degree(f: UPoly) -> list[tuple[UPoly, int]]:
    # f monic square-free over GF(p); returns (product of degree-d factors, d).
    F = f.field
    x = UPoly.monomial(F, 1)
    h = x
    out = []
    d = 0
    rest = f
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(F.p, rest)
        g = upoly_gcd(rest, h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree(f: UPoly, d: int) -> list[UPoly]:
    """Split a monic square-free f whose irreducible factors all have degree d."""
    if f.degree == d:
        return [f]
    F = f.field
    p = F.p
    rng = random.Random(f"{p}:{f.coeffs}:{d}")
    for _attempt in range(CZ_RETRY_CAP):
        a = UPoly(F, tuple(rng.randrange(p) for _ in range(f.degree)))
        if a.degree < 1:
            continue
        if p == 2:
            t = a % f
            b = t
            for _ in range(d - 1):
                t = (t * t) % f
                b = b + t
        else:
            b = a.pow_mod((p**d - 1) // 2, f) - UPoly.constant(F, 1)
        g = upoly_gcd(f, b) if b else f
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d) + _equal_degree(f // g, d)
    raise RuntimeError(f"equal-degree splitting failed after {CZ_RETRY_CAP} attempts")


def _rational_roots(f: UPoly) -> list[Fraction]:
    # Rational root theorem on the primitive integer multiple of f.
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    roots = []
    while ints and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    lead, const = abs(ints[-1]), abs(ints[0])
    num_div, den_div = _divisors(const), _divisors(lead)
    poly = UPoly(f.field, tuple(Fraction(c) for c in ints))
    cands = {Fraction(s * a, b) for a in num_div for b in den_div for s in (1, -1)}
    for r in sorted(cands):
        if poly(r) == 0:
            roots.append(r)
    return roots


def _divisors(m: int) -> list[int]:
    small, large = [], []
    for q in range(1, isqrt(m) + 1):
        if m % q == 0:
            small.append(q)
            if q != m // q:
                large.append(m // q)
    return small + large[::-1]


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(g**e for g, e in factors)``; factors are monic.

    ``maybe_reducible`` is set over Q when some returned factor of degree
    >= 4 could not be certified irreducible.
    """

    unit: object
    factors: tuple
    maybe_reducible: bool = False

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def expand(self, field: Field) -> UPoly:
        acc = UPoly.constant(field, self.unit)
        for g, e in self.factors:
            acc = acc * g**e
        return acc


def upoly_factor(p: UPoly) -> Factorization:
    """Factor ``p`` (degree >= 1) into monic factors with multiplicities."""
    if p.degree < 1:
        raise ValueError("factorization needs degree >= 1")
    F = p.field
    factors: list[tuple[UPoly, int]] = []
    flagged = False
    for part, e in upoly_squarefree(p):
        if F.p is not None:
            for prod, d in _distinct_degree(part):
                factors.extend((g.monic(), e) for g in _equal_degree(prod, d))
            continue
        rest = part
        for r in _rational_roots(part):
            lin = UPoly(F, (-r, 1))
            factors.append((lin, e))
            rest = rest.exact_div(lin)
        if rest.degree >= 1:
            factors.append((rest.monic(), e))
            # A degree <= 3 remainder without rational roots is irreducible.
            flagged = flagged or rest.degree >= 4
    factors.sort(key=lambda ge: (ge[0].sort_key(), ge[1]))
    return Factorization(p.lc, tuple(factors), flagged)


def is_irreducible(p: UPoly) -> bool | None:
    """True/False when decidable, None over Q when undecided."""
    if p.degree < 1:
        return False
    fac = upoly_factor(p)
    if len(fac.factors) != 1 or fac.factors[0][1] != 1:
        return False
    return None if fac.maybe_reducible else True
