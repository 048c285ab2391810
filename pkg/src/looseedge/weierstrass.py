"""Truncated Weierstrass preparation and division in K[[x_1..x_m]][[z]].

The last variable is z.  Arithmetic runs modulo the monomial ideal
generated by x-monomials of degree ``order + 1`` and by a power of z; the
complement of that ideal is a box of exponents and truncating to it is a
ring homomorphism, so products are exact inside the box.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import INF, LinearForm, Series, mul_truncated, valuation

__all__ = [
    "Preparation",
    "PreparationError",
    "x_order_form",
    "weierstrass_prepare",
    "divide_monic",
    "z_degree",
]

NEWTON_CAP = 64


class PreparationError(ValueError):
    pass


def x_order_form(n: int) -> LinearForm:
    """Total degree in every variable but the last."""
    return LinearForm((1,) * (n - 1) + (0,))


def z_degree(f: Series) -> int:
    return f.max_exponent(f.n - 1)


def _zshift(s: Series, k: int) -> Series:
    """Multiply by z^k (k may be negative if every z-exponent allows it)."""
    z = s.n - 1
    terms = {}
    for e, c in s.items():
        e2 = list(e)
        e2[z] += k
        terms[tuple(e2)] = c
    return Series._raw(s.n, s.field, terms)


class _Box:
    def __init__(self, n: int, order: int, z_limit: int | None):
        self.n = n
        self.order = order
        self.z_limit = z_limit
        self.form = x_order_form(n)

    def cut(self, s: Series) -> Series:
        form, zl, o = self.form, self.z_limit, self.order
        z = self.n - 1
        return s.filter(lambda e: form(e) <= o and (zl is None or e[z] < zl))

    def mul(self, a: Series, b: Series) -> Series:
        return self.cut(mul_truncated(a.exact(), b.exact(), self.form, self.order).exact())

    def inverse(self, s: Series) -> Series:
        """Inverse of a unit by Newton iteration y <- y * (2 - s*y)."""
        c0 = s.coeff((0,) * self.n)
        if c0 == 0:
            raise PreparationError("not a unit")
        F = s.field
        y = Series.constant(self.n, F, F.inv(c0))
        two = Series.constant(self.n, F, 2)
        for _ in range(NEWTON_CAP):
            nxt = self.mul(y, two - self.mul(s, y))
            if nxt == y:
                return y
            y = nxt
        raise PreparationError("Newton iteration for the inverse did not settle")


@dataclass(frozen=True)
class Preparation:
    """``gbar == unit * ghat`` for x-order <= ``order`` and z-degree < ``z_bound``."""

    unit: Series
    ghat: Series
    d: int
    order: int
    z_bound: int


def weierstrass_prepare(gbar: Series, d: int, order: int, z_bound: int | None = None) -> Preparation:
    """Write gbar = unit * (z^d + lower terms vanishing at x = 0).

    ``ghat`` is exact modulo x-order > ``order``; the unit is exact in the
    box x-order <= ``order``, z-degree < ``z_bound`` (default ``2*d``).
    """
    n = gbar.n
    if d < 0 or order < 0:
        raise ValueError("d and order must be nonnegative")
    z_bound = max(z_bound if z_bound is not None else 2 * d, d, 1)
    z = n - 1
    # Restricted to x = 0 the series must be z^d times a unit in z.
    at_origin = sorted(e[z] for e in gbar.terms if all(x == 0 for x in e[:z]))
    if not at_origin or at_origin[0] != d:
        found = at_origin[0] if at_origin else "infinite"
        raise PreparationError(f"z-order at x = 0 is {found}, expected {d}")

    # Every division step lowers the z-precision by d.
    box = _Box(n, order, d * (order + 1) + z_bound)
    g = box.cut(gbar.exact())
    low = g.filter(lambda e: e[z] < d)
    high = _zshift(g.filter(lambda e: e[z] >= d), -d)
    inv_high = box.inverse(high)

    zd = Series.monomial(n, gbar.field, (0,) * z + (d,))
    rem = zd
    rest = Series.zero(n, gbar.field)
    quot = Series.zero(n, gbar.field)
    for _ in range(order + 2):
        if rem.is_zero():
            break
        lo = rem.filter(lambda e: e[z] < d)
        hi = _zshift(rem.filter(lambda e: e[z] >= d), -d)
        rest = rest + lo
        t = box.mul(hi, inv_high)
        quot = quot + t
        # low lies in the ideal (x), so the x-order of rem strictly grows
        rem = -box.mul(t, low)
    if not rem.is_zero():
        raise PreparationError("division did not terminate")

    ghat = (zd - rest).filter(lambda e: box.form(e) <= order)
    unit_box = _Box(n, order, z_bound)
    unit = unit_box.inverse(unit_box.cut(quot))
    return Preparation(unit, ghat, d, order, z_bound)


def divide_monic(f: Series, g: Series, order: int) -> tuple[Series, Series]:
    """Divide f by g, monic in z, modulo x-order > ``order``.

    Returns (quotient, remainder) with remainder of z-degree < deg_z g.
    """
    n = f.n
    z = n - 1
    d = z_degree(g)
    lead = g.filter(lambda e: e[z] == d)
    if lead != Series.monomial(n, g.field, (0,) * z + (d,)):
        raise ValueError("divisor is not monic in the last variable")
    box = _Box(n, order, None)
    rem = box.cut(f.exact())
    quot = Series.zero(n, f.field)
    for j in range(z_degree(rem), d - 1, -1):
        top = rem.filter(lambda e, j=j: e[z] == j)
        if top.is_zero():
            continue
        t = _zshift(top, -d)
        quot = quot + t
        rem = rem - box.mul(t, g)
    return quot, rem


def x_valuation(f: Series):
    return valuation(f, x_order_form(f.n)) if not f.is_zero() else INF
