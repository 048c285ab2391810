import random

import pytest

from looseedge.algebra import GF, QQ
from looseedge.parser import parse_expression
from looseedge.series import Series
from looseedge.weierstrass import (
    PreparationError,
    divide_monic,
    weierstrass_prepare,
    x_valuation,
    z_degree,
)

from oracles import naive_mul, sqrt_one_minus_x


def series(text, names=("x", "z"), field=QQ):
    return parse_expression(text, names, field)


def box_difference(a, b, order, z_bound, p=None):
    """Terms of a - b inside the box x-order <= order, z < z_bound."""
    out = {}
    for e, c in list(a.items()) + [(e, -c) for e, c in b.items()]:
        if sum(e[:-1]) <= order and e[-1] < z_bound:
            out[e] = out.get(e, 0) + c
    if p is not None:
        out = {e: c % p for e, c in out.items()}
    return {e: c for e, c in out.items() if c}


def check_contract(gbar, prep, p=None):
    g = prep.ghat
    assert z_degree(g) == prep.d
    assert g.coeff((0,) * (g.n - 1) + (prep.d,)) == 1
    for e in g.terms:
        if e[-1] < prep.d:
            assert sum(e[:-1]) > 0
        else:
            assert e[-1] == prep.d and sum(e[:-1]) == 0
    prod = Series(gbar.n, gbar.field, naive_mul(dict(prep.unit.items()), dict(g.items()), p))
    assert box_difference(gbar, prod, prep.order, prep.z_bound, p) == {}
    assert prep.unit.coeff((0,) * gbar.n) != 0


def test_square_root_branch():
    # z^2 - 2z + x = (z - 1)^2 - (1 - x): the root near 0 is 1 - sqrt(1 - x).
    gbar = series("z^2 - 2*z + x")
    prep = weierstrass_prepare(gbar, 1, 6)
    # ghat = z - root, and the constant terms cancel.
    expected = {(0, 1): 1}
    for k in range(1, 7):
        expected[(k, 0)] = sqrt_one_minus_x(k)
    assert dict(prep.ghat.items()) == expected
    check_contract(gbar, prep)


def test_unit_times_distinguished():
    gbar = series("(1 + x)*(z - x)")
    prep = weierstrass_prepare(gbar, 1, 5)
    assert prep.ghat == series("z - x")
    assert prep.unit == series("1 + x")


def test_random_contract_mod_p():
    rng = random.Random(3)
    F = GF(7)
    for _ in range(25):
        d = rng.randint(1, 3)
        terms = {(0, d): rng.randint(1, 6)}
        for _ in range(6):
            e = (rng.randint(1, 3), rng.randint(0, 4))
            terms[e] = rng.randrange(7)
        terms[(0, d + rng.randint(1, 2))] = rng.randrange(7)
        gbar = Series(2, F, terms)
        prep = weierstrass_prepare(gbar, d, 4)
        check_contract(gbar, prep, 7)


def test_three_variables():
    gbar = series("z^2 + x*z + y^3 + z^3 + x*y*z^2", ("x", "y", "z"))
    prep = weierstrass_prepare(gbar, 2, 4)
    check_contract(gbar, prep)


def test_wrong_order_at_origin():
    with pytest.raises(PreparationError):
        weierstrass_prepare(series("z^3 + x"), 2, 4)
    with pytest.raises(PreparationError):
        weierstrass_prepare(series("x*z + x^2"), 1, 4)


def test_divide_monic():
    f = series("z^3 + x*z + x^2 + 5")
    g = series("z - x")
    q, r = divide_monic(f, g, 6)
    assert z_degree(r) < 1
    assert box_difference(f, q * g + r, 6, 10) == {}
    with pytest.raises(ValueError):
        divide_monic(f, series("2*z - x"), 6)


def test_x_valuation():
    assert x_valuation(series("z^2 + x^3*z")) == 0
    assert x_valuation(series("x^2*z + x^3")) == 2
    assert x_valuation(Series.zero(2, QQ)) == float("inf")
