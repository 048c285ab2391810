import random
from fractions import Fraction

import pytest

from looseedge.algebra import GF, QQ
from looseedge.series import (
    INF,
    LinearForm,
    Series,
    initial_form,
    mul_truncated,
    valuation,
)

from oracles import naive_mul


def S(terms, n=2, field=QQ):
    return Series(n, field, terms)


def test_zero_coefficients_dropped_and_sorted():
    f = S({(1, 0): 0, (0, 2): 1, (0, 1): 3})
    assert list(f.terms) == [(0, 1), (0, 2)]


def test_rejects_bad_exponents():
    with pytest.raises(ValueError):
        S({(1,): 1})
    with pytest.raises(ValueError):
        S({(-1, 0): 1})


def test_field_reduction():
    f = S({(1, 0): 7}, field=GF(5))
    assert f.coeff((1, 0)) == 2


def test_mixed_rings_rejected():
    with pytest.raises(ValueError):
        S({(1, 0): 1}) + S({(1, 0): 1}, field=GF(5))
    with pytest.raises(ValueError):
        S({(1, 0): 1}) * Series(3, QQ, {(1, 0, 0): 1})


def test_valuation_and_initial_form():
    f = S({(2, 0): 1, (0, 2): -1, (0, 3): 1})
    L = LinearForm((1, 1))
    assert valuation(f, L) == 2
    assert initial_form(f, L) == S({(2, 0): 1, (0, 2): -1})
    assert valuation(Series.zero(2, QQ), L) == INF
    with pytest.raises(ValueError):
        initial_form(Series.zero(2, QQ), L)


def test_linear_form_increment():
    assert LinearForm((2, 1)).increment() == 1
    assert LinearForm((Fraction(1, 2), Fraction(1, 3))).increment() == Fraction(1, 6)
    with pytest.raises(ValueError):
        LinearForm((-1, 1))


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_products_match_naive(field):
    rng = random.Random(3)
    for _ in range(40):
        a = {(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(-3, 3) for _ in range(5)}
        b = {(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(-3, 3) for _ in range(5)}
        f, g = S(a, field=field), S(b, field=field)
        expected = S(naive_mul(dict(f.items()), dict(g.items())), field=field)
        assert f * g == expected


def test_truncated_product():
    L = LinearForm((1, 1))
    f = S({(0, 0): 1, (1, 0): 1})
    g = S({(0, 0): 1, (0, 1): -1})
    prod = mul_truncated(f, g, L, 1)
    assert prod == S({(0, 0): 1, (1, 0): 1, (0, 1): -1})
    assert prod.truncation.cutoff == 1


def test_truncation_propagates():
    L = LinearForm((1, 1))
    f = S({(0, 0): 1, (1, 0): 1, (2, 0): 5}).truncated(L, 1)
    assert (2, 0) not in f.terms
    g = S({(0, 1): 1})
    assert (f * g).truncation.cutoff == 2
    assert (f + g).truncation.cutoff == 1


def test_equality_ignores_truncation():
    L = LinearForm((1, 1))
    f = S({(1, 0): 1})
    assert f.truncated(L, 5) == f


def test_to_str_descending_with_signs():
    f = S({(2, 0): 1, (0, 2): -1, (0, 3): 1})
    assert f.to_str() == "x^2 + y^3 - y^2"
    assert S({(0, 1): Fraction(-1, 2)}).to_str(["a", "b"]) == "-1/2*b"


def test_pow_and_shift():
    f = S({(1, 0): 1, (0, 1): 1})
    assert f**2 == S({(2, 0): 1, (1, 1): 2, (0, 2): 1})
    assert f.shift((1, 1)) == S({(2, 1): 1, (1, 2): 1})
