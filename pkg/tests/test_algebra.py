import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from looseedge.algebra import (
    GF,
    QQ,
    Field,
    UPoly,
    is_irreducible,
    upoly_factor,
    upoly_gcd,
    upoly_squarefree,
)

from oracles import brute_irreducible_factors_modp


def P(field, *coeffs):
    return UPoly(field, tuple(coeffs))


class TestField:
    def test_prime_check(self):
        with pytest.raises(ValueError):
            Field(6)
        assert GF(7).p == 7

    def test_coercion(self):
        assert GF(5)(7) == 2
        assert GF(5)(Fraction(1, 2)) == 3
        assert QQ("3/4") == Fraction(3, 4)
        with pytest.raises(ValueError):
            QQ("abc")

    def test_inverse(self):
        F = GF(7)
        assert all(F.mul(a, F.inv(a)) == 1 for a in range(1, 7))
        with pytest.raises(ZeroDivisionError):
            F.inv(0)

    @pytest.mark.parametrize("doc", ["QQ", "gf(5)", "F5", {"kind": "PrimeField", "p": 5}, {"kind": "Rationals"}])
    def test_json_forms(self, doc):
        F = Field.from_json(doc)
        assert Field.from_json(F.to_json()) == F

    def test_unknown_field(self):
        with pytest.raises(ValueError):
            Field.from_json("R")


class TestUPoly:
    def test_trim_and_degree(self):
        p = P(QQ, 1, 2, 0, 0)
        assert p.degree == 1
        assert P(QQ).degree == -1 and P(QQ).is_zero()

    def test_divmod(self):
        F = GF(5)
        a = P(F, 1, 2, 3, 4)
        b = P(F, 2, 1)
        q, r = divmod(a, b)
        assert q * b + r == a and r.degree < b.degree

    def test_mixed_fields_rejected(self):
        with pytest.raises(ValueError):
            P(QQ, 1, 1) + P(GF(5), 1, 1)

    def test_gcd_monic(self):
        a = P(QQ, -1, 0, 1)
        b = P(QQ, 1, 2, 1)
        assert upoly_gcd(a, b) == P(QQ, 1, 1)

    def test_squarefree(self):
        f = P(QQ, -1, 1) ** 2 * P(QQ, 1, 1)
        assert upoly_squarefree(f) == [(P(QQ, -1, 1), 2), (P(QQ, 1, 1), 1)]

    def test_to_str(self):
        assert P(QQ, -1, 0, 1).to_str() == "T^2 - 1"
        assert P(QQ, Fraction(1, 2), -3).to_str("x") == "-3*x + 1/2"


class TestFactor:
    def test_t2_plus_1_mod5(self):
        fac = upoly_factor(P(GF(5), 1, 0, 1))
        assert [g for g, _ in fac] == [P(GF(5), 2, 1), P(GF(5), 3, 1)]

    def test_frobenius_power(self):
        # T^5 - 1 = (T - 1)^5 over GF(5)
        fac = upoly_factor(P(GF(5), 4, 0, 0, 0, 0, 1))
        assert list(fac) == [(P(GF(5), 4, 1), 5)]

    def test_rational_roots(self):
        fac = upoly_factor(P(QQ, -1, 0, 1))
        assert [g for g, _ in fac] == [P(QQ, -1, 1), P(QQ, 1, 1)]
        assert not fac.maybe_reducible

    def test_irreducible_quadratic_over_q(self):
        fac = upoly_factor(P(QQ, 1, 0, 1))
        assert list(fac) == [(P(QQ, 1, 0, 1), 1)] and not fac.maybe_reducible
        assert is_irreducible(P(QQ, 1, 0, 1)) is True

    def test_quartic_flagged(self):
        # (T^2+1)(T^2+2) has no rational roots and cannot be certified
        fac = upoly_factor(P(QQ, 1, 0, 1) * P(QQ, 2, 0, 1))
        assert fac.maybe_reducible
        assert is_irreducible(P(QQ, 1, 0, 1) * P(QQ, 2, 0, 1)) is None

    def test_multiplicities(self):
        f = P(QQ, -1, 1) ** 2 * P(QQ, 1, 1)
        assert list(upoly_factor(f)) == [(P(QQ, -1, 1), 2), (P(QQ, 1, 1), 1)]

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_random_roundtrip_and_irreducibility(self, p):
        F = GF(p)
        rng = random.Random(p)
        for _ in range(30):
            deg = rng.randint(1, 7)
            coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
            f = UPoly(F, tuple(coeffs))
            fac = upoly_factor(f)
            assert fac.expand(F) == f
            for g, _ in fac:
                assert g.lc == 1
                assert brute_irreducible_factors_modp(list(g.coeffs), p)

    def test_deterministic(self):
        f = UPoly(GF(3), (1, 1, 0, 1, 2, 1, 1))
        assert upoly_factor(f) == upoly_factor(f)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6), st.lists(st.integers(-6, 6), min_size=2, max_size=5))
def test_rational_factor_roundtrip(a, b):
    f = UPoly(QQ, tuple(a)) * UPoly(QQ, tuple(b))
    if f.degree < 1:
        return
    assert upoly_factor(f).expand(QQ) == f
