import random
from fractions import Fraction

import pytest

from looseedge import lp

from oracles import linprog_feasible


def test_lexmin_edge_witness():
    # Edge (1,1)-(0,3) of x^3 + xy + y^3.
    cons = [lp.ge((1, 0), 1), lp.ge((0, 1), 1), lp.eq((-1, 2), 0), lp.ge((2, -1), 1)]
    assert lp.lexmin(2, cons) == (2, 1)


def test_infeasible():
    cons = [lp.ge((1, 0), 1), lp.ge((-1, 0), 0)]
    assert not lp.feasible(2, cons)
    assert lp.lexmin(2, cons) is None


def test_equal_weights():
    cons = [lp.eq((1, -1, 0), 0), lp.eq((0, 1, -1), 0), lp.ge((1, 1, 1), 5)]
    assert lp.lexmin(3, cons) == (Fraction(5, 3),) * 3


def test_variable_bounds():
    cons = [lp.ge((1, 0), 0), lp.ge((-1, 0), -3), lp.ge((1, 1), 1), lp.ge((0, -1), -1)]
    assert lp.variable_bounds(2, cons, 0) == (0, 3)
    with pytest.raises(ValueError):
        lp.variable_bounds(1, [lp.ge((1,), 2), lp.ge((-1,), 0)], 0)


def test_unbounded_below_lexmin():
    with pytest.raises(ValueError):
        lp.lexmin(1, [lp.ge((-1,), 0)])


def test_random_feasibility_matches_floating_lp():
    rng = random.Random(11)
    for _ in range(150):
        nv = rng.randint(1, 4)
        cons = []
        raw = []
        for _ in range(rng.randint(1, 7)):
            coeffs = tuple(rng.randint(-3, 3) for _ in range(nv))
            rhs = rng.randint(-3, 3)
            equality = rng.random() < 0.2
            cons.append(lp.eq(coeffs, rhs) if equality else lp.ge(coeffs, rhs))
            raw.append((coeffs, rhs, equality))
        assert lp.feasible(nv, cons) == linprog_feasible(nv, raw)


def test_lexmin_point_is_feasible():
    rng = random.Random(5)
    for _ in range(60):
        nv = rng.randint(1, 3)
        cons = [lp.ge(tuple(1 if j == i else 0 for j in range(nv)), rng.randint(0, 2)) for i in range(nv)]
        cons += [lp.ge(tuple(rng.randint(-2, 3) for _ in range(nv)), rng.randint(-2, 3)) for _ in range(3)]
        x = lp.lexmin(nv, cons)
        if x is not None:
            assert all(c.satisfied_by(x) for c in cons)
