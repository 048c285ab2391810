import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from looseedge.algebra import GF, QQ, UPoly
from looseedge.grading import (
    FiberBoundExceeded,
    decompose,
    fiber,
    homogeneous_index,
    homogenize,
    in_monoid,
    segment_form,
)
from looseedge.polyhedron import project_point
from looseedge.series import LinearForm, Series

from oracles import brute_fiber, proj

DIRECTIONS = [(1, -1), (2, -2), (3, -2), (1, -2), (2, -3)]


@pytest.mark.parametrize(
    "w, expected",
    [
        (10, [(1, 6), (4, 4), (7, 2), (10, 0)]),
        (Fraction(7, 2), [(2, 1)]),
        (Fraction(13, 2), [(2, 3), (5, 1)]),
        (0, [(0, 0)]),
        (Fraction(1, 3), []),
    ],
)
def test_fiber_examples(w, expected):
    assert list(fiber((3, -2), w).basis) == expected


@pytest.mark.parametrize("delta", DIRECTIONS)
def test_fiber_matches_bruteforce(delta):
    for v in [(a, b) for a in range(6) for b in range(6)]:
        w = proj(v, delta)
        assert list(fiber(delta, w).basis) == brute_fiber(delta, w, box=40)


@pytest.mark.parametrize("delta", [(1, 1, -1), (1, -1, -1), (2, 1, -3)])
def test_fiber_three_variables(delta):
    rng = random.Random(1)
    for _ in range(15):
        v = tuple(rng.randint(0, 3) for _ in range(3))
        w = proj(v, delta)
        assert list(fiber(delta, w).basis) == brute_fiber(delta, w, box=14)


def test_monoid():
    assert in_monoid((3, -2), Fraction(7, 2))
    assert not in_monoid((3, -2), Fraction(1, 3))
    assert all(in_monoid((1, -1), w) for w in range(20))
    assert not in_monoid((1, -1), -1)


def test_fiber_bound():
    with pytest.raises(FiberBoundExceeded):
        fiber((1, -1), 50, bound=10)


def test_projection_index_shapes():
    with pytest.raises(ValueError):
        fiber((1, -1), (1, 2))


@pytest.mark.parametrize(
    "terms, delta, indices",
    [
        ({(2, 0): 1, (0, 2): -1}, (2, -2), [(2,)]),
        ({(1, 1): 1, (0, 3): 1}, (1, -2), [(Fraction(3, 2),)]),
        ({(1, 0): 1, (0, 2): 1}, (3, -2), [(1,), (3,)]),
    ],
)
def test_decompose_examples(terms, delta, indices):
    F = Series(2, QQ, terms)
    comps = decompose(F, delta)
    assert list(comps) == indices
    total = Series.zero(2, QQ)
    for c in comps.values():
        total = total + c
    assert total == F


def test_decompose_refines_l_grading():
    # L = (2, 3) vanishes on delta = (3, -2).
    rng = random.Random(2)
    L = LinearForm((2, 3))
    for _ in range(20):
        a = rng.randint(0, 12)
        terms = {(x, y): rng.randint(1, 4) for x in range(13) for y in range(13) if 2 * x + 3 * y == a}
        if not terms:
            continue
        F = Series(2, GF(5), terms)
        for w in decompose(F, (3, -2)):
            assert L((w[0], 0)) == a


def has_coprime_pair(basis):
    return any(
        all(min(x, y) == 0 for x, y in zip(a, b)) for i, a in enumerate(basis) for b in basis[i + 1:]
    )


def test_dimension_counterexample():
    dims = [fiber((3, -2), w).dim for w in (Fraction(7, 2), Fraction(13, 2), 10)]
    assert dims == [1, 2, 4]
    assert dims[0] + dims[1] - 1 != dims[2]
    assert not has_coprime_pair(fiber((3, -2), Fraction(13, 2)).basis)


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from(DIRECTIONS),
    st.tuples(st.integers(0, 6), st.integers(0, 6)),
    st.tuples(st.integers(0, 6), st.integers(0, 6)),
)
def test_fibers_respect_addition(delta, a, b):
    u, w = project_point(a, delta), project_point(b, delta)
    uw = tuple(x + y for x, y in zip(u, w))
    target = set(fiber(delta, uw).basis)
    for p in fiber(delta, u).basis:
        for q in fiber(delta, w).basis:
            assert tuple(x + y for x, y in zip(p, q)) in target


def test_segment_form_roundtrip():
    G = Series(2, QQ, {(1, 2): 2, (4, 0): 5})
    base, p = segment_form(G, (3, -2), 1)
    assert base == (1, 0) and p == UPoly(QQ, (2, 5))
    assert homogenize(p, (3, -2), base) == G
    with pytest.raises(ValueError):
        segment_form(Series(2, QQ, {(1, 0): 1, (0, 2): 1}), (1, -1), 1)


def test_homogeneous_index():
    assert homogeneous_index(Series(2, QQ, {(2, 0): 1, (0, 2): 1}), (1, -1)) == (2,)
    with pytest.raises(ValueError):
        homogeneous_index(Series(2, QQ, {(1, 0): 1, (0, 2): 1}), (1, -1))
