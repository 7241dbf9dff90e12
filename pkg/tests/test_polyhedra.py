import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxcanon.polyhedra import (
    RationalPolyhedron,
    UnboundedPolyhedronError,
    enumerate_lattice_points,
    is_bounded_with_box,
    project,
)


def P(*rows):
    return RationalPolyhedron.from_inequalities(rows)


def brute_force(poly, box):
    return [
        pt for pt in itertools.product(*(range(lo, hi + 1) for lo, hi in box)) if poly.contains(pt)
    ]


def test_box_examples():
    square = P(((1, 0), 0), ((0, 1), 0), ((-1, 0), -2), ((0, -1), -2))
    bb = is_bounded_with_box(square)
    assert bb.bounded and not bb.empty and bb.box == ((0, 2), (0, 2))
    assert not is_bounded_with_box(P(((1,), 0))).bounded
    bb = is_bounded_with_box(P(((1,), 1), ((-1,), 0)))
    assert bb.bounded and bb.empty


def test_enumeration_examples():
    unit = P(((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1))
    assert len(enumerate_lattice_points(unit)) == 4
    simplex = P(((1, 0), 0), ((0, 1), 0), ((-1, -1), -2))
    pts = enumerate_lattice_points(simplex)
    assert pts == brute_force(simplex, ((-3, 3), (-3, 3)))
    assert len(pts) == 6
    assert enumerate_lattice_points(P(((1,), 1), ((-1,), 0))) == []
    with pytest.raises(UnboundedPolyhedronError):
        enumerate_lattice_points(P(((1, 0), 0)))


def test_rational_bounds_round_inward():
    half = P(((2,), 1), ((-2,), -7))  # 1/2 <= x <= 7/2
    assert is_bounded_with_box(half).box == ((1, 3),)
    assert enumerate_lattice_points(half) == [(1,), (2,), (3,)]
    thin = P(((3,), 1), ((-3,), -2))  # 1/3 <= x <= 2/3: rationally nonempty, no lattice points
    bb = is_bounded_with_box(thin)
    assert not bb.empty and bb.lattice_empty
    assert enumerate_lattice_points(thin) == []


def test_constraints_are_normalized():
    poly = P(((2, 4), 2), ((1, 2), Fraction(1, 2)), ((0, 0), -1))
    assert poly.constraints == (((1, 2), Fraction(1)),)


@st.composite
def boxed_polyhedra(draw):
    n = draw(st.integers(1, 3))
    B = draw(st.integers(0, 5))
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append((tuple(e), -B))
        rows.append((tuple(-x for x in e), -B))
    for _ in range(draw(st.integers(0, 5))):
        normal = tuple(draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)))
        bound = Fraction(draw(st.integers(-12, 12)), draw(st.integers(1, 3)))
        rows.append((normal, bound))
    return P(*rows), ((-B, B),) * n


@settings(max_examples=200, deadline=None)
@given(boxed_polyhedra())
def test_enumeration_matches_known_box(data):
    poly, box = data
    assert enumerate_lattice_points(poly) == brute_force(poly, box)


@st.composite
def random_polyhedra(draw):
    n = draw(st.integers(1, 3))
    rows = []
    for _ in range(draw(st.integers(1, 8))):
        normal = tuple(draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)))
        rows.append((normal, draw(st.integers(-5, 5))))
    return RationalPolyhedron(n, tuple(rows))


@settings(max_examples=150, deadline=None)
@given(random_polyhedra())
def test_box_contains_every_lattice_point(poly):
    bb = is_bounded_with_box(poly)
    if not bb.bounded:
        return
    window = ((-12, 12),) * poly.dim
    found = brute_force(poly, window)
    if bb.lattice_empty:
        assert found == []
        return
    for pt in found:
        assert all(lo <= x <= hi for x, (lo, hi) in zip(pt, bb.box))
    assert enumerate_lattice_points(poly) == brute_force(poly, bb.box)


@settings(max_examples=100, deadline=None)
@given(boxed_polyhedra(), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_count_invariant_under_translation(data, t):
    poly, _ = data
    t = t[: poly.dim]
    assert len(enumerate_lattice_points(poly.translate(t))) == len(enumerate_lattice_points(poly))


@settings(max_examples=100, deadline=None)
@given(boxed_polyhedra(), st.data())
def test_projection_contains_projected_points(data, draw):
    poly, _ = data
    keep = draw.draw(st.lists(st.integers(0, poly.dim - 1), unique=True, min_size=1))
    cons = project(poly, keep)
    for pt in enumerate_lattice_points(poly):
        assert all(sum(a * x for a, x in zip(n, pt)) >= b for n, b in cons)
