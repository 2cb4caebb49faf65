from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyptych import geometry


def square(side):
    h = geometry.HPolyhedron(2)
    h.add((1, 0), 0)
    h.add((-1, 0), -side)
    h.add((0, 1), 0)
    h.add((0, -1), -side)
    return h


def test_det_known_values():
    assert geometry.det([[1, 2], [3, 4]]) == -2
    assert geometry.det([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24
    assert geometry.det([[1]]) == 1


def test_unimodular_detection():
    assert geometry.is_unimodular([[1, 1], [0, 1]])
    assert not geometry.is_unimodular([[2, 0], [0, 1]])


def test_solve_matrix_and_expand():
    cols = [(1, 0), (1, 1)]
    sol = geometry.solve_matrix(cols, (3, 2))
    assert tuple(sol) == (Fraction(1), Fraction(2))
    assert tuple(geometry.expand_in_basis((3, 2), cols)) == (
        Fraction(1), Fraction(2))


def test_singular_solve_raises():
    with pytest.raises(geometry.GeometryError):
        geometry.solve_matrix([(1, 2), (2, 4)], (1, 0))


def test_square_lattice_points():
    pts = geometry.lattice_points(square(3), [(0, 3), (0, 3)])
    assert len(pts) == 16


def test_dilate_scales_counts():
    poly = square(1)
    for k in range(4):
        pts = geometry.lattice_points(poly.dilate(k), [(0, k), (0, k)])
        assert len(pts) == (k + 1) ** 2


def test_translate_preserves_membership():
    poly = square(2)
    moved = poly.translate((5, -1))
    assert moved.contains((5, -1)) and moved.contains((7, 1))
    assert not moved.contains((4, 0))


def test_hrep_json_roundtrip():
    poly = square(2)
    again = geometry.HPolyhedron.from_json(poly.to_json())
    assert geometry.polyhedron_equal(poly, again)


def test_h_v_roundtrip_square():
    poly = square(1)
    v = geometry.h_to_v(poly)
    assert sorted(v.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    back = geometry.v_to_h(v)
    assert geometry.polyhedron_equal(poly, back)


def test_minkowski_sum_hull_segment():
    trivial_cone = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    hull = geometry.v_to_h(
        geometry.minkowski_sum_hull([(0, 0), (1, 1)], trivial_cone, 2))
    assert hull.contains((Fraction(1, 2), Fraction(1, 2)))
    assert not hull.contains((1, 0))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
       st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_translation_equivariance(t, x):
    poly = square(3)
    assert poly.contains(x) == poly.translate(t).contains(
        tuple(a + b for a, b in zip(x, t)))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_det_transpose_invariant(m):
    mt = [[m[j][i] for j in range(3)] for i in range(3)]
    assert geometry.det(m) == geometry.det(mt)
