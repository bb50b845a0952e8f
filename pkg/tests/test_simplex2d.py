import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ddinfer.linalg import ContractViolation
from ddinfer.mvee import mvee_full
from ddinfer.simplex2d import (DegenerateInput, Triangle, convex_hull, min_area_enclosing_triangle,
                               nonuniqueness_witness, regular_hexagon, triangle_contains,
                               vertex_set_distance)
from oracles import flush_edge_search

SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


def _segment_distance(p, a, b):
    ab = b - a
    s = np.clip(np.dot(p - a, ab) / np.dot(ab, ab), 0.0, 1.0)
    return np.linalg.norm(p - (a + s * ab))


def _boundary_distance(p, hull):
    return min(_segment_distance(p, hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))


def _flush_sides(V, hull, tol):
    """Number of triangle sides that contain a whole hull edge."""
    count = 0
    for i in range(3):
        a, b = V[i], V[(i + 1) % 3]
        for j in range(len(hull)):
            e0, e1 = hull[j], hull[(j + 1) % len(hull)]
            if _segment_distance(e0, a, b) <= tol and _segment_distance(e1, a, b) <= tol:
                count += 1
                break
    return count


def _random_set(rng, m):
    while True:
        X = rng.normal(size=(m, 2))
        if len(convex_hull(X)) >= 3:
            return X


# -- examples -----------------------------------------------------------------------

def test_triangle_encloses_itself():
    V = np.array([[0.0, 0.0], [2.0, 0.0], [0.5, 1.5]])
    sol = min_area_enclosing_triangle(V)
    assert sol.area == pytest.approx(1.5, rel=1e-12)
    assert vertex_set_distance(sol.triangle.vertices, V) < 1e-12
    assert nonuniqueness_witness(V) is None


def test_unit_square():
    sol = min_area_enclosing_triangle(SQUARE)
    assert sol.area == pytest.approx(2.0, rel=1e-12)
    pair = nonuniqueness_witness(SQUARE)
    assert pair is not None
    assert vertex_set_distance(pair[0].vertices, pair[1].vertices) > 1e-6
    assert pair[0].area == pytest.approx(pair[1].area, abs=1e-9)


def test_regular_hexagon():
    H = regular_hexagon()
    sol = min_area_enclosing_triangle(H)
    assert sol.area == pytest.approx(9 * math.sqrt(3) / 4, rel=1e-12)
    T1, T2 = nonuniqueness_witness(H)
    assert abs(T1.area - T2.area) <= 1e-9
    for T in (T1, T2):
        sides = np.linalg.norm(T.vertices - np.roll(T.vertices, 1, axis=0), axis=1)
        np.testing.assert_allclose(sides, 3.0, rtol=1e-12)
    assert vertex_set_distance(T1.vertices, T2.vertices) > 1
    # one triangle is the other turned by 60 degrees
    c, s = math.cos(math.pi / 3), math.sin(math.pi / 3)
    R = np.array([[c, -s], [s, c]])
    assert vertex_set_distance(T1.vertices @ R.T, T2.vertices) < 1e-9


def test_hexagon_contrast_with_ellipse():
    H = regular_hexagon()
    E = mvee_full(H)
    np.testing.assert_allclose(E.A, np.eye(2), atol=1e-7)
    np.testing.assert_allclose(E.c, 0, atol=1e-7)
    assert nonuniqueness_witness(H) is not None


@pytest.mark.parametrize("pts", [
    [[0, 0], [1, 1], [2, 2]],
    [[0, 0], [0, 0], [1, 1]],
    [[1, 2]],
])
def test_collinear_input_rejected(pts):
    with pytest.raises(DegenerateInput):
        min_area_enclosing_triangle(pts)


def test_containment_examples():
    T = Triangle([0, 0], [1, 0], [0, 1])
    assert triangle_contains(T, [1 / 3, 1 / 3])
    assert triangle_contains(T, [1, 0], tol=0)
    assert not triangle_contains(T, [10, 10])
    with pytest.raises(ContractViolation):
        Triangle([0, 0], [1, 1], [2, 2])


def test_hull_is_ccw_and_drops_interior_points(rng):
    X = np.vstack([SQUARE, [[0.5, 0.5], [0.5, 0.0]], rng.uniform(0.1, 0.9, size=(10, 2))])
    H = convex_hull(X)
    assert len(H) == 4
    area2 = sum(H[i, 0] * H[(i + 1) % 4, 1] - H[(i + 1) % 4, 0] * H[i, 1] for i in range(4))
    assert area2 > 0


# -- properties ---------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(40))
def test_solution_is_enclosing_and_locally_optimal(seed):
    rng = np.random.default_rng(seed)
    X = _random_set(rng, int(rng.integers(3, 30)))
    sol = min_area_enclosing_triangle(X)
    V = sol.triangle.vertices
    scale = np.ptp(X, axis=0).max()
    assert abs(sol.area - sol.triangle.area) <= 1e-12 * max(1, sol.area)
    assert all(triangle_contains(sol.triangle, p, tol=1e-9) for p in X)
    assert _flush_sides(V, sol.hull, 1e-9 * scale) >= 1
    for i in range(3):
        mid = 0.5 * (V[i] + V[(i + 1) % 3])
        assert _boundary_distance(mid, sol.hull) <= 1e-8 * scale


@pytest.mark.parametrize("seed", range(12))
def test_matches_flush_edge_search(seed):
    rng = np.random.default_rng(500 + seed)
    X = _random_set(rng, int(rng.integers(3, 9)))
    ours = min_area_enclosing_triangle(X).area
    assert abs(flush_edge_search(X, grid=121) - ours) <= 1e-9 * ours


@given(st.integers(0, 2**32 - 1), st.floats(0.1, 10), st.floats(0, 2 * math.pi))
def test_area_is_similarity_covariant(seed, scale, angle):
    rng = np.random.default_rng(seed)
    X = _random_set(rng, int(rng.integers(3, 12)))
    R = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    Y = scale * X @ R.T + rng.normal(size=2)
    a, b = min_area_enclosing_triangle(X).area, min_area_enclosing_triangle(Y).area
    assert b == pytest.approx(scale**2 * a, rel=1e-9)


@given(st.integers(0, 2**32 - 1))
def test_witness_triangles_are_both_optimal(seed):
    rng = np.random.default_rng(seed)
    # symmetric sets tend to have several optima
    k = int(rng.integers(3, 9))
    ang = 2 * np.pi * np.arange(k) / k
    X = np.column_stack([np.cos(ang), np.sin(ang)])
    best = min_area_enclosing_triangle(X).area
    pair = nonuniqueness_witness(X)
    if pair is not None:
        for T in pair:
            assert abs(T.area - best) <= 1e-9 * best
            assert all(triangle_contains(T, p) for p in X)
