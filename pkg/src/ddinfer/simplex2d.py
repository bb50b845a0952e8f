"""Minimum-area enclosing triangles, and why they need not be unique.

For a simplicial state space the inferred range is a minimum-area enclosing
triangle, and unlike the enclosing ellipse it can have several optima.

Every locally minimal enclosing triangle of a convex polygon has at least
one side flush with a polygon edge and each side's midpoint on the polygon.
So a global optimum is always among these candidates:

* three sides flush with three hull edges;
* two sides flush with hull edges, the third through a hull vertex that is
  its midpoint.

A configuration with one flush side and two vertex-touching sides slides,
at constant area, into the second kind.  All candidates are enumerated with
numpy, so the cost grows like ``h**4`` in the hull size ``h``.  That is
fine for the few dozen hull vertices this module targets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import ContractViolation

AREA_EPS = 1e-12
ENCLOSE_TOL = 1e-9
DISTINCT_TOL = 1e-6


class DegenerateInput(ValueError):
    pass


@dataclass(frozen=True)
class Triangle:
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray

    def __post_init__(self):
        for name in ("v1", "v2", "v3"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float).reshape(2))
        if self.area <= AREA_EPS:
            raise ContractViolation("degenerate triangle")

    @classmethod
    def from_array(cls, V) -> "Triangle":
        V = np.asarray(V, dtype=float)
        return cls(V[0], V[1], V[2])

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.v3])

    @property
    def area(self) -> float:
        return abs(_cross(self.v2 - self.v1, self.v3 - self.v1)) / 2


@dataclass(frozen=True)
class TriangleSolution:
    triangle: Triangle
    area: float
    flush_edge: int
    hull: np.ndarray


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def convex_hull(points) -> np.ndarray:
    """Strictly convex hull (no collinear vertices), counter-clockwise."""
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2:
        raise ContractViolation("expected an (m, 2) array of points")
    pts = sorted(set(map(tuple, P)))
    if len(pts) < 3:
        return np.array(pts, dtype=float).reshape(-1, 2)
    scale = max(np.ptp(P, axis=0).max(), 1.0)

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(np.subtract(out[-1], out[-2]),
                                           np.subtract(p, out[-2])) <= 1e-12 * scale * scale:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1], dtype=float)


def _barycentric(T: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Barycentric coordinates of ``pts`` (k, 2) in triangles ``T`` (c, 3, 2) -> (c, k, 3)."""
    a, b, c = T[:, 0, None, :], T[:, 1, None, :], T[:, 2, None, :]
    p = pts[None, :, :]
    det = _cross(b - a, c - a)
    l1 = _cross(b - p, c - p) / det
    l2 = _cross(c - p, a - p) / det
    return np.stack([l1, l2, 1 - l1 - l2], axis=-1)


def triangle_contains(T: Triangle, p, tol: float = ENCLOSE_TOL) -> bool:
    lam = _barycentric(T.vertices[None], np.asarray(p, float).reshape(1, 2))[0, 0]
    return bool(np.all(lam >= -tol))


def _line_meet(p1, d1, p2, d2):
    den = _cross(d1, d2)
    s = _cross(p2 - p1, d2) / den
    return p1 + s[..., None] * d1


def _candidates(hull: np.ndarray):
    """All flush-edge candidate triangles as (tri (c,3,2), flush edge index (c,))."""
    h = len(hull)
    starts = hull
    dirs = np.roll(hull, -1, axis=0) - hull
    tris, flush = [], []
    pairs = [(i, j) for i, j in itertools.combinations(range(h), 2)
             if abs(_cross(dirs[i], dirs[j])) > AREA_EPS]
    pair_set = set(pairs)
    for i, j, k in itertools.combinations(range(h), 3):
        if not {(i, j), (i, k), (j, k)} <= pair_set:
            continue
        Xij = _line_meet(starts[i], dirs[i], starts[j], dirs[j])
        Xjk = _line_meet(starts[j], dirs[j], starts[k], dirs[k])
        Xki = _line_meet(starts[k], dirs[k], starts[i], dirs[i])
        tris.append([Xij, Xjk, Xki])
        flush.append(i)
    if pairs:
        I = np.array([p[0] for p in pairs])
        J = np.array([p[1] for p in pairs])
        X = _line_meet(starts[I], dirs[I], starts[J], dirs[J])
        for w in range(h):
            rhs = 2 * (hull[w] - X)
            den = _cross(dirs[I], dirs[J])
            s = _cross(rhs, dirs[J]) / den
            r = _cross(dirs[I], rhs) / den
            P1 = X + s[:, None] * dirs[I]
            P2 = X + r[:, None] * dirs[J]
            tris.extend(np.stack([X, P1, P2], axis=1))
            flush.extend(I)
    if not tris:
        return np.zeros((0, 3, 2)), np.zeros(0, dtype=int)
    return np.array(tris, dtype=float), np.array(flush)


def _enclosing_candidates(points):
    P = np.asarray(points, dtype=float)
    hull = convex_hull(P)
    if len(hull) < 3:
        raise DegenerateInput("points are collinear (or fewer than 3 distinct)")
    tris, flush = _candidates(hull)
    area = np.abs(_cross(tris[:, 1] - tris[:, 0], tris[:, 2] - tris[:, 0])) / 2
    ok = area > AREA_EPS * max(1.0, np.ptp(hull, axis=0).max() ** 2)
    tris, flush, area = tris[ok], flush[ok], area[ok]
    lam = _barycentric(tris, hull)
    ok = np.all(lam >= -ENCLOSE_TOL, axis=(1, 2))
    tris, flush, area = tris[ok], flush[ok], area[ok]
    order = np.lexsort((flush, area))
    return hull, tris[order], flush[order], area[order]


def min_area_enclosing_triangle(points) -> TriangleSolution:
    """Smallest-area triangle containing every point.

    Raises
    ------
    DegenerateInput
        If the points are collinear.
    """
    hull, tris, flush, area = _enclosing_candidates(points)
    T = Triangle.from_array(tris[0])
    return TriangleSolution(T, T.area, int(flush[0]), hull)


def vertex_set_distance(A, B) -> float:
    """Hausdorff distance between two vertex triples under the best matching."""
    A = np.asarray(A, float)
    B = np.asarray(B, float)
    return min(np.max(np.linalg.norm(A - B[list(p)], axis=1))
               for p in itertools.permutations(range(3)))


def nonuniqueness_witness(points, tol: float = 1e-9) -> Optional[tuple[Triangle, Triangle]]:
    """Two distinct enclosing triangles that are both optimal within ``tol``.

    Returns ``None`` when every optimal candidate coincides with the first.
    """
    hull, tris, flush, area = _enclosing_candidates(points)
    best = area[0]
    for k in range(1, len(tris)):
        if area[k] - best > tol * max(1.0, best):
            break
        if vertex_set_distance(tris[0], tris[k]) > DISTINCT_TOL:
            return Triangle.from_array(tris[0]), Triangle.from_array(tris[k])
    return None


def regular_hexagon(radius: float = 1.0) -> np.ndarray:
    ang = np.pi / 3 * np.arange(6)
    return radius * np.column_stack([np.cos(ang), np.sin(ang)])
