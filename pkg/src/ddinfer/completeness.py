"""Observational and informational completeness of qubit state sets.

A set of Bloch vectors is observationally complete (for every informationally
complete measurement) when its minimum-volume enclosing ellipsoid is the
Bloch ball itself.  Restricted to a support subspace with projector ``Pi``,
the condition becomes: the enclosing ellipsoid of ``{Pi r}`` is the unit
ball of that subspace.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import linalg
from .linalg import ContractViolation
from .mvee import DEFAULT_EPS, RangeEllipsoid, affine_reduce, ddi_spherical
from .qubit import StateSet

DEFAULT_TOL = 1e-6
PLATONIC = ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron")


@dataclass(frozen=True)
class SubspaceProjector:
    P: np.ndarray

    def __post_init__(self):
        P = np.asarray(self.P, dtype=float)
        if P.shape != (3, 3):
            raise ContractViolation("projector must be 3x3")
        if np.max(np.abs(P - P.T)) > 1e-10 or np.max(np.abs(P @ P - P)) > 1e-10:
            raise ContractViolation("projector must be symmetric and idempotent")
        object.__setattr__(self, "P", P)

    @classmethod
    def onto(cls, *axes) -> "SubspaceProjector":
        """Projector onto the span of the given vectors."""
        V = linalg.range_basis(np.array(axes, dtype=float).T)
        return cls(V @ V.T)

    @property
    def rank(self) -> int:
        return linalg.rank(self.P)

    def basis(self) -> np.ndarray:
        return linalg.range_basis(self.P)


XZ_PLANE = SubspaceProjector(np.diag([1.0, 0.0, 1.0]))
Z_AXIS = SubspaceProjector(np.diag([0.0, 0.0, 1.0]))


@dataclass(frozen=True)
class CompletenessVerdict:
    """Outcome of a completeness check.

    ``witness`` is set only when ``verdict`` is false: the inferred ellipsoid
    for observational checks, the deficient affine dimension for the
    informational one.
    """

    verdict: bool
    witness: Optional[Union[RangeEllipsoid, int]] = None

    def __bool__(self) -> bool:
        return self.verdict


def _points(S) -> np.ndarray:
    return S.bloch if isinstance(S, StateSet) else StateSet(S).bloch


def is_informationally_complete(S, tol: float = 1e-9) -> CompletenessVerdict:
    frame, _ = affine_reduce(_points(S), tol_aff=tol)
    if frame.d == 3:
        return CompletenessVerdict(True)
    return CompletenessVerdict(False, frame.d)


def _unit_ball_check(points, target_Q, tol: float) -> CompletenessVerdict:
    E = ddi_spherical(points, eps=DEFAULT_EPS)
    close = (np.max(np.abs(E.Q - target_Q)) <= tol and np.max(np.abs(E.t)) <= tol)
    return CompletenessVerdict(True) if close else CompletenessVerdict(False, E)


def is_observationally_complete(S, tol: float = DEFAULT_TOL) -> CompletenessVerdict:
    """True iff the enclosing ellipsoid of the Bloch vectors is the unit ball."""
    return _unit_ball_check(_points(S), np.eye(3), tol)


def is_oc_for_support(S, Pi: SubspaceProjector, tol: float = DEFAULT_TOL) -> CompletenessVerdict:
    """Observational completeness for every measurement supported on ``Pi``."""
    if not isinstance(Pi, SubspaceProjector):
        Pi = SubspaceProjector(Pi)
    return _unit_ball_check(_points(S) @ Pi.P.T, Pi.P, tol)


def gen_regular_simplex() -> StateSet:
    """The SIC tetrahedron: four unit Bloch vectors with pairwise dot -1/3."""
    return StateSet(np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3))


def gen_trine() -> StateSet:
    """Trine in the x-z plane starting at +z."""
    s = math.sqrt(3) / 2
    return StateSet([[0, 0, 1], [s, 0, -0.5], [-s, 0, -0.5]])


def gen_regular_polygon(n: int, plane: SubspaceProjector = XZ_PLANE) -> StateSet:
    if n < 3:
        raise ContractViolation("a regular polygon needs n >= 3")
    if not isinstance(plane, SubspaceProjector):
        plane = SubspaceProjector(plane)
    V = plane.basis()
    if V.shape[1] != 2:
        raise ContractViolation("plane projector must have rank 2")
    ang = 2 * np.pi * np.arange(n) / n
    return StateSet(np.outer(np.cos(ang), V[:, 0]) + np.outer(np.sin(ang), V[:, 1]))


def gen_platonic(name: str) -> StateSet:
    """Vertices of a Platonic solid inscribed in the Bloch sphere."""
    phi = (1 + math.sqrt(5)) / 2
    if name == "tetrahedron":
        return gen_regular_simplex()
    if name == "octahedron":
        V = np.vstack([np.eye(3), -np.eye(3)])
    elif name == "cube":
        V = np.array([[x, y, z] for x in (1, -1) for y in (1, -1) for z in (1, -1)], float)
    elif name == "icosahedron":
        V = np.array([p for s1 in (1, -1) for s2 in (1, -1)
                      for p in ([0, s1, s2 * phi], [s1, s2 * phi, 0], [s2 * phi, 0, s1])], float)
    elif name == "dodecahedron":
        cube = [[x, y, z] for x in (1, -1) for y in (1, -1) for z in (1, -1)]
        rest = [p for s1 in (1, -1) for s2 in (1, -1)
                for p in ([0, s1 / phi, s2 * phi], [s1 / phi, s2 * phi, 0], [s2 * phi, 0, s1 / phi])]
        V = np.array(cube + rest, float)
    else:
        raise ValueError(f"unknown Platonic solid {name!r}; expected one of {PLATONIC}")
    return StateSet(V / np.linalg.norm(V, axis=1, keepdims=True))


def perturb_set(S: StateSet, index: int, factor: float) -> StateSet:
    """Shrink one Bloch vector toward the origin by ``factor`` in (0, 1]."""
    R = _points(S).copy()
    if not 0 <= index < len(R):
        raise IndexError(f"state index {index} out of range")
    if not 0 < factor <= 1:
        raise ContractViolation("factor must lie in (0, 1]")
    R[index] *= factor
    return StateSet(R)


def random_rotation(rng: np.random.Generator, proper: bool = True) -> np.ndarray:
    """Haar-random element of SO(3) (or of O(3) when ``proper`` is false)."""
    Q, R = np.linalg.qr(rng.normal(size=(3, 3)))
    Q = Q * np.sign(np.diag(R))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    if not proper and rng.random() < 0.5:
        Q = -Q
    return Q


def random_sphere_points(rng: np.random.Generator, m: int) -> np.ndarray:
    X = rng.normal(size=(m, 3))
    return X / np.linalg.norm(X, axis=1, keepdims=True)
