"""Minimum-volume range inference for spherical state spaces.

A cloud of outcome distributions ``p_x`` is first reduced to the affine
subspace it spans, the minimum-volume enclosing ellipsoid is computed there
with a barycentric ascent, and the result is lifted back to the ambient
space as a :class:`RangeEllipsoid` ``{p : (I - QQ^+)(p - t) = 0,
(p - t)^T Q^+ (p - t) <= 1}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import ContractViolation

DEFAULT_EPS = 1e-9
DEFAULT_TOL_AFF = 1e-7
DEFAULT_MAX_ITER = 1_000_000
_REFRESH_EVERY = 64


class SolverError(RuntimeError):
    """The ascent did not reach the requested accuracy.

    The last iterate is kept on the exception so callers can still inspect it.
    """

    def __init__(self, message, weights, center, shape):
        super().__init__(message)
        self.weights = weights
        self.center = center
        self.shape = shape


@dataclass(frozen=True)
class AffineFrame:
    """Base point ``p0`` and isometry ``V`` (n x d) spanning ``aff{p_x} - p0``."""

    p0: np.ndarray
    V: np.ndarray

    @property
    def d(self) -> int:
        return self.V.shape[1]

    def reduce(self, points) -> np.ndarray:
        return (np.atleast_2d(points) - self.p0) @ self.V

    def lift(self, reduced) -> np.ndarray:
        return np.atleast_2d(reduced) @ self.V.T + self.p0


@dataclass(frozen=True)
class FullDimEllipsoid:
    """``{x : (x - c)^T A (x - c) <= 1}`` with ``A`` symmetric positive definite."""

    c: np.ndarray
    A: np.ndarray

    @property
    def d(self) -> int:
        return len(self.c)

    def contains(self, x, tol: float = 0.0) -> bool:
        r = np.asarray(x, float) - self.c
        return bool(r @ self.A @ r <= 1.0 + tol)

    def area(self) -> float:
        """Volume (area for d = 2) of the ellipsoid."""
        return unit_ball_volume(self.d) / math.sqrt(np.linalg.det(self.A))


@dataclass(frozen=True, eq=False)
class RangeEllipsoid:
    """Possibly flat ellipsoid in distribution space, described by ``(Q, t)``."""

    t: np.ndarray
    Q: np.ndarray
    rank: int = field(default=-1)

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float).reshape(-1)
        Q = np.asarray(self.Q, dtype=float)
        if Q.shape != (len(t), len(t)):
            raise ContractViolation(f"Q has shape {Q.shape}, expected {(len(t), len(t))}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "Q", Q)
        if self.rank < 0:
            object.__setattr__(self, "rank", linalg.rank(Q) if len(t) else 0)

    @property
    def n(self) -> int:
        return len(self.t)


def unit_ball_volume(k: int) -> float:
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


def as_points(ps) -> np.ndarray:
    P = np.array(ps, dtype=float)
    if P.ndim == 1:
        P = P[None, :]
    if P.ndim != 2 or P.shape[0] == 0:
        raise ContractViolation("a point set needs at least one point")
    if not np.all(np.isfinite(P)):
        raise ContractViolation("point coordinates must be finite")
    return P


def affine_reduce(ps, tol_aff: float = DEFAULT_TOL_AFF) -> tuple[AffineFrame, np.ndarray]:
    """Express the points in coordinates of their own affine hull.

    The frame dimension is the smallest ``d`` such that every point lies within
    ``tol_aff`` (max-norm) of ``p0 + span V``.

    Returns
    -------
    frame : AffineFrame
        ``p0`` is the first point.
    reduced : ndarray, shape (m, d)
        ``V^T (p_x - p0)`` for every point.
    """
    P = as_points(ps)
    p0 = P[0].copy()
    D = (P - p0).T
    U, _, _ = linalg.svd(D, tol=0.0)
    k = 0
    while k < U.shape[1]:
        Uk = U[:, :k]
        if np.max(np.abs(D - Uk @ (Uk.T @ D))) <= tol_aff:
            break
        k += 1
    frame = AffineFrame(p0, U[:, :k].copy())
    return frame, frame.reduce(P)


def _khachiyan(X: np.ndarray, eps: float, max_iter: int):
    """Barycentric ascent with away steps on the lifted points ``(x; 1)``.

    Returns the weights ``u``, the center and the covariance-type matrix
    ``d * (sum u x x^T - c c^T)`` whose inverse is the ellipsoid shape.
    """
    m, d = X.shape
    n = d + 1
    L = np.hstack([X, np.ones((m, 1))])
    if linalg.rank(L, tol=1e-12) < n:
        raise ContractViolation("points do not affinely span the space; reduce them first")
    u = np.full(m, 1.0 / m)

    def kappas(u):
        Minv = np.linalg.inv(L.T @ (L * u[:, None]))
        return Minv, np.einsum("ij,jk,ik->i", L, Minv, L)

    Minv, kap = kappas(u)
    converged = False
    for it in range(max_iter):
        if it % _REFRESH_EVERY == 0:
            Minv, kap = kappas(u)
        j_up = int(np.argmax(kap))
        support = np.flatnonzero(u > 0)
        j_dn = int(support[np.argmin(kap[support])])
        up_gap = kap[j_up] - n
        dn_gap = n - kap[j_dn]
        if up_gap <= eps * n and dn_gap <= eps * n:
            converged = True
            break
        dropped = False
        if up_gap >= dn_gap:
            j = j_up
            tau = up_gap / (n * (kap[j] - 1.0))
        else:
            j = j_dn
            floor = -u[j] / (1.0 - u[j])
            tau = -dn_gap / (n * (kap[j] - 1.0)) if kap[j] - 1.0 > 1e-15 else floor
            if tau <= floor:
                tau, dropped = floor, True
        # rank-one refresh of M^{-1} and of every kappa_i
        w = Minv @ L[j]
        denom = 1.0 - tau + tau * kap[j]
        Minv = (Minv - tau * np.outer(w, w) / denom) / (1.0 - tau)
        kap = (kap - tau * (L @ w) ** 2 / denom) / (1.0 - tau)
        u = (1.0 - tau) * u
        u[j] = 0.0 if dropped else u[j] + tau
    c = u @ X
    cov = d * ((X * u[:, None]).T @ X - np.outer(c, c))
    cov = 0.5 * (cov + cov.T)
    if not converged:
        raise SolverError(
            f"MVEE ascent did not converge in {max_iter} iterations",
            u, c, np.linalg.inv(cov),
        )
    return u, c, cov


def mvee_full(ps, eps: float = DEFAULT_EPS, max_iter: int = DEFAULT_MAX_ITER) -> FullDimEllipsoid:
    """Minimum-volume enclosing ellipsoid of points that affinely span R^d.

    Every input point satisfies ``(x - c)^T A (x - c) <= 1 + 10 eps`` and the
    volume is within ``(1 + eps)^d`` of the optimum.

    Raises
    ------
    ContractViolation
        If the points are not full-dimensional or ``eps <= 0``.
    SolverError
        If ``max_iter`` is exhausted.
    """
    X = as_points(ps)
    if X.shape[1] < 1:
        raise ContractViolation("mvee_full needs d >= 1")
    if eps <= 0:
        raise ContractViolation("eps must be positive")
    _, c, cov = _khachiyan(X, eps, max_iter)
    return FullDimEllipsoid(c, np.linalg.inv(cov))


def _reduced_mvee(Z: np.ndarray, eps: float, max_iter: int) -> tuple[np.ndarray, np.ndarray]:
    d = Z.shape[1]
    if d == 0:
        return np.zeros(0), np.zeros((0, 0))
    if d == 1:
        lo, hi = Z[:, 0].min(), Z[:, 0].max()
        half = 0.5 * (hi - lo)
        return np.array([0.5 * (lo + hi)]), np.array([[half * half]])
    _, c, cov = _khachiyan(Z, eps, max_iter)
    return c, cov


def ddi_spherical_detailed(ps, eps: float = DEFAULT_EPS, tol_aff: float = DEFAULT_TOL_AFF,
                           max_iter: int = DEFAULT_MAX_ITER):
    """Like :func:`ddi_spherical` but also returns the frame and reduced points."""
    frame, Z = affine_reduce(ps, tol_aff)
    c, cov = _reduced_mvee(Z, eps, max_iter)
    V = frame.V
    Q = V @ cov @ V.T
    Q = 0.5 * (Q + Q.T)
    t = V @ c + frame.p0
    return frame, Z, RangeEllipsoid(t, Q, rank=frame.d)


def ddi_spherical(ps, eps: float = DEFAULT_EPS, tol_aff: float = DEFAULT_TOL_AFF,
                  max_iter: int = DEFAULT_MAX_ITER) -> RangeEllipsoid:
    """Data-driven inference of a measurement range for a spherical state space.

    The range is the minimum-volume ellipsoid enclosing the points, with the
    volume measured inside their affine hull.  A single point gives ``Q = 0``;
    two or more collinear points give the segment as a rank-1 ellipsoid.
    """
    return ddi_spherical_detailed(ps, eps, tol_aff, max_iter)[2]


def ellipsoid_contains(E: RangeEllipsoid, p, tol: float = 1e-9) -> bool:
    p = np.asarray(p, dtype=float)
    if p.shape != E.t.shape:
        raise ContractViolation("dimension mismatch")
    r = p - E.t
    Qp = linalg.pinv(E.Q) if np.any(E.Q) else np.zeros_like(E.Q)
    off_support = r - E.Q @ (Qp @ r)
    return bool(np.max(np.abs(off_support), initial=0.0) <= tol and r @ Qp @ r <= 1.0 + tol)


def ellipsoid_volume(E: RangeEllipsoid) -> tuple[int, float]:
    """``(rank, volume)`` with the volume measured inside the support of ``Q``."""
    k = E.rank
    if k == 0:
        return 0, 0.0
    lam = linalg.sym_eig(E.Q).eigenvalues[:k]
    return k, unit_ball_volume(k) * math.sqrt(float(np.prod(lam)))


def ellipsoid_equal(E1: RangeEllipsoid, E2: RangeEllipsoid, tol: float = 1e-9) -> bool:
    if E1.n != E2.n:
        raise ContractViolation("ellipsoids live in different dimensions")
    return bool(np.max(np.abs(E1.Q - E2.Q), initial=0.0) <= tol
                and np.max(np.abs(E1.t - E2.t), initial=0.0) <= tol)


def map_ellipsoid(E: RangeEllipsoid, D, offset=None) -> RangeEllipsoid:
    """Image of the ellipsoid under ``p -> D p + offset``."""
    D = np.asarray(D, dtype=float)
    t = D @ E.t if offset is None else D @ E.t + np.asarray(offset, float)
    return RangeEllipsoid(t, D @ E.Q @ D.T)
