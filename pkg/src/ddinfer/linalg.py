"""Small dense linear algebra built on a cyclic Jacobi eigensolver.

Everything here targets matrices with at most a few dozen rows.  The
singular value decomposition is obtained from the symmetric eigenproblem
of the augmented matrix ``[[0, A], [A^T, 0]]``, whose eigenvalues are
``+/- sigma_i``, so only one iterative solver exists in the package.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_RANK_TOL = 1e-10
_SYM_TOL = 1e-12
_MAX_SWEEPS = 64


class ContractViolation(ValueError):
    """Raised when an input breaks a documented precondition."""


@dataclass(frozen=True)
class EigDecomposition:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.T


def as_matrix(A) -> np.ndarray:
    M = np.array(A, dtype=float)
    if M.ndim != 2:
        raise ContractViolation(f"expected a 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ContractViolation("matrix has non-finite entries")
    return M


def _fix_signs(U: np.ndarray) -> np.ndarray:
    # largest-magnitude entry positive; near-ties resolved toward the lowest index
    U = U.copy()
    for k in range(U.shape[1]):
        col = np.abs(U[:, k])
        if col.size == 0:
            continue
        big = col.max()
        idx = int(np.flatnonzero(col >= big - 1e-12 * max(big, 1.0))[0])
        if U[idx, k] < 0:
            U[:, k] = -U[:, k]
    return U


def _jacobi(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = A.shape[0]
    V = np.eye(n)
    amax = np.max(np.abs(A))
    if amax == 0.0:
        return np.zeros(n), V
    # unit max-entry keeps the squared norms below from under/overflowing
    A = A / amax
    scale = np.linalg.norm(A)
    for _ in range(_MAX_SWEEPS):
        off = np.linalg.norm(A[~np.eye(n, dtype=bool)])
        if off <= 1e-16 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                diff = A[q, q] - A[p, p]
                if abs(apq) < 1e-18 * abs(diff):
                    # rotation angle below double resolution
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = diff / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.hypot(theta, 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    return np.diag(A) * amax, V


def sym_eig(S) -> EigDecomposition:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Eigenvalues come back in descending order (stable for exact ties) and each
    eigenvector has its largest-magnitude entry positive.

    Raises
    ------
    ContractViolation
        If ``S`` is not square or not symmetric to 1e-12 relative tolerance.
    """
    S = as_matrix(S)
    if S.shape[0] != S.shape[1]:
        raise ContractViolation(f"sym_eig needs a square matrix, got {S.shape}")
    big = np.max(np.abs(S)) if S.size else 0.0
    if S.size and np.max(np.abs(S - S.T)) > _SYM_TOL * max(big, 1.0):
        raise ContractViolation("sym_eig needs a symmetric matrix")
    w, V = _jacobi(0.5 * (S + S.T))
    order = np.argsort(-w, kind="stable")
    return EigDecomposition(w[order], _fix_signs(V[:, order]))


def svd(A, tol: float = DEFAULT_RANK_TOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Compact SVD ``A = U diag(s) V^T`` keeping singular values > tol * s_max.

    Returns ``(U, s, V)`` with ``U`` of shape (m, k) and ``V`` of shape (n, k).
    """
    A = as_matrix(A)
    m, n = A.shape
    if tol < 0:
        raise ContractViolation("tol must be non-negative")
    if A.size == 0 or not np.any(A):
        return np.zeros((m, 0)), np.zeros(0), np.zeros((n, 0))
    if m > 2 * n or n > 2 * m:
        # shrink very tall/wide inputs to a square triangular factor first
        if m > n:
            Qf, R = np.linalg.qr(A)
            U, s, V = svd(R, tol)
            U = Qf @ U
            flip = np.sign(np.sum(_fix_signs(U) * U, axis=0))
            return U * flip, s, V * flip
        V, s, U = svd(A.T, tol)
        return U, s, V
    aug = np.zeros((m + n, m + n))
    aug[:m, m:] = A
    aug[m:, :m] = A.T
    w, W = _jacobi(aug)
    order = np.argsort(-w, kind="stable")
    w = w[order][: min(m, n)]
    W = W[:, order][:, : min(m, n)]
    smax = w[0]
    keep = w > max(tol * smax, 0.0)
    if tol == 0.0:
        keep &= w > 0.0
    s = w[keep]
    U = W[:m, keep]
    V = W[m:, keep]
    U = U / np.linalg.norm(U, axis=0)
    V = V / np.linalg.norm(V, axis=0)
    U = _fix_signs(U)
    # keep A v_k = s_k u_k after the sign fix on U
    V = V * np.sign(np.sum((A @ V) * U, axis=0))
    return U, s, V


def pinv(A, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse; singular values <= tol * s_max count as zero."""
    A = as_matrix(A)
    U, s, V = svd(A, tol)
    return (V / s) @ U.T


def rank(A, tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above ``tol * s_max`` (0 for the zero matrix)."""
    return len(svd(A, tol)[1])


def range_basis(A, tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthonormal columns spanning the numerical column space of ``A``."""
    return svd(A, tol)[0]
