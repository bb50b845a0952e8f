"""Qubit measurements in the real Bloch parametrization.

An effect ``a I + b . sigma`` is stored as the pair ``(a, b)``; it assigns
probability ``a + b . r`` to the state with Bloch vector ``r``.  The range of
a POVM over the Bloch ball is the ellipsoid with center ``t_y = a_y`` and
correlation matrix ``Q_xy = b_x . b_y``, which is invariant under the O(3)
gauge group acting on the Bloch parts.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import ContractViolation
from .mvee import RangeEllipsoid, ellipsoid_equal

BLOCH_TOL = 1e-12
POVM_TOL = 1e-9


class InvalidPovm(ValueError):
    pass


class InversionError(ValueError):
    """A correlation matrix / center pair that no qubit POVM can produce.

    ``reason`` is one of :data:`INVERSION_FAILURES`.
    """

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


INCONSISTENT = "inconsistent correlation matrix"
TOO_MANY_DIMENSIONS = "exceeds qubit linear dimension"
NOT_NORMALIZABLE = "not normalizable as a POVM"
POSITIVITY = "positivity violated"
INVERSION_FAILURES = (INCONSISTENT, TOO_MANY_DIMENSIONS, NOT_NORMALIZABLE, POSITIVITY)


@dataclass(frozen=True)
class QubitEffect:
    a: float
    b: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if b.shape != (3,):
            raise ContractViolation("effect Bloch part must be a 3-vector")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", b)

    def eigenvalues(self) -> tuple[float, float]:
        nb = float(np.linalg.norm(self.b))
        return self.a - nb, self.a + nb


@dataclass(frozen=True)
class QubitPovm:
    """A list of qubit effects; call :meth:`validate` to check the invariants."""

    effects: tuple

    def __post_init__(self):
        object.__setattr__(self, "effects", tuple(self.effects))

    @classmethod
    def from_arrays(cls, a, B) -> "QubitPovm":
        a = np.asarray(a, dtype=float).reshape(-1)
        B = np.asarray(B, dtype=float).reshape(len(a), 3)
        return cls(tuple(QubitEffect(ai, bi) for ai, bi in zip(a, B)))

    @property
    def n(self) -> int:
        return len(self.effects)

    @property
    def a(self) -> np.ndarray:
        return np.array([e.a for e in self.effects])

    @property
    def B(self) -> np.ndarray:
        return np.array([e.b for e in self.effects]).reshape(self.n, 3)

    def validate(self, tol: float = POVM_TOL) -> "QubitPovm":
        if self.n < 2:
            raise InvalidPovm("a POVM needs at least two outcomes")
        a, B = self.a, self.B
        if abs(a.sum() - 1.0) > tol or np.max(np.abs(B.sum(axis=0))) > tol:
            raise InvalidPovm("effects do not sum to the identity")
        nb = np.linalg.norm(B, axis=1)
        if np.any(a < -tol) or np.any(a > 1 + tol) or np.any(nb > np.minimum(a, 1 - a) + tol):
            raise InvalidPovm("an effect has eigenvalues outside [0, 1]")
        return self

    def is_valid(self, tol: float = POVM_TOL) -> bool:
        try:
            self.validate(tol)
        except InvalidPovm:
            return False
        return True


@dataclass(frozen=True)
class GaugeTransform:
    """Orthogonal map on Bloch space; det +1 is a unitary, det -1 an anti-unitary."""

    O: np.ndarray

    def __post_init__(self):
        O = np.asarray(self.O, dtype=float)
        if O.shape != (3, 3) or np.max(np.abs(O.T @ O - np.eye(3))) > 1e-10:
            raise ContractViolation("gauge transform must be a 3x3 orthogonal matrix")
        object.__setattr__(self, "O", O)

    @property
    def det(self) -> int:
        return 1 if np.linalg.det(self.O) > 0 else -1


@dataclass(frozen=True)
class StateSet:
    """Bloch vectors of a finite set of qubit states, one per row."""

    bloch: np.ndarray

    def __post_init__(self):
        R = np.array(self.bloch, dtype=float)
        if R.ndim == 1:
            R = R[None, :]
        if R.ndim != 2 or R.shape[1] != 3 or R.shape[0] == 0:
            raise ContractViolation("a state set is a nonempty list of 3-vectors")
        if not np.all(np.isfinite(R)) or np.any(np.linalg.norm(R, axis=1) > 1 + BLOCH_TOL):
            raise ContractViolation("Bloch vectors must have norm <= 1")
        object.__setattr__(self, "bloch", R)

    def __len__(self) -> int:
        return self.bloch.shape[0]

    def transformed(self, O) -> "StateSet":
        return StateSet(self.bloch @ np.asarray(O, float).T)


def born(P: QubitPovm, r) -> np.ndarray:
    """Outcome probabilities ``a_y + b_y . r``, clipped to [0, 1]."""
    r = np.asarray(r, dtype=float).reshape(3)
    return np.clip(P.a + P.B @ r, 0.0, 1.0)


def born_table(P: QubitPovm, states: StateSet) -> np.ndarray:
    return np.clip(P.a[None, :] + states.bloch @ P.B.T, 0.0, 1.0)


def povm_range(P: QubitPovm) -> RangeEllipsoid:
    B = P.B
    return RangeEllipsoid(P.a, B @ B.T)


def range_invert(E: RangeEllipsoid, tol: float = POVM_TOL) -> QubitPovm:
    """Canonical-gauge POVM whose range is ``E``.

    The Bloch parts are the rows of ``U_r Lambda_r^{1/2}`` from the
    eigendecomposition of ``Q`` (descending eigenvalues, eigen-axis k mapped
    to Bloch axis k).  Inside a degenerate eigenspace the choice of axes is
    whatever the eigensolver returns; that freedom is part of the gauge.

    Raises
    ------
    InversionError
        With ``reason`` set to the first failing check, in the order: PSD,
        rank <= 3, normalization, positivity.
    """
    if E.n < 2:
        raise ContractViolation("range inversion needs at least two outcomes")
    Q = 0.5 * (E.Q + E.Q.T)
    t = E.t
    eig = linalg.sym_eig(Q)
    lam, U = eig.eigenvalues, eig.eigenvectors
    if lam[-1] < -tol:
        raise InversionError(INCONSISTENT, f"eigenvalue {lam[-1]:.3g} < 0")
    significant = int(np.sum(lam > tol))
    if significant > 3:
        raise InversionError(TOO_MANY_DIMENSIONS, f"rank {significant} > 3")
    # tol only decides the checks; small genuine directions are kept
    r = min(3, int(np.sum(lam > linalg.DEFAULT_RANK_TOL * max(lam[0], 0.0))))
    if abs(t.sum() - 1.0) > tol or np.max(np.abs(Q.sum(axis=1))) > tol:
        raise InversionError(NOT_NORMALIZABLE, f"sum t = {t.sum():.6g}")
    B = np.zeros((E.n, 3))
    B[:, :r] = U[:, :r] * np.sqrt(lam[:r])
    nb = np.linalg.norm(B, axis=1)
    slack = np.minimum(t, 1.0 - t) - nb
    if np.any(slack < -tol):
        y = int(np.argmin(slack))
        raise InversionError(POSITIVITY, f"effect {y}: |b| = {nb[y]:.6g}, t = {t[y]:.6g}")
    return QubitPovm.from_arrays(t, B)


def gauge_apply(P: QubitPovm, G) -> QubitPovm:
    if not isinstance(G, GaugeTransform):
        G = GaugeTransform(G)
    return QubitPovm.from_arrays(P.a, P.B @ G.O.T)


def gauge_equivalent(P1: QubitPovm, P2: QubitPovm, tol: float = 1e-8) -> bool:
    """Whether two POVMs differ only by a unitary or anti-unitary gauge.

    Decided by comparing their ranges; equal Gram matrices of the Bloch parts
    guarantee an orthogonal map between them (see :func:`find_gauge`).
    """
    if P1.n != P2.n:
        raise ContractViolation("POVMs have different outcome counts")
    return ellipsoid_equal(povm_range(P1), povm_range(P2), tol)


def _complement(U: np.ndarray) -> np.ndarray:
    if U.shape[1] == 0:
        return np.eye(U.shape[0])
    # projector spectrum is {0, 1}: an absolute cut is immune to round-off scale
    eig = linalg.sym_eig(np.eye(U.shape[0]) - U @ U.T)
    return eig.eigenvectors[:, eig.eigenvalues > 0.5]


def find_gauge(P1: QubitPovm, P2: QubitPovm) -> GaugeTransform:
    """Orthogonal ``O`` minimizing ``|B1 O^T - B2|`` (orthogonal Procrustes).

    When the two POVMs are gauge equivalent the residual is zero, so
    ``gauge_apply(P1, O)`` reproduces ``P2``.
    """
    if P1.n != P2.n:
        raise ContractViolation("POVMs have different outcome counts")
    U, _, V = linalg.svd(P2.B.T @ P1.B, tol=1e-10)
    O = U @ V.T + _complement(U) @ _complement(V).T
    return GaugeTransform(O)


def simulate_counts(P: QubitPovm, states: StateSet, shots: int, seed: int):
    """Multinomial outcome counts for each state, reproducible per seed.

    Outcomes are drawn by inverse-CDF lookup of uniforms from numpy's PCG64
    bit generator seeded with ``seed``.

    Returns
    -------
    counts : ndarray of int, shape (m, n)
    freqs : ndarray, shape (m, n)
        ``counts / shots``.
    """
    if shots < 1:
        raise ContractViolation("shots must be >= 1")
    rng = np.random.Generator(np.random.PCG64(int(seed) & (2**64 - 1)))
    probs = born_table(P, states)
    counts = np.zeros(probs.shape, dtype=np.int64)
    for i, p in enumerate(probs):
        cdf = np.cumsum(p)
        cdf[-1] = 1.0
        draws = np.searchsorted(cdf, rng.random(shots), side="right")
        counts[i] = np.bincount(np.minimum(draws, P.n - 1), minlength=P.n)
    return counts, counts / shots


def mub_povm() -> QubitPovm:
    """Equal mixture of the z and x bases: outcomes +z, -z, +x, -x."""
    z, x = np.array([0, 0, 0.25]), np.array([0.25, 0, 0])
    return QubitPovm.from_arrays([0.25] * 4, [z, -z, x, -x])


def z_basis_povm() -> QubitPovm:
    return QubitPovm.from_arrays([0.5, 0.5], [[0, 0, 0.5], [0, 0, -0.5]])


def x_basis_povm() -> QubitPovm:
    return QubitPovm.from_arrays([0.5, 0.5], [[0.5, 0, 0], [-0.5, 0, 0]])


def trivial_povm() -> QubitPovm:
    return QubitPovm.from_arrays([0.5, 0.5], np.zeros((2, 3)))


def random_povm(rng: np.random.Generator, n: int) -> QubitPovm:
    """Random valid POVM with ``n`` outcomes.

    Draws ``n`` random positive rank-one-ish effects and rescales them so that
    they sum to the identity; built in the 2x2 operator picture and converted
    to Bloch form.
    """
    Ms = []
    for _ in range(n):
        G = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        Ms.append(G @ G.conj().T)
    S = sum(Ms)
    w, U = np.linalg.eigh(S)
    S_isqrt = U @ np.diag(w ** -0.5) @ U.conj().T
    paulis = (np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1]))
    a, B = [], []
    for M in Ms:
        E = S_isqrt @ M @ S_isqrt
        a.append(np.trace(E).real / 2)
        B.append([np.trace(E @ s).real / 2 for s in paulis])
    return QubitPovm.from_arrays(a, B)
