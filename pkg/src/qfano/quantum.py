"""States, channels, purification and pinching.

Density matrices, pure states and probability vectors are plain numpy arrays;
the ``as_*`` helpers validate and normalize them at API boundaries.
A channel is a :class:`KrausChannel`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import as_matrix, dagger, hermitian_eig

STATE_TOL = 1e-10
NEG_SLACK = 1e-12

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class StateError(ValueError):
    """Raised when an input violates a state/channel invariant."""


def as_probability(weights, *, tol: float = STATE_TOL) -> np.ndarray:
    """Validate a probability vector; tiny negatives (>= -1e-12) are clamped to 0."""
    w = np.asarray(weights, dtype=float).ravel()
    if w.size == 0 or not np.all(np.isfinite(w)):
        raise StateError("probability vector must be finite and non-empty")
    if np.any(w < -NEG_SLACK):
        raise StateError(f"negative weight {w.min():.3g}")
    w = np.clip(w, 0.0, None)
    if abs(w.sum() - 1.0) > tol:
        raise StateError(f"weights sum to {w.sum():.15g}, not 1")
    return w


def as_density(rho, *, tol: float = STATE_TOL) -> np.ndarray:
    rho = as_matrix(rho)
    if np.max(np.abs(rho - dagger(rho))) > tol:
        raise StateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise StateError(f"density matrix has trace {np.trace(rho).real:.15g}")
    if hermitian_eig(rho).eigenvalues[-1] < -tol:
        raise StateError("density matrix is not positive semidefinite")
    return rho


def as_pure(psi, *, tol: float = STATE_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise StateError("pure state is not normalized")
    return psi


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


@dataclass(frozen=True)
class KrausChannel:
    """CPTP map on d x d matrices given by its Kraus operators."""

    operators: tuple

    def __init__(self, operators: Sequence, *, tol: float = STATE_TOL):
        ops = tuple(as_matrix(e) for e in operators)
        if not ops:
            raise StateError("channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        if any(e.shape != (d, d) for e in ops):
            raise StateError("Kraus operators must share one square shape")
        resid = completeness_residual(ops)
        if resid > tol:
            raise StateError(f"Kraus completeness violated (residual {resid:.3g})")
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self) -> int:
        return len(self.operators)

    def __call__(self, rho) -> np.ndarray:
        return apply_channel(self, rho)


def completeness_residual(operators) -> float:
    d = operators[0].shape[0]
    total = sum(dagger(e) @ e for e in operators)
    return float(np.max(np.abs(total - np.eye(d))))


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel([np.eye(d)])


def purify(lam, basis=None) -> np.ndarray:
    """Purification sum_k sqrt(lam_k) |k_R>|u_k> of rho = sum_k lam_k |u_k><u_k|.

    ``basis`` holds the eigenvectors u_k as columns (a unitary); the default
    is the standard basis, which puts amplitude sqrt(lam_k) at index k*d + k.
    """
    lam = as_probability(lam)
    d = lam.size
    if d < 2:
        raise StateError("purification needs d >= 2")
    u = np.eye(d, dtype=complex) if basis is None else as_matrix(basis)
    if u.shape != (d, d):
        raise StateError("basis shape does not match lambda")
    # row k of psi.reshape(d, d) is sqrt(lam_k) * u_k
    psi = (np.sqrt(lam)[:, None] * u.T).ravel()
    return psi


def reduced_state(lam, basis=None) -> np.ndarray:
    """rho = Tr_R |psi><psi| for the purification of ``lam``."""
    lam = as_probability(lam)
    u = np.eye(lam.size, dtype=complex) if basis is None else as_matrix(basis)
    return (u * lam) @ dagger(u)


def _check_dims(ch: KrausChannel, dim: int) -> None:
    if ch.dim != dim:
        raise StateError(f"channel acts on dim {ch.dim}, state has dim {dim}")


def apply_channel(ch: KrausChannel, rho) -> np.ndarray:
    rho = as_matrix(rho)
    _check_dims(ch, rho.shape[0])
    return sum(e @ rho @ dagger(e) for e in ch.operators)


def extend_to_joint(ch: KrausChannel, psi) -> np.ndarray:
    """rho^{R1Q1} = (id_R (x) E)(|psi><psi|) for psi on R (x) Q with dim(R) = dim(Q)."""
    psi = as_pure(psi)
    d = ch.dim
    if psi.size != d * d:
        raise StateError(f"joint state has dim {psi.size}, expected {d * d}")
    # acting with I (x) E on psi == right-multiplying the d x d amplitude grid by E^T
    grid = psi.reshape(d, d)
    vecs = [(grid @ e.T).ravel() for e in ch.operators]
    return sum(np.outer(v, v.conj()) for v in vecs)


def pinch(rho, basis) -> np.ndarray:
    """Diagonal of ``rho`` in an orthonormal ``basis`` (the pinched distribution)."""
    rho = as_matrix(rho)
    b = np.column_stack([np.asarray(v, dtype=complex).ravel() for v in basis])
    n = rho.shape[0]
    if b.shape != (n, n):
        raise StateError(f"basis has {b.shape[1]} vectors of length {b.shape[0]}, need {n}")
    if np.max(np.abs(dagger(b) @ b - np.eye(n))) > STATE_TOL:
        raise StateError("basis is not orthonormal")
    diag = np.einsum("ik,ij,jk->k", b.conj(), rho, b)
    if np.max(np.abs(diag.imag)) > STATE_TOL:
        raise StateError("pinched diagonal is not real; rho is not Hermitian")
    p = np.clip(diag.real, 0.0, None)
    if abs(p.sum() - 1.0) > STATE_TOL:
        raise StateError(f"pinched weights sum to {p.sum():.15g}")
    return p


def depolarizing_channel(p: float) -> KrausChannel:
    """Qubit depolarizing channel (1 - 3p/4) rho + (p/4)(X rho X + Y rho Y + Z rho Z)."""
    if not 0.0 <= p <= 1.0:
        raise StateError(f"depolarizing strength p={p} outside [0, 1]")
    a = np.sqrt(1.0 - 0.75 * p)
    b = np.sqrt(0.25 * p)
    return KrausChannel([a * PAULI_I, b * PAULI_X, b * PAULI_Y, b * PAULI_Z])


# --- seeded random instances -------------------------------------------------

def rng_for(seed, *stream: int) -> np.random.Generator:
    """PCG64 generator for ``seed``; extra integers select an independent substream.

    ``rng_for(42, trial)`` is how verification trials are split, so any single
    trial can be replayed from its (seed, trial) pair on any platform.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *stream])))


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def _phase_fixed_q(g: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1.0)
    return q * phases


def random_unitary(seed, d: int) -> np.ndarray:
    """Haar-distributed d x d unitary."""
    return _phase_fixed_q(_ginibre(rng_for(seed), d, d))


def random_channel(seed, d: int, num_kraus: int) -> KrausChannel:
    """Random channel from a Haar-like (num_kraus*d) x d isometry cut into d x d blocks."""
    if d < 2 or num_kraus < 1:
        raise StateError("need d >= 2 and num_kraus >= 1")
    iso = _phase_fixed_q(_ginibre(rng_for(seed), num_kraus * d, d))
    return KrausChannel([iso[k * d:(k + 1) * d] for k in range(num_kraus)])


def random_density(seed, d: int, rank: int | None = None) -> np.ndarray:
    """Ginibre-ensemble density matrix G G^H / Tr(G G^H); full rank unless ``rank`` is given."""
    g = _ginibre(rng_for(seed), d, d if rank is None else rank)
    rho = g @ dagger(g)
    rho = 0.5 * (rho + dagger(rho))
    return rho / np.trace(rho).real


def random_probability(seed, d: int, floor: float = 0.0) -> np.ndarray:
    """Uniform (flat Dirichlet) point of the simplex, optionally mixed toward uniform."""
    w = rng_for(seed).dirichlet(np.ones(d))
    if floor:
        w = (1.0 - d * floor) * w + floor
    return w / w.sum()

