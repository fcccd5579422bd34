"""Dense complex linear algebra on small square matrices.

Joint R x Q indices are laid out with R as the slow index, i.e. the basis
ket |k_R>|k_Q> sits at position ``k_R * dQ + k_Q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

HERMITIAN_TOL = 1e-10
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100


class LinAlgError(ValueError):
    """Raised for malformed matrices or eigensolver failure."""


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # real, sorted descending
    eigenvectors: np.ndarray  # columns paired with eigenvalues

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite square complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise LinAlgError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise LinAlgError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def tensor_product(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace_R(m, dR: int, dQ: int) -> np.ndarray:
    """Trace out the first (slow-index) factor of an (dR*dQ)-dim operator."""
    m = as_matrix(m)
    if m.shape[0] != dR * dQ:
        raise LinAlgError(f"dim {m.shape[0]} != dR*dQ = {dR * dQ}")
    return np.einsum("kikj->ij", m.reshape(dR, dQ, dR, dQ))


def partial_trace_Q(m, dR: int, dQ: int) -> np.ndarray:
    """Trace out the second (fast-index) factor."""
    m = as_matrix(m)
    if m.shape[0] != dR * dQ:
        raise LinAlgError(f"dim {m.shape[0]} != dR*dQ = {dR * dQ}")
    return np.einsum("ikjk->ij", m.reshape(dR, dQ, dR, dQ))


@njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):
    """Cyclic complex Jacobi on Hermitian ``a`` in place; returns sweeps used or -1."""
    n = a.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(a[p, q]))
        if off < tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < tol * 1e-3:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # J = [[c, s], [-s*conj(phase), c*conj(phase)]] strips the phase of
                # a[p, q] and then applies a real rotation; a <- J^H a J, v <- v J
                ph = phase.conjugate()
                for k in range(n):
                    xp = a[k, p]
                    xq = a[k, q] * ph
                    a[k, p] = c * xp - s * xq
                    a[k, q] = s * xp + c * xq
                for k in range(n):
                    xp = a[p, k]
                    xq = a[q, k] * phase
                    a[p, k] = c * xp - s * xq
                    a[q, k] = s * xp + c * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q] * ph
                    v[k, p] = c * xp - s * xq
                    v[k, q] = s * xp + c * xq
    return -1


def hermitian_eig(m, *, tol: float = OFFDIAG_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    The input is symmetrized as (m + m^H)/2 first. Raises LinAlgError if m is
    not Hermitian to within 1e-10 entrywise, or if the off-diagonal part has
    not dropped below ``tol`` after ``max_sweeps`` sweeps.
    """
    m = as_matrix(m)
    if np.max(np.abs(m - dagger(m)), initial=0.0) > HERMITIAN_TOL:
        raise LinAlgError("matrix is not Hermitian")
    n = m.shape[0]
    a = np.ascontiguousarray(0.5 * (m + dagger(m)))
    v = np.eye(n, dtype=complex)
    if _jacobi_sweeps(a, v, tol, max_sweeps) < 0:
        raise LinAlgError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    w = a.diagonal().real.copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def complete_orthonormal_basis(v, dim: int | None = None) -> list[np.ndarray]:
    """Extend a unit vector to an orthonormal basis; ``v`` is kept as element 0.

    The complement comes from Gram-Schmidt over the standard basis vectors,
    skipping candidates whose residual norm falls under 1e-8.
    """
    v = np.asarray(v, dtype=complex).ravel()
    if dim is None:
        dim = v.size
    if v.size != dim:
        raise LinAlgError(f"vector length {v.size} != dim {dim}")
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise LinAlgError("input vector is not normalized")

    basis = [v]
    for k in range(dim):
        if len(basis) == dim:
            break
        w = np.zeros(dim, dtype=complex)
        w[k] = 1.0
        # two passes of modified Gram-Schmidt keep the Gram matrix at ~1e-16
        for _ in range(2):
            for b in basis:
                w = w - np.vdot(b, w) * b
        nrm = np.linalg.norm(w)
        if nrm < 1e-8:
            continue
        basis.append(w / nrm)
    return basis
