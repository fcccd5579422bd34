"""Classical and quantum entropies in nats, with 0 ln 0 = 0."""

from __future__ import annotations

import math

import numpy as np

from .linalg import LinAlgError, as_matrix, hermitian_eig
from .quantum import StateError, as_probability

SUPPORT_TOL = 1e-10


def _xlogx(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = p[pos] * np.log(p[pos])
    return out


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy argument {x} outside [0, 1]")
    return 0.0 - float(_xlogx(np.array([x, 1.0 - x])).sum())


def shannon_entropy(p) -> float:
    p = as_probability(p)
    return 0.0 - float(_xlogx(p).sum())


def _spectrum(rho) -> np.ndarray:
    w = np.clip(hermitian_eig(rho).eigenvalues, 0.0, None)
    total = w.sum()
    if abs(total - 1.0) > 1e-8:
        raise StateError(f"spectrum sums to {total:.12g}; not a density matrix")
    return w / total


def von_neumann_entropy(rho) -> float:
    return shannon_entropy(_spectrum(rho))


def quantum_relative_entropy(rho, sigma) -> float:
    """S(rho || sigma) = Tr rho ln rho - Tr rho ln sigma; ``inf`` if supp rho is not in supp sigma."""
    rho = as_matrix(rho)
    sigma = as_matrix(sigma)
    if rho.shape != sigma.shape:
        raise LinAlgError(f"shape mismatch {rho.shape} vs {sigma.shape}")
    er = hermitian_eig(rho)
    es = hermitian_eig(sigma)
    overlap = np.abs(er.eigenvectors.conj().T @ es.eigenvectors) ** 2  # [i, j] = |<r_i|s_j>|^2
    lam = er.eigenvalues
    mu = es.eigenvalues
    live = lam > SUPPORT_TOL
    null = mu <= SUPPORT_TOL
    if np.any(overlap[np.ix_(live, null)].sum(axis=1) > SUPPORT_TOL):
        return math.inf
    lam = np.clip(lam, 0.0, None)
    log_mu = np.zeros_like(mu)
    log_mu[~null] = np.log(mu[~null])
    cross = float(lam[live] @ overlap[np.ix_(live, ~null)] @ log_mu[~null])
    return float(_xlogx(lam).sum()) - cross


def classical_relative_entropy(p, q) -> float:
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise ValueError(f"length mismatch {p.size} vs {q.size}")
    if np.any((p > 1e-12) & (q <= 1e-15)):
        return math.inf
    pos = (p > 0) & (q > 0)
    return float(np.sum(p[pos] * np.log(p[pos] / q[pos])))


def binary_relative_entropy(p: float, q: float) -> float:
    """g(p, q): relative entropy between the distributions [p, 1-p] and [q, 1-q]."""
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise ValueError(f"arguments ({p}, {q}) outside [0, 1]")
    return classical_relative_entropy([p, 1.0 - p], [q, 1.0 - q])


def classical_fano_bound(ps: float, n: int) -> float:
    """Upper bound H(Ps) + (1 - Ps) ln(n - 1) on H(X|Y) for an n-ary X."""
    if n < 2:
        raise ValueError("alphabet size must be at least 2")
    return binary_entropy(ps) + (1.0 - ps) * math.log(n - 1)
