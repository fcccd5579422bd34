"""Entanglement fidelity, entropy exchange and Fano-type upper bounds on the latter.

Every bound here is an upper bound on the entropy exchange S(rho, E). They
differ in the reference state used on the doubled system:

* :func:`general_bound` takes any full-rank joint state ``sigma``;
* :func:`ineq2_bound` takes the product form sum_k gamma_k |k><k| (x) rho_Q2;
* :func:`ineq3_bound` further makes rho_Q2 diagonal with weights ``xi``;
* :func:`gamma_bound` fixes ``xi`` uniform and leaves only ``gamma``;
* :func:`qfi_bound` is the quantum Fano inequality, the uniform case of all of them.

Infinite values (gamma_k = 0 against lambda_k > 0) are valid but useless
bounds and are returned as ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import binary_entropy, binary_relative_entropy, von_neumann_entropy
from .linalg import as_matrix, complete_orthonormal_basis, dagger, hermitian_eig
from .quantum import (
    KrausChannel,
    apply_channel,
    as_density,
    as_pure,
    as_probability,
    extend_to_joint,
    pinch,
    purify,
    reduced_state,
)

IMAG_TOL = 1e-10
PD_TOL = 1e-10


class BoundError(ValueError):
    """A bound is undefined for the given inputs (as opposed to infinite)."""


def _real(z, what: str) -> float:
    if abs(z.imag) > IMAG_TOL:
        raise BoundError(f"{what} has imaginary part {z.imag:.3g}; input is not Hermitian")
    return float(z.real)


def _log_pd(m, what: str) -> np.ndarray:
    eig = hermitian_eig(m)
    if eig.eigenvalues[-1] <= PD_TOL:
        raise BoundError(f"{what} is singular (min eigenvalue {eig.eigenvalues[-1]:.3g})")
    v = eig.eigenvectors
    return (v * np.log(eig.eigenvalues)) @ dagger(v)


def _minus_sum_lam_log_gamma(lam: np.ndarray, gamma: np.ndarray) -> float:
    live = lam > 0
    if np.any(gamma[live] <= 0):
        return math.inf
    return float(-np.sum(lam[live] * np.log(gamma[live])))


def entanglement_fidelity(psi, rho_joint) -> float:
    psi = as_pure(psi)
    rho_joint = as_matrix(rho_joint)
    if rho_joint.shape[0] != psi.size:
        raise BoundError(f"state has dim {psi.size}, joint matrix has dim {rho_joint.shape[0]}")
    f = _real(np.vdot(psi, rho_joint @ psi), "fidelity")
    return min(max(f, 0.0), 1.0)


def entropy_exchange(rho_joint) -> float:
    return von_neumann_entropy(rho_joint)


def exchange_matrix(channel: KrausChannel, rho) -> np.ndarray:
    """W[i, j] = Tr(E_i rho E_j^H); its spectrum equals that of the joint output state."""
    ops = channel.operators
    rho = as_matrix(rho)
    w = np.empty((len(ops), len(ops)), dtype=complex)
    for i, ei in enumerate(ops):
        left = ei @ rho
        for j, ej in enumerate(ops):
            w[i, j] = np.trace(left @ dagger(ej))
    return w


def entropy_exchange_kraus(channel: KrausChannel, rho) -> float:
    """Entropy exchange from the Kraus exchange matrix, without building the joint state."""
    return von_neumann_entropy(exchange_matrix(channel, rho))


def qfi_bound(F: float, d: int) -> float:
    """Quantum Fano inequality: H(F) + (1 - F) ln(d^2 - 1)."""
    return binary_entropy(F) + (1.0 - F) * math.log(d * d - 1)


def general_bound(psi, rho_joint, sigma) -> float:
    """-g(F, q1) - Tr(rho_joint ln sigma) for a full-rank reference state ``sigma``.

    F and q1 are the weights of the pinched ``rho_joint`` and ``sigma`` on psi,
    the first vector of the pinching basis.
    """
    psi = as_pure(psi)
    rho_joint = as_matrix(rho_joint)
    sigma = as_matrix(sigma)
    if sigma.shape != rho_joint.shape:
        raise BoundError("sigma and the joint state differ in dimension")
    log_sigma = _log_pd(sigma, "reference state sigma")
    basis = complete_orthonormal_basis(psi)
    F = pinch(rho_joint, basis)[0]
    q1 = pinch(sigma, basis)[0]
    cross = _real(np.trace(rho_joint @ log_sigma), "Tr(rho ln sigma)")
    return -binary_relative_entropy(F, q1) - cross


def product_ancilla(gamma, rho_q2) -> np.ndarray:
    """Reference state sum_k gamma_k |k_R><k_R| (x) rho_Q2."""
    gamma = as_probability(gamma)
    return np.kron(np.diag(gamma).astype(complex), as_matrix(rho_q2))


def ineq2_bound(lam, gamma, rho_q2, F: float, e_of_rho, basis=None) -> float:
    """Bound for the product reference state with a full-rank ``rho_q2``.

    ``basis`` holds the eigenvectors |k_Q> of rho (columns) that ``lam`` is
    indexed against; it defaults to the standard basis.
    """
    lam = as_probability(lam)
    gamma = as_probability(gamma)
    rho_q2 = as_matrix(rho_q2)
    e_of_rho = as_matrix(e_of_rho)
    d = lam.size
    if gamma.size != d or rho_q2.shape != (d, d) or e_of_rho.shape != (d, d):
        raise BoundError("lambda, gamma, rho_Q2 and E(rho) must share dimension d")
    log_q2 = _log_pd(rho_q2, "rho_Q2")
    u = np.eye(d, dtype=complex) if basis is None else as_matrix(basis)
    diag = np.real(np.einsum("ik,ij,jk->k", u.conj(), rho_q2, u))
    q1 = float(np.sum(gamma * lam * diag))
    tail = _minus_sum_lam_log_gamma(lam, gamma)
    if math.isinf(tail):
        return math.inf
    cross = _real(np.trace(e_of_rho @ log_q2), "Tr(E(rho) ln rho_Q2)")
    return -binary_relative_entropy(F, q1) + tail - cross


def ineq3_bound(lam, gamma, xi, F: float) -> float:
    """Closed-form bound with rho_Q2 diagonal in the eigenbasis of rho, weights ``xi``."""
    lam = as_probability(lam)
    gamma = as_probability(gamma)
    xi = as_probability(xi)
    if not lam.size == gamma.size == xi.size:
        raise BoundError("lambda, gamma and xi must have equal length")
    xi_min = xi.min()
    if xi_min <= 0:
        raise BoundError("xi must be strictly positive")
    tail = _minus_sum_lam_log_gamma(lam, gamma)
    if math.isinf(tail):
        return math.inf
    t = float(np.sum(lam * gamma * xi))
    if not 0.0 < t < 1.0:
        raise BoundError(f"sum lambda*gamma*xi = {t} outside (0, 1)")
    return (binary_entropy(F) + math.log(t / xi_min)
            + (1.0 - F) * math.log(1.0 / t - 1.0) + tail)


def gamma_bound(lam, gamma, F: float, d: int | None = None) -> float:
    """H(F) + ln s + (1 - F) ln(d/s - 1) - sum_k lam_k ln gamma_k, with s = sum_k lam_k gamma_k."""
    lam = as_probability(lam)
    gamma = as_probability(gamma)
    if d is None:
        d = lam.size
    if gamma.size != lam.size or lam.size != d:
        raise BoundError("lambda and gamma must both have length d")
    tail = _minus_sum_lam_log_gamma(lam, gamma)
    if math.isinf(tail):
        return math.inf
    s = float(lam @ gamma)
    if not 0.0 < s < d:
        raise BoundError(f"sum lambda*gamma = {s} outside (0, d)")
    return binary_entropy(F) + math.log(s) + (1.0 - F) * math.log(d / s - 1.0) + tail


def beta_bound_max(F: float, beta_max: float, d: int) -> float:
    """Bound when psi is the top eigenvector of the reference state, eigenvalue ``beta_max``."""
    if not 1.0 / (d * d) - 1e-15 <= beta_max < 1.0:
        raise BoundError(f"beta_max={beta_max} outside [1/d^2, 1)")
    return binary_entropy(F) - F * math.log(1.0 / beta_max - 1.0) + math.log(d * d - 1)


def beta_bound_min(F: float, beta_min: float, d: int | None = None) -> float:
    """Bound when psi is the bottom eigenvector of the reference state, eigenvalue ``beta_min``."""
    if beta_min <= 0:
        raise BoundError(f"beta_min={beta_min} must be positive")
    if d is not None and beta_min > 1.0 / (d * d) + 1e-15:
        raise BoundError(f"beta_min={beta_min} exceeds 1/d^2")
    return binary_entropy(F) + (1.0 - F) * math.log(1.0 / beta_min - 1.0)


@dataclass
class BoundReport:
    fidelity: float
    entropy_exchange: float
    qfi: float
    ineq1: float
    ineq2: float
    ineq3: float
    ineq4: float
    beta_max_bound: float
    beta_min_bound: float
    # parameters that produced the bounds
    lam: np.ndarray = field(repr=False)
    gamma: np.ndarray = field(repr=False)
    xi: np.ndarray = field(repr=False)
    rho_q2: np.ndarray = field(repr=False)
    sigma: np.ndarray = field(repr=False)
    beta_max: float = 0.0
    beta_min: float = 0.0

    BOUND_FIELDS = ("qfi", "ineq1", "ineq2", "ineq3", "ineq4", "beta_max_bound", "beta_min_bound")

    @property
    def d(self) -> int:
        return self.lam.size

    def bounds(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.BOUND_FIELDS}

    def worst_slack(self) -> float:
        """min over finite bounds of (bound - entropy exchange); negative means a violation."""
        finite = [b for b in self.bounds().values() if math.isfinite(b)]
        return min(b - self.entropy_exchange for b in finite)

    def holds(self, tol: float = 1e-9) -> bool:
        return self.worst_slack() >= -tol


def _spectrum_and_basis(state):
    arr = np.asarray(state)
    if arr.ndim == 1:
        lam = as_probability(arr)
        return lam, np.eye(lam.size, dtype=complex)
    eig = hermitian_eig(as_density(arr))
    w = np.clip(eig.eigenvalues, 0.0, None)
    return as_probability(w / w.sum()), eig.eigenvectors


def full_report(state, channel: KrausChannel, gamma=None, xi=None, rho_q2=None,
                beta_max: float | None = None, beta_min: float | None = None) -> BoundReport:
    """Compute F, S and every bound for one (rho, E) instance.

    ``state`` is either the spectrum lambda (taken in the standard basis) or a
    density matrix, whose eigenvalues are sorted descending and whose
    eigenvectors then index ``gamma`` and ``xi``. Omitted parameters default to
    uniform gamma and xi, rho_Q2 = sum_k xi_k |k_Q><k_Q| and beta = 1/d^2.
    ``ineq1`` is evaluated at the product reference state built from gamma and
    rho_Q2; it is NaN when that state is singular.
    """
    lam, basis = _spectrum_and_basis(state)
    d = lam.size
    if channel.dim != d:
        raise BoundError(f"channel dim {channel.dim} != state dim {d}")
    uniform = np.full(d, 1.0 / d)
    gamma = uniform if gamma is None else as_probability(gamma)
    xi = uniform if xi is None else as_probability(xi)
    rho = reduced_state(lam, basis)
    if rho_q2 is None:
        rho_q2 = (basis * xi) @ dagger(basis)
    rho_q2 = as_matrix(rho_q2)
    beta_max = 1.0 / d**2 if beta_max is None else beta_max
    beta_min = 1.0 / d**2 if beta_min is None else beta_min

    psi = purify(lam, basis)
    joint = extend_to_joint(channel, psi)
    F = entanglement_fidelity(psi, joint)
    S = entropy_exchange(joint)
    sigma = product_ancilla(gamma, rho_q2)
    try:
        ineq1 = general_bound(psi, joint, sigma)
    except BoundError:
        ineq1 = math.nan

    return BoundReport(
        fidelity=F,
        entropy_exchange=S,
        qfi=qfi_bound(F, d),
        ineq1=ineq1,
        ineq2=ineq2_bound(lam, gamma, rho_q2, F, apply_channel(channel, rho), basis),
        ineq3=ineq3_bound(lam, gamma, xi, F),
        ineq4=gamma_bound(lam, gamma, F, d),
        beta_max_bound=beta_bound_max(F, beta_max, d),
        beta_min_bound=beta_bound_min(F, beta_min, d),
        lam=lam, gamma=gamma, xi=xi, rho_q2=rho_q2, sigma=sigma,
        beta_max=beta_max, beta_min=beta_min,
    )
