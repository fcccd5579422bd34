"""Randomized property suite behind ``qfano verify``.

Every property maps one random instance to a *slack*; the property holds on
that instance when ``slack >= -tol``. Equalities report ``-|error|``.
Trial ``t`` of property ``k`` at dimension ``d`` draws from the substream
``rng_for(seed, k, d, t)``, so a failure is replayed from those four numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import bounds as B
from .depolarizing import depol_entropy_closed, depol_fidelity_closed
from .entropy import (
    binary_relative_entropy,
    classical_relative_entropy,
    quantum_relative_entropy,
    von_neumann_entropy,
)
from .linalg import complete_orthonormal_basis, dagger, hermitian_eig, partial_trace_Q, partial_trace_R
from .optimize import optimize_gamma
from .quantum import (
    apply_channel,
    depolarizing_channel,
    extend_to_joint,
    pinch,
    projector,
    purify,
    random_channel,
    random_density,
    random_probability,
    random_unitary,
    reduced_state,
    rng_for,
)


@dataclass
class Instance:
    """A random (lambda, basis, channel) triple with the derived joint state."""

    lam: np.ndarray
    basis: np.ndarray
    channel: object
    psi: np.ndarray
    joint: np.ndarray

    @property
    def rho(self):
        return reduced_state(self.lam, self.basis)

    @property
    def F(self):
        return B.entanglement_fidelity(self.psi, self.joint)

    @property
    def S(self):
        return B.entropy_exchange(self.joint)


def random_instance(rng: np.random.Generator, d: int) -> Instance:
    lam = random_probability(rng, d)
    basis = random_unitary(rng, d)
    channel = random_channel(rng, d, int(rng.integers(1, d * d + 1)))
    psi = purify(lam, basis)
    return Instance(lam, basis, channel, psi, extend_to_joint(channel, psi))


def _random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (g + dagger(g))


# --- properties ---------------------------------------------------------------

def p_eig_reconstruction(rng, d):
    m = _random_hermitian(rng, d * d)
    e = hermitian_eig(m)
    gram = dagger(e.eigenvectors) @ e.eigenvectors
    return -max(np.max(np.abs(e.reconstruct() - m)), np.max(np.abs(gram - np.eye(d * d))))


def p_partial_trace_product(rng, d):
    a, b = _random_hermitian(rng, d), _random_hermitian(rng, d)
    return -np.max(np.abs(partial_trace_R(np.kron(a, b), d, d) - np.trace(a) * b))


def p_joint_marginals(rng, d):
    inst = random_instance(rng, d)
    err_q = np.max(np.abs(partial_trace_R(inst.joint, d, d) - apply_channel(inst.channel, inst.rho)))
    err_r = np.max(np.abs(partial_trace_Q(inst.joint, d, d)
                          - partial_trace_Q(projector(inst.psi), d, d)))
    return -max(err_q, err_r)


def p_exchange_matrix_entropy(rng, d):
    inst = random_instance(rng, d)
    return -abs(inst.S - B.entropy_exchange_kraus(inst.channel, inst.rho))


def p_qfi(rng, d):
    inst = random_instance(rng, d)
    return B.qfi_bound(inst.F, d) - inst.S


def p_extensions(rng, d):
    inst = random_instance(rng, d)
    gamma = random_probability(rng, d, floor=1e-3)
    xi = random_probability(rng, d, floor=1e-3)
    rho_q2 = random_density(rng, d)
    report = B.full_report(inst.lam, inst.channel, gamma, xi, rho_q2)
    # the report works in the standard basis; redo with the random eigenbasis too
    e_rho = apply_channel(inst.channel, inst.rho)
    ineq2 = B.ineq2_bound(inst.lam, gamma, rho_q2, inst.F, e_rho, inst.basis)
    sigma = random_density(rng, d * d)
    general = B.general_bound(inst.psi, inst.joint, sigma)
    return min(report.worst_slack(), ineq2 - inst.S, general - inst.S)


def p_optimized_gamma(rng, d):
    inst = random_instance(rng, d)
    F, S = inst.F, inst.S
    res = optimize_gamma(inst.lam, F, d, starts=0)
    return min(res.bound_star - S, B.qfi_bound(F, d) - res.bound_star)


def p_relative_entropy_chain(rng, d):
    n = d * d
    p = random_probability(rng, n)
    q = random_probability(rng, n)
    return classical_relative_entropy(p, q) - binary_relative_entropy(p[0], q[0])


def p_pinching_monotone(rng, d):
    n = d * d
    rho, sigma = random_density(rng, n), random_density(rng, n)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    basis = complete_orthonormal_basis(v / np.linalg.norm(v))
    return quantum_relative_entropy(rho, sigma) - classical_relative_entropy(
        pinch(rho, basis), pinch(sigma, basis))


def p_entropy_unitary_invariance(rng, d):
    rho = random_density(rng, d * d)
    u = random_unitary(rng, d * d)
    return -abs(von_neumann_entropy(u @ rho @ dagger(u)) - von_neumann_entropy(rho))


def p_depolarizing_closed_form(rng, d):
    if d != 2:
        return 0.0
    p, lam = rng.uniform(), rng.uniform()
    psi = purify([lam, 1.0 - lam], random_unitary(rng, 2))
    joint = extend_to_joint(depolarizing_channel(p), psi)
    return -max(abs(B.entanglement_fidelity(psi, joint) - depol_fidelity_closed(p, lam)),
                abs(B.entropy_exchange(joint) - depol_entropy_closed(p, lam)))


@dataclass(frozen=True)
class Property:
    name: str
    check: Callable[[np.random.Generator, int], float]
    tol: float


PROPERTIES = (
    Property("eig_reconstruction", p_eig_reconstruction, 1e-10),
    Property("partial_trace_of_product", p_partial_trace_product, 1e-12),
    Property("joint_state_marginals", p_joint_marginals, 1e-10),
    Property("exchange_matrix_entropy", p_exchange_matrix_entropy, 1e-9),
    Property("entropy_unitary_invariance", p_entropy_unitary_invariance, 1e-9),
    Property("relative_entropy_vs_binary", p_relative_entropy_chain, 1e-12),
    Property("pinching_monotonicity", p_pinching_monotone, 1e-10),
    Property("depolarizing_closed_form", p_depolarizing_closed_form, 1e-8),
    Property("qfi_validity", p_qfi, 1e-9),
    Property("extension_bounds_validity", p_extensions, 1e-9),
    Property("optimized_gamma_validity", p_optimized_gamma, 1e-9),
)


@dataclass
class PropertyResult:
    name: str
    trials: int
    tol: float
    worst_slack: float
    worst_case: tuple  # (seed, property index, d, trial)
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def run_property(index: int, prop: Property, seed: int, trials: int, dims: Sequence[int]) -> PropertyResult:
    worst = math.inf
    worst_case = ()
    failures = []
    count = 0
    for d in dims:
        for t in range(trials):
            case = (seed, index, d, t)
            slack = float(prop.check(rng_for(seed, index, d, t), d))
            count += 1
            if slack < worst:
                worst, worst_case = slack, case
            if not slack >= -prop.tol:
                failures.append(case)
    return PropertyResult(prop.name, count, prop.tol, worst, worst_case, failures)


def run_suite(seed: int = 42, trials: int = 500, dims: Sequence[int] = (2, 3)) -> list[PropertyResult]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if any(d < 2 for d in dims):
        raise ValueError("dimensions must be at least 2")
    return [run_property(i, prop, seed, trials, dims) for i, prop in enumerate(PROPERTIES)]
