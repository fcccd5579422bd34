"""The single-qubit depolarizing example: closed forms and the p sweep."""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from .bounds import entanglement_fidelity, entropy_exchange, qfi_bound
from .entropy import shannon_entropy
from .optimize import golden_section_gamma1
from .quantum import (
    StateError,
    as_probability,
    depolarizing_channel,
    extend_to_joint,
    purify,
    random_unitary,
    rng_for,
)

CLOSED_FORM_TOL = 1e-8


class ClosedFormMismatch(RuntimeError):
    """Simulated and closed-form values disagree; indicates a bug, not bad input."""


def depol_fidelity_closed(p: float, lam: float) -> float:
    return 1.0 + p * (lam * lam - lam - 0.5)


def depol_theta(p: float, lam: float) -> float:
    v = lam * (1.0 - lam)
    radicand = p * p + 12.0 * p * p * v + 4.0 * (1.0 - p) - 16.0 * p * v
    if radicand < 0:
        if radicand < -1e-12:
            raise StateError(f"negative radicand {radicand} at p={p}, lambda={lam}")
        radicand = 0.0
    return math.sqrt(radicand)


def depol_joint_spectrum(p: float, lam: float) -> np.ndarray:
    """Eigenvalues of the joint output state for the depolarizing example."""
    theta = depol_theta(p, lam)
    w = np.array([
        p * lam / 2.0,
        (1.0 - lam) * p / 2.0,
        -p / 4.0 + 0.5 + theta / 4.0,
        -p / 4.0 + 0.5 - theta / 4.0,
    ])
    if w.min() < -1e-9:
        raise StateError(f"closed-form spectrum has negative weight {w.min():.3g}")
    return as_probability(np.clip(w, 0.0, None), tol=1e-9)


def depol_entropy_closed(p: float, lam: float) -> float:
    return shannon_entropy(depol_joint_spectrum(p, lam))


@dataclass(frozen=True)
class SweepRow:
    p: float
    fidelity: float
    entropy_exchange: float
    qfi: float
    ineq4_opt: float
    gamma1_star: float

    def ordered(self, tol: float = 1e-9) -> bool:
        return (self.entropy_exchange <= self.ineq4_opt + tol
                and self.ineq4_opt <= self.qfi + tol)

    def values(self) -> tuple:
        return astuple(self)


SWEEP_COLUMNS = tuple(f.name for f in fields(SweepRow))


def sweep_point(p: float, lam: float, unitary=None, tol: float = 1e-10) -> SweepRow:
    """One grid point: simulate with rho = U diag(lam, 1 - lam) U^H and optimize gamma_1."""
    lam_vec = np.array([lam, 1.0 - lam])
    psi = purify(lam_vec, unitary)
    joint = extend_to_joint(depolarizing_channel(p), psi)
    F = entanglement_fidelity(psi, joint)
    S = entropy_exchange(joint)
    F_closed = depol_fidelity_closed(p, lam)
    S_closed = depol_entropy_closed(p, lam)
    if abs(F - F_closed) > CLOSED_FORM_TOL or abs(S - S_closed) > CLOSED_FORM_TOL:
        raise ClosedFormMismatch(
            f"p={p}: F {F!r} vs {F_closed!r}, S {S!r} vs {S_closed!r}")
    opt = golden_section_gamma1(lam_vec, F, tol)
    return SweepRow(p, F, S, qfi_bound(F, 2), opt.bound_star, opt.gamma1)


def sweep(lam: float, p_steps: int = 101, seed: int = 42, tol: float = 1e-10) -> list[SweepRow]:
    """Depolarizing sweep over a uniform grid of p in [0, 1]; rows ordered by p.

    Grid point i draws its Haar unitary from substream (seed, i), so rows are
    independent of each other and of evaluation order.
    """
    if p_steps < 2:
        raise ValueError("p_steps must be at least 2")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda={lam} outside [0, 1]")
    grid = np.linspace(0.0, 1.0, p_steps)
    rows = [sweep_point(float(p), lam, random_unitary(rng_for(seed, i), 2), tol)
            for i, p in enumerate(grid)]
    return rows
