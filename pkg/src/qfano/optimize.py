"""Minimizing the gamma (and gamma/xi) bounds over the probability simplex."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import gamma_bound, ineq3_bound
from .quantum import as_probability, random_probability

INTERIOR_FLOOR = 1e-9
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class OptimizationResult:
    gamma_star: np.ndarray
    bound_star: float
    iterations: int
    converged: bool
    xi_star: np.ndarray | None = None

    @property
    def gamma1(self) -> float:
        return float(self.gamma_star[0])


def project_to_simplex(v, floor: float = INTERIOR_FLOOR) -> np.ndarray:
    """Euclidean projection onto the simplex, then floored at ``floor`` and renormalized."""
    v = np.asarray(v, dtype=float).ravel()
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    k = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / k > 0)[0][-1]
    w = np.maximum(v - css[rho] / (rho + 1), 0.0)
    if floor > 0:
        w = np.maximum(w, floor)
        w /= w.sum()
    return w


def gamma_gradient(lam, gamma, F: float, d: int) -> np.ndarray:
    """Analytic gradient of :func:`gamma_bound` with respect to gamma."""
    lam = np.asarray(lam, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    s = float(lam @ gamma)
    return lam / s + (1.0 - F) * lam * (-d / s**2) / (d / s - 1.0) - lam / gamma


def _ineq3_gradients(lam, gamma, xi, F: float):
    t = float(np.sum(lam * gamma * xi))
    common = 1.0 / t - (1.0 - F) / (t * t) / (1.0 / t - 1.0)
    g_gamma = common * lam * xi - lam / gamma
    g_xi = common * lam * gamma
    j = int(np.argmin(xi))
    g_xi[j] -= 1.0 / xi[j]  # a subgradient of -ln(min xi)
    return g_gamma, g_xi


def projected_descent(objective: Callable, gradient: Callable, x0, *, tol: float = 1e-10,
                      max_iter: int = 10000, step0: float = 0.1, callback=None):
    """Projected gradient descent with a halving backtracking line search.

    A step is accepted once the objective does not increase; the next trial
    step is twice the last accepted one. Stops when an accepted step lowers
    the objective by less than ``tol``. ``callback(x, f)`` sees every accepted
    iterate. Returns (x, f, iterations, converged).
    """
    x = project_to_simplex(x0)
    f = objective(x)
    if not math.isfinite(f):
        raise ValueError("objective is not finite at the starting point")
    step = step0
    for it in range(1, max_iter + 1):
        g = gradient(x)
        while True:
            cand = project_to_simplex(x - step * g)
            fc = objective(cand)
            if fc <= f:
                break
            step *= 0.5
            if step < 1e-300:
                return x, f, it, True
        decrease = f - fc
        x, f = cand, fc
        if callback is not None:
            callback(x, f)
        if decrease < tol:
            return x, f, it, True
        step = min(2.0 * step, 1e6)
    return x, f, max_iter, False


def optimize_gamma(lam, F: float, d: int | None = None, tol: float = 1e-10,
                   max_iter: int = 10000, *, starts: int | None = None, seed: int = 0) -> OptimizationResult:
    """Minimize gamma_bound(lam, gamma, F, d) over interior gamma, starting from uniform.

    For d >= 3 the objective is not known to be convex, so by default five
    extra random interior starts are tried and the best result kept.
    """
    lam = as_probability(lam)
    d = lam.size if d is None else d
    if starts is None:
        starts = 5 if d >= 3 else 0

    def objective(g):
        return gamma_bound(lam, g, F, d)

    def gradient(g):
        return gamma_gradient(lam, g, F, d)

    inits = [np.full(d, 1.0 / d)]
    inits += [random_probability(seed + k, d, floor=1e-3) for k in range(starts)]
    best = None
    for x0 in inits:
        x, f, it, ok = projected_descent(objective, gradient, x0, tol=tol, max_iter=max_iter)
        if best is None or f < best.bound_star:
            best = OptimizationResult(x, f, it, ok)
    return best


def golden_section_gamma1(lam, F: float, tol: float = 1e-10) -> OptimizationResult:
    """Golden-section search over gamma_1 in [1e-9, 1 - 1e-9] for d = 2."""
    lam = as_probability(lam)
    if lam.size != 2:
        raise ValueError("golden-section search is for d = 2 only")

    def f(x):
        return gamma_bound(lam, [x, 1.0 - x], F, 2)

    a, b = INTERIOR_FLOOR, 1.0 - INTERIOR_FLOOR
    c = b - GOLDEN * (b - a)
    e = a + GOLDEN * (b - a)
    fc, fe = f(c), f(e)
    it = 0
    while b - a > tol:
        it += 1
        if fc < fe:
            b, e, fe = e, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, e, fe
            e = a + GOLDEN * (b - a)
            fe = f(e)
    x = 0.5 * (a + b)
    fx = f(x)
    return OptimizationResult(np.array([x, 1.0 - x]), fx, it, True)


def optimize_gamma_xi(lam, F: float, tol: float = 1e-10, max_rounds: int = 50,
                      max_iter: int = 10000) -> OptimizationResult:
    """Coordinate descent on the (gamma, xi) bound, alternating the two simplex blocks.

    This goes beyond the gamma-only optimization: xi is also tuned. Starts
    from uniform gamma and xi, where the bound equals the quantum Fano value.
    """
    lam = as_probability(lam)
    d = lam.size
    gamma = np.full(d, 1.0 / d)
    xi = np.full(d, 1.0 / d)
    f = ineq3_bound(lam, gamma, xi, F)
    total = 0
    for _ in range(max_rounds):
        gamma, _, it1, _ = projected_descent(
            lambda g: ineq3_bound(lam, g, xi, F),
            lambda g: _ineq3_gradients(lam, g, xi, F)[0],
            gamma, tol=tol, max_iter=max_iter)
        xi, f_new, it2, _ = projected_descent(
            lambda x: ineq3_bound(lam, gamma, x, F),
            lambda x: _ineq3_gradients(lam, gamma, x, F)[1],
            xi, tol=tol, max_iter=max_iter)
        total += it1 + it2
        if f - f_new < tol:
            return OptimizationResult(gamma, f_new, total, True, xi_star=xi)
        f = f_new
    return OptimizationResult(gamma, f, total, False, xi_star=xi)
