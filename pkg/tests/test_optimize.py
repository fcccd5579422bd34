import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qfano.bounds import gamma_bound, ineq3_bound, qfi_bound
from qfano.depolarizing import depol_entropy_closed, depol_fidelity_closed
from qfano.optimize import (
    INTERIOR_FLOOR,
    golden_section_gamma1,
    gamma_gradient,
    optimize_gamma,
    optimize_gamma_xi,
    project_to_simplex,
    projected_descent,
)
from qfano.quantum import random_probability, rng_for


def test_projection_examples():
    np.testing.assert_allclose(project_to_simplex([0.6, 0.6]), [0.5, 0.5])
    p = np.array([0.2, 0.3, 0.5])
    np.testing.assert_allclose(project_to_simplex(p, floor=0), p, atol=1e-16)
    eps = INTERIOR_FLOOR
    np.testing.assert_allclose(project_to_simplex([2, 0, 0]), np.array([1, eps, eps]) / (1 + 2 * eps))


def brute_projection(v, grid=201):
    """Closest point of a fine simplex grid (d = 3), an independent oracle."""
    best, arg = np.inf, None
    xs = np.linspace(0, 1, grid)
    for a in xs:
        for b in xs[xs <= 1 - a + 1e-12]:
            x = np.array([a, b, max(1 - a - b, 0.0)])
            dist = np.sum((x - v) ** 2)
            if dist < best:
                best, arg = dist, x
    return arg


def test_projection_matches_grid_oracle(rng):
    for _ in range(5):
        v = rng.normal(size=3)
        np.testing.assert_allclose(project_to_simplex(v, floor=0), brute_projection(v), atol=5e-3)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=2, max_size=9))
def test_projection_is_interior_probability(v):
    w = project_to_simplex(v)
    assert abs(w.sum() - 1) <= 1e-12
    assert w.min() >= INTERIOR_FLOOR * 0.999


@settings(max_examples=300, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=2, max_size=9))
def test_projection_optimality(v):
    # KKT: v - w is constant on the support of w and no larger elsewhere
    v = np.array(v)
    w = project_to_simplex(v, floor=0)
    r = v - w
    on = w > 1e-12
    assert np.ptp(r[on]) <= 1e-9
    if (~on).any():
        assert r[~on].max() <= r[on].min() + 1e-9


def test_gradient_matches_finite_differences():
    rng = rng_for(3)
    h = 1e-6
    for _ in range(100):
        d = int(rng.integers(2, 5))
        lam = random_probability(rng, d)
        gamma = random_probability(rng, d, floor=0.02)
        F = rng.uniform()
        g = gamma_gradient(lam, gamma, F, d)
        fd = np.empty(d)
        for j in range(d):
            e = np.zeros(d)
            e[j] = h

            def f(x):
                s = lam @ x
                return math.log(s) + (1 - F) * math.log(d / s - 1) - lam @ np.log(x)
            fd[j] = (f(gamma + e) - f(gamma - e)) / (2 * h)
        assert np.max(np.abs(g - fd) / np.maximum(np.abs(fd), 1e-3)) <= 1e-5


def test_descent_is_monotone():
    rng = rng_for(8)
    for _ in range(20):
        lam = random_probability(rng, 3)
        F = rng.uniform()
        seen = []
        projected_descent(lambda g: gamma_bound(lam, g, F, 3),
                          lambda g: gamma_gradient(lam, g, F, 3),
                          random_probability(rng, 3, floor=0.01),
                          callback=lambda x, f: seen.append(f))
        assert len(seen) >= 1
        assert np.all(np.diff(seen) <= 0)


def test_optimize_gamma_symmetric():
    for F in (0.2, 0.5, 0.9):
        res = optimize_gamma([0.5, 0.5], F, 2)
        np.testing.assert_allclose(res.gamma_star, [0.5, 0.5], atol=1e-6)


def test_optimize_gamma_f_one():
    res = optimize_gamma([0.1, 0.9], 1.0, 2)
    assert res.bound_star <= 1e-9
    assert golden_section_gamma1([0.1, 0.9], 1.0).bound_star <= 1e-9


def test_golden_section_symmetric():
    assert golden_section_gamma1([0.5, 0.5], 0.6).gamma1 == pytest.approx(0.5, abs=1e-6)


def test_depolarizing_point_matches_golden_section():
    F = depol_fidelity_closed(0.5, 0.1)
    pg = optimize_gamma([0.1, 0.9], F, 2)
    gs = golden_section_gamma1([0.1, 0.9], F)
    assert abs(pg.bound_star - gs.bound_star) <= 1e-7
    assert pg.bound_star <= qfi_bound(F, 2)
    assert pg.bound_star >= depol_entropy_closed(0.5, 0.1) - 1e-9


def test_projected_gradient_agrees_with_golden_section():
    rng = rng_for(4)
    for _ in range(100):
        lam = random_probability(rng, 2)
        F = rng.uniform()
        a = optimize_gamma(lam, F, 2)
        b = golden_section_gamma1(lam, F)
        assert abs(a.bound_star - b.bound_star) <= 1e-7
        assert a.gamma_star.min() >= INTERIOR_FLOOR * 0.999


@pytest.mark.parametrize("d", [3, 4])
def test_optimize_gamma_higher_d(d):
    rng = rng_for(5, d)
    for _ in range(10):
        lam = random_probability(rng, d)
        F = rng.uniform()
        res = optimize_gamma(lam, F, d)
        assert res.bound_star <= qfi_bound(F, d) + 1e-9
        assert abs(res.gamma_star.sum() - 1) <= 1e-10
        # no random feasible point does better
        for _ in range(50):
            g = random_probability(rng, d, floor=1e-4)
            assert res.bound_star <= gamma_bound(lam, g, F, d) + 1e-9


def test_joint_gamma_xi_never_worse_than_gamma_only():
    rng = rng_for(6)
    for _ in range(10):
        d = int(rng.integers(2, 4))
        lam = random_probability(rng, d)
        F = rng.uniform(0.1, 0.9)
        joint = optimize_gamma_xi(lam, F)
        assert joint.bound_star <= qfi_bound(F, d) + 1e-12
        assert joint.bound_star <= optimize_gamma(lam, F, d).bound_star + 1e-7
        assert joint.bound_star == pytest.approx(ineq3_bound(lam, joint.gamma_star, joint.xi_star, F), abs=1e-12)
