import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_hermitian
from qfano.linalg import (
    LinAlgError,
    complete_orthonormal_basis,
    hermitian_eig,
    partial_trace_Q,
    partial_trace_R,
    tensor_product,
)
from qfano.quantum import PAULI_X, PAULI_Z, purify, projector


def char_poly_roots(m, n_grid=4000, iters=200):
    """Eigenvalues of Hermitian m as sign changes of det(m - xI), refined by bisection."""
    n = m.shape[0]
    bound = np.abs(m).sum(axis=1).max() + 1.0

    def f(x):
        return np.linalg.det(m - x * np.eye(n)).real

    xs = np.linspace(-bound, bound, n_grid)
    vals = np.array([f(x) for x in xs])
    roots = []
    for a, b, fa, fb in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if fa == 0:
            roots.append(a)
        elif fa * fb < 0:
            for _ in range(iters):
                mid = 0.5 * (a + b)
                fm = f(mid)
                if fa * fm <= 0:
                    b = mid
                else:
                    a, fa = mid, fm
            roots.append(0.5 * (a + b))
    return np.sort(roots)[::-1]


def test_tensor_product_examples():
    np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))
    p0 = np.diag([1, 0])
    np.testing.assert_array_equal(tensor_product(p0, p0), np.diag([1, 0, 0, 0]))
    np.testing.assert_array_equal(tensor_product(PAULI_Z, PAULI_Z), np.diag([1, -1, -1, 1]))


def test_tensor_product_blocks(rng):
    a, b = random_hermitian(rng, 2), random_hermitian(rng, 3)
    k = tensor_product(a, b)
    assert k.shape == (6, 6)
    np.testing.assert_allclose(k[3:, :3], a[1, 0] * b, atol=0)


def test_partial_trace_examples():
    np.testing.assert_allclose(partial_trace_R(np.eye(4) / 4, 2, 2), np.eye(2) / 2)
    rho = partial_trace_R(projector(purify([0.3, 0.7])), 2, 2)
    np.testing.assert_allclose(rho, np.diag([0.3, 0.7]), atol=1e-15)


@pytest.mark.parametrize("dR,dQ", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_partial_trace_of_product(rng, dR, dQ):
    for _ in range(20):
        a, b = random_hermitian(rng, dR), random_hermitian(rng, dQ)
        m = tensor_product(a, b)
        np.testing.assert_allclose(partial_trace_R(m, dR, dQ), np.trace(a) * b, atol=1e-12)
        np.testing.assert_allclose(partial_trace_Q(m, dR, dQ), np.trace(b) * a, atol=1e-12)
        assert abs(np.trace(m) - np.trace(a) * np.trace(b)) <= 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(LinAlgError):
        partial_trace_R(np.eye(4), 3, 2)


def test_eig_pauli():
    np.testing.assert_allclose(hermitian_eig(PAULI_Z).eigenvalues, [1, -1])
    np.testing.assert_allclose(hermitian_eig(PAULI_X).eigenvalues, [1, -1], atol=1e-15)


def test_eig_against_characteristic_polynomial(rng):
    for _ in range(5):
        m = random_hermitian(rng, 4)
        oracle = char_poly_roots(m)
        assert oracle.size == 4
        np.testing.assert_allclose(hermitian_eig(m).eigenvalues, oracle, atol=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4, 9])
def test_eig_reconstruction_and_orthonormality(rng, n):
    for _ in range(100):
        m = random_hermitian(rng, n)
        e = hermitian_eig(m)
        assert np.max(np.abs(e.reconstruct() - m)) <= 1e-10
        v = e.eigenvectors
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-10
        assert np.all(np.diff(e.eigenvalues) <= 0)
        assert abs(e.eigenvalues.sum() - np.trace(m).real) <= 1e-10


def test_eig_degenerate():
    e = hermitian_eig(np.diag([2.0, 1.0, 1.0, 2.0]))
    np.testing.assert_allclose(e.eigenvalues, [2, 2, 1, 1])


def test_eig_rejects_non_hermitian():
    with pytest.raises(LinAlgError):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_eig_reports_non_convergence(rng):
    with pytest.raises(LinAlgError):
        hermitian_eig(random_hermitian(rng, 5), max_sweeps=1)


def test_complete_basis_examples():
    e1 = np.array([1, 0, 0, 0], dtype=complex)
    np.testing.assert_allclose(np.column_stack(complete_orthonormal_basis(e1, 4)), np.eye(4))
    v = np.array([1, 1]) / np.sqrt(2)
    b = complete_orthonormal_basis(v, 2)
    assert np.array_equal(b[0], v.astype(complex))
    assert abs(abs(np.vdot(b[1], np.array([1, -1]) / np.sqrt(2))) - 1) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 9), st.integers(0, 2**32 - 1))
def test_complete_basis_gram(n, seed):
    r = np.random.default_rng(seed)
    v = r.standard_normal(n) + 1j * r.standard_normal(n)
    v /= np.linalg.norm(v)
    b = np.column_stack(complete_orthonormal_basis(v))
    assert b.shape == (n, n)
    np.testing.assert_array_equal(b[:, 0], v)
    assert np.max(np.abs(b.conj().T @ b - np.eye(n))) <= 1e-10


def test_complete_basis_rejects_non_unit():
    with pytest.raises(LinAlgError):
        complete_orthonormal_basis(np.array([1.0, 1.0]))
