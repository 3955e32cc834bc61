import numpy as np
import pytest

from qconeig.ceig import (complex_eigenvalues, complex_eigenvector, hermitian_eigh, hermitian_eigs, inverse,
                          lu_factor, lu_solve)
from qconeig.errors import NotHermitian

import oracles


def test_small_examples():
    assert np.allclose(complex_eigenvalues([[0, 1], [1, 0]]), [-1, 1])
    assert np.allclose(complex_eigenvalues(np.diag([3, -1j, 2])), [-1j, 2, 3])
    assert np.allclose(complex_eigenvalues([[2, -2], [1, 0]]), [1 - 1j, 1 + 1j])


def test_sorted_by_real_then_imag():
    rng = np.random.default_rng(0)
    ev = complex_eigenvalues(rng.standard_normal((7, 7)))
    assert ev == sorted(ev, key=lambda z: (z.real, z.imag))


def test_against_polynomial_roots():
    rng = np.random.default_rng(1)
    for t in range(100):
        n = 1 + t % 4
        X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        roots = oracles.durand_kerner(oracles.charpoly(X))
        assert oracles.multiset_distance(complex_eigenvalues(X), list(roots)) <= 1e-6


def test_similarity_invariance():
    rng = np.random.default_rng(2)
    for n in range(2, 9):
        X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        S = np.eye(n) + 0.3 * rng.standard_normal((n, n))
        Y = inverse(S) @ X @ S
        a, b = np.array(complex_eigenvalues(X)), np.array(complex_eigenvalues(Y))
        assert all(np.min(np.abs(b - z)) <= 1e-7 * (1 + abs(z)) for z in a)


def test_hard_cases():
    # Jordan block, zero matrix, companion of (z-1)^3, permutation cycle
    assert np.allclose(complex_eigenvalues(np.zeros((4, 4))), 0)
    J = np.diag(np.ones(3), 1) + 2 * np.eye(4)
    assert np.allclose(complex_eigenvalues(J), 2, atol=1e-3)
    P = np.roll(np.eye(6), 1, axis=0)
    want = sorted(np.exp(2j * np.pi * np.arange(6) / 6), key=lambda z: (round(z.real, 9), z.imag))
    assert oracles.multiset_distance(complex_eigenvalues(P), want) <= 1e-10


def test_eigenvector_examples():
    v = complex_eigenvector(np.diag([2.0, 3.0]), 2)
    assert abs(abs(v[0]) - 1) < 1e-12 and abs(v[1]) < 1e-10  # shift nudge is 1e-12 relative
    v = complex_eigenvector(np.array([[0, 1], [1, 0]], dtype=complex), 1)
    assert np.allclose(np.abs(v), [2 ** -0.5] * 2)


def test_eigenvector_residual_contract():
    rng = np.random.default_rng(3)
    for n in range(1, 10):
        X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        for lam in complex_eigenvalues(X):
            v = complex_eigenvector(X, lam)
            assert abs(np.linalg.norm(v) - 1) < 1e-12
            assert np.linalg.norm(X @ v - lam * v) <= 1e-8 * np.linalg.norm(X)


def test_hermitian():
    assert np.allclose(hermitian_eigs(np.eye(3)), [1, 1, 1])
    assert np.allclose(hermitian_eigs(np.diag([5.0, 2.0])), [2, 5])
    rng = np.random.default_rng(4)
    for n in range(1, 13):
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        H = G + G.conj().T
        w, V = hermitian_eigh(H)
        assert np.all(np.diff(w) >= 0)
        assert np.allclose(w, sorted(z.real for z in complex_eigenvalues(H)), atol=1e-8)
        assert np.linalg.norm(H @ V - V * w) <= 1e-10 * np.linalg.norm(H)
        assert np.allclose(V.conj().T @ V, np.eye(n), atol=1e-12)


def test_not_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigs(np.array([[1, 2], [0, 1]], dtype=complex))


def test_lu_solve():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    b = rng.standard_normal(6)
    LU, perm, _ = lu_factor(A)
    assert np.allclose(A @ lu_solve(LU, perm, b), b)
    assert np.allclose(A @ inverse(A), np.eye(6))
