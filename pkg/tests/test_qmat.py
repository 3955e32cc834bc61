import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qconeig.errors import ShapeMismatch, Singular
from qconeig.genmat import random_structured
from qconeig.qmat import (QMatrix, complex_adjoint, complex_split, fro_norm, from_complex_adjoint, qm_conj_transpose,
                          qm_inverse, qm_jconj, qm_mul, qm_scale_left, qm_scale_right, qm_transpose, spec_norm,
                          structure_flags)
from qconeig.quat import J

import oracles


def M(rows):
    return QMatrix.from_entries(rows)


def square(n_max=5):
    return st.integers(1, n_max).flatmap(
        lambda n: arrays(np.float64, (n, n, 4), elements=st.floats(-10, 10, allow_nan=False)))


class TestAlgebra:
    def test_left_and_right_scaling(self):
        A = M([["0", "i"], ["j", "0"]])
        assert qm_scale_left(J, A).allclose(M([["0", "-k"], ["-1", "0"]]))
        assert qm_scale_right(A, J).allclose(M([["0", "k"], ["-1", "0"]]))
        assert (J * A).allclose(qm_scale_left(J, A))
        assert (A * J).allclose(qm_scale_right(A, J))

    def test_identity_product(self):
        A = random_structured("plain", 4, 1).A
        assert qm_mul(QMatrix.identity(4), A).allclose(A)

    @settings(max_examples=40, deadline=None)
    @given(square(), st.data())
    def test_product_matches_entrywise_oracle(self, a, data):
        b = data.draw(arrays(np.float64, a.shape, elements=st.floats(-10, 10, allow_nan=False)))
        got = qm_mul(QMatrix(a), QMatrix(b)).data
        assert np.allclose(got, oracles.matmul(a, b), rtol=1e-12, atol=1e-10)

    def test_shape_errors(self):
        with pytest.raises(ShapeMismatch):
            qm_mul(QMatrix.zeros(2, 3), QMatrix.zeros(2, 3))
        with pytest.raises(ShapeMismatch):
            QMatrix.zeros(2) + QMatrix.zeros(3)
        with pytest.raises(ShapeMismatch):
            complex_adjoint(QMatrix.zeros(2, 3))

    def test_immutable(self):
        A = QMatrix.zeros(2)
        with pytest.raises(ValueError):
            A.data[0, 0, 0] = 1.0


class TestConjugationsAndSplit:
    def test_jconj(self):
        assert qm_jconj(M([["i"]])).allclose(M([["-i"]]))
        Z = np.array([[1 + 2j, -3j], [4, 5 - 1j]])
        assert qm_jconj(QMatrix.from_complex(Z)).allclose(QMatrix.from_complex(Z.conj()))

    def test_transposes(self):
        A = M([["0", "i"], ["j", "0"]])
        assert qm_transpose(A).allclose(M([["0", "j"], ["i", "0"]]))
        H = M([["0", "i"], ["-i", "0"]])
        assert qm_conj_transpose(H).allclose(H)

    @settings(max_examples=50, deadline=None)
    @given(square())
    def test_involutions(self, a):
        A = QMatrix(a)
        assert qm_jconj(qm_jconj(A)).allclose(A, 0)
        assert qm_conj_transpose(qm_conj_transpose(A)).allclose(A, 0)

    def test_split(self):
        Ap, App = complex_split(M([["j"]]))
        assert Ap[0, 0] == 0 and App[0, 0] == 1
        Ap, App = complex_split(M([["1+i+j+k"]]))
        assert Ap[0, 0] == 1 + 1j and App[0, 0] == 1 + 1j

    def test_adjoint_examples(self):
        assert np.array_equal(complex_adjoint(M([["j"]])), [[0, 1], [-1, 0]])
        assert np.array_equal(complex_adjoint(M([["i"]])), [[1j, 0], [0, -1j]])
        assert np.array_equal(complex_adjoint(QMatrix.identity(3)), np.eye(6))

    @settings(max_examples=50, deadline=None)
    @given(square(), st.data())
    def test_adjoint_homomorphism(self, a, data):
        b = data.draw(arrays(np.float64, a.shape, elements=st.floats(-10, 10, allow_nan=False)))
        A, B = QMatrix(a), QMatrix(b)
        scale = 1 + fro_norm(A) * fro_norm(B)
        assert np.max(np.abs(complex_adjoint(qm_mul(A, B)) - complex_adjoint(A) @ complex_adjoint(B))) <= 1e-12 * scale
        assert np.array_equal(complex_adjoint(qm_conj_transpose(A)), complex_adjoint(A).conj().T)
        assert from_complex_adjoint(complex_adjoint(A)).allclose(A, 0)


class TestNorms:
    def test_fro(self):
        A, B = M([["-j", "k"], ["k", "-j"]]), M([["4k", "j+k"], ["-j-k", "4k"]])
        assert fro_norm(A - B) == pytest.approx(math.sqrt(40), abs=1e-14)
        assert fro_norm(QMatrix.zeros(3)) == 0

    def test_spec(self):
        assert spec_norm(M([["-j", "k"], ["k", "-j"]])) == pytest.approx(math.sqrt(2), abs=1e-12)
        assert spec_norm(M([["4k", "j+k"], ["-j-k", "4k"]])) == pytest.approx(math.sqrt(26), abs=1e-12)
        assert spec_norm(QMatrix.identity(5)) == pytest.approx(1.0, abs=1e-14)

    def test_spec_against_sampling_lower_bound(self):
        rng = np.random.default_rng(11)
        A = QMatrix(rng.standard_normal((3, 3, 4)))
        s = spec_norm(A)
        x = rng.standard_normal((3, 20000, 4))
        best = 0.0
        for k in range(0, 20000, 2000):
            X = QMatrix(x[:, k:k + 2000])
            Y = qm_mul(A, X).data
            ratios = np.sqrt(np.sum(Y ** 2, axis=(0, 2)) / np.sum(X.data ** 2, axis=(0, 2)))
            best = max(best, ratios.max())
        assert best <= s * (1 + 1e-12)
        assert best >= 0.8 * s

    def test_j_invariance(self):
        rng = np.random.default_rng(12)
        for n in range(1, 7):
            A = QMatrix(rng.standard_normal((n, n, 4)))
            assert fro_norm(J * A) == pytest.approx(fro_norm(A), rel=1e-10)
            assert spec_norm(J * A) == pytest.approx(spec_norm(A), rel=1e-10)


class TestStructure:
    def test_reference_matrices(self):
        assert structure_flags(M([["j", "i"], ["i", "-j"]])).normal
        assert structure_flags(M([["4k", "j+k"], ["-j-k", "4k"]])).conjugate_normal

    def test_identity(self):
        f = structure_flags(QMatrix.identity(3))
        assert f.normal and f.conjugate_normal and f.hermitian and f.unitary and not f.skew_symmetric

    def test_conjugate_normal_iff_jA_normal(self):
        for s in range(30):
            for kind in ("conjugate_normal", "normal", "plain"):
                A = random_structured(kind, 1 + s % 5, s).A
                assert structure_flags(A).conjugate_normal == structure_flags(J * A).normal

    def test_adjoint_level_consistency(self):
        def cnormal(X):
            return np.linalg.norm(X @ X.conj().T - X.conj().T @ X) <= 1e-10 * (1 + np.linalg.norm(X) ** 2)

        for s in range(20):
            for kind in ("normal", "plain", "unitary"):
                A = random_structured(kind, 2 + s % 4, s).A
                X = complex_adjoint(A)
                assert structure_flags(A).normal == cnormal(X)
                assert structure_flags(A).hermitian == bool(np.allclose(X, X.conj().T, atol=1e-10))


class TestInverse:
    def test_examples(self):
        assert qm_inverse(QMatrix.identity(3)).allclose(QMatrix.identity(3))
        assert qm_inverse(M([["j"]])).allclose(M([["-j"]]))

    def test_roundtrip(self):
        rng = np.random.default_rng(13)
        for n in range(1, 9):
            A = QMatrix(rng.standard_normal((n, n, 4)))
            E = qm_mul(A, qm_inverse(A)) - QMatrix.identity(n)
            assert fro_norm(E) <= 1e-9

    def test_singular(self):
        with pytest.raises(Singular):
            qm_inverse(M([["1", "j"], ["i", "k"]]))  # second row is i times the first
        with pytest.raises(Singular):
            qm_inverse(QMatrix.zeros(2))
