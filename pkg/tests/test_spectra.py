import math

import numpy as np
import pytest

from qconeig.errors import NotAConeigenvalue, NotCondiagonalizable, PairingFailure
from qconeig.genmat import random_structured
from qconeig.perturbation import optimal_matching
from qconeig.qmat import QMatrix, fro_norm
from qconeig.quat import J, BasalQuaternion, Quaternion, qabs, qmul
from qconeig.spectra import (basal_coneigenvalues, coneigen_residual, condiag_residual, condiagonalize,
                             pair_conjugates, right_coneigenvector, standard_eigenvalues)



def M(rows):
    return QMatrix.from_entries(rows)


def as_points(spec):
    return [complex(v.a, v.b) for v in spec]


def matched_max(xs, ys):
    m = optimal_matching(xs, ys)
    return max((abs(xs[i] - ys[p]) for i, p in enumerate(m.permutation)), default=0.0)


EXAMPLE = [["-j", "k"], ["1", "-i"]]


class TestStandard:
    def test_identity(self):
        assert np.allclose(list(standard_eigenvalues(QMatrix.identity(4))), 1)

    def test_nonnegative_imag_and_ordering(self):
        for s in range(20):
            spec = standard_eigenvalues(random_structured("plain", 1 + s % 6, s).A)
            assert all(z.imag >= 0 for z in spec)
            mods = [abs(z) for z in spec]
            assert mods == sorted(mods, reverse=True)

    def test_pairing_rules(self):
        assert sorted(pair_conjugates([1 + 1j, 1 - 1j, 2, 2], 1.0), key=abs) == [1 + 1j, 2]
        with pytest.raises(PairingFailure):
            pair_conjugates([1 + 1j, 2 - 3j], 1.0)


class TestBasal:
    def test_identity(self):
        spec = basal_coneigenvalues(QMatrix.identity(3))
        assert all(abs(v.a - 1) < 1e-12 and abs(v.b) < 1e-12 for v in spec)

    def test_hat_relation(self):
        # basal a + bj of A <-> standard eigenvalue -b + ai of jA
        for s in range(30):
            A = random_structured("plain", 1 + s % 6, s).A
            hats = basal_coneigenvalues(A).hats()
            std = list(standard_eigenvalues(J * A))
            assert matched_max(hats, std) <= 1e-8 * (1 + fro_norm(A))

    def test_real_part_and_modulus_of_j_lambda(self):
        for s in range(10):
            A = random_structured("plain", 3, s).A
            std = list(standard_eigenvalues(J * A))
            for v in basal_coneigenvalues(A):
                jl = qmul(J, v.as_quaternion())
                assert min(abs(jl.a0 - z.real) + abs(qabs(jl) - abs(z)) for z in std) <= 1e-8

    def test_one_by_one_formula(self):
        rng = np.random.default_rng(0)
        for q in rng.standard_normal((50, 4)):
            (v,) = basal_coneigenvalues(QMatrix([[q]]))
            assert v.a == pytest.approx(math.sqrt(q[0] ** 2 + q[1] ** 2 + q[3] ** 2), abs=1e-12)
            assert v.b == pytest.approx(q[2], abs=1e-12)

    def test_transpose_differs(self):
        A = M(EXAMPLE)
        a, b = as_points(basal_coneigenvalues(A)), as_points(basal_coneigenvalues(A.T))
        assert matched_max(a, b) > 0.1

    def test_every_value_basal(self):
        for s in range(30):
            assert all(v.a >= 0 for v in basal_coneigenvalues(random_structured("plain", 1 + s % 6, s).A))


class TestConeigenvector:
    def test_one_by_one(self):
        A = M([["i"]])
        z = right_coneigenvector(A, BasalQuaternion(1, 0))
        assert coneigen_residual(A, z, BasalQuaternion(1, 0)) <= 1e-7
        hand = QMatrix.column([Quaternion(-0.5, 0.5, 0.5, -0.5)])
        assert coneigen_residual(A, hand, BasalQuaternion(1, 0)) <= 1e-15

    def test_identity(self):
        z = right_coneigenvector(QMatrix.identity(3), BasalQuaternion(1, 0))
        assert coneigen_residual(QMatrix.identity(3), z, BasalQuaternion(1, 0)) <= 1e-7

    def test_random_planted(self):
        for s in range(20):
            g = random_structured("condiagonalizable", 2 + s % 4, s)
            for lam in g.planted["Dc"]:
                z = right_coneigenvector(g.A, lam)
                assert abs(fro_norm(z) - 1) < 1e-12
                assert coneigen_residual(g.A, z, lam) <= 1e-7 * fro_norm(g.A)

    def test_normalization_first_component(self):
        g = random_structured("condiagonalizable", 3, 5)
        z = right_coneigenvector(g.A, g.planted["Dc"][0])
        first = z[0, 0]
        assert first.a0 > 0 and abs(first.a2) < 1e-12

    def test_not_a_coneigenvalue(self):
        with pytest.raises(NotAConeigenvalue):
            right_coneigenvector(M(EXAMPLE), BasalQuaternion(5, 5))


class TestCondiagonalize:
    def test_swap_example(self):
        A = M([["-j", "k"], ["k", "-j"]])
        cd = condiagonalize(A)
        assert cd.kappa == pytest.approx(1.0, abs=1e-8)
        assert all(qabs(d.as_quaternion() - Quaternion(1, 0, -1)) < 1e-9 for d in cd.Dc)
        assert condiag_residual(A, cd.P)[1] <= 1e-9

    def test_diagonal(self):
        cd = condiagonalize(QMatrix.diag([1, 2]))
        assert np.allclose([(d.a, d.b) for d in cd.Dc], [(2, 0), (1, 0)], atol=1e-12)
        assert np.allclose(np.abs(cd.P.data).sum(axis=2), [[0, 1], [1, 0]], atol=1e-9)
        assert cd.kappa == pytest.approx(1.0)

    def test_planted_recovery(self):
        for s in range(30):
            g = random_structured("condiagonalizable", 1 + s % 6, s)
            cd = condiagonalize(g.A)
            assert matched_max(as_points(cd.Dc), as_points(g.planted["Dc"])) <= 1e-6
            D, off = condiag_residual(g.A, cd.P)
            assert off <= 1e-6 * fro_norm(g.A)
            # P~^-1 A P = D as the definition requires
            assert matched_max([complex(q.a0, q.a2) for q in D.diagonal()], as_points(cd.Dc)) <= 1e-6

    def test_defective_rejected(self):
        with pytest.raises(NotCondiagonalizable):
            condiagonalize(M([["j", "i"], ["i", "-j"]]))

    def test_defective_spectrum_is_accurate(self):
        spec = basal_coneigenvalues(M([["j", "i"], ["i", "-j"]]))
        assert all(abs(v) <= 1e-9 for v in spec)
