import pytest

from qconeig.errors import ShapeMismatch
from qconeig.genmat import random_structured
from qconeig.qmat import QMatrix
from qconeig.quat import J
from qconeig.variation import (con_hausdorff, con_spectral_variation, elsner_bound, hausdorff, spectral_variation,
                               verify_variation_bounds)


def M(rows):
    return QMatrix.from_entries(rows)


A = M([["-j", "k"], ["k", "-j"]])
B = M([["4k", "j+k"], ["-j-k", "4k"]])


def test_example_values():
    assert spectral_variation(A, B) == pytest.approx(2.6735, abs=1e-3)
    assert con_spectral_variation(A, B) == pytest.approx(4, abs=1e-9)
    assert hausdorff(A, B) == max(spectral_variation(A, B), spectral_variation(B, A))
    assert con_hausdorff(A, B) == pytest.approx(4, abs=1e-9)


def test_identical_inputs():
    for f in (spectral_variation, hausdorff, con_spectral_variation, con_hausdorff, elsner_bound):
        assert f(B, B) == pytest.approx(0, abs=1e-12)
    r = verify_variation_bounds(B, B)
    assert r.holds


def test_one_by_one():
    a, b = M([["1+2i"]]), M([["3-1i"]])
    assert spectral_variation(a, b) == pytest.approx(abs(complex(3, 1) - complex(1, 2)))


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        spectral_variation(A, QMatrix.identity(3))


def test_properties_on_random_pairs():
    for s in range(60):
        n = 1 + s % 6
        X = random_structured("plain", n, s).A
        Y = random_structured("plain", n, s + 1000).A
        assert hausdorff(X, Y) == hausdorff(Y, X)
        assert elsner_bound(X, Y) == pytest.approx(elsner_bound(Y, X), rel=1e-12)
        assert con_spectral_variation(X, Y) == pytest.approx(spectral_variation(J * X, J * Y), abs=1e-9)
        r = verify_variation_bounds(X, Y)
        assert r.holds and set(r.witness) == {"sv", "hd", "svc", "hdc"}
        assert min(w["value"] for w in r.witness.values()) >= 0
