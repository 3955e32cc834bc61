import numpy as np
import pytest

from qconeig.campaign import run_campaign
from qconeig.errors import ResampleLimit
from qconeig import genmat
from qconeig.genmat import KINDS, random_structured, split_seed
from qconeig.perturbation import optimal_matching
from qconeig.qmat import structure_flags
from qconeig.spectra import basal_coneigenvalues, condiagonalize

PREDICATE = {"normal": "normal", "conjugate_normal": "conjugate_normal", "skew_symmetric": "skew_symmetric",
             "unitary": "unitary"}


@pytest.mark.parametrize("kind", KINDS)
def test_deterministic(kind):
    a = random_structured(kind, 4, 42, 1.5).A
    b = random_structured(kind, 4, 42, 1.5).A
    assert np.array_equal(a.data, b.data)
    assert not np.array_equal(a.data, random_structured(kind, 4, 43, 1.5).A.data)


@pytest.mark.parametrize("kind", sorted(PREDICATE))
def test_structure(kind):
    for s in range(15):
        A = random_structured(kind, 1 + s % 6, s).A
        assert getattr(structure_flags(A, 1e-9), PREDICATE[kind])


def test_conjugate_normal_example():
    assert structure_flags(random_structured("conjugate_normal", 4, 42).A).conjugate_normal


def test_planted_spectrum():
    g = random_structured("condiagonalizable", 3, 7)
    got = [complex(v.a, v.b) for v in basal_coneigenvalues(g.A)]
    want = [complex(v.a, v.b) for v in g.planted["Dc"]]
    m = optimal_matching(got, want)
    assert max(abs(got[i] - want[p]) for i, p in enumerate(m.permutation)) <= 1e-6
    rec = [complex(v.a, v.b) for v in condiagonalize(g.A).Dc]
    m = optimal_matching(rec, want)
    assert max(abs(rec[i] - want[p]) for i, p in enumerate(m.permutation)) <= 1e-6


def test_one_by_one():
    A = random_structured("plain", 1, 3).A
    assert A.shape == (1, 1)
    assert len(basal_coneigenvalues(A)) == 1


def test_split_seed():
    seeds = {split_seed(5, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert split_seed(5, 3) == split_seed(5, 3)
    assert all(0 <= s < 2 ** 63 for s in seeds)


def test_resample_limit(monkeypatch):
    monkeypatch.setattr(genmat, "MAX_CONDITION", 1.0)
    with pytest.raises(ResampleLimit):
        random_structured("condiagonalizable", 3, 0)


def test_bad_arguments():
    with pytest.raises(ValueError):
        random_structured("banana", 3, 0)
    with pytest.raises(ValueError):
        random_structured("plain", 0, 0)


def test_campaign_order_independent_of_workers():
    serial = run_campaign("hw", 3, 6, 9, workers=1)
    parallel = run_campaign("hw", 3, 6, 9, workers=2)
    assert serial["results"] == parallel["results"]
    assert [r["trial"] for r in parallel["results"]] == list(range(6))
