"""Seeded generators of structured random quaternion matrices.

Every draw uses numpy's Philox counter-based generator keyed by
``SeedSequence(seed, spawn_key=(kind_code, n))``, so outputs are
reproducible across platforms and independent across kinds and sizes.
Parallel campaigns derive per-trial seeds with :func:`split_seed`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import ResampleLimit, Singular
from .qmat import QMatrix, condition_number, qm_conj_transpose, qm_inverse, qm_jconj, qm_mul, qm_scale_left, qm_transpose
from .quat import J, BasalQuaternion

KINDS = ("plain", "normal", "conjugate_normal", "condiagonalizable", "skew_symmetric",
         "unitary", "diagonally_dominant")
_KIND_CODE = {k: i for i, k in enumerate(KINDS)}
MAX_CONDITION = 100.0
MAX_RESAMPLES = 100


@dataclass(frozen=True)
class GeneratedMatrix:
    A: QMatrix
    planted: dict[str, Any] | None = field(default=None)


def split_seed(seed: int, index: int) -> int:
    """Deterministic 63-bit child seed for trial ``index`` of a campaign seeded by ``seed``."""
    state = np.random.SeedSequence(seed, spawn_key=(index,)).generate_state(2, np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))


def _rng(kind: str, n: int, seed: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(_KIND_CODE[kind], n))
    return np.random.Generator(np.random.Philox(ss))


def _plain(rng: np.random.Generator, n: int) -> QMatrix:
    return QMatrix(rng.standard_normal((n, n, 4)))


def _inner(u: QMatrix, v: QMatrix):
    return qm_mul(qm_conj_transpose(u), v)[0, 0]


def _gram_schmidt(M: QMatrix) -> QMatrix:
    """Columns of M orthonormalised over the quaternions (modified Gram-Schmidt)."""
    n = M.n_cols
    cols = [QMatrix(M.data[:, c:c + 1, :]) for c in range(n)]
    out: list[QMatrix] = []
    for v in cols:
        for _ in range(2):  # second pass restores orthogonality lost to rounding
            for u in out:
                v = v - u * _inner(u, v)
        norm = float(np.sqrt(np.sum(v.data ** 2)))
        if norm < 1e-10:
            raise Singular("Gram-Schmidt met a dependent column")
        out.append(v * (1.0 / norm))
    return QMatrix(np.concatenate([c.data for c in out], axis=1))


def _unitary(rng, n):
    for _ in range(MAX_RESAMPLES):
        try:
            return _gram_schmidt(_plain(rng, n))
        except Singular:
            continue
    raise ResampleLimit("could not draw an independent sample for Gram-Schmidt")


def _normal(rng, n, scale):
    U = _unitary(rng, n)
    lam = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * scale
    L = QMatrix.from_complex(np.diag(lam))
    return qm_mul(qm_mul(U, L), qm_conj_transpose(U)), U, lam


def _condiagonalizable(rng, n, scale):
    a = np.abs(rng.standard_normal(n)) * scale
    b = rng.standard_normal(n) * scale
    Dc = [BasalQuaternion(float(x), float(y)) for x, y in zip(a, b)]
    D = QMatrix.diag([d.as_quaternion() for d in Dc])
    for _ in range(MAX_RESAMPLES):
        P = _plain(rng, n)
        try:
            if condition_number(P) > MAX_CONDITION:
                continue
            P_inv = qm_inverse(P)
        except Singular:
            continue
        A = qm_mul(qm_mul(qm_jconj(P), D), P_inv)
        return A, Dc, P
    raise ResampleLimit(f"no condiagonalizer with condition <= {MAX_CONDITION} in {MAX_RESAMPLES} draws")


def random_structured(kind: str, n: int, seed: int, scale: float = 1.0) -> GeneratedMatrix:
    """Draw an ``n x n`` matrix of the requested structure class.

    ``planted`` metadata: ``U`` and ``Lambda`` for normal and conjugate normal
    draws; ``Dc`` (basal diagonal) and ``P`` for condiagonalizable ones, with
    ``P~^-1 A P = diag(Dc)``.
    """
    if kind not in _KIND_CODE:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if int(n) < 1:
        raise ValueError("n must be at least 1")
    n = int(n)
    rng = _rng(kind, n, int(seed))
    if kind == "plain":
        return GeneratedMatrix(_plain(rng, n) * float(scale))
    if kind == "normal":
        N, U, lam = _normal(rng, n, scale)
        return GeneratedMatrix(N, {"U": U, "Lambda": lam.tolist()})
    if kind == "conjugate_normal":
        N, U, lam = _normal(rng, n, scale)
        return GeneratedMatrix(qm_scale_left(-J, N), {"U": U, "Lambda": lam.tolist()})
    if kind == "condiagonalizable":
        A, Dc, P = _condiagonalizable(rng, n, scale)
        return GeneratedMatrix(A, {"Dc": Dc, "P": P})
    if kind == "skew_symmetric":
        M = _plain(rng, n)
        return GeneratedMatrix((M - qm_transpose(M)) * (0.5 * scale))
    if kind == "unitary":
        return GeneratedMatrix(_unitary(rng, n))
    # diagonally dominant: small off-diagonal mass, diagonal spread far apart
    M = _plain(rng, n).data * (0.25 / max(n - 1, 1))
    for i in range(n):
        M[i, i] = rng.standard_normal(4) * 2.0 * n
    return GeneratedMatrix(QMatrix(M * scale))
