"""Standard eigenvalues and basal right coneigenvalues of quaternion matrices.

The standard eigenvalues of ``A`` are read off the spectrum of its complex
adjoint, which holds each of them together with its complex conjugate.  The
basal right coneigenvalues ``a + b j`` (``a >= 0``) of ``A`` correspond
one-to-one to the standard eigenvalues ``-b + a i`` of ``jA``.

Coneigenvectors use the convention ``A z = z~ lam``.  If ``w`` is a right
eigenvector of ``jA`` for ``-b + a i`` then ``z = w s`` with
``s = (i + j)/sqrt(2)`` satisfies it, because ``s`` carries ``j`` to ``i``
under conjugation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import ceig
from .errors import NoConvergence, NotAConeigenvalue, NotCondiagonalizable, PairingFailure, Singular
from .qmat import (
    QMatrix,
    _require_square,
    complex_adjoint,
    fro_norm,
    qm_inverse,
    qm_jconj,
    qm_mul,
    qm_scale_left,
    qm_scale_right,
    spec_norm,
)
from .quat import J, BasalQuaternion, Quaternion

# relative to ||A||_F
CLUSTER_TOL = 1e-6
REAL_TOL = 1e-8
PAIR_TOL = 1e-7
CONEIGVEC_TOL = 1e-7
CONDIAG_TOL = 1e-6
CONDIAG_MAX_COND = 1e8

HAT_ROTOR = Quaternion(0.0, 1.0, 1.0, 0.0) / math.sqrt(2.0)


@dataclass(frozen=True)
class StandardSpectrum:
    """``n`` complex values with ``Im >= 0``, largest modulus first."""

    values: tuple[complex, ...]

    def __iter__(self) -> Iterator[complex]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def to_list(self) -> list[dict]:
        return [{"re": z.real, "im": z.imag} for z in self.values]


@dataclass(frozen=True)
class BasalSpectrum:
    """``n`` basal coneigenvalues ``a + b j``, largest modulus first, ties by ``b``."""

    values: tuple[BasalQuaternion, ...]

    def __iter__(self) -> Iterator[BasalQuaternion]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def hats(self) -> list[complex]:
        return [v.hat() for v in self.values]

    def to_list(self) -> list[dict]:
        return [{"a": v.a, "b": v.b} for v in self.values]


def _standard_key(z: complex):
    return (-abs(z), -z.imag, -z.real)


def _basal_key(v: BasalQuaternion):
    return (-abs(v), -v.b)


def _average_clusters(values: list[complex], delta: float) -> list[complex]:
    """Replace every single-linkage cluster (gap <= delta) by its mean.

    A defective eigenvalue of multiplicity m splits into m values about
    ``eps^(1/m)`` apart in floating point, but their mean stays accurate to
    rounding, so clusters are averaged before pairing.
    """
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for k in range(i + 1, n):
            if abs(values[i] - values[k]) <= delta:
                parent[find(i)] = find(k)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = list(values)
    for members in groups.values():
        if len(members) > 1:
            mean = sum(values[i] for i in members) / len(members)
            for i in members:
                out[i] = mean
    return out


def pair_conjugates(values: Sequence[complex], scale: float) -> list[complex]:
    """Collapse a conjugate-closed list of 2n values to n with ``Im >= 0``."""
    real_tol = REAL_TOL * scale
    pair_tol = PAIR_TOL * scale + 1e-300
    vals = sorted(values, key=lambda z: (z.real, z.imag))
    reals = [z for z in vals if abs(z.imag) <= real_tol]
    upper = [z for z in vals if z.imag > real_tol]
    lower = [z for z in vals if z.imag < -real_tol]
    if len(reals) % 2 or len(upper) != len(lower):
        raise PairingFailure(
            f"unbalanced spectrum: {len(reals)} real, {len(upper)} upper, {len(lower)} lower")
    reps = []
    for k in range(0, len(reals), 2):
        r1, r2 = reals[k], reals[k + 1]
        if abs(r1.real - r2.real) > pair_tol:
            raise PairingFailure(f"real values {r1} and {r2} do not pair")
        reps.append(complex(0.5 * (r1.real + r2.real), 0.0))
    remaining = list(lower)
    for u in upper:
        k = min(range(len(remaining)), key=lambda i: abs(remaining[i] - u.conjugate()))
        partner = remaining.pop(k)
        if abs(partner - u.conjugate()) > pair_tol:
            raise PairingFailure(f"no conjugate partner for {u} (nearest {partner})")
        rep = 0.5 * (u + partner.conjugate())
        reps.append(complex(rep.real, max(rep.imag, 0.0)))
    return reps


def standard_eigenvalues(A: QMatrix) -> StandardSpectrum:
    _require_square(A, "standard_eigenvalues")
    scale = fro_norm(A)
    if scale == 0.0:
        return StandardSpectrum(tuple(0j for _ in range(A.n_rows)))
    chi_values = ceig.complex_eigenvalues(complex_adjoint(A))
    chi_values = _average_clusters(chi_values, CLUSTER_TOL * scale)
    reps = pair_conjugates(chi_values, scale)
    return StandardSpectrum(tuple(sorted(reps, key=_standard_key)))


def basal_coneigenvalues(A: QMatrix) -> BasalSpectrum:
    std = standard_eigenvalues(qm_scale_left(J, A))
    basal = [BasalQuaternion.from_hat(mu) for mu in std]
    return BasalSpectrum(tuple(sorted(basal, key=_basal_key)))


# -- vectors ----------------------------------------------------------------

def chi_vector_to_quaternion(x: np.ndarray) -> QMatrix:
    """Map an eigenvector ``(u, v)`` of chi_M to the right eigenvector ``u - conj(v) j`` of M."""
    n = x.shape[0] // 2
    return QMatrix.from_complex(x[:n, None], -np.conj(x[n:, None]))


def _j_partner(x: np.ndarray) -> np.ndarray:
    # chi-level image of w -> w j
    n = x.shape[0] // 2
    return np.concatenate([np.conj(x[n:]), -np.conj(x[:n])])


def _span_rotation(q: Quaternion) -> Quaternion | None:
    r = math.hypot(q.a0, q.a2)
    if r <= 1e-300:
        return None
    return Quaternion(q.a0 / r, 0.0, -q.a2 / r, 0.0)


def normalize_coneigenvector(z: QMatrix) -> QMatrix:
    """Unit norm, then right-rotate by a unit of span{1, j} so that the first
    non-negligible component has zero ``j`` part and positive real part.

    Units of span{1, j} commute with every ``a + b j`` and are fixed by the
    j-conjugate, so the coneigen equation is preserved.
    """
    nrm = fro_norm(z)
    if nrm == 0.0:
        return z
    z = z * (1.0 / nrm)
    mags = np.sqrt(np.sum(z.data[:, 0, :] ** 2, axis=1))
    first = int(np.argmax(mags > 1e-8 * mags.max()))
    gamma = _span_rotation(z[first, 0])
    return z if gamma is None else qm_scale_right(z, gamma)


def coneigen_residual(A: QMatrix, z: QMatrix, lam) -> float:
    lam_q = lam.as_quaternion() if isinstance(lam, BasalQuaternion) else lam
    return fro_norm(qm_mul(A, z) - qm_scale_right(qm_jconj(z), lam_q))


def right_coneigenvector(A: QMatrix, lam: BasalQuaternion) -> QMatrix:
    """Unit ``z`` with ``A z = z~ lam``, returned as an n x 1 QMatrix."""
    _require_square(A, "right_coneigenvector")
    scale = fro_norm(A)
    spectrum = basal_coneigenvalues(A)
    gap = min(abs(lam.as_quaternion() - v.as_quaternion()) for v in spectrum)
    if gap > 1e-6 * (1.0 + scale):
        raise NotAConeigenvalue(f"{lam} is {gap:.3e} away from every basal coneigenvalue")
    if scale == 0.0:
        return QMatrix.column([1.0] + [0.0] * (A.n_rows - 1))
    jA = qm_scale_left(J, A)
    mu = lam.hat()
    x = ceig.complex_eigenvector(complex_adjoint(jA), mu)
    w = chi_vector_to_quaternion(x)
    w_res = fro_norm(qm_mul(jA, w) - qm_scale_right(w, Quaternion.from_complex(mu)))
    if w_res > CONEIGVEC_TOL * scale * fro_norm(w):
        raise NoConvergence(f"eigenvector of jA has residual {w_res:.3e}")
    z = normalize_coneigenvector(qm_scale_right(w, HAT_ROTOR))
    res = coneigen_residual(A, z, lam)
    if res > CONEIGVEC_TOL * scale:
        raise NoConvergence(f"coneigenvector residual {res:.3e} above tolerance")
    return z


# -- condiagonalization -----------------------------------------------------

@dataclass(frozen=True)
class Condiagonalization:
    P: QMatrix
    Dc: tuple[BasalQuaternion, ...]
    kappa: float
    residual: float


def condiag_residual(A: QMatrix, P: QMatrix) -> tuple[QMatrix, float]:
    """``D = P~^-1 A P`` and the Frobenius norm of its off-diagonal part."""
    D = qm_mul(qm_jconj(qm_inverse(P)), qm_mul(A, P))
    off = D.data.copy()
    idx = np.arange(D.n_rows)
    off[idx, idx] = 0.0
    return D, float(np.sqrt(np.sum(off * off)))


def _eigenspace(X: np.ndarray, mu: complex, m: int, real: bool) -> list[np.ndarray]:
    """``m`` eigenvectors of ``X`` for ``mu`` whose quaternion images are independent."""
    Y = X - mu * np.eye(X.shape[0])
    _, V = ceig.hermitian_eigh(Y.conj().T @ Y)
    dim = 2 * m if real else m
    basis: list[np.ndarray] = []
    chosen: list[np.ndarray] = []
    for c in range(dim):
        y = V[:, c].copy()
        for _ in range(2):
            for b in basis:
                y -= b * (b.conj() @ y)
        nrm = np.linalg.norm(y)
        if nrm < 0.1:
            continue
        y /= nrm
        chosen.append(y)
        basis.append(y)
        if real:
            basis.append(_j_partner(y))
        if len(chosen) == m:
            break
    if len(chosen) < m:
        raise NotCondiagonalizable(f"eigenvalue {mu} of jA lacks {m} independent eigenvectors")
    return chosen


def condiagonalize(A: QMatrix) -> Condiagonalization:
    """Find ``P`` with ``P~^-1 A P = diag(Dc)``, ``Dc`` the basal coneigenvalues."""
    _require_square(A, "condiagonalize")
    n = A.n_rows
    scale = fro_norm(A)
    if scale == 0.0:
        return Condiagonalization(QMatrix.identity(n), tuple(BasalQuaternion(0, 0) for _ in range(n)), 1.0, 0.0)
    jA = qm_scale_left(J, A)
    X = complex_adjoint(jA)
    mus = sorted(standard_eigenvalues(jA), key=lambda mu: _basal_key(BasalQuaternion.from_hat(mu)))
    group_tol = 1e-9 * scale
    columns: list[QMatrix | None] = [None] * n
    done = [False] * n
    for k, mu in enumerate(mus):
        if done[k]:
            continue
        members = [l for l in range(k, n) if not done[l] and abs(mus[l] - mu) <= group_tol]
        try:
            if len(members) == 1:
                vecs = [ceig.complex_eigenvector(X, mu)]
            else:
                vecs = _eigenspace(X, mu, len(members), abs(mu.imag) <= REAL_TOL * scale)
        except NoConvergence as exc:
            raise NotCondiagonalizable(str(exc)) from exc
        for l, x in zip(members, vecs):
            columns[l] = chi_vector_to_quaternion(x)
            done[l] = True
    P_hat = QMatrix(np.concatenate([c.data for c in columns], axis=1))
    try:
        cond_hat = spec_norm(P_hat) * spec_norm(qm_inverse(P_hat))
    except Singular as exc:
        raise NotCondiagonalizable(f"eigenvector matrix of jA is singular: {exc}") from exc
    if cond_hat > CONDIAG_MAX_COND:
        raise NotCondiagonalizable(f"eigenvector matrix of jA has condition {cond_hat:.3e}")
    P = QMatrix(np.concatenate(
        [normalize_coneigenvector(qm_scale_right(c, HAT_ROTOR)).data for c in columns], axis=1))
    Dc = tuple(BasalQuaternion.from_hat(mu) for mu in mus)
    D, _ = condiag_residual(A, P)
    residual = fro_norm(D - QMatrix.diag([v.as_quaternion() for v in Dc]))
    if residual > CONDIAG_TOL * scale:
        raise NotCondiagonalizable(f"condiagonalization residual {residual:.3e} too large")
    kappa = spec_norm(P) * spec_norm(qm_inverse(P))
    return Condiagonalization(P, Dc, kappa, residual)
