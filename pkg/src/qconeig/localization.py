"""Gersgorin-type localization of right and left coneigenvalues.

A right coneigenvalue itself need not lie in any Gersgorin ball, but some
member of its consimilarity orbit ``{alpha~^-1 lam alpha}`` does.  Orbit
membership is decided with the closed-form :func:`~qconeig.quat.orbit_distance`;
the column version uses the orbit ``{alpha^-1 lam alpha~}``, which is the same
set (substitute ``beta = alpha~``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import ZeroVector
from .qmat import QMatrix, _require_square, fro_norm, qm_jconj, qm_mul, qm_scale_left
from .quat import BasalQuaternion, Quaternion, as_quaternion, is_consimilar, jconj, qabs, qinv, qmul, orbit_distance
from .spectra import basal_coneigenvalues

Kind = Literal["row", "column"]


def default_tol(A: QMatrix) -> float:
    return 1e-8 * (1.0 + fro_norm(A))


@dataclass(frozen=True)
class GersgorinBall:
    center: Quaternion
    radius: float
    index: int
    kind: str

    def contains(self, p: Quaternion, tol: float = 0.0) -> bool:
        return qabs(p - self.center) <= self.radius + tol

    def to_dict(self) -> dict:
        return {"center": list(self.center.components), "radius": self.radius,
                "index": self.index, "kind": self.kind}


@dataclass(frozen=True)
class ConeigenvalueRecord:
    value: BasalQuaternion
    best_ball: int
    orbit_gap: float
    holds: bool

    def to_dict(self) -> dict:
        return {"lambda": {"a": self.value.a, "b": self.value.b}, "best_ball": self.best_ball,
                "orbit_gap": self.orbit_gap, "holds": self.holds}


@dataclass(frozen=True)
class LocalizationReport:
    records: tuple[ConeigenvalueRecord, ...]
    overall: bool
    kind: str = "row"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "records": [r.to_dict() for r in self.records],
                "overall": self.overall}


def gersgorin_balls(A: QMatrix, kind: Kind = "row") -> list[GersgorinBall]:
    _require_square(A, "gersgorin_balls")
    if kind not in ("row", "column"):
        raise ValueError(f"kind must be 'row' or 'column', got {kind!r}")
    mods = np.sqrt(np.sum(A.data ** 2, axis=2))
    np.fill_diagonal(mods, 0.0)
    radii = mods.sum(axis=1) if kind == "row" else mods.sum(axis=0)
    return [GersgorinBall(A[i, i], float(radii[i]), i, kind) for i in range(A.n_rows)]


def _orbit_gaps(lam: BasalQuaternion, balls: Sequence[GersgorinBall]) -> list[float]:
    return [orbit_distance(lam, b.center) - b.radius for b in balls]


def verify_right_gersgorin(A: QMatrix, kind: Kind = "row", tol: float | None = None) -> LocalizationReport:
    tol = default_tol(A) if tol is None else tol
    balls = gersgorin_balls(A, kind)
    records = []
    for lam in basal_coneigenvalues(A):
        gaps = _orbit_gaps(lam, balls)
        best = int(np.argmin(gaps))
        records.append(ConeigenvalueRecord(lam, best, gaps[best], gaps[best] <= tol))
    return LocalizationReport(tuple(records), all(r.holds for r in records), kind)


def connected_components(balls: Sequence[GersgorinBall]) -> list[list[int]]:
    """Components of the closed-ball intersection graph (touching balls connect)."""
    n = len(balls)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(n):
        for b in range(a + 1, n):
            if qabs(balls[a].center - balls[b].center) <= balls[a].radius + balls[b].radius:
                parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class ComponentRecord:
    balls: tuple[int, ...]
    count: int
    holds: bool

    def to_dict(self) -> dict:
        return {"balls": list(self.balls), "count": self.count, "holds": self.holds}


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[ComponentRecord, ...]
    overall: bool

    def to_dict(self) -> dict:
        return {"components": [c.to_dict() for c in self.components], "overall": self.overall}


def verify_component_counts(A: QMatrix, tol: float | None = None) -> ComponentReport:
    """Each isolated union of k row balls must meet the orbits of >= k basal coneigenvalues."""
    tol = default_tol(A) if tol is None else tol
    balls = gersgorin_balls(A, "row")
    spectrum = basal_coneigenvalues(A)
    records = []
    for comp in connected_components(balls):
        members = [balls[i] for i in comp]
        count = sum(1 for lam in spectrum if min(_orbit_gaps(lam, members)) <= tol)
        records.append(ComponentRecord(tuple(comp), count, count >= len(comp)))
    return ComponentReport(tuple(records), all(r.holds for r in records))


@dataclass(frozen=True)
class LeftPairReport:
    is_pair: bool
    q: Quaternion
    in_union: bool
    residual: float
    p: int

    def to_dict(self) -> dict:
        return {"is_pair": self.is_pair, "q": list(self.q.components), "in_union": self.in_union,
                "residual": self.residual, "p": self.p}


def verify_left_pair(A: QMatrix, lam, x, tol: float = 1e-8) -> LeftPairReport:
    """Check ``A x = lam x~`` and locate ``lam q`` with ``q = x~_p x_p^-1``.

    ``p`` is the smallest index of maximal ``|x_i|``; ``q`` is consimilar to 1.
    """
    _require_square(A, "verify_left_pair")
    lam = as_quaternion(lam)
    if not isinstance(x, QMatrix):
        x = QMatrix.column(list(x))
    if x.shape != (A.n_rows, 1):
        raise ValueError(f"vector has shape {x.shape}, expected ({A.n_rows}, 1)")
    mags = np.sqrt(np.sum(x.data[:, 0, :] ** 2, axis=1))
    if not np.any(mags > 0.0):
        raise ZeroVector("coneigenvector candidate is zero")
    residual = fro_norm(qm_mul(A, x) - qm_scale_left(lam, qm_jconj(x)))
    is_pair = residual <= tol * fro_norm(A) * fro_norm(x)
    p = int(np.argmax(mags))
    xp = x[p, 0]
    q = qmul(jconj(xp), qinv(xp))
    lq = qmul(lam, q)
    in_union = any(b.contains(lq, tol) for b in gersgorin_balls(A, "row"))
    return LeftPairReport(is_pair, q, in_union, residual, p)


def q_consimilar_to_one(q: Quaternion, tol: float = 1e-9) -> bool:
    return is_consimilar(q, Quaternion(1.0), tol)
