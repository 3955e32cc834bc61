"""Optimal coneigenvalue matching and perturbation-bound verification.

The bounds assert that *some* permutation pairs the two basal spectra
cheaply; every check here uses the optimal one (Hungarian algorithm), which
is the strongest certificate available.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import LengthMismatch, NotCondiagonalizable, Singular, StructureViolation
from .qmat import PREDICATE_TOL, QMatrix, fro_norm, qm_inverse, spec_norm, structure_flags
from .quat import BasalQuaternion
from .spectra import basal_coneigenvalues, condiag_residual, condiagonalize

HOLD_RTOL = 1e-9
HOLD_ATOL = 1e-9
CONDIAG_CHECK_TOL = 1e-6


def bound_holds(lhs: float, rhs: float) -> bool:
    return lhs <= rhs * (1.0 + HOLD_RTOL) + HOLD_ATOL


def _as_points(values) -> np.ndarray:
    # a + b j  ->  a + b i is an isometry onto C, which keeps the costs simple
    pts = []
    for v in values:
        if isinstance(v, BasalQuaternion):
            pts.append(complex(v.a, v.b))
        else:
            pts.append(complex(v))
    return np.array(pts, dtype=complex)


def hungarian(cost: np.ndarray) -> list[int]:
    """Minimum-cost assignment for a square cost matrix; returns row -> column."""
    cost = np.asarray(cost, dtype=float)
    n = cost.shape[0]
    INF = float("inf")
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    p = [0] * (n + 1)      # p[col] = row, 1-based, 0 = free
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [INF] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta, j1 = INF, 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta, j1 = minv[j], j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assignment = [0] * n
    for j in range(1, n + 1):
        assignment[p[j] - 1] = j - 1
    return assignment


@dataclass(frozen=True)
class MatchResult:
    permutation: tuple[int, ...]
    cost: float

    def to_dict(self) -> dict:
        return {"permutation": list(self.permutation), "cost": self.cost}


def cost_matrix(ls, ms) -> np.ndarray:
    a, b = _as_points(ls), _as_points(ms)
    return np.abs(a[:, None] - b[None, :]) ** 2


def optimal_matching(ls: Sequence, ms: Sequence) -> MatchResult:
    """Permutation ``pi`` minimising ``sum |ls[l] - ms[pi[l]]|^2``."""
    if len(ls) != len(ms):
        raise LengthMismatch(f"spectra have lengths {len(ls)} and {len(ms)}")
    if len(ls) == 0:
        return MatchResult((), 0.0)
    C = cost_matrix(ls, ms)
    perm = hungarian(C)
    return MatchResult(tuple(perm), float(sum(C[l, perm[l]] for l in range(len(perm)))))


@dataclass(frozen=True)
class VerificationReport:
    lhs: float
    rhs: float
    holds: bool
    witness: Any = None
    context: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        w = self.witness
        if hasattr(w, "to_dict"):
            w = w.to_dict()
        return {"lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "witness": w,
                "context": self.context}


def _spectrum_list(spectrum) -> list[dict]:
    return [{"a": v.a, "b": v.b} for v in spectrum]


def _require(A: QMatrix, predicate: str, label: str, tol: float = PREDICATE_TOL) -> None:
    if not getattr(structure_flags(A, tol), predicate):
        raise StructureViolation(predicate, f"{label} is not {predicate.replace('_', ' ')}")


def _hw_report(A: QMatrix, B: QMatrix, context: dict) -> VerificationReport:
    la, lb = basal_coneigenvalues(A), basal_coneigenvalues(B)
    match = optimal_matching(la, lb)
    diff = fro_norm(A - B)
    rhs = diff ** 2
    context = dict(context, fro_norm_diff=diff, coneig_A=_spectrum_list(la),
                   coneig_B=_spectrum_list(lb))
    return VerificationReport(match.cost, rhs, bound_holds(match.cost, rhs), match, context)


def verify_hw(A: QMatrix, B: QMatrix, variant: str = "conjugate_normal",
              tol: float = PREDICATE_TOL) -> VerificationReport:
    """``sum |lam_l - mu_pi(l)|^2 <= ||A - B||_F^2`` for conjugate normal or
    skew-symmetric pairs."""
    if variant not in ("conjugate_normal", "skew_symmetric"):
        raise ValueError(f"unknown variant {variant!r}")
    if A.shape != B.shape:
        raise LengthMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    _require(A, variant, "A", tol)
    _require(B, variant, "B", tol)
    return _hw_report(A, B, {"variant": variant})


def check_normal_counterexample(A: QMatrix, B: QMatrix, tol: float = PREDICATE_TOL) -> VerificationReport:
    """Same quantities as :func:`verify_hw` for *normal* pairs, where the bound can fail."""
    if A.shape != B.shape:
        raise LengthMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    _require(A, "normal", "A", tol)
    _require(B, "normal", "B", tol)
    report = _hw_report(A, B, {"variant": "normal"})
    C = cost_matrix(basal_coneigenvalues(A), basal_coneigenvalues(B))
    report.context["cost_matrix"] = C.tolist()
    return report


def _condiagonalizer(A: QMatrix, P_opt: QMatrix | None) -> tuple[float, dict]:
    if P_opt is None:
        cd = condiagonalize(A)
        return cd.kappa, {"P_source": "computed", "condiag_residual": cd.residual,
                          "P": cd.P.data.tolist()}
    if P_opt.shape != A.shape:
        raise LengthMismatch(f"P has shape {P_opt.shape}, A has {A.shape}")
    try:
        _, off = condiag_residual(A, P_opt)
        P_inv = qm_inverse(P_opt)
    except Singular as exc:
        raise NotCondiagonalizable(f"supplied P is singular: {exc}") from exc
    if off > CONDIAG_CHECK_TOL * max(fro_norm(A), 1e-300):
        raise NotCondiagonalizable(f"supplied P leaves off-diagonal residual {off:.3e}")
    kappa = spec_norm(P_opt) * spec_norm(P_inv)
    return kappa, {"P_source": "supplied", "condiag_residual": off}


def verify_generalized_hw(A: QMatrix, B: QMatrix, P_opt: QMatrix | None = None,
                          tol: float = PREDICATE_TOL) -> VerificationReport:
    """``sum |lam_l - mu_pi(l)|^2 <= kappa(P)^2 ||A - B||_F^2`` with A condiagonalizable
    and B conjugate normal."""
    if A.shape != B.shape:
        raise LengthMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    _require(B, "conjugate_normal", "B", tol)
    kappa, ctx = _condiagonalizer(A, P_opt)
    la, lb = basal_coneigenvalues(A), basal_coneigenvalues(B)
    match = optimal_matching(la, lb)
    diff = fro_norm(A - B)
    rhs = kappa ** 2 * diff ** 2
    ctx.update(kappa=kappa, fro_norm_diff=diff, coneig_A=_spectrum_list(la),
               coneig_B=_spectrum_list(lb))
    return VerificationReport(match.cost, rhs, bound_holds(match.cost, rhs), match, ctx)


def verify_bauer_fike(A: QMatrix, E: QMatrix, P_opt: QMatrix | None = None) -> VerificationReport:
    """Every basal coneigenvalue of ``A + E`` lies within ``kappa(P) ||E||_2`` of one of ``A``."""
    if A.shape != E.shape:
        raise LengthMismatch(f"shapes differ: {A.shape} vs {E.shape}")
    kappa, ctx = _condiagonalizer(A, P_opt)
    la = basal_coneigenvalues(A)
    lp = basal_coneigenvalues(A + E)
    pa, pp = _as_points(la), _as_points(lp)
    table = []
    for mu, z in zip(lp, pp):
        d = np.abs(pa - z)
        k = int(np.argmin(d))
        table.append({"mu": {"a": mu.a, "b": mu.b}, "nearest": {"a": la[k].a, "b": la[k].b},
                      "distance": float(d[k])})
    lhs = max(row["distance"] for row in table)
    e_norm = spec_norm(E)
    rhs = kappa * e_norm
    ctx.update(kappa=kappa, spec_norm_E=e_norm)
    return VerificationReport(lhs, rhs, bound_holds(lhs, rhs), table, ctx)
