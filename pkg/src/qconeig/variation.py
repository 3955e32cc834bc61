"""Spectral variation and Hausdorff distances, with Elsner-type bounds.

For n x n quaternion matrices the bound exponent is ``1/(2n)``, the size of
the complex adjoint, not ``1/n``.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatch
from .perturbation import VerificationReport, _as_points, bound_holds
from .qmat import QMatrix, spec_norm
from .spectra import basal_coneigenvalues, standard_eigenvalues


def _check(A: QMatrix, B: QMatrix) -> None:
    if A.shape != B.shape or not A.is_square:
        raise ShapeMismatch(f"need square matrices of one size, got {A.shape} and {B.shape}")


def _max_min(reference, moved) -> float:
    a, b = _as_points(reference), _as_points(moved)
    return float(np.max(np.min(np.abs(b[:, None] - a[None, :]), axis=1)))


def spectral_variation(A: QMatrix, B: QMatrix) -> float:
    """``sv_A(B) = max_j min_i |mu_j - lam_i|`` over standard eigenvalues."""
    _check(A, B)
    return _max_min(standard_eigenvalues(A), standard_eigenvalues(B))


def hausdorff(A: QMatrix, B: QMatrix) -> float:
    _check(A, B)
    sa, sb = standard_eigenvalues(A), standard_eigenvalues(B)
    return max(_max_min(sa, sb), _max_min(sb, sa))


def con_spectral_variation(A: QMatrix, B: QMatrix) -> float:
    """Same max-min over basal right coneigenvalues."""
    _check(A, B)
    return _max_min(basal_coneigenvalues(A), basal_coneigenvalues(B))


def con_hausdorff(A: QMatrix, B: QMatrix) -> float:
    _check(A, B)
    ca, cb = basal_coneigenvalues(A), basal_coneigenvalues(B)
    return max(_max_min(ca, cb), _max_min(cb, ca))


def elsner_bound(A: QMatrix, B: QMatrix) -> float:
    _check(A, B)
    n = A.n_rows
    e = 1.0 / (2 * n)
    return spec_norm(A - B) ** e * (spec_norm(A) + spec_norm(B)) ** (1.0 - e)


def verify_variation_bounds(A: QMatrix, B: QMatrix) -> VerificationReport:
    """Check sv, hd, svc and hdc against the common Elsner-type bound.

    ``lhs`` is the largest of the four; the witness lists each one.
    """
    _check(A, B)
    sa, sb = standard_eigenvalues(A), standard_eigenvalues(B)
    ca, cb = basal_coneigenvalues(A), basal_coneigenvalues(B)
    sv_ab, sv_ba = _max_min(sa, sb), _max_min(sb, sa)
    svc_ab, svc_ba = _max_min(ca, cb), _max_min(cb, ca)
    bound = elsner_bound(A, B)
    quantities = {
        "sv": sv_ab,
        "hd": max(sv_ab, sv_ba),
        "svc": svc_ab,
        "hdc": max(svc_ab, svc_ba),
    }
    witness = {k: {"value": v, "holds": bound_holds(v, bound)} for k, v in quantities.items()}
    lhs = max(quantities.values())
    context = {"spec_norm_A": spec_norm(A), "spec_norm_B": spec_norm(B),
               "spec_norm_diff": spec_norm(A - B), "n": A.n_rows}
    return VerificationReport(lhs, bound, all(w["holds"] for w in witness.values()), witness, context)
