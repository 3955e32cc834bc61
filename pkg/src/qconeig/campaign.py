"""Batch verification campaigns over seeded random instances.

Trial ``t`` of a campaign with seed ``s`` draws its matrices from
``split_seed(s, t)``; results come back in trial order whatever the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .errors import QConeigError
from .genmat import random_structured, split_seed
from .localization import verify_component_counts, verify_right_gersgorin
from .perturbation import verify_bauer_fike, verify_generalized_hw, verify_hw
from .qmat import fro_norm
from .variation import verify_variation_bounds

BF_RELATIVE_SIZE = 0.01


def _pair(kind: str, n: int, seed: int, scale: float):
    return (random_structured(kind, n, split_seed(seed, 0), scale),
            random_structured(kind, n, split_seed(seed, 1), scale))


def _hw(n, seed, scale):
    a, b = _pair("conjugate_normal", n, seed, scale)
    r = verify_hw(a.A, b.A, "conjugate_normal")
    return r.holds, r.lhs, r.rhs


def _hw_skew(n, seed, scale):
    a, b = _pair("skew_symmetric", n, seed, scale)
    r = verify_hw(a.A, b.A, "skew_symmetric")
    return r.holds, r.lhs, r.rhs


def _ghw(n, seed, scale):
    a = random_structured("condiagonalizable", n, split_seed(seed, 0), scale)
    b = random_structured("conjugate_normal", n, split_seed(seed, 1), scale)
    r = verify_generalized_hw(a.A, b.A, a.planted["P"])
    return r.holds, r.lhs, r.rhs


def _bf(n, seed, scale):
    a = random_structured("condiagonalizable", n, split_seed(seed, 0), scale)
    e = random_structured("plain", n, split_seed(seed, 1), 1.0).A
    e = e * (BF_RELATIVE_SIZE * fro_norm(a.A) / fro_norm(e))
    r = verify_bauer_fike(a.A, e, a.planted["P"])
    return r.holds, r.lhs, r.rhs


def _gersgorin(n, seed, scale):
    A = random_structured("plain", n, seed, scale).A
    row, col = verify_right_gersgorin(A, "row"), verify_right_gersgorin(A, "column")
    worst = max(r.orbit_gap for r in row.records + col.records)
    return row.overall and col.overall, worst, 0.0


def _components(n, seed, scale):
    A = random_structured("diagonally_dominant", n, seed, scale).A
    r = verify_component_counts(A)
    return r.overall, float(len(r.components)), float(n)


def _elsner(n, seed, scale):
    a, b = _pair("plain", n, seed, scale)
    r = verify_variation_bounds(a.A, b.A)
    return r.holds, r.lhs, r.rhs


TRIALS: dict[str, Callable] = {
    "hw": _hw,
    "hw-skew": _hw_skew,
    "ghw": _ghw,
    "bf": _bf,
    "gersgorin": _gersgorin,
    "components": _components,
    "elsner": _elsner,
}


def run_trial(kind: str, n: int, seed: int, scale: float = 1.0, index: int = 0) -> dict:
    out = {"trial": index, "seed": seed, "n": n}
    try:
        holds, lhs, rhs = TRIALS[kind](n, seed, scale)
        out.update(holds=bool(holds), lhs=float(lhs), rhs=float(rhs))
    except QConeigError as exc:
        out.update(holds=None, error=type(exc).__name__, message=str(exc))
    return out


def _star(args):
    return run_trial(*args)


def run_campaign(kind: str, n: int, trials: int, seed: int, scale: float = 1.0,
                 workers: int = 1) -> dict:
    if kind not in TRIALS:
        raise ValueError(f"unknown campaign kind {kind!r}")
    jobs = [(kind, n, split_seed(seed, t), scale, t) for t in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_star, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_star(j) for j in jobs]
    held = sum(1 for r in results if r["holds"] is True)
    failed = sum(1 for r in results if r["holds"] is False)
    errors = sum(1 for r in results if r["holds"] is None)
    return {"kind": kind, "n": n, "trials": trials, "seed": seed, "scale": scale,
            "holds": held, "failures": failed, "errors": errors, "results": results}
