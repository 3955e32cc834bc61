"""Command-line front end.

Exit codes: 0 success, 1 a bound check reported ``holds = false``, 2 bad
input, 3 numerical failure.  Errors go to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Callable

from . import campaign
from .errors import InputError, ParseError, QConeigError, StructureViolation
from .localization import default_tol, gersgorin_balls, verify_component_counts, verify_right_gersgorin
from .perturbation import check_normal_counterexample, verify_bauer_fike, verify_generalized_hw, verify_hw
from .qmat import PREDICATE_TOL, QMatrix, fro_norm, spec_norm, structure_flags
from .serialize import dumps, parse_matrix
from .spectra import basal_coneigenvalues, standard_eigenvalues
from .variation import verify_variation_bounds

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class _UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path: str | None, label: str, stdin_used: list) -> QMatrix:
    if path is None or path == "-":
        if stdin_used:
            raise _UsageError(f"stdin already consumed; pass --{label} as a file")
        stdin_used.append(label)
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _UsageError(f"cannot read {label} from {path!r}: {exc.strerror}") from None
    return parse_matrix(text)


def _color(ok: bool) -> str:
    word = "holds" if ok else "FAILS"
    if os.environ.get("NO_COLOR") is not None or not sys.stdout.isatty():
        return word
    return f"\033[{32 if ok else 31}m{word}\033[0m"


def _report_text(r) -> str:
    return f"lhs = {r.lhs:.10g}\nrhs = {r.rhs:.10g}\n{_color(r.holds)}"


# commands return (payload, text, exit code) -------------------------------------

def cmd_eig(args, rd):
    spec = standard_eigenvalues(rd(args.input, "input"))
    text = "\n".join(f"{z.real:.10g} {'+' if z.imag >= 0 else '-'} {abs(z.imag):.10g}i" for z in spec)
    return [{"re": z.real, "im": z.imag} for z in spec], text, EXIT_OK


def cmd_coneig(args, rd):
    spec = basal_coneigenvalues(rd(args.input, "input"))
    text = "\n".join(f"{v.a:.10g} {'+' if v.b >= 0 else '-'} {abs(v.b):.10g}j" for v in spec)
    return [{"a": v.a, "b": v.b} for v in spec], text, EXIT_OK


def cmd_gersgorin(args, rd):
    A = rd(args.input, "input")
    tol = default_tol(A) if args.tol is None else args.tol
    kinds = ("row", "column") if args.kind == "both" else (args.kind,)
    reports = {k: verify_right_gersgorin(A, k, tol) for k in kinds}
    comps = verify_component_counts(A, tol)
    payload = {
        "balls": {k: [b.to_dict() for b in gersgorin_balls(A, k)] for k in kinds},
        "reports": {k: r.to_dict() for k, r in reports.items()},
        "components": comps.to_dict(),
        "holds": all(r.overall for r in reports.values()) and comps.overall,
    }
    lines = []
    for k, r in reports.items():
        for rec in r.records:
            v = rec.value
            lines.append(f"{k:6s} lambda = {v.a:.8g} {'+' if v.b >= 0 else '-'} {abs(v.b):.8g}j  "
                         f"ball {rec.best_ball}  gap {rec.orbit_gap:.3e}  {_color(rec.holds)}")
    for c in comps.components:
        lines.append(f"component {list(c.balls)}: {c.count} coneigenvalues  {_color(c.holds)}")
    return payload, "\n".join(lines), EXIT_OK if payload["holds"] else EXIT_FAILED


def _tol(args):
    return PREDICATE_TOL if args.tol is None else args.tol


def cmd_hw(args, rd):
    A, B = rd(args.a, "a"), rd(args.b, "b")
    if args.variant == "normal":
        r = check_normal_counterexample(A, B, _tol(args))
    else:
        r = verify_hw(A, B, args.variant, _tol(args))
    return r.to_dict(), _report_text(r), EXIT_OK if r.holds else EXIT_FAILED


def cmd_ghw(args, rd):
    A, B = rd(args.a, "a"), rd(args.b, "b")
    P = rd(args.p, "p") if args.p else None
    r = verify_generalized_hw(A, B, P, _tol(args))
    return r.to_dict(), _report_text(r) + f"\nkappa = {r.context['kappa']:.10g}", \
        EXIT_OK if r.holds else EXIT_FAILED


def cmd_bauer_fike(args, rd):
    A, E = rd(args.a, "a"), rd(args.e, "e")
    P = rd(args.p, "p") if args.p else None
    r = verify_bauer_fike(A, E, P)
    return r.to_dict(), _report_text(r) + f"\nkappa = {r.context['kappa']:.10g}", \
        EXIT_OK if r.holds else EXIT_FAILED


def cmd_sv(args, rd):
    A, B = rd(args.a, "a"), rd(args.b, "b")
    r = verify_variation_bounds(A, B)
    lines = [f"{k:4s} = {w['value']:.10g}  {_color(w['holds'])}" for k, w in r.witness.items()]
    lines.append(f"bound = {r.rhs:.10g}")
    return r.to_dict(), "\n".join(lines), EXIT_OK if r.holds else EXIT_FAILED


def cmd_norms(args, rd):
    A = rd(args.input, "input")
    flags = structure_flags(A, _tol(args)) if A.is_square else None
    payload = {"fro_norm": fro_norm(A), "spec_norm": spec_norm(A),
               "structure": flags.to_dict() if flags else None}
    lines = [f"fro_norm  = {payload['fro_norm']:.17g}", f"spec_norm = {payload['spec_norm']:.17g}"]
    if flags:
        lines += [f"{k:16s} {v}" for k, v in flags.to_dict().items()]
    return payload, "\n".join(lines), EXIT_OK


def cmd_verify(args, rd):
    if args.n < 1 or args.trials < 0 or args.workers < 1:
        raise _UsageError("--n and --workers must be positive and --trials non-negative")
    s = campaign.run_campaign(args.kind, args.n, args.trials, args.seed, args.scale, args.workers)
    text = (f"{args.kind}: {s['holds']}/{s['trials']} hold, {s['failures']} failures, "
            f"{s['errors']} errors")
    code = EXIT_FAILED if s["failures"] else EXIT_NUMERIC if s["errors"] else EXIT_OK
    return s, text, code


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommand copies must not overwrite values given before the subcommand
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        f = _Parser(add_help=False)
        f.add_argument("--tol", type=float, default=d(None), help="tolerance override")
        f.add_argument("--json", action="store_true", default=d(False),
                       help="emit JSON (17 significant digits)")
        f.add_argument("--quiet", action="store_true", default=d(False),
                       help="print nothing; rely on the exit code")
        return f

    common = flags(True)
    p = _Parser(prog="qconeig", description="Coneigenvalue analysis of quaternion matrices.",
                parents=[flags(False)])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func: Callable, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    for name, func, h in (("eig", cmd_eig, "standard eigenvalues"),
                          ("coneig", cmd_coneig, "basal right coneigenvalues"),
                          ("norms", cmd_norms, "norms and structure flags")):
        add(name, func, h).add_argument("--input", "-i", help="matrix file (default: stdin)")
    g = add("gersgorin", cmd_gersgorin, "Gersgorin localization of coneigenvalues")
    g.add_argument("--input", "-i")
    g.add_argument("--kind", choices=("row", "column", "both"), default="both")

    h = add("hw", cmd_hw, "Hoffman-Wielandt type bound")
    h.add_argument("--a", required=True)
    h.add_argument("--b", required=True)
    h.add_argument("--variant", choices=("conjugate_normal", "skew_symmetric", "normal"),
                   default="conjugate_normal")

    gh = add("ghw", cmd_ghw, "generalized Hoffman-Wielandt bound")
    gh.add_argument("--a", required=True)
    gh.add_argument("--b", required=True)
    gh.add_argument("--p", help="condiagonalizer for A (default: computed)")

    bf = add("bauer-fike", cmd_bauer_fike, "Bauer-Fike type bound")
    bf.add_argument("--a", required=True)
    bf.add_argument("--e", required=True, help="perturbation E")
    bf.add_argument("--p", help="condiagonalizer for A (default: computed)")

    sv = add("sv", cmd_sv, "spectral variation and Hausdorff distances")
    sv.add_argument("--a", required=True)
    sv.add_argument("--b", required=True)

    v = add("verify", cmd_verify, "randomized verification campaign")
    v.add_argument("--kind", choices=tuple(campaign.TRIALS), required=True)
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--scale", type=float, default=1.0)
    v.add_argument("--workers", type=int, default=1)
    return p


def _error_payload(exc: BaseException, code: int) -> dict[str, Any]:
    out: dict[str, Any] = {"error": type(exc).__name__.lstrip("_"), "message": str(exc), "exit_code": code}
    if isinstance(exc, ParseError):
        out.update(line=exc.line, column=exc.column, token=exc.token)
    if isinstance(exc, StructureViolation):
        out["predicate"] = exc.predicate
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        stdin_used: list = []
        payload, text, code = args.func(args, lambda path, label: _read(path, label, stdin_used))
        if not args.quiet:
            print(dumps(payload, indent=2) if args.json else text)
        return code
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except QConeigError as exc:
        err, code = exc, exc.exit_code
    except (ValueError, TypeError) as exc:
        err, code = exc, EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - exit-code contract is exhaustive
        err, code = exc, EXIT_NUMERIC
    print(dumps(_error_payload(err, code)), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
