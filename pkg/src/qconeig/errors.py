"""Exception hierarchy.

Every library error carries an ``exit_code`` so the CLI can map failures
onto its contract: 2 for bad input or violated hypotheses, 3 for numerical
breakdown.
"""

from __future__ import annotations


class QConeigError(Exception):
    exit_code = 3


class InputError(QConeigError, ValueError):
    exit_code = 2


class ShapeMismatch(InputError):
    pass


class LengthMismatch(InputError):
    pass


class ZeroVector(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 token: str | None = None):
        self.line = line
        self.column = column
        self.token = token
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class StructureViolation(InputError):
    def __init__(self, predicate: str, message: str | None = None):
        self.predicate = predicate
        super().__init__(message or f"matrix is not {predicate}")


class NotCondiagonalizable(InputError):
    pass


class NotAConeigenvalue(InputError):
    pass


class NotHermitian(InputError):
    pass


class Singular(QConeigError):
    pass


class NoConvergence(QConeigError):
    pass


class PairingFailure(QConeigError):
    pass


class ResampleLimit(QConeigError):
    pass
