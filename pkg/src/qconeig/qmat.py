"""Dense quaternion matrices.

A :class:`QMatrix` stores its entries as a read-only ``(rows, cols, 4)``
float array of real components.  Products are formed through the complex
split ``A = A' + A'' j``, using ``j z = conj(z) j`` for complex ``z``::

    (A' + A''j)(B' + B''j) = (A'B' - A'' conj(B'')) + (A'B'' + A'' conj(B')) j
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import ceig
from .errors import ShapeMismatch, Singular
from .quat import Quaternion, as_quaternion

PREDICATE_TOL = 1e-10
_JCONJ_SIGNS = np.array([1.0, -1.0, 1.0, -1.0])
_CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])


class QMatrix:
    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeMismatch(f"expected a (rows, cols, 4) component array, got {arr.shape}")
        arr.flags.writeable = False
        self._data = arr

    # construction ---------------------------------------------------------
    @classmethod
    def from_entries(cls, rows: Iterable[Iterable]) -> QMatrix:
        """Entries may be Quaternions, numbers, 4-sequences or grammar strings."""
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("rows must be non-empty and of equal length")
        return cls([[as_quaternion(e).components for e in r] for r in rows])

    @classmethod
    def from_complex(cls, Ap, App=None) -> QMatrix:
        Ap = np.atleast_2d(np.asarray(Ap, dtype=complex))
        App = np.zeros_like(Ap) if App is None else np.atleast_2d(np.asarray(App, dtype=complex))
        if Ap.shape != App.shape:
            raise ShapeMismatch(f"complex parts differ in shape: {Ap.shape} vs {App.shape}")
        return cls(np.stack([Ap.real, Ap.imag, App.real, App.imag], axis=-1))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls.from_complex(np.eye(n))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> QMatrix:
        return cls(np.zeros((rows, rows if cols is None else cols, 4)))

    @classmethod
    def diag(cls, values: Sequence) -> QMatrix:
        n = len(values)
        data = np.zeros((n, n, 4))
        for i, v in enumerate(values):
            data[i, i] = as_quaternion(v).components
        return cls(data)

    @classmethod
    def column(cls, values: Sequence) -> QMatrix:
        return cls([[as_quaternion(v).components] for v in values])

    # views ----------------------------------------------------------------
    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape[0], self._data.shape[1]

    @property
    def n_rows(self) -> int:
        return self._data.shape[0]

    @property
    def n_cols(self) -> int:
        return self._data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    @property
    def entries(self) -> tuple[Quaternion, ...]:
        return tuple(Quaternion(*c) for c in self._data.reshape(-1, 4))

    def __getitem__(self, idx) -> Quaternion:
        i, j = idx
        return Quaternion(*self._data[i, j])

    def rows(self) -> list[list[Quaternion]]:
        return [[Quaternion(*c) for c in r] for r in self._data]

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        d = self._data
        return d[..., 0] + 1j * d[..., 1], d[..., 2] + 1j * d[..., 3]

    def diagonal(self) -> list[Quaternion]:
        return [self[i, i] for i in range(min(self.shape))]

    def allclose(self, other: QMatrix, atol: float = 1e-12) -> bool:
        return self.shape == other.shape and bool(np.allclose(self._data, other._data, atol=atol, rtol=0))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(q) for q in r) for r in self.rows())
        return f"QMatrix([{body}])"

    # operators ------------------------------------------------------------
    def __add__(self, other: QMatrix) -> QMatrix:
        return qm_add(self, other)

    def __sub__(self, other: QMatrix) -> QMatrix:
        return qm_add(self, -other)

    def __neg__(self) -> QMatrix:
        return QMatrix(-self._data)

    def __matmul__(self, other: QMatrix) -> QMatrix:
        return qm_mul(self, other)

    def __mul__(self, other):
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            return QMatrix(self._data * other)
        return qm_scale_right(self, as_quaternion(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            return QMatrix(self._data * other)
        return qm_scale_left(as_quaternion(other), self)

    @property
    def T(self) -> QMatrix:
        return qm_transpose(self)

    @property
    def H(self) -> QMatrix:
        return qm_conj_transpose(self)


def _require_square(A: QMatrix, what: str) -> None:
    if not A.is_square:
        raise ShapeMismatch(f"{what} needs a square matrix, got {A.shape}")


def qm_add(A: QMatrix, B: QMatrix) -> QMatrix:
    if A.shape != B.shape:
        raise ShapeMismatch(f"cannot add {A.shape} and {B.shape}")
    return QMatrix(A.data + B.data)


def _cmul(A1, A2, B1, B2):
    return A1 @ B1 - A2 @ B2.conj(), A1 @ B2 + A2 @ B1.conj()


def qm_mul(A: QMatrix, B: QMatrix) -> QMatrix:
    if A.n_cols != B.n_rows:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return QMatrix.from_complex(*_cmul(*A.split(), *B.split()))


def qm_scale_left(q: Quaternion, A: QMatrix) -> QMatrix:
    q1, q2 = q.split()
    A1, A2 = A.split()
    return QMatrix.from_complex(q1 * A1 - q2 * A2.conj(), q1 * A2 + q2 * A1.conj())


def qm_scale_right(A: QMatrix, q: Quaternion) -> QMatrix:
    q1, q2 = q.split()
    A1, A2 = A.split()
    return QMatrix.from_complex(A1 * q1 - A2 * np.conj(q2), A1 * q2 + A2 * np.conj(q1))


def qm_jconj(A: QMatrix) -> QMatrix:
    return QMatrix(A.data * _JCONJ_SIGNS)


def qm_conj(A: QMatrix) -> QMatrix:
    return QMatrix(A.data * _CONJ_SIGNS)


def qm_transpose(A: QMatrix) -> QMatrix:
    return QMatrix(A.data.transpose(1, 0, 2))


def qm_conj_transpose(A: QMatrix) -> QMatrix:
    return QMatrix((A.data * _CONJ_SIGNS).transpose(1, 0, 2))


def complex_split(A: QMatrix) -> tuple[np.ndarray, np.ndarray]:
    """``(A', A'')`` with ``A = A' + A'' j``."""
    return A.split()


def complex_adjoint(A: QMatrix) -> np.ndarray:
    """The 2n x 2n block matrix ``[[A', A''], [-conj(A''), conj(A')]]``."""
    _require_square(A, "complex_adjoint")
    A1, A2 = A.split()
    return np.block([[A1, A2], [-A2.conj(), A1.conj()]])


def from_complex_adjoint(X: np.ndarray) -> QMatrix:
    """Inverse of :func:`complex_adjoint`, averaging the redundant blocks."""
    n = X.shape[0] // 2
    A1 = 0.5 * (X[:n, :n] + X[n:, n:].conj())
    A2 = 0.5 * (X[:n, n:] - X[n:, :n].conj())
    return QMatrix.from_complex(A1, A2)


def fro_norm(A: QMatrix) -> float:
    return float(np.sqrt(np.sum(A.data * A.data)))


def spec_norm(A: QMatrix) -> float:
    """Largest singular value, read off the Hermitian spectrum of chi* chi."""
    if A.is_square:
        X = complex_adjoint(A)
    else:
        A1, A2 = A.split()
        X = np.block([[A1, A2], [-A2.conj(), A1.conj()]])
    top = ceig.hermitian_eigs(X.conj().T @ X)[-1]
    return float(np.sqrt(max(top, 0.0)))


@dataclass(frozen=True)
class StructureFlags:
    normal: bool
    conjugate_normal: bool
    hermitian: bool
    skew_symmetric: bool
    unitary: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def structure_residuals(A: QMatrix) -> dict[str, float]:
    _require_square(A, "structure_flags")
    AH = qm_conj_transpose(A)
    AAH = qm_mul(A, AH)
    AHA = qm_mul(AH, A)
    eye = QMatrix.identity(A.n_rows)
    return {
        "normal": fro_norm(AAH - AHA),
        "conjugate_normal": fro_norm(qm_jconj(AAH) - AHA),
        "hermitian": fro_norm(A - AH),
        "skew_symmetric": fro_norm(A + qm_transpose(A)),
        "unitary": max(fro_norm(AHA - eye), fro_norm(AAH - eye)),
    }


def structure_flags(A: QMatrix, tol: float = PREDICATE_TOL) -> StructureFlags:
    threshold = tol * (1.0 + fro_norm(A) ** 2)
    res = structure_residuals(A)
    return StructureFlags(**{k: v <= threshold for k, v in res.items()})


def qm_inverse(A: QMatrix) -> QMatrix:
    _require_square(A, "qm_inverse")
    scale = fro_norm(A)
    X = complex_adjoint(A)
    LU, perm, min_pivot = ceig.lu_factor(X)
    if scale == 0.0 or min_pivot < 1e-12 * scale:
        raise Singular(f"matrix is singular (pivot {min_pivot:.3e}, ||A||_F={scale:.3e})")
    return from_complex_adjoint(ceig.lu_solve(LU, perm, np.eye(X.shape[0], dtype=complex)))


def condition_number(A: QMatrix) -> float:
    return spec_norm(A) * spec_norm(qm_inverse(A))

