"""Quaternion scalars: arithmetic, conjugations, (con)similarity tests.

Multiplication follows Hamilton's table ``ij = k = -ji``, ``jk = i = -kj``,
``ki = j = -ik``.  The j-conjugate of ``q`` is ``-j q j``, which flips the
signs of the ``i`` and ``k`` components and fixes the real and ``j`` parts.
"""

from __future__ import annotations

import math
import re
import sys
from dataclasses import dataclass
from typing import Iterator

from .errors import ParseError

DEFAULT_TOL = 1e-9
BASAL_CLAMP = 1e-9


@dataclass(frozen=True)
class Quaternion:
    a0: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    a3: float = 0.0

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "a3"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_complex(cls, z1: complex, z2: complex = 0j) -> Quaternion:
        """Build ``z1 + z2 j`` (note ``i j = k``)."""
        z1, z2 = complex(z1), complex(z2)
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    def split(self) -> tuple[complex, complex]:
        return complex(self.a0, self.a1), complex(self.a2, self.a3)

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.a0, self.a1, self.a2, self.a3)

    @property
    def real(self) -> float:
        return self.a0

    def __iter__(self) -> Iterator[float]:
        return iter(self.components)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.a0 + other.a0, self.a1 + other.a1,
                          self.a2 + other.a2, self.a3 + other.a3)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Quaternion(self.a0 - other.a0, self.a1 - other.a1,
                          self.a2 - other.a2, self.a3 - other.a3)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return qmul(self, other)

    def __rmul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return qmul(other, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.a0 / other, self.a1 / other, self.a2 / other, self.a3 / other)
        return NotImplemented

    def __abs__(self) -> float:
        return qabs(self)

    def conj(self) -> Quaternion:
        return qconj(self)

    def jconj(self) -> Quaternion:
        return jconj(self)

    def inv(self) -> Quaternion:
        return qinv(self)

    def isclose(self, other: Quaternion, tol: float = DEFAULT_TOL) -> bool:
        return qabs(self - _coerce(other)) <= tol

    def __str__(self) -> str:
        return format_quaternion(self)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def _coerce(x) -> Quaternion | None:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, BasalQuaternion):
        return x.as_quaternion()
    if isinstance(x, bool):
        return None
    if isinstance(x, (int, float)):
        return Quaternion(float(x))
    if isinstance(x, complex):
        return Quaternion(x.real, x.imag)
    return None


def as_quaternion(x) -> Quaternion:
    """Accept a Quaternion, a real/complex number, a 4-sequence or a grammar string."""
    q = _coerce(x)
    if q is not None:
        return q
    if isinstance(x, str):
        return parse_quaternion(x)
    comps = tuple(x)
    if len(comps) != 4:
        raise ValueError(f"expected 4 components, got {len(comps)}")
    return Quaternion(*comps)


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    a0, a1, a2, a3 = p.a0, p.a1, p.a2, p.a3
    b0, b1, b2, b3 = q.a0, q.a1, q.a2, q.a3
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def qconj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a0, -q.a1, -q.a2, -q.a3)


def qabs(q: Quaternion) -> float:
    return math.sqrt(q.a0 * q.a0 + q.a1 * q.a1 + q.a2 * q.a2 + q.a3 * q.a3)


def qinv(q: Quaternion) -> Quaternion:
    n2 = q.a0 * q.a0 + q.a1 * q.a1 + q.a2 * q.a2 + q.a3 * q.a3
    if n2 < sys.float_info.min:
        raise ZeroDivisionError("quaternion inverse of zero")
    return Quaternion(q.a0 / n2, -q.a1 / n2, -q.a2 / n2, -q.a3 / n2)


def jconj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a0, -q.a1, q.a2, -q.a3)


def is_similar(p: Quaternion, q: Quaternion, tol: float = DEFAULT_TOL) -> bool:
    """``s^-1 q s = p`` for some nonzero ``s``: equal real parts and moduli."""
    return abs(p.a0 - q.a0) <= tol and abs(qabs(p) - qabs(q)) <= tol


def is_consimilar(p: Quaternion, q: Quaternion, tol: float = DEFAULT_TOL) -> bool:
    """``r~^-1 p r = q`` for some nonzero ``r``, tested through ``jp ~ jq``."""
    return is_similar(qmul(J, p), qmul(J, q), tol)


@dataclass(frozen=True)
class BasalQuaternion:
    """Canonical coneigenvalue representative ``a + b j`` with ``a >= 0``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if a < 0.0:
            if a < -BASAL_CLAMP:
                raise ValueError(f"basal quaternion needs a >= 0, got a={a}")
            a = 0.0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def as_quaternion(self) -> Quaternion:
        return Quaternion(self.a, 0.0, self.b, 0.0)

    def hat(self) -> complex:
        """The standard eigenvalue ``-b + a i`` of ``jA`` that this value maps to."""
        return complex(-self.b, self.a)

    @classmethod
    def from_hat(cls, mu: complex) -> BasalQuaternion:
        return cls(mu.imag, -mu.real)

    def __abs__(self) -> float:
        return math.hypot(self.a, self.b)

    def __sub__(self, other) -> Quaternion:
        return self.as_quaternion() - _coerce(other)

    def __str__(self) -> str:
        return format_quaternion(self.as_quaternion())


def orbit_distance(lam: BasalQuaternion, c: Quaternion) -> float:
    """Distance from ``c`` to the consimilarity orbit of ``lam``.

    The orbit of ``a + b j`` is the 2-sphere ``{q : q2 = b, q0^2+q1^2+q3^2 = a^2}``.
    """
    rho = math.sqrt(c.a0 * c.a0 + c.a1 * c.a1 + c.a3 * c.a3)
    return math.hypot(c.a2 - lam.b, rho - lam.a)


# -- text grammar -----------------------------------------------------------

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")


def parse_quaternion(text: str) -> Quaternion:
    """Parse ``"1-2i+0.5j-1k"``-style text; whitespace is ignored."""
    s = "".join(text.split())
    if not s:
        raise ParseError("empty quaternion literal", token=text)
    comps = [0.0, 0.0, 0.0, 0.0]
    pos = 0
    first = True
    while pos < len(s):
        sign = 1.0
        if s[pos] in "+-":
            sign = -1.0 if s[pos] == "-" else 1.0
            pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {s[pos]!r} in {text!r}", token=s[pos])
        m = _NUMBER.match(s, pos)
        coeff = None
        if m:
            coeff = float(m.group(0))
            pos = m.end()
        if pos < len(s) and s[pos] in "ijk":
            comps["ijk".index(s[pos]) + 1] += sign * (1.0 if coeff is None else coeff)
            pos += 1
        elif coeff is None:
            bad = s[pos] if pos < len(s) else "<end>"
            raise ParseError(f"unexpected {bad!r} in quaternion literal {text!r}", token=bad)
        else:
            comps[0] += sign * coeff
        if pos < len(s) and s[pos] not in "+-":
            raise ParseError(f"unexpected {s[pos]!r} in quaternion literal {text!r}", token=s[pos])
        first = False
    return Quaternion(*comps)


def format_quaternion(q: Quaternion, digits: int = 6) -> str:
    parts = []
    for value, unit in zip(q.components, ("", "i", "j", "k")):
        if value == 0.0 and unit:
            continue
        txt = f"{value:.{digits}g}"
        if parts and not txt.startswith("-"):
            txt = "+" + txt
        parts.append(txt + unit)
    if len(parts) > 1 and parts[0] == "0":
        parts = parts[1:]
        parts[0] = parts[0].lstrip("+")
    return "".join(parts)
