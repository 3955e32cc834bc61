"""Matrix file format and JSON emission.

A matrix file is a JSON object ``{"rows": r, "cols": c, "entries": [...]}``
where each entry is a 4-array ``[a0, a1, a2, a3]`` or a quaternion string
such as ``"1-2i+0.5j-1k"``.  A bare array of rows is also accepted.  The
writer always emits 4-arrays with 17 significant digits, which round-trips
every float64 exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import is_dataclass
from typing import Any

import numpy as np

from .errors import ParseError
from .qmat import QMatrix
from .quat import BasalQuaternion, Quaternion, parse_quaternion


def _line_col(text: str, index: int) -> tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    col = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, col


def _locate_string(text: str, literal: str, occurrence: int) -> int | None:
    needle = json.dumps(literal)
    idx = -1
    for _ in range(occurrence + 1):
        idx = text.find(needle, idx + 1)
        if idx < 0:
            return None
    return idx


def _entry(value, text: str, seen: dict[str, int], where: str) -> list[float]:
    if isinstance(value, str):
        occurrence = seen.get(value, 0)
        seen[value] = occurrence + 1
        try:
            return list(parse_quaternion(value).components)
        except ParseError as exc:
            idx = _locate_string(text, value, occurrence)
            line = col = None
            if idx is not None:
                inner = value.find(exc.token) if exc.token else -1
                line, col = _line_col(text, idx + 1 + max(inner, 0))
            raise ParseError(f"{where}: bad quaternion {value!r}; offending token {exc.token!r}",
                             line, col, exc.token) from None
    if isinstance(value, list) and len(value) == 4 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return [float(v) for v in value]
    raise ParseError(f"{where}: entry must be a 4-array of numbers or a quaternion string",
                     token=json.dumps(value)[:40])


def parse_matrix(text: str) -> QMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        token = text[exc.pos:exc.pos + 1] if exc.pos < len(text) else "<end>"
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno, token) from None
    if isinstance(doc, dict):
        if "entries" not in doc:
            raise ParseError("matrix object needs an 'entries' field", token="entries")
        rows = doc["entries"]
    else:
        rows = doc
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) and r for r in rows):
        raise ParseError("'entries' must be a non-empty array of non-empty rows", token="entries")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("rows have unequal lengths", token="entries")
    if isinstance(doc, dict):
        for key, actual in (("rows", len(rows)), ("cols", width)):
            if key in doc and doc[key] != actual:
                raise ParseError(f"'{key}' is {doc[key]!r} but entries give {actual}", token=key)
    seen: dict[str, int] = {}
    data = [[_entry(e, text, seen, f"entry ({i + 1},{j + 1})") for j, e in enumerate(r)]
            for i, r in enumerate(rows)]
    return QMatrix(data)


def parse_vector(text: str) -> QMatrix:
    """A JSON array of quaternion entries, returned as a column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if isinstance(doc, dict):
        doc = doc.get("entries")
    if not isinstance(doc, list) or not doc:
        raise ParseError("vector must be a non-empty JSON array")
    seen: dict[str, int] = {}
    return QMatrix([[_entry(e, text, seen, f"component {i + 1}")] for i, e in enumerate(doc)])


def to_plain(obj: Any) -> Any:
    """Convert library values into JSON-ready Python structures."""
    if isinstance(obj, QMatrix):
        return {"rows": obj.n_rows, "cols": obj.n_cols, "entries": obj.data.tolist()}
    if isinstance(obj, BasalQuaternion):
        return {"a": obj.a, "b": obj.b}
    if isinstance(obj, Quaternion):
        return list(obj.components)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict())
    if is_dataclass(obj):
        return {k: to_plain(v) for k, v in obj.__dict__.items()}
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, np.generic):
        return to_plain(obj.item())
    return obj


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj: Any, indent: int | None = None) -> str:
    """JSON text with every float at 17 significant digits."""
    def enc(v, depth):
        if v is None:
            return "null"
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, int):
            return str(v)
        if isinstance(v, float):
            return _fmt_float(v)
        if isinstance(v, str):
            return json.dumps(v)
        pad = "" if indent is None else "\n" + " " * (indent * (depth + 1))
        end = "" if indent is None else "\n" + " " * (indent * depth)
        sep = ", " if indent is None else ","
        if isinstance(v, dict):
            if not v:
                return "{}"
            items = sep.join(f"{pad}{json.dumps(str(k))}: {enc(x, depth + 1)}" for k, x in v.items())
            return "{" + items + end + "}"
        if isinstance(v, (list, tuple)):
            if not v:
                return "[]"
            return "[" + sep.join(pad + enc(x, depth + 1) for x in v) + end + "]"
        raise TypeError(f"cannot serialise {type(v).__name__}")

    return enc(to_plain(obj), 0)


def dump_matrix(A: QMatrix) -> str:
    return dumps(A)
