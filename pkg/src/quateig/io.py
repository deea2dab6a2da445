"""Matrix document format and deterministic JSON output.

A matrix document is a JSON object with fields

    kind     "quaternion" | "hlcr" | "complex"
    n        matrix dimension
    entries  n rows of n entries, row-major

where a quaternion entry is ``[a, b, c, d]`` (a + ib + jc + kd), a
complex entry is ``[re, im]`` and an hlcr entry is
``{"Q": [a,b,c,d], "P": [a,b,c,d]}`` (the operator Q + P R_i).

Serialized output is byte-deterministic: keys keep insertion order and
every float prints with 17 significant digits, enough to round-trip
doubles exactly.
"""
from __future__ import annotations

import math
from typing import Union

import numpy as np

from .errors import MalformedDocument
from .hlcr import HlcrElement
from .matrices import HlcrMatrix, QuatMatrix, QuatVector
from .quaternion import Quaternion

__all__ = [
    "dumps",
    "parse_matrix",
    "parse_quaternion",
    "parse_vector",
    "quaternion_json",
    "complex_json",
    "hlcr_json",
    "vector_json",
    "matrix_document",
]


# ----------------------------------------------------------------------
# deterministic writer
# ----------------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite value {x!r} in output")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    s = format(float(x), ".17g")
    return s


def _write(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt_float(obj))
    elif isinstance(obj, np.floating):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, np.integer):
        out.append(str(int(obj)))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for k, item in enumerate(obj):
            if k:
                out.append(", ")
            _write(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for k, (key, value) in enumerate(obj.items()):
            if k:
                out.append(", ")
            _write(str(key), out)
            out.append(": ")
            _write(value, out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps(obj) -> str:
    out: list[str] = []
    _write(obj, out)
    return "".join(out) + "\n"


# ----------------------------------------------------------------------
# encoders
# ----------------------------------------------------------------------

def quaternion_json(q: Quaternion) -> list[float]:
    return [float(q.a), float(q.b), float(q.c), float(q.d)]


def complex_json(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def hlcr_json(e: HlcrElement) -> dict:
    return {"Q": quaternion_json(e.q), "P": quaternion_json(e.p)}


def vector_json(v: QuatVector) -> list[list[float]]:
    return [quaternion_json(q) for q in v]


def matrix_document(m: Union[QuatMatrix, HlcrMatrix, np.ndarray]) -> dict:
    if isinstance(m, QuatMatrix):
        return {"kind": "quaternion", "n": m.n,
                "entries": [[quaternion_json(m[i, j]) for j in range(m.n)]
                            for i in range(m.n)]}
    if isinstance(m, HlcrMatrix):
        return {"kind": "hlcr", "n": m.n,
                "entries": [[hlcr_json(m[i, j]) for j in range(m.n)]
                            for i in range(m.n)]}
    m = np.asarray(m, dtype=complex)
    return {"kind": "complex", "n": int(m.shape[0]),
            "entries": [[complex_json(m[i, j]) for j in range(m.shape[1])]
                        for i in range(m.shape[0])]}


# ----------------------------------------------------------------------
# parsers
# ----------------------------------------------------------------------

def _numbers(raw, count, what) -> list[float]:
    if (not isinstance(raw, (list, tuple)) or len(raw) != count
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw)):
        raise MalformedDocument(f"{what} must be a list of {count} numbers, got {raw!r}")
    return [float(x) for x in raw]


def parse_quaternion(raw) -> Quaternion:
    return Quaternion(*_numbers(raw, 4, "quaternion"))


def _parse_complex(raw) -> complex:
    re_, im_ = _numbers(raw, 2, "complex entry")
    return complex(re_, im_)


def _parse_hlcr(raw) -> HlcrElement:
    if not isinstance(raw, dict) or set(raw) != {"Q", "P"}:
        raise MalformedDocument(f'hlcr entry must be {{"Q": [...], "P": [...]}}, got {raw!r}')
    return HlcrElement(parse_quaternion(raw["Q"]), parse_quaternion(raw["P"]))


def parse_vector(raw) -> QuatVector:
    if not isinstance(raw, (list, tuple)) or not raw:
        raise MalformedDocument(f"vector must be a nonempty list, got {raw!r}")
    return QuatVector(parse_quaternion(x) for x in raw)


def parse_matrix(doc) -> Union[QuatMatrix, HlcrMatrix, np.ndarray]:
    """Parse and validate a matrix document into the matching type."""
    if not isinstance(doc, dict):
        raise MalformedDocument("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in ("quaternion", "hlcr", "complex"):
        raise MalformedDocument(f"unknown kind {kind!r}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedDocument(f"n must be a positive integer, got {n!r}")
    entries = doc.get("entries")
    if not isinstance(entries, list) or len(entries) != n:
        raise MalformedDocument(
            f"non-square: expected {n} rows, got "
            f"{len(entries) if isinstance(entries, list) else type(entries)!r}")
    for row in entries:
        if not isinstance(row, list) or len(row) != n:
            raise MalformedDocument(f"non-square: expected rows of {n} entries")
    if kind == "quaternion":
        return QuatMatrix([[parse_quaternion(e) for e in row] for row in entries])
    if kind == "hlcr":
        return HlcrMatrix([[_parse_hlcr(e) for e in row] for row in entries])
    return np.array([[_parse_complex(e) for e in row] for row in entries])
