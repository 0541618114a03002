"""Matrix file format: JSON object ``{"n": int, "data": [[[re, im], ...], ...]}``, row-major.

Vectors use the same object with ``data`` a flat list of ``[re, im]`` entries.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import MatrixFormatError


def _reject_constant(name):
    raise MatrixFormatError(f"non-finite number {name} in matrix file")


def parse_matrix(obj) -> np.ndarray:
    """Validate a decoded document and return a read-only complex matrix."""
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "n" not in obj or "data" not in obj:
        raise MatrixFormatError("expected an object with fields 'n' and 'data'")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MatrixFormatError(f"'n' must be a positive integer, got {n!r}")
    rows = obj["data"]
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFormatError(f"'data' must hold {n} rows")
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"row {i} must hold {n} entries")
        for j, entry in enumerate(row):
            out[i, j] = _entry(entry, (i, j))
    out.flags.writeable = False
    return out


def load_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from None
    return parse_matrix(text)


def matrix_to_obj(a) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MatrixFormatError(f"expected a square matrix, got shape {a.shape}")
    return {"n": int(a.shape[0]),
            "data": [[[float(z.real), float(z.imag)] for z in row] for row in a]}


def dump_matrix(a, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_obj(a)) + "\n")


def _entry(entry, where):
    if (not isinstance(entry, list) or len(entry) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)):
        raise MatrixFormatError(f"entry {where} must be [re, im]")
    re, im = float(entry[0]), float(entry[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise MatrixFormatError(f"entry {where} is not finite")
    return complex(re, im)


def parse_vector(obj) -> np.ndarray:
    """Vector documents share the matrix layout with ``data`` a flat list of ``n`` entries."""
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "n" not in obj or "data" not in obj:
        raise MatrixFormatError("expected an object with fields 'n' and 'data'")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MatrixFormatError(f"'n' must be a positive integer, got {n!r}")
    data = obj["data"]
    if not isinstance(data, list) or len(data) != n:
        raise MatrixFormatError(f"'data' must hold {n} entries")
    out = np.array([_entry(e, i) for i, e in enumerate(data)], dtype=np.complex128)
    out.flags.writeable = False
    return out


def load_vector(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from None
    return parse_vector(text)


def vector_to_obj(x) -> dict:
    x = np.asarray(x, dtype=np.complex128).ravel()
    return {"n": int(x.size), "data": [[float(z.real), float(z.imag)] for z in x]}
