"""JSON serialization for complex matrices.

Wire schema (used by every CLI subcommand):

    {"rows": n, "cols": n, "entries": [[re, im], ...]}   # row-major
"""

import json
import math
import os

import numpy as np

from .linalg import InputValidationError, as_matrix

__all__ = ["matrix_to_dict", "matrix_from_dict", "load_matrix", "save_matrix"]


def matrix_to_dict(m) -> dict:
    a = as_matrix(m)
    entries = [[float(z.real), float(z.imag)] for z in a.ravel()]
    return {"rows": int(a.shape[0]), "cols": int(a.shape[1]), "entries": entries}


def matrix_from_dict(doc) -> np.ndarray:
    if not isinstance(doc, dict):
        raise InputValidationError("matrix document must be a JSON object")
    for key in ("rows", "cols", "entries"):
        if key not in doc:
            raise InputValidationError(f"matrix document missing key '{key}'")
    rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise InputValidationError("'rows' and 'cols' must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        got = len(entries) if isinstance(entries, list) else "non-list"
        raise InputValidationError(
            f"'entries' must hold rows*cols = {rows * cols} pairs, got {got}")
    flat = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(entries):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)):
            raise InputValidationError(f"entry {i} is not a [re, im] pair: {pair!r}")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InputValidationError(f"entry {i} is non-finite: {pair!r}")
        flat[i] = complex(re, im)
    return flat.reshape(rows, cols)


def load_matrix(path: str) -> np.ndarray:
    if not os.path.exists(path):
        raise InputValidationError(f"matrix file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"malformed JSON in {path}: {exc}") from exc
    return matrix_from_dict(doc)


def save_matrix(path: str, m) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_dict(m), fh)
        fh.write("\n")
