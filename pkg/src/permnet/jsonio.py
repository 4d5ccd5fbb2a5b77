"""JSON encodings: complex scalars are ``[re, im]`` pairs, matrices are rows of pairs."""

from __future__ import annotations

import hashlib
import json

import numpy as np


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in v
    ):
        return complex(v[0], v[1])
    raise ValueError(f"expected a number or an [re, im] pair, got {v!r}")


def matrix_to_json(m) -> list[list[list[float]]]:
    a = np.asarray(m, dtype=np.complex128)
    return [[complex_to_json(x) for x in row] for row in a]


def matrix_from_json(rows) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return np.array([[complex_from_json(x) for x in r] for r in rows], dtype=np.complex128).reshape(n, n)


def occupation_from_json(v) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in v):
        raise ValueError(f"occupation must be a list of non-negative integers, got {v!r}")
    return tuple(v)


def digest(doc) -> str:
    """SHA-256 of the canonical (sorted-key, compact) JSON encoding of ``doc``."""
    text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def dumps(doc: dict) -> str:
    """One top-level key per line, values compact.

    Floats use ``repr``, which round-trips every double exactly.
    """
    lines = [f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"
