"""Matrix input parsing shared by the library and the CLI.

Two formats are accepted:

* JSON object ``{"n": int, "rows": [[...], ...]}``
* whitespace-separated text: first token n, then n rows of n entries

Decimal literals are parsed with float(), i.e. correctly rounded.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InvalidInputError
from .linalg import as_matrix


def matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON matrix: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
        raise InvalidInputError('JSON matrix must be an object {"n": int, "rows": [[...], ...]}')
    n = obj["n"]
    rows = obj["rows"]
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError('"n" must be a positive integer')
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InvalidInputError(f'"rows" must be {n} rows of {n} entries')
    try:
        return as_matrix(rows)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"invalid matrix entries: {exc}") from exc


def matrix_from_text(text: str) -> np.ndarray:
    tokens = text.split()
    if not tokens:
        raise InvalidInputError("empty matrix input")
    try:
        n = int(tokens[0])
    except ValueError as exc:
        raise InvalidInputError(f"first token must be the dimension, got {tokens[0]!r}") from exc
    if n < 1:
        raise InvalidInputError("dimension must be >= 1")
    if len(tokens) != 1 + n * n:
        raise InvalidInputError(f"expected {n * n} entries after the dimension, got {len(tokens) - 1}")
    try:
        entries = [float(t) for t in tokens[1:]]
    except ValueError as exc:
        raise InvalidInputError(f"invalid matrix entry: {exc}") from exc
    return as_matrix(np.array(entries).reshape(n, n))


def parse_matrix(text: str) -> np.ndarray:
    """Dispatch on content: JSON object or whitespace-separated text."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return matrix_from_json(text)
    return matrix_from_text(text)


def load_matrix(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read matrix file {path!r}: {exc}") from exc
    return parse_matrix(text)
