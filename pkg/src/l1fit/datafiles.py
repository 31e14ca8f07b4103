"""Plain-text matrix and vector files.

Matrix files carry a header line ``m n`` followed by m rows of n decimals;
vector files carry ``m`` followed by one decimal per line.  Lines starting
with ``#`` (and blank lines) are comments.  Values are written with 17
significant digits, so a write/read round trip is bit-exact.
"""

from __future__ import annotations

import numpy as np

__all__ = ["read_matrix", "read_vector", "write_matrix", "write_vector"]


def _data_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            yield lineno, text


def _parse_floats(text: str, lineno: int, path) -> list[float]:
    values = []
    for token in text.split():
        try:
            val = float(token)
        except ValueError:
            raise ValueError(f"{path}: line {lineno}: not a number: {token!r}") from None
        if not np.isfinite(val):
            raise ValueError(f"{path}: line {lineno}: non-finite value: {token!r}")
        values.append(val)
    return values


def read_matrix(path) -> np.ndarray:
    lines = _data_lines(path)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ValueError(f"{path}: empty file") from None
    parts = header.split()
    if len(parts) != 2:
        raise ValueError(f"{path}: line {lineno}: expected header 'm n', got {header!r}")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"{path}: line {lineno}: expected integer dimensions") from None
    if m < 1 or n < 1:
        raise ValueError(f"{path}: line {lineno}: dimensions must be positive")
    rows = []
    for lineno, text in lines:
        row = _parse_floats(text, lineno, path)
        if len(row) != n:
            raise ValueError(f"{path}: line {lineno}: expected {n} values, got {len(row)}")
        rows.append(row)
        if len(rows) == m:
            break
    if len(rows) != m:
        raise ValueError(f"{path}: expected {m} data rows, found {len(rows)}")
    return np.array(rows, dtype=float)


def read_vector(path) -> np.ndarray:
    lines = _data_lines(path)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ValueError(f"{path}: empty file") from None
    try:
        m = int(header)
    except ValueError:
        raise ValueError(f"{path}: line {lineno}: expected header 'm', got {header!r}") from None
    if m < 1:
        raise ValueError(f"{path}: line {lineno}: length must be positive")
    values = []
    for lineno, text in lines:
        row = _parse_floats(text, lineno, path)
        if len(row) != 1:
            raise ValueError(f"{path}: line {lineno}: expected one value per line")
        values.extend(row)
        if len(values) == m:
            break
    if len(values) != m:
        raise ValueError(f"{path}: expected {m} entries, found {len(values)}")
    return np.array(values, dtype=float)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_matrix(path, A) -> None:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{A.shape[0]} {A.shape[1]}\n")
        for row in A:
            fh.write(" ".join(_fmt(v) for v in row) + "\n")


def write_vector(path, v) -> None:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise ValueError("expected a 1-d vector")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{v.size}\n")
        for val in v:
            fh.write(_fmt(val) + "\n")
