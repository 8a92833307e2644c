"""Plain-text matrix files.

Format: an optional run of ``#`` comment lines, a header ``<rows> <cols>
<field>`` with field ``real`` or ``complex``, then whitespace-separated
scalars in row-major order. Complex entries are written as ``re im`` pairs.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ShapeError
from .matrix_core import as_matrix

__all__ = ["MatrixFormatError", "format_matrix", "parse_matrix", "read_matrix", "write_matrix"]


class MatrixFormatError(ShapeError):
    pass


def parse_matrix(text: str) -> np.ndarray:
    tokens: list[str] = []
    header = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = line.split()
            continue
        tokens.extend(line.split())
    if header is None or len(header) != 3:
        raise MatrixFormatError("missing '<rows> <cols> <field>' header")
    try:
        rows, cols = int(header[0]), int(header[1])
    except ValueError as exc:
        raise MatrixFormatError(f"bad header {' '.join(header)!r}") from exc
    field = header[2].lower()
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"dimensions must be positive, got {rows}x{cols}")
    if field not in ("real", "complex"):
        raise MatrixFormatError(f"field must be 'real' or 'complex', got {field!r}")
    per = 2 if field == "complex" else 1
    if len(tokens) != rows * cols * per:
        raise MatrixFormatError(f"expected {rows * cols * per} scalars, found {len(tokens)}")
    try:
        vals = np.array([float(t) for t in tokens])
    except ValueError as exc:
        raise MatrixFormatError(f"non-numeric entry: {exc}") from exc
    if field == "complex":
        vals = vals[0::2] + 1j * vals[1::2]
    return as_matrix(vals.reshape(rows, cols))


def format_matrix(a, field: str | None = None, comment: str | None = None) -> str:
    """Render `a` in the text format, using shortest round-trip decimals."""
    a = as_matrix(a)
    if field is None:
        field = "real" if not np.any(a.imag) else "complex"
    rows, cols = a.shape
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{rows} {cols} {field}")
    for row in a:
        if field == "real":
            out.append(" ".join(repr(float(x.real)) for x in row))
        else:
            out.append("  ".join(f"{float(x.real)!r} {float(x.imag)!r}" for x in row))
    return "\n".join(out) + "\n"


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path: str | os.PathLike, a, field: str | None = None, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(a, field, comment))
