"""Plain-text matrix and vector files.

Format: the first non-blank line holds the dimensions ("rows cols" for a
matrix, "n" for a vector); the remaining whitespace-separated tokens are
the entries in row-major order.  Scientific notation is accepted.  The
writer emits shortest round-trip decimal forms, so write -> parse is
bit-exact.
"""

from pathlib import Path

import numpy as np

from .densecore import as_matrix, as_vector
from .errors import ParseError

__all__ = [
    "parse_matrix",
    "parse_vector",
    "loads_matrix",
    "loads_vector",
    "dumps_matrix",
    "dumps_vector",
    "write_matrix",
    "write_vector",
]


def _tokens(text: str):
    """Yield (token, line, column), 1-based positions."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        col = 1
        for raw in line.split():
            col = line.index(raw, col - 1) + 1
            yield raw, lineno, col
            col += len(raw)


def _read_int(tok_iter, what: str) -> int:
    try:
        tok, line, col = next(tok_iter)
    except StopIteration:
        raise ParseError(f"missing {what}") from None
    try:
        value = int(tok)
    except ValueError:
        raise ParseError(f"invalid {what} {tok!r}", line, col) from None
    if value <= 0:
        raise ParseError(f"{what} must be positive, got {value}", line, col)
    return value


def _read_floats(tok_iter, count: int) -> list[float]:
    values = []
    last = (None, None)
    for tok, line, col in tok_iter:
        last = (line, col)
        if len(values) == count:
            raise ParseError(f"unexpected extra entry {tok!r}", line, col)
        try:
            values.append(float(tok))
        except ValueError:
            raise ParseError(f"invalid number {tok!r}", line, col) from None
    if len(values) < count:
        raise ParseError(
            f"expected {count} entries, found {len(values)}", last[0], last[1]
        )
    return values


def loads_matrix(text: str) -> np.ndarray:
    tok_iter = _tokens(text)
    rows = _read_int(tok_iter, "row count")
    cols = _read_int(tok_iter, "column count")
    values = _read_floats(tok_iter, rows * cols)
    return as_matrix(np.array(values, dtype=float).reshape(rows, cols))


def loads_vector(text: str) -> np.ndarray:
    tok_iter = _tokens(text)
    n = _read_int(tok_iter, "length")
    values = _read_floats(tok_iter, n)
    return as_vector(np.array(values, dtype=float))


def parse_matrix(path) -> np.ndarray:
    return loads_matrix(Path(path).read_text())


def parse_vector(path) -> np.ndarray:
    return loads_vector(Path(path).read_text())


def dumps_matrix(A) -> str:
    A = as_matrix(A)
    lines = [f"{A.shape[0]} {A.shape[1]}"]
    lines += [" ".join(repr(float(v)) for v in row) for row in A]
    return "\n".join(lines) + "\n"


def dumps_vector(v) -> str:
    v = as_vector(v)
    return f"{v.size}\n" + " ".join(repr(float(x)) for x in v) + "\n"


def write_matrix(A, path) -> None:
    Path(path).write_text(dumps_matrix(A))


def write_vector(v, path) -> None:
    Path(path).write_text(dumps_vector(v))
