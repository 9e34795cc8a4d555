"""Shared helpers for exhaustive enumeration over diagonal sign patterns.

Patterns are emitted in the fixed order produced by
``itertools.product([+1, -1], repeat=n)``: the all-plus vector comes first
and the all-minus vector last.  Ties in any argmax taken over this order
therefore resolve to the pattern with the most leading +1 entries.
"""

import numpy as np

CHUNK = 4096


def sign_chunks(n: int, chunk: int = CHUNK):
    """Yield (m, n) arrays of +-1 sign patterns covering all 2^n vertices."""
    total = 1 << n
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)
    for start in range(0, total, chunk):
        ks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = (ks[:, None] >> shifts[None, :]) & 1
        yield 1.0 - 2.0 * bits.astype(float)


def binary_chunks(n: int, chunk: int = CHUNK):
    """Yield (m, n) arrays of 0/1 patterns, all-zeros first."""
    total = 1 << n
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64)
    for start in range(0, total, chunk):
        ks = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = (ks[:, None] >> shifts[None, :]) & 1
        yield bits.astype(float)


def shifted_batch(A: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Stack of A - diag(d) for every row d of D."""
    m, n = D.shape
    out = np.broadcast_to(A, (m, n, n)).copy()
    idx = np.arange(n)
    out[:, idx, idx] -= D
    return out
