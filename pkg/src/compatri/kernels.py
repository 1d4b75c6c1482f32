"""Matrix multiplication kernels for block updates.

All kernels take two square numpy blocks of equal size and return their
integer product; they must agree exactly, object dtype included.
"""
from __future__ import annotations

import numpy as np


def schoolbook(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Classical product (numpy's matmul, exact for int64 and object arrays)."""
    return X @ Y


def strassen(X: np.ndarray, Y: np.ndarray, cutoff: int = 8) -> np.ndarray:
    """Strassen's seven-product recursion; falls back to the classical product
    below ``cutoff`` or for odd sizes."""
    size = X.shape[0]
    if size <= cutoff or size % 2:
        return X @ Y
    h = size // 2
    a, b, c, d = X[:h, :h], X[:h, h:], X[h:, :h], X[h:, h:]
    e, f, g, k = Y[:h, :h], Y[:h, h:], Y[h:, :h], Y[h:, h:]
    p1 = strassen(a, f - k, cutoff)
    p2 = strassen(a + b, k, cutoff)
    p3 = strassen(c + d, e, cutoff)
    p4 = strassen(d, g - e, cutoff)
    p5 = strassen(a + d, e + k, cutoff)
    p6 = strassen(b - d, g + k, cutoff)
    p7 = strassen(a - c, e + f, cutoff)
    out = np.empty((size, size), dtype=np.result_type(X, Y))
    out[:h, :h] = p5 + p4 - p2 + p6
    out[:h, h:] = p1 + p2
    out[h:, :h] = p3 + p4
    out[h:, h:] = p1 + p5 - p3 - p7
    return out


def strassen_small(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Strassen recursing all the way down to 1x1 blocks."""
    return strassen(X, Y, cutoff=1)


def reference_multiply(X, Y) -> list[list[int]]:
    """Triple loop over Python ints; the independent check for the kernels."""
    n = len(X)
    m = len(Y[0])
    inner = len(Y)
    return [[sum(int(X[i][k]) * int(Y[k][j]) for k in range(inner)) for j in range(m)] for i in range(n)]


KERNELS = {"schoolbook": schoolbook, "strassen": strassen}
