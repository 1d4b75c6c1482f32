"""Brute-force references. Slow on purpose; they share only geometry predicates with the fast paths."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import MissingBoundaryEdge, SizeMismatch
from .geometry import Polygon, is_diagonal


def _orient_table(px, py, ax, ay, bx, by):
    return np.sign((bx - ax) * (py - ay) - (by - ay) * (px - ax))


def visibility_graph(P: Polygon) -> np.ndarray:
    """n x n boolean matrix: edge or diagonal.

    Same test as :func:`is_diagonal` (no vertex on the open segment, no proper
    crossing, strict interior cone at both ends), vectorised over all pairs.
    """
    n = P.n
    span = max(max(abs(c) for c in p) for p in P.points)
    dtype = np.int64 if span < (1 << 29) else object
    x = np.array([p[0] for p in P.points], dtype=dtype)
    y = np.array([p[1] for p in P.points], dtype=dtype)
    nx, ny = np.roll(x, -1), np.roll(y, -1)
    idx = np.arange(n)
    # edge k runs k -> k+1; side[k, j] = orientation of vertex j w.r.t. edge k
    side = _orient_table(x[None, :], y[None, :], x[:, None], y[:, None], nx[:, None], ny[:, None])
    prev_x, prev_y = np.roll(x, 1), np.roll(y, 1)
    convex = _orient_table(prev_x, prev_y, x, y, nx, ny) >= 0
    # the segment test is symmetric, so only rows j > i are computed
    free = np.zeros((n, n), dtype=bool)
    cone = np.zeros((n, n), dtype=bool)
    for i in range(n):
        js = idx[i + 1 :]
        xj, yj = x[js][:, None], y[js][:, None]
        # o[r, k] = orientation(P[i], P[js[r]], P[k])
        o = _orient_table(x[None, :], y[None, :], x[i], y[i], xj, yj)
        # k strictly inside segment i-j: collinear and (k - i).(j - k) > 0
        dot_a = (x[None, :] - x[i]) * (xj - x[None, :]) + (y[None, :] - y[i]) * (yj - y[None, :])
        blocked = ((o == 0) & (dot_a > 0)).any(axis=1)
        o_next = np.roll(o, -1, axis=1)
        s_i = side[:, i]
        crossing = (o * o_next < 0) & (s_i[None, :] * side.T[js] < 0)
        incident = (idx[None, :] == i) | (idx[None, :] == js[:, None]) | ((idx[None, :] + 1) % n == i) | ((idx[None, :] + 1) % n == js[:, None])
        crossing &= ~incident
        blocked |= crossing.any(axis=1)
        free[i, js] = ~blocked
        # interior cone at i towards every j
        a0x, a0y, a1x, a1y = prev_x[i], prev_y[i], nx[i], ny[i]
        left_prev = _orient_table(a0x, a0y, x[i], y[i], x, y) > 0
        right_next = _orient_table(a1x, a1y, x, y, x[i], y[i]) > 0
        if convex[i]:
            cone[i] = left_prev & right_next
        else:
            cone[i] = ~((_orient_table(a1x, a1y, x[i], y[i], x, y) >= 0) & (_orient_table(a0x, a0y, x, y, x[i], y[i]) >= 0))
    free |= free.T
    G = free & cone & cone.T
    G[idx, (idx + 1) % n] = True
    G[(idx + 1) % n, idx] = True
    G[idx, idx] = False
    return G


def visibility_graph_slow(P: Polygon) -> np.ndarray:
    n = P.n
    G = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            G[i, j] = G[j, i] = P.adjacent(i, j) or is_diagonal(P, (i, j))
    return G


def naive_rotation_set(P: Polygon, T, Q: Polygon) -> set[int]:
    """All s such that every diagonal (i, j) of T maps to a diagonal (i+s, j+s) of Q."""
    n = P.n
    if Q.n != n:
        raise SizeMismatch(f"{n} != {Q.n}")
    G = visibility_graph(Q)
    return {s for s in range(n) if all(G[(i + s) % n, (j + s) % n] for i, j in T.diagonals)}


def check_boundary(A) -> None:
    n = len(A)
    for i in range(n):
        if not A[i][(i + 1) % n]:
            raise MissingBoundaryEdge(i)


def cubic_dp(A) -> np.ndarray:
    """Boolean interval DP in order of increasing length j - i."""
    A = np.asarray(A, dtype=bool)
    check_boundary(A)
    n = len(A)
    B = np.zeros((n, n), dtype=bool)
    for i in range(n - 1):
        B[i, i + 1] = True
    for length in range(2, n):
        for i in range(n - length):
            j = i + length
            B[i, j] = bool(A[i, j]) and any(B[i, k] and B[k, j] for k in range(i + 1, j))
    return B


def recursive_count(A) -> int:
    """Number of triangulations of the convex n-gon using only edges of A."""
    A = np.asarray(A, dtype=bool)
    check_boundary(A)
    n = len(A)

    @lru_cache(maxsize=None)
    def count(i: int, j: int) -> int:
        if j == i + 1:
            return 1
        if not A[i, j]:
            return 0
        return sum(count(i, k) * count(k, j) for k in range(i + 1, j))

    return count(0, n - 1)
