"""Constant-time lowest common ancestor via Euler tour and a sparse table."""
from __future__ import annotations

from typing import Sequence


class LcaIndex:
    """LCA queries on a rooted tree given as child lists.

    Preprocessing is O(N log N); each query is two table lookups.
    """

    def __init__(self, children: Sequence[Sequence[int]], root: int = 0):
        n = len(children)
        self.depth = [0] * n
        self.first = [0] * n
        tour: list[int] = []
        stack: list[tuple[int, int]] = [(root, 0)]
        while stack:
            node, k = stack.pop()
            if k == 0:
                self.first[node] = len(tour)
            tour.append(node)
            kids = children[node]
            if k < len(kids):
                stack.append((node, k + 1))
                child = kids[k]
                self.depth[child] = self.depth[node] + 1
                stack.append((child, 0))
        self.tour = tour
        base = [(self.depth[v], v) for v in tour]
        self.table = [base]
        span = 1
        while 2 * span <= len(base):
            prev = self.table[-1]
            self.table.append([min(prev[i], prev[i + span]) for i in range(len(base) - 2 * span + 1)])
            span *= 2

    def __call__(self, u: int, v: int) -> int:
        lo, hi = self.first[u], self.first[v]
        if lo > hi:
            lo, hi = hi, lo
        level = (hi - lo + 1).bit_length() - 1
        row = self.table[level]
        return min(row[lo], row[hi - (1 << level) + 1])[1]


def naive_lca(parent: Sequence[int | None], depth: Sequence[int], u: int, v: int) -> int:
    while depth[u] > depth[v]:
        u = parent[u]
    while depth[v] > depth[u]:
        v = parent[v]
    while u != v:
        u, v = parent[u], parent[v]
    return u
