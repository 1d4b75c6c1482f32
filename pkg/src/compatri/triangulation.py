"""Ear-clipping triangulation, diagonal fans and the balanced decomposition tree."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .geometry import Polygon, orientation

Pair = tuple[int, int]
Triangle = tuple[int, int, int]


def canonical(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Triangulation:
    polygon: Polygon
    diagonals: frozenset[Pair]
    triangles: tuple[Triangle, ...]
    # neighbors[t] = list of (other triangle, shared diagonal)
    neighbors: tuple[tuple[tuple[int, Pair], ...], ...] = field(repr=False, compare=False, default=())

    @property
    def n(self) -> int:
        return self.polygon.n


def from_triangles(P: Polygon, triangles: list[Triangle]) -> Triangulation:
    """Assemble a Triangulation (diagonal set plus dual tree) from CCW triangles."""
    by_side: dict[Pair, list[int]] = {}
    for t, tri in enumerate(triangles):
        for k in range(3):
            side = canonical(tri[k], tri[(k + 1) % 3])
            by_side.setdefault(side, []).append(t)
    diagonals = set()
    neighbors: list[list[tuple[int, Pair]]] = [[] for _ in triangles]
    for side, owners in by_side.items():
        if P.adjacent(*side):
            continue
        if len(owners) != 2:
            raise ValueError(f"side {side} is shared by {len(owners)} triangles")
        diagonals.add(side)
        t1, t2 = owners
        neighbors[t1].append((t2, side))
        neighbors[t2].append((t1, side))
    return Triangulation(
        P, frozenset(diagonals), tuple(triangles), tuple(tuple(nb) for nb in neighbors)
    )


def from_diagonals(P: Polygon, diagonals) -> Triangulation:
    """Rebuild triangles from a diagonal set by walking each face of the planar graph."""
    n = P.n
    diags = {canonical(i % n, j % n) for i, j in diagonals}
    if len(diags) != n - 3:
        raise ValueError(f"expected {n - 3} diagonals, got {len(diags)}")
    adj: list[set[int]] = [{(v - 1) % n, (v + 1) % n} for v in range(n)]
    for i, j in diags:
        if i == j or P.adjacent(i, j):
            raise ValueError(f"({i},{j}) is not a diagonal pair")
        adj[i].add(j)
        adj[j].add(i)
    # around each vertex, neighbours sorted by CCW offset give consecutive triangle corners
    triangles = set()
    for v in range(n):
        ring = sorted(adj[v], key=lambda w: (w - v) % n)
        for a, b in zip(ring, ring[1:]):
            triangles.add(tuple(sorted((v, a, b))))
    tris = []
    for tri in sorted(triangles):
        a, b, c = tri
        if not (b in adj[a] and c in adj[b] and c in adj[a]):
            raise ValueError(f"diagonals do not close triangle {tri}")
        tris.append(tri)
    if len(tris) != n - 2:
        raise ValueError("diagonal set is not a triangulation")
    return from_triangles(P, tris)


def _ear_search_order(n: int) -> list[int]:
    return list(range(1, n)) + [0]


def triangulate(P: Polygon) -> Triangulation:
    """Deterministic ear clipping, O(n^2).

    The ear clipped next is the first available one in index order 1, 2, ...,
    n-1, 0, so vertex 0 is clipped last and tends to become a fan centre.
    """
    n = P.n
    prev = [(i - 1) % n for i in range(n)]
    nxt = [(i + 1) % n for i in range(n)]
    alive = [True] * n
    order = _ear_search_order(n)

    def is_ear(v: int) -> bool:
        u, w = prev[v], nxt[v]
        a, b, c = P[u], P[v], P[w]
        if orientation(a, b, c) <= 0:
            return False
        x = nxt[w]
        while x != u:
            p = P[x]
            o1 = orientation(a, b, p)
            o2 = orientation(b, c, p)
            o3 = orientation(c, a, p)
            if o1 >= 0 and o2 >= 0 and o3 >= 0:
                return False
            x = nxt[x]
        return True

    ear = [is_ear(v) for v in range(n)]
    triangles: list[Triangle] = []
    remaining = n
    while remaining > 3:
        v = next((v for v in order if alive[v] and ear[v]), None)
        if v is None:
            raise AssertionError("no ear found; polygon is not simple")
        u, w = prev[v], nxt[v]
        triangles.append((u, v, w))
        alive[v] = False
        nxt[u], prev[w] = w, u
        remaining -= 1
        ear[u], ear[w] = is_ear(u), is_ear(w)
    v = next(v for v in order if alive[v])
    triangles.append((prev[v], v, nxt[v]))
    return from_triangles(P, triangles)


def diagonal_fans(T: Triangulation) -> list[list[int]]:
    """Per vertex, the sorted CCW offsets (j - i) mod n of its incident diagonals."""
    n = T.n
    fans: list[list[int]] = [[] for _ in range(n)]
    for i, j in T.diagonals:
        fans[i].append((j - i) % n)
        fans[j].append((i - j) % n)
    for fan in fans:
        fan.sort()
    return fans


@dataclass
class Node:
    id: int
    parent: int | None
    depth: int
    triangles: list[int]
    vertices: list[int]
    splitter: Pair | None = None
    # inner holds the vertices strictly between the splitter's endpoints
    inner: int | None = None
    outer: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.splitter is None


@dataclass
class DecompositionTree:
    triangulation: Triangulation
    nodes: list[Node]
    splitter_node: dict[Pair, int]

    @property
    def root(self) -> Node:
        return self.nodes[0]

    @property
    def height(self) -> int:
        return max(node.depth for node in self.nodes)

    def leaf_of_triangle(self) -> dict[int, int]:
        return {node.triangles[0]: node.id for node in self.nodes if node.is_leaf}


def _region_vertices(T: Triangulation, tris) -> list[int]:
    return sorted({v for t in tris for v in T.triangles[t]})


def best_split(T: Triangulation, tris: list[int]) -> tuple[Pair, list[int], list[int]]:
    """Centroid edge of the dual subtree spanned by ``tris``.

    Minimises the larger side's triangle count, ties broken by the smaller
    canonical diagonal. Returns the diagonal and the two triangle lists.
    """
    members = set(tris)
    root = tris[0]
    parent: dict[int, tuple[int, Pair] | None] = {root: None}
    order = [root]
    for t in order:
        for other, side in T.neighbors[t]:
            if other in members and other not in parent:
                parent[other] = (t, side)
                order.append(other)
    size = {t: 1 for t in order}
    for t in reversed(order[1:]):
        size[parent[t][0]] += size[t]
    total = len(order)
    best_key = None
    best_child = -1
    for t in order[1:]:
        key = (max(size[t], total - size[t]), parent[t][1])
        if best_key is None or key < best_key:
            best_key, best_child = key, t
    assert best_key is not None
    side = best_key[1]
    children: dict[int, list[int]] = {}
    for t in order[1:]:
        children.setdefault(parent[t][0], []).append(t)
    below = {best_child}
    stack = [best_child]
    while stack:
        for t in children.get(stack.pop(), ()):
            below.add(t)
            stack.append(t)
    first = [t for t in tris if t in below]
    second = [t for t in tris if t not in below]
    return side, first, second


def build_decomposition(T: Triangulation, check: Callable[[int, int], None] | None = None) -> DecompositionTree:
    """Recursively split the triangulation at dual-tree centroid edges."""
    nodes: list[Node] = []
    splitter_node: dict[Pair, int] = {}
    all_tris = list(range(len(T.triangles)))
    nodes.append(Node(0, None, 0, all_tris, _region_vertices(T, all_tris)))
    stack = [0]
    while stack:
        node = nodes[stack.pop()]
        total = len(node.triangles)
        if total == 1:
            continue
        (a, b), first, second = best_split(T, node.triangles)
        larger = max(len(first), len(second))
        if larger > math.ceil(2 * total / 3):
            raise AssertionError(f"split of {total} triangles leaves {larger} on one side")
        if check is not None:
            check(total, larger)
        node.splitter = (a, b)
        splitter_node[(a, b)] = node.id
        first_vertices = _region_vertices(T, first)
        if any(a < v < b for v in first_vertices):
            inner_tris, outer_tris = first, second
        else:
            inner_tris, outer_tris = second, first
        for attr, tris in (("inner", inner_tris), ("outer", outer_tris)):
            child = Node(len(nodes), node.id, node.depth + 1, tris, _region_vertices(T, tris))
            nodes.append(child)
            setattr(node, attr, child.id)
            stack.append(child.id)
    return DecompositionTree(T, nodes, splitter_node)


def height_bound(n: int) -> float:
    return 2 * math.log2(n) + 2
