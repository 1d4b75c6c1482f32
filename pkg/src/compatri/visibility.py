"""Vertex-to-vertex visibility queries in O(1) after O(n log n)-style preprocessing.

The polygon is triangulated and split recursively by balanced diagonals. For
every splitting diagonal d = ab and every vertex v strictly below it we store
the part of d that v sees inside its half of the region. Two vertices v, w
whose lowest common region is split by d see each other iff vw crosses the
relative interior of d at a point both of them see.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .geometry import Polygon, cross, in_cone, orientation, strictly_between, SegmentRelation, classify_segments
from .lca import LcaIndex
from .triangulation import DecompositionTree, Node, Triangulation, build_decomposition, canonical, triangulate


class NotASplitter(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class SameVertex(ValueError):
    pass


@dataclass(frozen=True)
class ChordInterval:
    """Visible part of a chord ab, parameterised by t in [0, 1] from a to b.

    The relative interior part is the open interval (lo, hi); the endpoints
    are visible iff ``sees_a`` / ``sees_b``. Interior interval ends are always
    open because they come from sight lines grazing a polygon vertex.
    """

    chord: tuple[int, int]
    lo: Fraction
    hi: Fraction
    sees_a: bool
    sees_b: bool

    @property
    def empty(self) -> bool:
        return self.lo >= self.hi and not self.sees_a and not self.sees_b

    def contains(self, t: Fraction) -> bool:
        if t == 0:
            return self.sees_a
        if t == 1:
            return self.sees_b
        return self.lo < t < self.hi


def _chord_parameter(v, p, a, b) -> Fraction:
    """Parameter along ab where the line through v and p meets it."""
    da = cross(v, p, a)
    db = cross(v, p, b)
    return Fraction(da, da - db)


def shortest_path_parents(T: Triangulation, tris: Iterable[int], source: int) -> dict[int, int | None]:
    """Shortest-path tree from a vertex inside the sub-polygon formed by ``tris``.

    Funnel splitting over the dual tree. Vertices lying exactly on a sight line
    become path vertices, so ``parent[v] == source`` means the open segment
    from source to v touches no vertex.
    """
    P = T.polygon
    members = set(tris)
    parent: dict[int, int | None] = {source: None}
    stack = []
    for t in members:
        tri = T.triangles[t]
        if source not in tri:
            continue
        k = tri.index(source)
        x, y = tri[(k + 1) % 3], tri[(k + 2) % 3]
        parent[x] = source
        parent[y] = source
        stack.append((t, y, x, [source, y], [source, x]))
    neighbors = T.neighbors
    while stack:
        came_from, p, q, left, right = stack.pop()
        side = canonical(p, q)
        nxt = None
        for other, shared in neighbors[came_from]:
            if shared == side and other in members:
                nxt = other
                break
        if nxt is None:
            continue
        r = next(v for v in T.triangles[nxt] if v != p and v != q)
        pr = P[r]
        where, idx = "apex", 0
        for i in range(len(left) - 1, 0, -1):
            if orientation(P[left[i - 1]], P[left[i]], pr) >= 0:
                where, idx = "left", i
                break
        else:
            for i in range(len(right) - 1, 0, -1):
                if orientation(P[right[i - 1]], P[right[i]], pr) <= 0:
                    where, idx = "right", i
                    break
        if where == "left":
            parent[r] = left[idx]
            stack.append((nxt, p, r, left[idx:], [left[idx], r]))
            stack.append((nxt, r, q, left[: idx + 1] + [r], right))
        elif where == "right":
            parent[r] = right[idx]
            stack.append((nxt, p, r, left, right[: idx + 1] + [r]))
            stack.append((nxt, r, q, [right[idx], r], right[idx:]))
        else:
            parent[r] = left[0]
            stack.append((nxt, p, r, left, [left[0], r]))
            stack.append((nxt, r, q, [left[0], r], right))
    return parent


def compute_chord_intervals(tree: DecompositionTree, node_id: int) -> dict[int, ChordInterval]:
    """Visible interval on the node's splitter for every region vertex except its endpoints."""
    node = tree.nodes[node_id]
    if node.splitter is None:
        raise NotASplitter(f"node {node_id} is a leaf")
    T = tree.triangulation
    P = T.polygon
    a, b = node.splitter
    pa, pb = P[a], P[b]
    out: dict[int, ChordInterval] = {}
    for child_id in (node.inner, node.outer):
        child = tree.nodes[child_id]
        from_a = shortest_path_parents(T, child.triangles, a)
        from_b = shortest_path_parents(T, child.triangles, b)
        for v in child.vertices:
            if v == a or v == b:
                continue
            ua, ub = from_a[v], from_b[v]
            sees_a, sees_b = ua == a, ub == b
            if ua == ub:
                out[v] = ChordInterval((a, b), Fraction(1), Fraction(0), sees_a, sees_b)
                continue
            pv = P[v]
            lo = Fraction(0) if sees_a else _chord_parameter(pv, P[ua], pa, pb)
            hi = Fraction(1) if sees_b else _chord_parameter(pv, P[ub], pa, pb)
            if not (0 <= lo <= 1 and 0 <= hi <= 1):
                raise AssertionError(f"chord parameter out of range for vertex {v} on {(a, b)}")
            out[v] = ChordInterval((a, b), lo, hi, sees_a, sees_b)
    return out


def _region_polygon(P: Polygon, vertices: list[int]) -> Polygon:
    return Polygon(tuple(P[v] for v in vertices))


def sees_inside(region: Polygon, k: int, x) -> bool:
    """Brute force: open segment from region vertex k to point x avoids the region boundary
    and starts into the interior angle at k."""
    pv = region[k]
    m = region.n
    for z in range(m):
        if z != k:
            pz = region[z]
            if pz != x and orientation(pv, x, pz) == 0 and strictly_between(pv, x, pz):
                return False
    for e in range(m):
        e1 = (e + 1) % m
        if e == k or e1 == k:
            continue
        if classify_segments(pv, x, region[e], region[e1]) is SegmentRelation.CROSSING:
            return False
    return in_cone(region, k, x)


def chord_point(P: Polygon, a: int, b: int, t: Fraction):
    pa, pb = P[a], P[b]
    return (pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]))


def brute_force_chord_intervals(tree: DecompositionTree, node_id: int) -> dict[int, ChordInterval]:
    """Quadratic per-region reference for :func:`compute_chord_intervals`.

    Visibility along the chord can only change where a sight line through a
    region vertex meets it, so testing those parameters and the midpoints
    between them decides the visible set exactly.
    """
    node = tree.nodes[node_id]
    if node.splitter is None:
        raise NotASplitter(f"node {node_id} is a leaf")
    P = tree.triangulation.polygon
    a, b = node.splitter
    pa, pb = P[a], P[b]
    out: dict[int, ChordInterval] = {}
    for child_id in (node.inner, node.outer):
        child = tree.nodes[child_id]
        region = _region_polygon(P, child.vertices)
        pos = {v: k for k, v in enumerate(child.vertices)}
        for v in child.vertices:
            if v == a or v == b:
                continue
            pv = P[v]
            cuts = {Fraction(0), Fraction(1)}
            for z in child.vertices:
                if z == v:
                    continue
                da, db = cross(pv, P[z], pa), cross(pv, P[z], pb)
                if da != db:
                    t = Fraction(da, da - db)
                    if 0 < t < 1:
                        cuts.add(t)
            cuts_sorted = sorted(cuts)
            samples = []
            for lo, hi in zip(cuts_sorted, cuts_sorted[1:]):
                samples.append((lo, True))
                samples.append(((lo + hi) / 2, False))
            samples.append((Fraction(1), True))

            def visible_at(t: Fraction) -> bool:
                if t == 0 and (P.adjacent(v, a) or pos[v] in ((pos[a] + 1) % region.n, (pos[a] - 1) % region.n)):
                    return True
                if t == 1 and (P.adjacent(v, b) or pos[v] in ((pos[b] + 1) % region.n, (pos[b] - 1) % region.n)):
                    return True
                return sees_inside(region, pos[v], chord_point(P, a, b, t))

            flags = [visible_at(t) for t, _ in samples]
            inner = [(t, is_cut, f) for (t, is_cut), f in zip(samples, flags) if 0 < t < 1]
            hits = [k for k, (_, _, f) in enumerate(inner) if f]
            if not hits:
                lo, hi = Fraction(1), Fraction(0)
            else:
                first, last = hits[0], hits[-1]
                if hits != list(range(first, last + 1)):
                    raise AssertionError(f"visible part of {(a, b)} from {v} is not one interval")
                if inner[first][1] or inner[last][1]:
                    raise AssertionError(f"visible part of {(a, b)} from {v} has a closed interior end")
                lo = inner[first - 1][0] if first > 0 else Fraction(0)
                hi = inner[last + 1][0] if last + 1 < len(inner) else Fraction(1)
            out[v] = ChordInterval((a, b), lo, hi, flags[0], flags[-1])
    return out


IntervalMethod = Callable[[DecompositionTree, int], Mapping[int, ChordInterval]]


class VisibilityIndex:
    """Answers "do vertices v and w see each other?" with a constant number of predicates."""

    def __init__(
        self,
        P: Polygon,
        triangulator: Callable[[Polygon], Triangulation] = triangulate,
        interval_method: IntervalMethod = compute_chord_intervals,
    ):
        self.polygon = P
        n = P.n
        self.n = n
        self.triangulation = triangulator(P)
        self.tree = build_decomposition(self.triangulation)
        nodes = self.tree.nodes
        children = [[c for c in (node.inner, node.outer) if c is not None] for node in nodes]
        self.lca = LcaIndex(children)
        self.depth = [node.depth for node in nodes]

        assoc: list[int | None] = [None] * n
        for node in sorted(nodes, key=lambda nd: nd.depth):
            if node.splitter is not None:
                for v in node.splitter:
                    if assoc[v] is None:
                        assoc[v] = node.id
        leaf_of = self.tree.leaf_of_triangle()
        for t, tri in enumerate(self.triangulation.triangles):
            for v in tri:
                if assoc[v] is None:
                    assoc[v] = leaf_of[t]
        self.assoc: list[int] = [a for a in assoc]  # type: ignore[misc]

        self.intervals: list[list[ChordInterval]] = [[] for _ in range(n)]
        for node in sorted(nodes, key=lambda nd: nd.depth):
            if node.splitter is None:
                continue
            wanted = [v for v in node.vertices if self.depth[self.assoc[v]] > node.depth]
            if not wanted:
                continue
            table = interval_method(self.tree, node.id)
            for v in wanted:
                record = self.intervals[v]
                assert len(record) == node.depth
                record.append(table[v])

    @property
    def stored_intervals(self) -> int:
        return sum(len(r) for r in self.intervals)

    def region(self, v: int, w: int) -> Node:
        return self.tree.nodes[self.lca(self.assoc[v], self.assoc[w])]

    def visible(self, v: int, w: int) -> bool:
        n = self.n
        if not (0 <= v < n and 0 <= w < n):
            raise IndexOutOfRange(f"vertex pair ({v},{w}) outside 0..{n - 1}")
        if v == w:
            raise SameVertex(f"({v},{w})")
        if (v - w) % n in (1, n - 1):
            return True
        node = self.tree.nodes[self.lca(self.assoc[v], self.assoc[w])]
        if node.splitter is None:
            return True
        a, b = node.splitter
        if v in (a, b) and w in (a, b):
            return True
        depth = node.depth
        if w in (a, b):
            v, w = w, v
        if v in (a, b):
            iw = self.intervals[w][depth]
            return iw.sees_a if v == a else iw.sees_b
        P = self.polygon
        pv, pw, pa, pb = P[v], P[w], P[a], P[b]
        sv, sw = cross(pa, pb, pv), cross(pa, pb, pw)
        if not ((sv > 0 and sw < 0) or (sv < 0 and sw > 0)):
            return False
        da, db = cross(pv, pw, pa), cross(pv, pw, pb)
        if not ((da > 0 and db < 0) or (da < 0 and db > 0)):
            return False
        t = Fraction(da, da - db)
        return self.intervals[v][depth].contains(t) and self.intervals[w][depth].contains(t)


def build_index(P: Polygon, **kwargs) -> VisibilityIndex:
    return VisibilityIndex(P, **kwargs)


def visible(index: VisibilityIndex, v: int, w: int) -> bool:
    return index.visible(v, w)
