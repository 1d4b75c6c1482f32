"""Exact integer predicates and simple-polygon validation.

Every decision in the package goes through :func:`cross`, so the global
:data:`counter` doubles as the instrumentation hook for predicate budgets.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

COORD_LIMIT = 1 << 30


class Point(NamedTuple):
    x: int
    y: int


class PolygonError(ValueError):
    """Base class for rejected polygon input."""


class TooFewVertices(PolygonError):
    def __init__(self, n: int):
        super().__init__(f"TooFewVertices({n})")
        self.n = n


class CoordinateOutOfRange(PolygonError):
    def __init__(self, i: int):
        super().__init__(f"CoordinateOutOfRange({i})")
        self.i = i


class NotSimple(PolygonError):
    def __init__(self, i: int, j: int):
        super().__init__(f"NotSimple({i},{j})")
        self.i, self.j = i, j


class DuplicateVertex(PolygonError):
    def __init__(self, i: int, j: int):
        super().__init__(f"DuplicateVertex({i},{j})")
        self.i, self.j = i, j


class DegenerateSpike(PolygonError):
    def __init__(self, i: int):
        super().__init__(f"DegenerateSpike({i})")
        self.i = i


class CollinearVertex(PolygonError):
    def __init__(self, i: int):
        super().__init__(f"CollinearVertex({i})")
        self.i = i


class AdjacentPair(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"AdjacentPair({i},{j})")
        self.i, self.j = i, j


class PredicateCounter:
    """Counts evaluations of :func:`cross` (and hence :func:`orientation`)."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def reset(self) -> int:
        value, self.count = self.count, 0
        return value


counter = PredicateCounter()


def cross(a, b, c):
    """Twice the signed area of triangle abc; works for ints and Fractions."""
    counter.count += 1
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def orientation(a, b, c) -> int:
    """+1 for a left turn a->b->c, -1 for a right turn, 0 if collinear."""
    return _sign(cross(a, b, c))


def on_segment(p, q, r) -> bool:
    """True if r, already known to be collinear with pq, lies on the closed segment."""
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def strictly_between(p, q, r) -> bool:
    """True if collinear r lies on the open segment pq."""
    return on_segment(p, q, r) and r != p and r != q


class SegmentRelation(enum.Enum):
    DISJOINT = "disjoint"
    CROSSING = "proper crossing"
    TOUCH = "endpoint touch"
    OVERLAP = "collinear overlap"


def classify_segments(p, q, r, s) -> SegmentRelation:
    o1 = orientation(p, q, r)
    o2 = orientation(p, q, s)
    if o1 == 0 and o2 == 0:
        axis = 0 if p[0] != q[0] else 1
        lo1, hi1 = sorted((p[axis], q[axis]))
        lo2, hi2 = sorted((r[axis], s[axis]))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo < hi:
            return SegmentRelation.OVERLAP
        if lo == hi:
            return SegmentRelation.TOUCH
        return SegmentRelation.DISJOINT
    o3 = orientation(r, s, p)
    o4 = orientation(r, s, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return SegmentRelation.CROSSING
    if (
        (o1 == 0 and on_segment(p, q, r))
        or (o2 == 0 and on_segment(p, q, s))
        or (o3 == 0 and on_segment(r, s, p))
        or (o4 == 0 and on_segment(r, s, q))
    ):
        return SegmentRelation.TOUCH
    return SegmentRelation.DISJOINT


def segments_properly_intersect(p, q, r, s) -> bool:
    """True iff the open segments pq and rs share a point."""
    return classify_segments(p, q, r, s) in (SegmentRelation.CROSSING, SegmentRelation.OVERLAP)


def _closed_segments_meet(p, q, r, s) -> bool:
    if max(p[0], q[0]) < min(r[0], s[0]) or max(r[0], s[0]) < min(p[0], q[0]):
        return False
    if max(p[1], q[1]) < min(r[1], s[1]) or max(r[1], s[1]) < min(p[1], q[1]):
        return False
    return classify_segments(p, q, r, s) is not SegmentRelation.DISJOINT


@dataclass(frozen=True)
class Polygon:
    """A validated simple polygon in counter-clockwise order.

    ``reversed`` records whether the input had to be flipped from clockwise.
    Indexing wraps modulo ``n``.
    """

    points: tuple[Point, ...]
    reversed: bool = False

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i % len(self.points)]

    def adjacent(self, i: int, j: int) -> bool:
        return (i - j) % self.n in (1, self.n - 1)

    def doubled_area(self) -> int:
        return doubled_signed_area(self.points)


def doubled_signed_area(points: Sequence) -> int:
    n = len(points)
    return sum(
        points[k][0] * points[(k + 1) % n][1] - points[(k + 1) % n][0] * points[k][1] for k in range(n)
    )


def validate_polygon(vertices: Sequence[Sequence[int]]) -> Polygon:
    """Check every polygon invariant and return a CCW :class:`Polygon`.

    Error indices refer to the input order. Clockwise input is reversed and
    flagged rather than rejected.
    """
    pts = [Point(int(v[0]), int(v[1])) for v in vertices]
    n = len(pts)
    if n < 3:
        raise TooFewVertices(n)
    for i, p in enumerate(pts):
        if abs(p.x) > COORD_LIMIT or abs(p.y) > COORD_LIMIT:
            raise CoordinateOutOfRange(i)
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise DuplicateVertex(seen[p], i)
        seen[p] = i
    for i in range(n):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
        if orientation(a, b, c) == 0:
            dot = (a.x - b.x) * (c.x - b.x) + (a.y - b.y) * (c.y - b.y)
            if dot > 0:
                raise DegenerateSpike(i)
            raise CollinearVertex(i)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if _closed_segments_meet(p, q, pts[j], pts[(j + 1) % n]):
                raise NotSimple(i, j)
    if doubled_signed_area(pts) < 0:
        return Polygon(tuple(reversed(pts)), reversed=True)
    return Polygon(tuple(pts))


def is_reflex(P: Polygon, i: int) -> bool:
    o = orientation(P[i - 1], P[i], P[i + 1])
    if o == 0:
        raise CollinearVertex(i % P.n)
    return o < 0


def reflex_vertices(P: Polygon) -> list[int]:
    return [i for i in range(P.n) if is_reflex(P, i)]


def in_cone(P: Polygon, i: int, target) -> bool:
    """Does the direction from P[i] to target point strictly into the interior angle at i?"""
    a0, a, a1 = P[i - 1], P[i], P[i + 1]
    if orientation(a, a1, a0) >= 0:
        return orientation(a, target, a0) > 0 and orientation(target, a, a1) > 0
    return not (orientation(a, target, a1) >= 0 and orientation(target, a, a0) >= 0)


def is_diagonal(P: Polygon, d: tuple[int, int]) -> bool:
    """Reference test: does the open segment P[i]P[j] lie in the polygon's interior?"""
    n = P.n
    i, j = d[0] % n, d[1] % n
    if i == j:
        raise ValueError("diagonal endpoints coincide")
    if P.adjacent(i, j):
        raise AdjacentPair(i, j)
    a, b = P[i], P[j]
    for k in range(n):
        if k != i and k != j:
            c = P[k]
            if orientation(a, b, c) == 0 and strictly_between(a, b, c):
                return False
    for k in range(n):
        k1 = (k + 1) % n
        if k in (i, j) or k1 in (i, j):
            continue
        if classify_segments(a, b, P[k], P[k1]) is SegmentRelation.CROSSING:
            return False
    return in_cone(P, i, b) and in_cone(P, j, a)


def line_intersection(p, q, r, s) -> tuple[Fraction, Fraction] | None:
    """Exact intersection point of lines pq and rs, or None if parallel."""
    denom = (q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0])
    if denom == 0:
        return None
    t = Fraction((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0]), denom)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


class RayHit(NamedTuple):
    edge: int
    point: tuple[Fraction, Fraction]
    vertex: int | None


def ray_shoot(P: Polygon, origin: int, direction: tuple[int, int]) -> RayHit:
    """First boundary point hit by the open ray from P[origin].

    Linear scan over the edges not incident to the origin. When the hit is a
    vertex h, the reported edge is (h, h+1) and ``vertex`` is set.
    """
    n = P.n
    origin %= n
    o = P[origin]
    dx, dy = direction
    if dx == 0 and dy == 0:
        raise ValueError("zero direction")
    best_t: Fraction | None = None
    best_edge = -1
    for k in range(n):
        k1 = (k + 1) % n
        if k == origin or k1 == origin:
            continue
        e0, e1 = P[k], P[k1]
        ex, ey = e1[0] - e0[0], e1[1] - e0[1]
        wx, wy = e0[0] - o[0], e0[1] - o[1]
        denom = dx * ey - dy * ex
        if denom == 0:
            if wx * dy - wy * dx != 0:
                continue
            # collinear with the ray: nearest endpoint ahead of the origin
            for px, py in (e0, e1):
                num = (px - o[0]) * dx + (py - o[1]) * dy
                if num > 0:
                    t = Fraction(num, dx * dx + dy * dy)
                    if best_t is None or t < best_t:
                        best_t, best_edge = t, k
            continue
        t_num = wx * ey - wy * ex
        u_num = wx * dy - wy * dx
        if denom < 0:
            denom, t_num, u_num = -denom, -t_num, -u_num
        if t_num <= 0 or u_num < 0 or u_num > denom:
            continue
        t = Fraction(t_num, denom)
        if best_t is None or t < best_t:
            best_t, best_edge = t, k
    if best_t is None:
        raise AssertionError(f"ray from vertex {origin} hit no edge")
    point = (o[0] + best_t * dx, o[1] + best_t * dy)
    for h in (best_edge, (best_edge + 1) % n):
        if point == (P[h][0], P[h][1]):
            return RayHit(h, point, h)
    return RayHit(best_edge, point, None)
