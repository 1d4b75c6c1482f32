"""Random simple polygons: random integer points untangled by 2-opt moves."""
from __future__ import annotations

import math
import random

import numpy as np

from .geometry import Polygon, PolygonError, reflex_vertices, validate_polygon


def _random_points(n: int, rng: random.Random, reflex_fraction: float) -> list[tuple[int, int]]:
    radius = 10_000 + 200 * n
    points: set[tuple[int, int]] = set()
    while len(points) < n:
        angle = rng.random() * 2 * math.pi
        r = radius * (1 - reflex_fraction * rng.random())
        points.add((round(r * math.cos(angle)), round(r * math.sin(angle))))
    out = sorted(points)
    rng.shuffle(out)
    return out


def _nearest_neighbour_tour(pts: np.ndarray) -> list[int]:
    n = len(pts)
    left = set(range(1, n))
    tour = [0]
    while left:
        last = pts[tour[-1]]
        cand = np.fromiter(left, dtype=np.int64)
        d = ((pts[cand] - last) ** 2).sum(axis=1)
        nxt = int(cand[np.argmin(d)])
        tour.append(nxt)
        left.remove(nxt)
    return tour


def untangle(pts: np.ndarray, tour: list[int], max_moves: int) -> list[int] | None:
    """Apply 2-opt reversals until no two edges properly cross; None if the cap is hit."""
    n = len(tour)
    order = np.array(tour)
    moves = 0
    i = 0
    clean_since = 0
    while clean_since < n:
        a, b = pts[order[i]], pts[order[(i + 1) % n]]
        c, d = pts[order], pts[np.roll(order, -1)]
        o1 = np.sign((b[0] - a[0]) * (c[:, 1] - a[1]) - (b[1] - a[1]) * (c[:, 0] - a[0]))
        o2 = np.sign((b[0] - a[0]) * (d[:, 1] - a[1]) - (b[1] - a[1]) * (d[:, 0] - a[0]))
        o3 = np.sign((d[:, 0] - c[:, 0]) * (a[1] - c[:, 1]) - (d[:, 1] - c[:, 1]) * (a[0] - c[:, 0]))
        o4 = np.sign((d[:, 0] - c[:, 0]) * (b[1] - c[:, 1]) - (d[:, 1] - c[:, 1]) * (b[0] - c[:, 0]))
        hits = np.nonzero((o1 * o2 < 0) & (o3 * o4 < 0))[0]
        if len(hits) == 0:
            clean_since += 1
            i = (i + 1) % n
            continue
        j = int(hits[0])
        lo, hi = sorted((i, j))
        order[lo + 1 : hi + 1] = order[lo + 1 : hi + 1][::-1].copy()
        moves += 1
        clean_since = 0
        if moves > max_moves:
            return None
    return [int(k) for k in order]


def random_polygon(n: int, seed: int = 0, reflex_fraction: float = 0.5, max_tries: int = 100) -> Polygon:
    """A random simple CCW polygon, deterministic for a given (n, seed, reflex_fraction).

    ``reflex_fraction`` in [0, 1] pulls points off a circle: 0 gives convex
    position, 1 fills the disc. The resulting reflex share is only loosely
    related to it.
    """
    if n < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    if not 0 <= reflex_fraction <= 1:
        raise ValueError("reflex_fraction must lie in [0, 1]")
    rng = random.Random(f"{n}:{seed}:{reflex_fraction}")
    for _ in range(max_tries):
        raw = _random_points(n, rng, reflex_fraction)
        pts = np.array(raw, dtype=np.int64)
        tour = untangle(pts, _nearest_neighbour_tour(pts), max_moves=50 * n * n)
        if tour is None:
            continue
        try:
            return validate_polygon([raw[k] for k in tour])
        except PolygonError:
            continue
    raise RuntimeError(f"no simple polygon after {max_tries} attempts")


def reflex_share(P: Polygon) -> float:
    return len(reflex_vertices(P)) / P.n


def convex_polygon(n: int, seed: int = 0) -> Polygon:
    return random_polygon(n, seed, reflex_fraction=0.0)
