"""Find every cyclic renumbering of Q that admits a triangulation compatible with a given T of P.

Each reflex vertex q_i of Q must be resolved by the rotated T: either a
diagonal at q_i inside the wedge spanned by the extensions of its two edges,
or a triangle at q_i whose far side crosses that wedge. A rotation resolving
every reflex vertex cuts Q into convex pieces, so the rest of T fits as well.
"""
from __future__ import annotations

import enum
from bisect import bisect_left
from dataclasses import dataclass, field

from .geometry import Polygon, RayHit, orientation, ray_shoot, reflex_vertices
from .errors import SizeMismatch
from .oracles import visibility_graph
from .triangulation import Triangulation, canonical, diagonal_fans
from .visibility import VisibilityIndex


@dataclass(frozen=True)
class Wedge:
    """Wedge at reflex vertex ``i``: diagonals q_i q_{i+t} lie inside it iff sigma <= t < tau."""

    i: int
    sigma: int
    tau: int
    hit_prev: RayHit
    hit_next: RayHit


def in_wedge(Q: Polygon, i: int, j: int) -> bool:
    """Is q_j strictly inside the cone bounded by the two edge extensions at q_i?"""
    return orientation(Q[i - 1], Q[i], Q[j]) > 0 and orientation(Q[i + 1], Q[i], Q[j]) < 0


def build_wedge_table(Q: Polygon) -> list[Wedge]:
    n = Q.n
    table = []
    for i in reflex_vertices(Q):
        qi = Q[i]
        prev, nxt = Q[i - 1], Q[i + 1]
        hit_prev = ray_shoot(Q, i, (qi[0] - prev[0], qi[1] - prev[1]))
        hit_next = ray_shoot(Q, i, (qi[0] - nxt[0], qi[1] - nxt[1]))
        # walking CCW from q_{i+1}, the boundary meets hit_prev first
        sigma = hit_prev.edge + 1
        tau = hit_next.vertex if hit_next.vertex is not None else hit_next.edge + 1
        table.append(Wedge(i, (sigma - i) % n, (tau - i) % n, hit_prev, hit_next))
    return table


class Outcome(enum.Enum):
    MARKED = "marked"
    NOT_MARKED = "not marked"
    KILLS_ROTATION = "kills rotation"


@dataclass
class SearchStats:
    visibility_queries: int = 0
    dispatches: int = 0
    sweep_steps: list[int] = field(default_factory=list)


class _Seer:
    def __init__(self, vis: VisibilityIndex, stats: SearchStats):
        self.vis = vis
        self.n = vis.n
        self.stats = stats

    def __call__(self, a: int, b: int) -> bool:
        n = self.n
        a, b = a % n, b % n
        if (a - b) % n in (1, n - 1):
            return True
        self.stats.visibility_queries += 1
        return self.vis.visible(a, b)


def satisfies(
    s: int,
    wedge: Wedge,
    fans: list[list[int]],
    vis: VisibilityIndex | _Seer,
    succ: int | None = None,
    fan: list[int] | None = None,
) -> Outcome:
    """Does rotation s resolve the wedge's reflex vertex?

    ``fan`` is the fan of the P-vertex mapped onto the wedge apex with the two
    edge offsets 1 and n-1 added; ``succ`` is its position of the first offset
    >= sigma. The batched sweep supplies both, otherwise they are rebuilt here.
    """
    n = len(fans)
    i = wedge.i
    if fan is None:
        m = (i - s) % n
        fan = [1] + fans[m] + [n - 1]
    if succ is None:
        succ = bisect_left(fan, wedge.sigma)
    seen = vis if isinstance(vis, _Seer) else (lambda a, b: (a - b) % n in (1, n - 1) or vis.visible(a % n, b % n))
    t = fan[succ]
    if t < wedge.tau:
        return Outcome.MARKED if seen(i, i + t) else Outcome.KILLS_ROTATION
    k, j = fan[succ - 1], t
    if seen(i, i + k) and seen(i, i + j) and seen(i + k, i + j):
        return Outcome.MARKED
    return Outcome.NOT_MARKED


@dataclass
class RotationResult:
    rotations: list[int]
    witnesses: dict[int, frozenset[tuple[int, int]]]
    reflex: int
    counters: list[int]
    dead: list[bool]
    stats: SearchStats


def rotate_diagonals(T: Triangulation, s: int) -> frozenset[tuple[int, int]]:
    n = T.n
    return frozenset(canonical((i + s) % n, (j + s) % n) for i, j in T.diagonals)


def find_rotations(
    P: Polygon,
    T: Triangulation,
    Q: Polygon,
    vis: VisibilityIndex | None = None,
    check_witnesses: bool = True,
) -> RotationResult:
    """All rotations s for which T, shifted by s, is a triangulation of Q.

    One batched sweep per vertex of P merges its fan with the wedge list
    sorted by sigma, so every (rotation, reflex vertex) pair costs O(1)
    work plus at most three visibility queries.
    """
    n = P.n
    if Q.n != n:
        raise SizeMismatch(f"|P| = {n} but |Q| = {Q.n}")
    stats = SearchStats()
    wedges = build_wedge_table(Q)
    r = len(wedges)
    counters = [0] * n
    dead = [False] * n
    if r:
        if vis is None:
            vis = VisibilityIndex(Q)
        seer = _Seer(vis, stats)
        fans = diagonal_fans(T)
        by_sigma = sorted(wedges, key=lambda w: (w.sigma, w.i))
        for m in range(n):
            fan = [1] + fans[m] + [n - 1]
            ptr = 0
            steps = 0
            for wedge in by_sigma:
                while fan[ptr] < wedge.sigma:
                    ptr += 1
                    steps += 1
                steps += 1
                s = (wedge.i - m) % n
                if dead[s]:
                    continue
                stats.dispatches += 1
                outcome = satisfies(s, wedge, fans, seer, succ=ptr, fan=fan)
                if outcome is Outcome.MARKED:
                    counters[s] += 1
                elif outcome is Outcome.KILLS_ROTATION:
                    dead[s] = True
            stats.sweep_steps.append(steps)
    rotations = [s for s in range(n) if counters[s] == r and not dead[s]]
    witnesses = {s: rotate_diagonals(T, s) for s in rotations}
    if check_witnesses and rotations:
        G = visibility_graph(Q)
        for s, diags in witnesses.items():
            for a, b in diags:
                if not G[a, b]:
                    raise AssertionError(f"rotation {s} maps a diagonal of T onto ({a},{b}), not a diagonal of Q")
    return RotationResult(rotations, witnesses, r, counters, dead, stats)
