import random

import pytest

from compatri.errors import SizeMismatch
from compatri.generate import convex_polygon, random_polygon
from compatri.geometry import is_diagonal, validate_polygon
from compatri.oracles import naive_rotation_set, visibility_graph
from compatri.rotation import Outcome, build_wedge_table, find_rotations, in_wedge, satisfies
from compatri.triangulation import diagonal_fans, triangulate
from compatri.visibility import VisibilityIndex


def test_convex_wedge_table_is_empty():
    assert build_wedge_table(convex_polygon(9, seed=1)) == []


def test_lhexagon_wedge(lhex):
    (w,) = build_wedge_table(lhex)
    assert w.i == 3
    assert (w.hit_prev.edge, w.hit_prev.point) == (5, (0, 1))
    assert (w.hit_next.edge, w.hit_next.point) == (0, (1, 0))
    assert (w.sigma, w.tau) == (3, 4)
    assert [t for t in range(2, 5) if in_wedge(lhex, 3, 3 + t)] == [3]


def test_dart_wedge(dart):
    (w,) = build_wedge_table(dart)
    assert w.i == 2 and (w.sigma, w.tau) == (2, 3)
    assert [t for t in range(2, 3) if in_wedge(dart, 2, 2 + t)] == [2]


@pytest.mark.parametrize("seed", range(40))
def test_wedge_interval_agrees_with_predicate_on_diagonals(seed):
    Q = random_polygon(8 + seed, seed=seed, reflex_fraction=1.0)
    G = visibility_graph(Q)
    n = Q.n
    for w in build_wedge_table(Q):
        for t in range(2, n - 1):
            j = (w.i + t) % n
            if G[w.i, j]:
                assert in_wedge(Q, w.i, j) == (w.sigma <= t < w.tau), (w, t)


def test_satisfies_examples(square, dart):
    T = triangulate(square)
    fans = diagonal_fans(T)
    vis = VisibilityIndex(dart)
    (w,) = build_wedge_table(dart)
    assert satisfies(0, w, fans, vis) is Outcome.MARKED
    assert satisfies(1, w, fans, vis) is Outcome.NOT_MARKED


def test_square_to_dart(square, dart):
    result = find_rotations(square, triangulate(square), dart)
    assert result.rotations == [0, 2]
    assert result.witnesses[0] == {(0, 2)} and result.witnesses[2] == {(0, 2)}


def test_convex_target_gives_every_rotation(lhex):
    Q = convex_polygon(6, seed=4)
    result = find_rotations(lhex, triangulate(lhex), Q)
    assert result.rotations == list(range(6))
    assert result.reflex == 0 and result.stats.visibility_queries == 0


def test_identity_rotation(lhex):
    assert 0 in find_rotations(lhex, triangulate(lhex), lhex).rotations


def test_size_mismatch(square, lhex):
    with pytest.raises(SizeMismatch):
        find_rotations(square, triangulate(square), lhex)


def _check(P, Q):
    T = triangulate(P)
    result = find_rotations(P, T, Q)
    assert set(result.rotations) == naive_rotation_set(P, T, Q)
    for s in result.rotations:
        assert all(is_diagonal(Q, d) for d in result.witnesses[s])
    n, r = P.n, result.reflex
    assert result.stats.visibility_queries <= 3 * n * max(r, 1)
    assert result.stats.dispatches <= n * r
    fans = diagonal_fans(T)
    for m, steps in enumerate(result.stats.sweep_steps):
        assert steps <= r + len(fans[m]) + 2
    assert all(c <= r for c in result.counters)
    return result


@pytest.mark.parametrize("seed", range(60))
def test_matches_naive_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 40)
    P = random_polygon(n, seed=seed, reflex_fraction=rng.choice([0.0, 0.5, 1.0]))
    kind = seed % 4
    if kind == 0:
        Q = P
    elif kind == 1:
        Q = convex_polygon(n, seed=seed)
    else:
        Q = random_polygon(n, seed=seed + 1000, reflex_fraction=rng.choice([0.5, 1.0]))
    _check(P, Q)


def test_shifted_numbering_is_found(lhex):
    shifted = validate_polygon(lhex.points[-1:] + lhex.points[:-1])
    result = _check(lhex, shifted)
    assert 1 in result.rotations
