import math

import numpy as np
import pytest

from compatri.errors import MissingBoundaryEdge, SizeMismatch
from compatri.generate import random_polygon
from compatri.geometry import is_diagonal, validate_polygon
from compatri.interval_dp import (
    DPMatrix,
    InvalidTriple,
    adjacency_matrix,
    block_update,
    boolean_product,
    build_reduction_graph,
    compatible_fixed_correspondence,
    complete_graph,
    compute_block,
    count_triangulations,
    extract_triangulation,
    reduction_cells,
    solve,
    triangulation_exists,
    validate_adjacency,
)
from compatri.kernels import reference_multiply, strassen, strassen_small
from compatri.oracles import cubic_dp, recursive_count


def random_graph(n, density, rng):
    A = rng.random((n, n)) < density
    A = np.triu(A, 2)
    A = A | A.T
    return adjacency_matrix(n, zip(*np.nonzero(np.triu(A))))


def test_existence_examples():
    assert triangulation_exists(complete_graph(4))
    assert not triangulation_exists(adjacency_matrix(4))
    assert not triangulation_exists(adjacency_matrix(6, [(0, 3)]))
    assert triangulation_exists(adjacency_matrix(3))


def test_adjacency_validation():
    with pytest.raises(MissingBoundaryEdge) as err:
        validate_adjacency(adjacency_matrix(5, boundary=False))
    assert str(err.value) == "MissingBoundaryEdge(0)"
    A = complete_graph(5)
    A[0, 2] = False
    with pytest.raises(ValueError):
        validate_adjacency(A)
    with pytest.raises(ValueError):
        validate_adjacency(np.ones((4, 4), dtype=bool))


def _matrix(A, **kw):
    return DPMatrix.create(A, **kw)


def test_base_case_boundary_cell_is_one():
    A = adjacency_matrix(4)
    M = _matrix(A)
    compute_block(1, 1, 2, M)
    assert M.values[1, 2] == 1


def test_base_case_missing_edge_is_zero():
    M = _matrix(adjacency_matrix(5))
    M.values[0, 3] = 2
    compute_block(1, 0, 3, M)
    assert M.values[0, 3] == 0


def test_block_update_examples():
    M = _matrix(complete_graph(8))
    M.values[0:2, 2:4] = 1
    M.values[2:4, 4:6] = 1
    block_update(2, 0, 2, 1, M)
    assert (M.values[0:2, 4:6] == 2).all()
    M = _matrix(complete_graph(8), counting=True)
    block_update(2, 0, 2, 1, M)
    assert (M.values[0:2, 4:6] == 0).all()
    with pytest.raises(InvalidTriple):
        block_update(2, 0, 1, 1, M)
    with pytest.raises(InvalidTriple):
        block_update(2, 1, 2, 0, M)


def test_decision_mode_saturates():
    M = _matrix(complete_graph(8))
    M.values[0:2, 2:4] = 2
    M.values[2:4, 4:6] = 2
    block_update(2, 0, 2, 1, M)
    assert (M.values[0:2, 4:6] == 2).all()


@pytest.mark.parametrize("kernel", [strassen, strassen_small])
def test_kernels_match_reference(kernel):
    rng = np.random.default_rng(0)
    for size in (1, 2, 4, 16, 32):
        X = rng.integers(0, 5, (size, size))
        Y = rng.integers(0, 5, (size, size))
        assert kernel(X, Y).tolist() == reference_multiply(X, Y)
        Xo, Yo = X.astype(object) * 10**20, Y.astype(object) * 10**20
        assert kernel(Xo, Yo).tolist() == reference_multiply(Xo, Yo)


def test_complete_octagon():
    A = complete_graph(8)
    B = solve(A).bits()
    assert all(B[i, j] for i in range(8) for j in range(i + 1, 8))


def test_extraction_examples():
    assert extract_triangulation(solve(complete_graph(4))) == {(1, 3)}
    assert extract_triangulation(solve(complete_graph(3))) == set()
    star = adjacency_matrix(6, [(0, 2), (0, 3), (0, 4)])
    assert extract_triangulation(solve(star)) == {(0, 2), (0, 3), (0, 4)}
    assert extract_triangulation(solve(adjacency_matrix(5))) is None


def test_counting_examples():
    assert count_triangulations(complete_graph(6)) == 14
    assert count_triangulations(adjacency_matrix(4, [(0, 2)])) == 1
    assert count_triangulations(complete_graph(20)) == 477_638_700
    assert count_triangulations(complete_graph(3)) == 1
    rng = np.random.default_rng(12)
    for _ in range(20):
        A = random_graph(12, 0.6, rng)
        assert count_triangulations(A) == recursive_count(A)


def test_catalan_counts():
    for n in range(3, 41):
        m = n - 2
        assert count_triangulations(complete_graph(n)) == math.comb(2 * m, m) // (m + 1)
    assert count_triangulations(complete_graph(40)) > 2**63


@pytest.mark.parametrize("n", [3, 4, 5, 7, 9, 16, 17, 31, 33])
@pytest.mark.parametrize("density", [0.1, 0.5, 1.0])
def test_matches_cubic_dp_with_audit(n, density):
    rng = np.random.default_rng(n * 10 + int(density * 10))
    for _ in range(3):
        A = random_graph(n, density, rng)
        M = solve(A, audit=True)
        assert (M.bits() == cubic_dp(A)).all()
        upper = np.triu_indices(M.size)
        assert (M.finalized[upper] == 1).all()
        assert not M.finalized[np.tril_indices(M.size, -1)].any()
        assert not np.tril(M.values, -1).any()
        assert (solve(A, kernel=strassen_small).values == M.values).all()
        counted = solve(A, counting=True)
        assert bool(M.result) == (counted.result > 0)


def test_finalized_ones_use_graph_edges():
    rng = np.random.default_rng(3)
    A = random_graph(40, 0.4, rng)
    B = solve(A).bits()
    for i, j in zip(*np.nonzero(B)):
        assert j == i + 1 or A[i, j]


def test_compatible_identical_squares(square):
    assert compatible_fixed_correspondence(square, square) == {(1, 3)}


def test_compatible_square_and_dart(square, dart):
    assert compatible_fixed_correspondence(square, dart) == {(0, 2)}


def test_shifted_lhexagons_have_no_common_triangulation(lhex):
    shifted = validate_polygon(lhex.points[-1:] + lhex.points[:-1])
    from compatri.oracles import visibility_graph

    A = visibility_graph(lhex) & visibility_graph(shifted)
    assert not cubic_dp(A)[0, 5]
    assert compatible_fixed_correspondence(lhex, shifted) is None
    assert compatible_fixed_correspondence(lhex, shifted, use_index=True) is None


@pytest.mark.parametrize("seed", range(10))
def test_identical_polygons_always_compatible(seed):
    P = random_polygon(20 + seed, seed=seed, reflex_fraction=1.0)
    diagonals = compatible_fixed_correspondence(P, P, use_index=seed % 2 == 0)
    assert diagonals is not None and len(diagonals) == P.n - 3
    assert all(is_diagonal(P, d) for d in diagonals)


def test_size_mismatch(square, lhex):
    with pytest.raises(SizeMismatch):
        compatible_fixed_correspondence(square, lhex)


def test_reduction_single_cell():
    g = build_reduction_graph([[1]], [[1]])
    assert g.adjacency.shape == (7, 7)
    assert reduction_cells(g).tolist() == [[True]]
    assert cubic_dp(g.adjacency)[g.chain_interval(0, 0)]
    assert reduction_cells(build_reduction_graph([[0]], [[1]])).tolist() == [[False]]
    assert reduction_cells(build_reduction_graph([[1]], [[0]])).tolist() == [[False]]


def test_reduction_gadget_layout():
    g = build_reduction_graph(np.eye(3, dtype=bool), np.eye(3, dtype=bool))
    assert (g.s, g.x(0), g.u, g.y(0), g.w, g.z(0), g.t) == (0, 1, 4, 5, 8, 9, 12)
    A = g.adjacency
    assert A[g.x(0), g.y(0)] and not A[g.x(0), g.y(1)]
    assert A[g.x(2), g.z(0)] and A[g.s, g.z(2)] and A[g.z(1), g.t]


def test_reduction_cells_equal_dominated_products():
    # every (x_i, z_j) chord is present, so a chain cell also inherits any product
    # entry (i', j') with i' >= i and j' <= j through fan triangles at x_i and z_j
    rng = np.random.default_rng(4)
    for m in range(1, 9):
        Mx = rng.random((m, m)) < 0.3
        Nx = rng.random((m, m)) < 0.3
        g = build_reduction_graph(Mx, Nx)
        cells = reduction_cells(g)
        product = boolean_product(Mx, Nx)
        dominated = np.array(
            [[product[i:, : j + 1].any() for j in range(m)] for i in range(m)], dtype=bool
        )
        assert (cells == dominated).all()
        assert (cells[product]).all()
        expected = cubic_dp(g.adjacency)[g.x(0) : g.x(m), g.z(0) : g.z(m)]
        assert (cells == expected).all()
