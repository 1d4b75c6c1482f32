"""Does a graph on a convex n-gon contain a triangulation? Block-recursive interval DP.

Cell (i, j) of the upper-triangular matrix B says whether edge ij exists and
the sub-polygon i, i+1, ..., j can be triangulated. Instead of filling B by
increasing j - i, products b_ik * b_kj are accumulated a whole block at a time
by matrix multiplication, in an order that only ever reads finalized blocks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import MissingBoundaryEdge, SizeMismatch
from .geometry import Polygon, is_diagonal
from .kernels import schoolbook

Kernel = Callable[[np.ndarray, np.ndarray], np.ndarray]

DECISION_CAP = 2


class InvalidTriple(ValueError):
    pass


class InternalInconsistency(AssertionError):
    pass


class AuditFailure(AssertionError):
    pass


def adjacency_matrix(n: int, diagonals=(), boundary: bool = True) -> np.ndarray:
    """Boolean adjacency matrix with the n-gon's boundary cycle plus the given pairs."""
    A = np.zeros((n, n), dtype=bool)
    if boundary:
        for i in range(n):
            A[i, (i + 1) % n] = A[(i + 1) % n, i] = True
    for i, j in diagonals:
        A[i, j] = A[j, i] = True
    np.fill_diagonal(A, False)
    return A


def complete_graph(n: int) -> np.ndarray:
    A = np.ones((n, n), dtype=bool)
    np.fill_diagonal(A, False)
    return A


def validate_adjacency(A) -> np.ndarray:
    A = np.asarray(A, dtype=bool)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("adjacency matrix must be square")
    n = A.shape[0]
    if n < 3:
        raise ValueError("need at least 3 vertices")
    if not (A == A.T).all():
        raise ValueError("adjacency matrix must be symmetric")
    if A.diagonal().any():
        raise ValueError("adjacency matrix must have a zero diagonal")
    for i in range(n):
        if not A[i, (i + 1) % n]:
            raise MissingBoundaryEdge(i)
    return A


def next_power_of_two(n: int) -> int:
    return 1 << (n - 1).bit_length()


@dataclass
class DPMatrix:
    """Accumulators and finalized values share one padded N x N array."""

    n: int
    size: int
    counting: bool
    values: np.ndarray
    adjacency: np.ndarray
    finalized: np.ndarray
    kernel: Kernel = schoolbook
    audit: bool = False
    rng: random.Random = field(default_factory=lambda: random.Random(0))
    block_updates: int = 0
    base_cases: int = 0
    audits: int = 0

    @classmethod
    def create(cls, A, counting: bool = False, kernel: Kernel = schoolbook, audit: bool = False) -> "DPMatrix":
        A = validate_adjacency(A)
        n = A.shape[0]
        size = next_power_of_two(n)
        padded = np.zeros((size, size), dtype=bool)
        padded[:n, :n] = A
        values = np.zeros((size, size), dtype=object if counting else np.int64)
        if counting:
            values[:, :] = 0
        return cls(n, size, counting, values, padded, np.zeros((size, size), dtype=np.int64), kernel, audit)

    def block(self, S: int, u: int, v: int) -> np.ndarray:
        return self.values[u * S : (u + 1) * S, v * S : (v + 1) * S]

    @property
    def result(self):
        return self.values[0, self.n - 1]

    def bits(self) -> np.ndarray:
        """The n x n finalized matrix as booleans."""
        return self.values[: self.n, : self.n] != 0


def block_update(S: int, u: int, v: int, w: int, M: DPMatrix) -> None:
    """Accumulate B[u,w] * B[w,v] into the (u, v) block at block size S."""
    if not u < w < v:
        raise InvalidTriple(f"block-update needs u < w < v, got {(u, w, v)}")
    if M.audit:
        for a, b in ((u, w), (w, v)):
            if not M.finalized[a * S : (a + 1) * S, b * S : (b + 1) * S].all():
                raise AuditFailure(f"source block {(S, a, b)} is not finalized")
    target = M.block(S, u, v)
    target += M.kernel(M.block(S, u, w), M.block(S, w, v))
    if not M.counting:
        np.minimum(target, DECISION_CAP, out=target)
    M.block_updates += 1


def _audit_entry(S: int, u: int, v: int, M: DPMatrix) -> None:
    M.audits += 1
    lo_r, hi_r, lo_c, hi_c = u * S, (u + 1) * S, v * S, (v + 1) * S
    region = M.finalized[lo_r:, :hi_c]
    expect = np.triu(np.ones_like(region), k=lo_r)  # cells with j >= i, shifted to region coords
    inside = np.zeros_like(region, dtype=bool)
    inside[: hi_r - lo_r, lo_c:hi_c] = True
    todo = (expect == 1) & ~inside
    if (region[todo] != 1).any():
        raise AuditFailure(f"cells outside block {(S, u, v)} are not all finalized on entry")
    cells = [(i, j) for i in range(lo_r, hi_r) for j in range(lo_c, hi_c) if i < j]
    for i, j in M.rng.sample(cells, min(8, len(cells))):
        total = sum(
            int(M.values[i, k]) * int(M.values[k, j])
            for k in range(i + 1, j)
            if i // S < k // S < j // S
        )
        if not M.counting:
            total = min(total, DECISION_CAP)
        if total != M.values[i, j]:
            raise AuditFailure(f"cell {(i, j)} is missing products from other blocks on entry to {(S, u, v)}")


def compute_block(S: int, u: int, v: int, M: DPMatrix) -> None:
    """Finalize block (u, v) of size S, recursing on its four quarters."""
    if M.audit:
        _audit_entry(S, u, v, M)
    if S == 1:
        M.base_cases += 1
        M.finalized[u, v] += 1
        acc = M.values[u, v]
        if u < v and v == u + 1 and v < M.n:
            M.values[u, v] = 1
        elif u < v and M.adjacency[u, v] and acc > 0:
            M.values[u, v] = acc if M.counting else 1
        else:
            M.values[u, v] = 0
        return
    h = S // 2
    if u < v:
        compute_block(h, 2 * u + 1, 2 * v, M)  # bottom-left quarter
        block_update(h, 2 * u + 1, 2 * v + 1, 2 * v, M)  # bottom-right quarter
        compute_block(h, 2 * u + 1, 2 * v + 1, M)
        block_update(h, 2 * u, 2 * v, 2 * u + 1, M)  # top-left quarter
        compute_block(h, 2 * u, 2 * v, M)
        block_update(h, 2 * u, 2 * v + 1, 2 * u + 1, M)  # top-right quarter
        block_update(h, 2 * u, 2 * v + 1, 2 * v, M)
        compute_block(h, 2 * u, 2 * v + 1, M)
    else:
        compute_block(h, 2 * u + 1, 2 * u + 1, M)  # bottom-right quarter
        compute_block(h, 2 * u, 2 * u, M)  # top-left quarter
        compute_block(h, 2 * u, 2 * u + 1, M)  # top-right quarter


def solve(A, counting: bool = False, kernel: Kernel = schoolbook, audit: bool = False) -> DPMatrix:
    M = DPMatrix.create(A, counting=counting, kernel=kernel, audit=audit)
    compute_block(M.size, 0, 0, M)
    return M


def triangulation_exists(A, kernel: Kernel = schoolbook) -> bool:
    return bool(solve(A, kernel=kernel).result)


def count_triangulations(A, kernel: Kernel = schoolbook) -> int:
    """Number of triangulations of the convex n-gon using only edges of A (exact)."""
    return int(solve(A, counting=True, kernel=kernel).result)


def extract_triangulation(M: DPMatrix) -> set[tuple[int, int]] | None:
    """Diagonals of one triangulation, choosing the smallest apex k at every step."""
    if M.counting:
        raise ValueError("extraction needs a decision-mode matrix")
    n = M.n
    B = M.bits()
    if not B[0, n - 1]:
        return None
    diagonals: set[tuple[int, int]] = set()
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        k = next((k for k in range(i + 1, j) if B[i, k] and B[k, j]), None)
        if k is None:
            raise InternalInconsistency(f"cell {(i, j)} is set but has no splitting vertex")
        for a, b in ((i, k), (k, j)):
            if b - a >= 2:
                if not M.adjacency[a, b]:
                    raise InternalInconsistency(f"extracted pair {(a, b)} is not an edge of the graph")
                diagonals.add((a, b))
                stack.append((a, b))
    assert len(diagonals) == n - 3
    return diagonals


def common_visibility(P: Polygon, Q: Polygon, use_index: bool = False) -> np.ndarray:
    """Pairs that are edges or diagonals in both polygons under the shared numbering."""
    if P.n != Q.n:
        raise SizeMismatch(f"|P| = {P.n} but |Q| = {Q.n}")
    if use_index:
        from .visibility import VisibilityIndex

        n = P.n
        A = np.zeros((n, n), dtype=bool)
        vp, vq = VisibilityIndex(P), VisibilityIndex(Q)
        for i in range(n):
            for j in range(i + 1, n):
                A[i, j] = A[j, i] = vp.visible(i, j) and vq.visible(i, j)
        return A
    from .oracles import visibility_graph

    return visibility_graph(P) & visibility_graph(Q)


def compatible_fixed_correspondence(
    P: Polygon, Q: Polygon, kernel: Kernel = schoolbook, use_index: bool = False
) -> set[tuple[int, int]] | None:
    """A diagonal set triangulating both P and Q, or None if none exists."""
    A = common_visibility(P, Q, use_index=use_index)
    return shared_triangulation(P, Q, solve(A, kernel=kernel))


def shared_triangulation(P: Polygon, Q: Polygon, M: DPMatrix) -> set[tuple[int, int]] | None:
    """Extract from a solved common-visibility matrix and check the result on both polygons."""
    diagonals = extract_triangulation(M)
    if diagonals is not None:
        for d in diagonals:
            if not (is_diagonal(P, d) and is_diagonal(Q, d)):
                raise InternalInconsistency(f"{d} is not a diagonal of both polygons")
    return diagonals


@dataclass(frozen=True)
class ReductionGadget:
    """Graph whose DP cells encode a Boolean matrix product.

    Vertex order around the convex polygon: s, x_1..x_m, u, y_1..y_m, w, z_1..z_m, t.
    """

    m: int
    adjacency: np.ndarray

    @property
    def s(self) -> int:
        return 0

    def x(self, i: int) -> int:
        return 1 + i

    @property
    def u(self) -> int:
        return self.m + 1

    def y(self, k: int) -> int:
        return self.m + 2 + k

    @property
    def w(self) -> int:
        return 2 * self.m + 2

    def z(self, j: int) -> int:
        return 2 * self.m + 3 + j

    @property
    def t(self) -> int:
        return 3 * self.m + 3

    def chain_interval(self, i: int, j: int) -> tuple[int, int]:
        """DP cell of the chain x_i ... z_j (0-based i, j)."""
        return self.x(i), self.z(j)


def build_reduction_graph(M, N) -> ReductionGadget:
    M = np.asarray(M, dtype=bool)
    N = np.asarray(N, dtype=bool)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape != N.shape:
        raise ValueError("M and N must be square and of equal size")
    m = M.shape[0]
    if m < 1:
        raise ValueError("matrices must be at least 1 x 1")
    g = ReductionGadget(m, np.zeros((3 * m + 4, 3 * m + 4), dtype=bool))
    pairs = []
    for i in range(m):
        for k in range(m):
            if M[i, k]:
                pairs.append((g.x(i), g.y(k)))
            if N[i, k]:
                pairs.append((g.y(i), g.z(k)))
        pairs += [(g.s, g.x(i)), (g.s, g.z(i)), (g.x(i), g.u), (g.u, g.y(i)), (g.y(i), g.w), (g.w, g.z(i)), (g.z(i), g.t)]
        pairs += [(g.x(i), g.z(j)) for j in range(m)]
    A = adjacency_matrix(3 * m + 4, pairs)
    g.adjacency[:, :] = A
    return g


def reduction_cells(g: ReductionGadget, kernel: Kernel = schoolbook, matrix: DPMatrix | None = None) -> np.ndarray:
    """m x m matrix of DP values on the chains x_i ... z_j."""
    B = (matrix if matrix is not None else solve(g.adjacency, kernel=kernel)).bits()
    return np.array([[B[g.chain_interval(i, j)] for j in range(g.m)] for i in range(g.m)], dtype=bool)


def boolean_product(M, N) -> np.ndarray:
    return (np.asarray(M, dtype=np.int64) @ np.asarray(N, dtype=np.int64)) > 0
