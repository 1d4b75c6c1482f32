"""Plain-text file formats for polygons, triangulations and graphs."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .geometry import Polygon, is_diagonal, validate_polygon
from .interval_dp import adjacency_matrix
from .triangulation import Triangulation, canonical, from_diagonals


class ParseError(ValueError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.line = line


def _lines(path) -> list[tuple[int, str]]:
    text = Path(path).read_text()
    return [(k + 1, s.strip()) for k, s in enumerate(text.splitlines()) if s.strip() and not s.lstrip().startswith("#")]


def _ints(path, lineno: int, s: str, count: int) -> list[int]:
    parts = s.split()
    if len(parts) != count:
        raise ParseError(path, lineno, f"expected {count} integers, got {s!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(path, lineno, f"not an integer in {s!r}") from None


def parse_polygon_points(path) -> list[tuple[int, int]]:
    """Line 1: n; then n lines "x y"."""
    lines = _lines(path)
    if not lines:
        raise ParseError(path, 1, "empty polygon file")
    lineno, head = lines[0]
    (n,) = _ints(path, lineno, head, 1)
    body = lines[1:]
    if len(body) != n:
        raise ParseError(path, lines[-1][0], f"header says {n} vertices, found {len(body)}")
    return [tuple(_ints(path, k, s, 2)) for k, s in body]


def read_polygon(path) -> Polygon:
    return validate_polygon(parse_polygon_points(path))


def format_polygon(P: Polygon) -> str:
    return f"{P.n}\n" + "".join(f"{x} {y}\n" for x, y in P.points)


def write_polygon(path, P: Polygon) -> None:
    Path(path).write_text(format_polygon(P))


def parse_pairs(path, n: int, lines=None) -> list[tuple[int, int]]:
    pairs = []
    for lineno, s in _lines(path) if lines is None else lines:
        i, j = _ints(path, lineno, s, 2)
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ParseError(path, lineno, f"bad vertex pair {i} {j} for n = {n}")
        pairs.append(canonical(i, j))
    return pairs


def read_triangulation(path, P: Polygon) -> Triangulation:
    """Diagonal list "i j", one per line; must triangulate P."""
    pairs = parse_pairs(path, P.n)
    for d in pairs:
        if not is_diagonal(P, d):
            raise ValueError(f"{d} is not a diagonal of the polygon")
    return from_diagonals(P, pairs)


def format_diagonals(diagonals) -> str:
    return "".join(f"{i} {j}\n" for i, j in sorted(canonical(*d) for d in diagonals))


def write_diagonals(path, diagonals) -> None:
    Path(path).write_text(format_diagonals(diagonals))


def read_graph(path) -> np.ndarray:
    """Line 1: n; then extra edges "i j". Boundary edges are implicit."""
    lines = _lines(path)
    if not lines:
        raise ParseError(path, 1, "empty graph file")
    (n,) = _ints(path, lines[0][0], lines[0][1], 1)
    if n < 3:
        raise ParseError(path, lines[0][0], "a graph on a convex polygon needs n >= 3")
    return adjacency_matrix(n, parse_pairs(path, n, lines[1:]))


def format_graph(A) -> str:
    A = np.asarray(A, dtype=bool)
    n = len(A)
    extra = [(i, j) for i in range(n) for j in range(i + 2, n) if A[i, j] and not (i == 0 and j == n - 1)]
    return f"{n}\n" + format_diagonals(extra)


def write_graph(path, A) -> None:
    Path(path).write_text(format_graph(A))
