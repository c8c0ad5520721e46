"""Immutable simple graphs, square (4-cycle) listing and K_{2,3} tests.

Every other module works on :class:`Graph` and refers to edges by their dense
integer id, i.e. the position of the canonical pair ``(u, v)`` with ``u < v``
in the sorted edge list.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ContractError, InputError

__all__ = [
    "Graph",
    "Square",
    "VertexPartition",
    "parse_graph",
    "format_graph",
    "enumerate_squares",
    "format_squares",
    "square_in_k23",
    "components",
    "min_degree",
    "is_connected",
    "subgraph",
    "is_k23_free",
]


class Graph:
    """Finite simple undirected graph on the vertices ``0..vertex_count-1``.

    Edges are canonicalized to ``(u, v)`` with ``u < v`` and sorted, so the
    edge id of a pair is its index in :attr:`edges`.

    >>> g = Graph(3, [(1, 0), (2, 1)])
    >>> g.edges
    ((0, 1), (1, 2))
    >>> g.edge_id(2, 1)
    1
    """

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = ()):
        if vertex_count < 0:
            raise InputError(f"negative vertex count {vertex_count}")
        canon = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InputError(f"edge ({u}, {v}) outside vertex range 0..{vertex_count - 1}")
            pair = (u, v) if u < v else (v, u)
            if pair in canon:
                raise InputError(f"duplicate edge {pair}")
            canon.add(pair)
        self._n = vertex_count
        self._edges = tuple(sorted(canon))
        self._index = {e: i for i, e in enumerate(self._edges)}
        nbrs: list[list[int]] = [[] for _ in range(vertex_count)]
        for u, v in self._edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in nbrs)
        self._nbr_sets = tuple(frozenset(a) for a in self._adj)

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return dict(self._index)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and v in self._nbr_sets[u]

    def edge_id(self, u: int, v: int) -> int:
        """Dense id of edge ``[u, v]``; raises :class:`KeyError` if absent."""
        return self._index[(u, v) if u < v else (v, u)]

    def incident_edges(self, v: int) -> list[int]:
        return [self.edge_id(v, w) for w in self._adj[v]]

    def adjacency_matrix(self) -> csr_matrix:
        n, m = self._n, len(self._edges)
        if m == 0:
            return csr_matrix((n, n), dtype=np.int64)
        e = np.asarray(self._edges, dtype=np.int64)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        return csr_matrix((np.ones(2 * m, dtype=np.int64), (rows, cols)), shape=(n, n))

    @cached_property
    def adjacent_edge_pairs(self) -> tuple[tuple[int, int, int], ...]:
        """All ``(e, f, x)`` with ``e < f`` adjacent edges sharing vertex ``x``, sorted."""
        out = []
        for x in range(self._n):
            inc = sorted(self.incident_edges(x))
            for i, e in enumerate(inc):
                for f in inc[i + 1:]:
                    out.append((e, f, x))
        out.sort()
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self._n}, edge_count={len(self._edges)})"


@dataclass(frozen=True)
class Square:
    """A 4-cycle subgraph ``a-b-c-d`` in canonical form (``a`` minimal, ``b < d``).

    ``edge_ids`` lists the ids of ``[a,b], [b,c], [c,d], [d,a]`` in that order.
    """

    vertices: tuple[int, int, int, int]
    edge_ids: tuple[int, int, int, int]

    @property
    def opposite_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        ab, bc, cd, da = self.edge_ids
        return (ab, cd), (bc, da)

    @staticmethod
    def canonical(vertices: Sequence[int]) -> tuple[int, int, int, int]:
        """Rotate/reflect a cyclic vertex tuple into canonical order."""
        vs = list(vertices)
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        if vs[1] > vs[3]:
            vs = [vs[0], vs[3], vs[2], vs[1]]
        return (vs[0], vs[1], vs[2], vs[3])

    @classmethod
    def from_vertices(cls, g: Graph, vertices: Sequence[int]) -> "Square":
        """Build a square of ``g`` from any cyclic listing of its vertices."""
        if len(vertices) != 4 or len(set(vertices)) != 4:
            raise ContractError(f"{tuple(vertices)} is not four distinct vertices")
        a, b, c, d = cls.canonical(vertices)
        try:
            ids = (g.edge_id(a, b), g.edge_id(b, c), g.edge_id(c, d), g.edge_id(d, a))
        except KeyError:
            raise ContractError(f"{tuple(vertices)} is not a square of the graph") from None
        return cls((a, b, c, d), ids)


@dataclass(frozen=True)
class VertexPartition:
    """Partition of ``0..n-1`` into blocks; block ids ordered by smallest vertex."""

    block_of: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels: Iterable) -> "VertexPartition":
        """Blocks from arbitrary hashable labels, renumbered by first appearance."""
        seen: dict = {}
        out = []
        for lab in labels:
            out.append(seen.setdefault(lab, len(seen)))
        return cls(tuple(out))

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "VertexPartition":
        labels = [-1] * n
        for b, block in enumerate(blocks):
            for v in block:
                if labels[v] != -1:
                    raise InputError(f"vertex {v} appears in two blocks")
                labels[v] = b
        if -1 in labels:
            raise InputError(f"vertex {labels.index(-1)} is in no block")
        return cls.from_labels(labels)

    @property
    def vertex_count(self) -> int:
        return len(self.block_of)

    @property
    def block_count(self) -> int:
        return max(self.block_of) + 1 if self.block_of else 0

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for v, b in enumerate(self.block_of):
            out[b].append(v)
        return tuple(tuple(b) for b in out)

    def indicator(self) -> np.ndarray:
        """``n x k`` 0/1 matrix with a one at ``(v, block_of[v])``."""
        m = np.zeros((self.vertex_count, self.block_count), dtype=np.int64)
        m[np.arange(self.vertex_count), self.block_of] = 1
        return m


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document.

    Each line holds ``u v``; ``#`` starts a comment and an optional
    header ``n <count>`` fixes the vertex count (needed for isolated vertices).
    """
    edges = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if len(tok) != 2 or declared is not None:
                raise InputError(f"line {lineno}: bad header {line!r}")
            declared = _parse_int(tok[1], lineno)
            continue
        if len(tok) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = _parse_int(tok[0], lineno), _parse_int(tok[1], lineno)
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    seen = set()
    for u, v in edges:
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise InputError(f"duplicate edge {pair}")
        seen.add(pair)
    n = 1 + max((max(e) for e in edges), default=-1)
    if declared is not None:
        if declared < n:
            raise InputError(f"header declares {declared} vertices but id {n - 1} is used")
        n = declared
    return Graph(n, edges)


def _parse_int(tok: str, lineno: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise InputError(f"line {lineno}: malformed token {tok!r}") from None
    if val < 0:
        raise InputError(f"line {lineno}: negative vertex id {val}")
    return val


def format_graph(g: Graph) -> str:
    lines = [f"n {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def enumerate_squares(g: Graph) -> list[Square]:
    """Every 4-cycle subgraph of ``g`` exactly once, chords allowed.

    For each vertex ``a`` and each pair ``b < d`` of its larger neighbours,
    the opposite corners are the common neighbours ``c > a`` of ``b`` and
    ``d``. That is the Chiba-Nishizeki listing without the degree ordering,
    which only matters for asymptotics.
    """
    out = []
    adj = g.adjacency
    for a in range(g.vertex_count):
        up = [v for v in adj[a] if v > a]
        for i, b in enumerate(up):
            nb = g.neighbors(b)
            for d in up[i + 1:]:
                for c in adj[d]:
                    if c > a and c in nb:
                        out.append((a, b, c, d))
    out.sort()
    return [
        Square(s, (g.edge_id(s[0], s[1]), g.edge_id(s[1], s[2]), g.edge_id(s[2], s[3]), g.edge_id(s[3], s[0])))
        for s in out
    ]


def format_squares(squares: Iterable[Square]) -> str:
    return "".join(" ".join(map(str, sq.vertices)) + "\n" for sq in squares)


def _check_square(g: Graph, sq: Square) -> None:
    a, b, c, d = sq.vertices
    if len({a, b, c, d}) != 4 or not all(
        g.has_edge(u, v) for u, v in ((a, b), (b, c), (c, d), (d, a))
    ):
        raise ContractError(f"{sq.vertices} is not a square of the graph")


def square_in_k23(g: Graph, sq: Square) -> bool:
    """True iff the square lies inside some K_{2,3} subgraph of ``g``."""
    _check_square(g, sq)
    a, b, c, d = sq.vertices
    if (g.neighbors(a) & g.neighbors(c)) - {b, d}:
        return True
    return bool((g.neighbors(b) & g.neighbors(d)) - {a, c})


def is_k23_free(g: Graph) -> bool:
    # a K_{2,3} exists iff two vertices share three neighbours
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            if len(g.neighbors(u) & g.neighbors(v)) >= 3:
                return False
    return True


def components(g: Graph) -> VertexPartition:
    if g.vertex_count == 0:
        return VertexPartition(())
    _, labels = connected_components(g.adjacency_matrix(), directed=False)
    return VertexPartition.from_labels(labels)


def is_connected(g: Graph) -> bool:
    return g.vertex_count <= 1 or components(g).block_count == 1


def min_degree(g: Graph) -> int:
    if g.vertex_count == 0:
        raise InputError("minimum degree of the empty graph is undefined")
    return min(len(a) for a in g.adjacency)


def subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``vertices``, relabeled ``0..k-1`` in sorted order.

    Returns the subgraph and the tuple mapping new vertex ids to old ones.
    """
    keep = tuple(sorted(set(vertices)))
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return Graph(len(keep), edges), keep
