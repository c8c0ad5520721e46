"""Layer partitions of an edge relation, quotient graphs, equitable partitions, isomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from ._bijection import find_bijection
from .errors import ContractError, InputError, ResourceError
from .graph import Graph, VertexPartition, components
from .products import build_product
from .relations import EdgeRelation

__all__ = [
    "VertexPartition",
    "EquitableCertificate",
    "class_subgraph",
    "layer_partition",
    "common_refinement",
    "refined_partition",
    "quotient_graph",
    "is_equitable",
    "is_isomorphic",
    "cartesian_power",
    "quotient_product_holds",
    "format_partition",
    "parse_partition",
]


@dataclass(frozen=True)
class EquitableCertificate:
    """``matrix[A][B]`` is the number of neighbours in block ``B`` of any vertex of block ``A``."""

    matrix: np.ndarray

    def format(self) -> str:
        return "".join(" ".join(map(str, row)) + "\n" for row in self.matrix.tolist())


def class_subgraph(g: Graph, r: EdgeRelation, class_id: int, complement: bool = False) -> Graph:
    """Spanning subgraph on one class (or on all other classes)."""
    if r.edge_count != g.edge_count:
        raise ContractError("relation does not cover the edge set")
    if not 0 <= class_id < r.class_count:
        raise ContractError(f"no class {class_id}")
    keep = [g.edges[e] for e, c in enumerate(r.class_of) if (c == class_id) != complement]
    return Graph(g.vertex_count, keep)


def layer_partition(g: Graph, r: EdgeRelation, class_id: int, complement: bool = False) -> VertexPartition:
    """Connected components of the spanning subgraph on a class (or its complement)."""
    return components(class_subgraph(g, r, class_id, complement))


def common_refinement(parts: Sequence[VertexPartition]) -> VertexPartition:
    if not parts:
        raise ContractError("common refinement of no partitions")
    n = parts[0].vertex_count
    if any(p.vertex_count != n for p in parts):
        raise ContractError("partitions over different vertex sets")
    return VertexPartition.from_labels(zip(*(p.block_of for p in parts)))


def refined_partition(g: Graph, r: EdgeRelation) -> VertexPartition:
    """Common refinement of the complement-layer partitions over all classes."""
    if r.class_count == 0:
        return VertexPartition.from_labels(range(g.vertex_count))
    return common_refinement([layer_partition(g, r, c, complement=True) for c in range(r.class_count)])


def quotient_graph(g: Graph, p: VertexPartition) -> Graph:
    """Blocks as vertices, joined when some edge crosses between them; loops dropped."""
    if p.vertex_count != g.vertex_count:
        raise ContractError("partition and graph have different vertex sets")
    b = p.block_of
    edges = {(min(b[u], b[v]), max(b[u], b[v])) for u, v in g.edges if b[u] != b[v]}
    return Graph(p.block_count, edges)


def is_equitable(g: Graph, p: VertexPartition) -> EquitableCertificate | None:
    if p.vertex_count != g.vertex_count:
        raise ContractError("partition and graph have different vertex sets")
    if g.vertex_count == 0:
        return EquitableCertificate(np.zeros((0, 0), dtype=np.int64))
    # counts[v, B] = |N(v) & B|
    counts = np.asarray(g.adjacency_matrix() @ p.indicator())
    block_of = np.asarray(p.block_of)
    first = np.array([blk[0] for blk in p.blocks])
    expected = counts[first]
    if not np.array_equal(counts, expected[block_of]):
        return None
    return EquitableCertificate(expected)


def is_isomorphic(g: Graph, h: Graph, limit: int = 24) -> bool:
    if max(g.vertex_count, h.vertex_count) > limit:
        raise ResourceError(f"isomorphism search refuses more than {limit} vertices")
    return find_bijection(g, h) is not None


def cartesian_power(graphs: Sequence[Graph]) -> Graph:
    """Cartesian product of any number of graphs (one graph is returned as is, none gives K_1)."""
    graphs = list(graphs)
    if not graphs:
        return Graph(1)
    if len(graphs) == 1:
        return graphs[0]
    return reduce(lambda a, b: build_product("cartesian", [a, b]).graph, graphs)


def quotient_product_holds(g: Graph, r: EdgeRelation, limit: int = 24) -> bool:
    """Compare the quotient by the refined partition with the product of per-class quotients."""
    lhs = quotient_graph(g, refined_partition(g, r))
    factors = [
        quotient_graph(class_subgraph(g, r, c), layer_partition(g, r, c, complement=True))
        for c in range(r.class_count)
    ]
    # K_1 factors do not change a Cartesian product
    factors = [f for f in factors if f.vertex_count > 1]
    total = 1
    for f in factors:
        total *= f.vertex_count
    if total != lhs.vertex_count:
        return False
    return is_isomorphic(lhs, cartesian_power(factors), limit)


def format_partition(p: VertexPartition) -> str:
    return "".join(f"{v} {b}\n" for v, b in enumerate(p.block_of))


def parse_partition(text: str, n: int) -> VertexPartition:
    labels: list = [None] * n
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if len(tok) != 2:
            raise InputError(f"line {lineno}: expected 'v block', got {line!r}")
        try:
            v = int(tok[0])
        except ValueError:
            raise InputError(f"line {lineno}: malformed vertex id {tok[0]!r}") from None
        if not 0 <= v < n or labels[v] is not None:
            raise InputError(f"line {lineno}: vertex {v} out of range or repeated")
        labels[v] = tok[1]
    if None in labels:
        raise InputError(f"partition is not total: vertex {labels.index(None)} has no block")
    return VertexPartition.from_labels(labels)
