"""Cartesian, strong and direct products with coordinate labels, and product relations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian_set_product
from typing import Sequence

from .errors import ContractError, InputError
from .graph import Graph
from .relations import EdgeRelation

__all__ = [
    "KINDS",
    "LabeledProduct",
    "build_product",
    "product_relation",
    "format_coords",
]

KINDS = ("cartesian", "strong", "direct")


@dataclass(frozen=True)
class LabeledProduct:
    kind: str
    factors: tuple[Graph, ...]
    graph: Graph
    coords: tuple[tuple[int, ...], ...]

    def project(self, i: int, v: int) -> int:
        return self.coords[v][i]

    def support(self, e: int) -> frozenset[int]:
        """Factors in which edge ``e`` projects to an edge (the others it fixes)."""
        u, v = self.graph.edges[e]
        cu, cv = self.coords[u], self.coords[v]
        return frozenset(i for i in range(len(self.factors)) if cu[i] != cv[i])

    def vertex_of(self, coord: Sequence[int]) -> int:
        v = 0
        for c, f in zip(coord, self.factors):
            v = v * f.vertex_count + c
        return v


def _adjacent(kind: str, factors, cu, cv) -> bool:
    moved = 0
    for f, a, b in zip(factors, cu, cv):
        if a == b:
            if kind == "direct":
                return False
            continue
        if not f.has_edge(a, b):
            return False
        moved += 1
    if moved == 0:
        return False
    return moved == 1 if kind == "cartesian" else True


def build_product(kind: str, factors: Sequence[Graph]) -> LabeledProduct:
    """Product of two or more factors; vertex ids enumerate coordinate tuples in row-major order."""
    if kind not in KINDS:
        raise InputError(f"unknown product kind {kind!r}; choose from {', '.join(KINDS)}")
    factors = tuple(factors)
    if len(factors) < 2:
        raise InputError("a product needs at least two factors")
    if any(f.vertex_count == 0 for f in factors):
        raise InputError("empty factor graph")
    coords = tuple(cartesian_set_product(*(range(f.vertex_count) for f in factors)))
    index = {c: i for i, c in enumerate(coords)}
    edges = []
    for u, cu in enumerate(coords):
        # candidates: each coordinate stays or moves to a neighbour
        options = [(a,) + f.adjacency[a] for f, a in zip(factors, cu)]
        for cv in cartesian_set_product(*options):
            v = index[cv]
            if v > u and _adjacent(kind, factors, cu, cv):
                edges.append((u, v))
    return LabeledProduct(kind, factors, Graph(len(coords), edges), coords)


def product_relation(p: LabeledProduct, factor_relations: Sequence[EdgeRelation]) -> EdgeRelation:
    """Edges are related iff they have the same support and related projections on it."""
    if len(factor_relations) != len(p.factors):
        raise ContractError(f"{len(factor_relations)} relations for {len(p.factors)} factors")
    for i, (f, r) in enumerate(zip(p.factors, factor_relations)):
        if r.edge_count != f.edge_count:
            raise ContractError(f"relation {i} covers {r.edge_count} edges, factor has {f.edge_count}")
    labels = []
    for e, (u, v) in enumerate(p.graph.edges):
        cu, cv = p.coords[u], p.coords[v]
        key = []
        for i, (f, r) in enumerate(zip(p.factors, factor_relations)):
            if cu[i] != cv[i]:
                key.append((i, r.class_of[f.edge_id(cu[i], cv[i])]))
        labels.append(tuple(key))
    return EdgeRelation.from_labels(labels)


def format_coords(p: LabeledProduct) -> str:
    return "".join(f"{v}: ({','.join(map(str, c))})\n" for v, c in enumerate(p.coords))
