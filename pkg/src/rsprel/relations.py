"""Equivalence relations on edge sets and the generating relations tau, delta_0, delta_1."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import ContractError, InputError
from .graph import Graph, enumerate_squares, square_in_k23, subgraph

__all__ = [
    "EdgeRelation",
    "PairSet",
    "compute_tau",
    "compute_delta0",
    "compute_delta1",
    "transitive_closure",
    "is_refinement",
    "remove_class",
    "restrict",
    "merge_classes",
    "parse_relation",
    "format_relation",
]


@dataclass(frozen=True)
class EdgeRelation:
    """Partition of the edge ids ``0..m-1`` into classes.

    Class ids are canonical: class 0 holds edge 0, class 1 holds the smallest
    edge outside class 0, and so on. Two relations are therefore equal as
    partitions exactly when their ``class_of`` tuples are equal.
    """

    class_of: tuple[int, ...]

    def __post_init__(self):
        expected = 0
        for c in self.class_of:
            if c > expected:
                raise ContractError("class ids are not canonical; use EdgeRelation.from_labels")
            if c == expected:
                expected += 1

    @classmethod
    def from_labels(cls, labels: Iterable) -> "EdgeRelation":
        """Canonicalize arbitrary hashable labels (one per edge id)."""
        seen: dict = {}
        return cls(tuple(seen.setdefault(lab, len(seen)) for lab in labels))

    @classmethod
    def from_classes(cls, edge_count: int, classes: Iterable[Iterable[int]]) -> "EdgeRelation":
        labels = [-1] * edge_count
        for c, members in enumerate(classes):
            for e in members:
                if not 0 <= e < edge_count:
                    raise ContractError(f"edge id {e} out of range")
                if labels[e] != -1:
                    raise ContractError(f"edge {e} is in two classes")
                labels[e] = c
        if -1 in labels:
            raise ContractError(f"edge {labels.index(-1)} is in no class")
        return cls.from_labels(labels)

    @classmethod
    def trivial(cls, edge_count: int) -> "EdgeRelation":
        return cls((0,) * edge_count)

    @classmethod
    def discrete(cls, edge_count: int) -> "EdgeRelation":
        return cls(tuple(range(edge_count)))

    @property
    def edge_count(self) -> int:
        return len(self.class_of)

    @property
    def class_count(self) -> int:
        return max(self.class_of) + 1 if self.class_of else 0

    @cached_property
    def classes(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.class_count)]
        for e, c in enumerate(self.class_of):
            out[c].add(e)
        return tuple(frozenset(s) for s in out)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.class_of, dtype=np.int64)

    def same_class(self, e: int, f: int) -> bool:
        return self.class_of[e] == self.class_of[f]

    def class_sizes(self) -> list[int]:
        return sorted(len(c) for c in self.classes)


class PairSet:
    """Symmetric set of unordered edge-id pairs, the raw generators of a relation."""

    __slots__ = ("edge_count", "pairs")

    def __init__(self, edge_count: int, pairs: Iterable[Sequence[int]] = ()):
        canon = set()
        for p in pairs:
            e, f = int(p[0]), int(p[1])
            if not (0 <= e < edge_count and 0 <= f < edge_count):
                raise ContractError(f"pair ({e}, {f}) outside edge range 0..{edge_count - 1}")
            if e != f:
                canon.add((e, f) if e < f else (f, e))
        self.edge_count = edge_count
        self.pairs = frozenset(canon)

    def __contains__(self, pair) -> bool:
        e, f = pair
        return e == f or ((e, f) if e < f else (f, e)) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __or__(self, other: "PairSet") -> "PairSet":
        if other.edge_count != self.edge_count:
            raise ContractError("pair sets over different edge sets")
        return PairSet(self.edge_count, self.pairs | other.pairs)

    def __le__(self, other: "PairSet") -> bool:
        return self.pairs <= other.pairs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairSet):
            return NotImplemented
        return self.edge_count == other.edge_count and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash((self.edge_count, self.pairs))

    def __repr__(self) -> str:
        return f"PairSet(edge_count={self.edge_count}, pairs={sorted(self.pairs)})"


def compute_tau(g: Graph) -> PairSet:
    """Adjacent edges ``[x,z], [z,y]`` such that ``z`` is the only common neighbour of ``x`` and ``y``."""
    pairs = []
    for z in range(g.vertex_count):
        nb = g.adjacency[z]
        for i, x in enumerate(nb):
            nx_ = g.neighbors(x)
            for y in nb[i + 1:]:
                if len(nx_ & g.neighbors(y)) == 1:
                    pairs.append((g.edge_id(x, z), g.edge_id(z, y)))
    return PairSet(g.edge_count, pairs)


def compute_delta0(g: Graph) -> PairSet:
    pairs = [p for sq in enumerate_squares(g) for p in sq.opposite_pairs]
    return PairSet(g.edge_count, pairs) | compute_tau(g)


def compute_delta1(g: Graph) -> PairSet:
    pairs = [p for sq in enumerate_squares(g) if not square_in_k23(g, sq) for p in sq.opposite_pairs]
    return PairSet(g.edge_count, pairs)


def transitive_closure(p: PairSet, edge_count: int | None = None) -> EdgeRelation:
    """Finest equivalence relation containing the pairs of ``p``."""
    m = p.edge_count if edge_count is None else edge_count
    if m < p.edge_count:
        raise ContractError(f"pair set references edges beyond {m}")
    if m == 0:
        return EdgeRelation(())
    rows = [e for e, _ in p.pairs]
    cols = [f for _, f in p.pairs]
    adj = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m, m))
    _, labels = connected_components(adj, directed=False)
    return EdgeRelation.from_labels(labels.tolist())


def is_refinement(q: EdgeRelation, r: EdgeRelation) -> bool:
    """True iff every class of ``q`` lies inside a class of ``r``."""
    if q.edge_count != r.edge_count:
        raise ContractError(f"relations over {q.edge_count} and {r.edge_count} edges")
    image: dict[int, int] = {}
    for a, b in zip(q.class_of, r.class_of):
        if image.setdefault(a, b) != b:
            return False
    return True


def merge_classes(r: EdgeRelation, a: int, b: int) -> EdgeRelation:
    if not (0 <= a < r.class_count and 0 <= b < r.class_count):
        raise ContractError(f"class ids {a}, {b} out of range")
    return EdgeRelation.from_labels(a if c == b else c for c in r.class_of)


def remove_class(g: Graph, r: EdgeRelation, class_id: int) -> tuple[Graph, EdgeRelation, tuple[int, ...]]:
    """Drop one class: spanning subgraph on the remaining edges with the restricted relation.

    The third element maps each new edge id to its id in ``g``.
    """
    if r.edge_count != g.edge_count:
        raise ContractError("relation does not cover the edge set")
    if r.class_count < 2:
        raise ContractError("cannot remove the only class of a relation")
    if not 0 <= class_id < r.class_count:
        raise ContractError(f"no class {class_id}")
    kept = tuple(e for e in range(g.edge_count) if r.class_of[e] != class_id)
    h = Graph(g.vertex_count, [g.edges[e] for e in kept])
    # Graph sorts its edges and ``kept`` is already in sorted edge order
    return h, EdgeRelation.from_labels(r.class_of[e] for e in kept), kept


def restrict(g: Graph, r: EdgeRelation, vertices: Iterable[int]) -> tuple[Graph, EdgeRelation]:
    """Induced subgraph on ``vertices`` (relabeled) with the relation restricted to it."""
    h, keep = subgraph(g, vertices)
    labels = [r.class_of[g.edge_id(keep[u], keep[v])] for u, v in h.edges]
    return h, EdgeRelation.from_labels(labels)


def parse_relation(text: str, g: Graph) -> EdgeRelation:
    """Read lines ``u v c`` assigning edge ``[u,v]`` to class label ``c``."""
    labels: list = [None] * g.edge_count
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if len(tok) != 3:
            raise InputError(f"line {lineno}: expected 'u v c', got {line!r}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise InputError(f"line {lineno}: malformed vertex id in {line!r}") from None
        if not g.has_edge(u, v):
            raise InputError(f"line {lineno}: [{u},{v}] is not an edge")
        e = g.edge_id(u, v)
        if labels[e] is not None:
            raise InputError(f"line {lineno}: edge [{u},{v}] assigned twice")
        labels[e] = tok[2]
    missing = [g.edges[e] for e, lab in enumerate(labels) if lab is None]
    if missing:
        raise InputError(f"relation is not total: edge {list(missing[0])} has no class")
    return EdgeRelation.from_labels(labels)


def format_relation(g: Graph, r: EdgeRelation) -> str:
    if r.edge_count != g.edge_count:
        raise ContractError("relation does not cover the edge set")
    return "".join(f"{u} {v} {c}\n" for (u, v), c in zip(g.edges, r.class_of))
