"""Cover graphs between layers of a class, homomorphism classification and cover-based gluing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .errors import ContractError, InputError
from .graph import Graph, components, subgraph
from .quotients import class_subgraph
from .relations import EdgeRelation
from .rsp import check_rsp, check_well_behaved

__all__ = [
    "CoverGraph",
    "VertexMap",
    "Joined",
    "NOT_HOMOMORPHISM",
    "HOMOMORPHISM",
    "LOCALLY_SURJECTIVE",
    "LOCALLY_BIJECTIVE",
    "build_cross_cover",
    "build_self_cover",
    "spanning_self_cover",
    "classify_map",
    "connect_quasicover",
    "connect_cover",
    "compose_common_cover",
    "check_layer_regularity",
    "format_map",
    "parse_map",
]

NOT_HOMOMORPHISM = "not-homomorphism"
HOMOMORPHISM = "homomorphism"
LOCALLY_SURJECTIVE = "locally-surjective"
LOCALLY_BIJECTIVE = "locally-bijective"
_RANK = {NOT_HOMOMORPHISM: 0, HOMOMORPHISM: 1, LOCALLY_SURJECTIVE: 2, LOCALLY_BIJECTIVE: 3}


@dataclass(frozen=True)
class VertexMap:
    domain: Graph
    codomain: Graph
    map: tuple[int, ...]
    classification: str
    fiber_sizes: tuple[int, ...] | None = None

    @property
    def is_homomorphism(self) -> bool:
        return _RANK[self.classification] >= 1

    @property
    def is_locally_surjective(self) -> bool:
        return _RANK[self.classification] >= 2

    @property
    def is_locally_bijective(self) -> bool:
        return _RANK[self.classification] >= 3

    @property
    def fold(self) -> int | None:
        """Common fibre size ``k`` of a covering map onto a connected graph."""
        if not self.fiber_sizes:
            return None
        sizes = set(self.fiber_sizes)
        return sizes.pop() if len(sizes) == 1 else None


def classify_map(f: Sequence[int] | Mapping[int, int], g: Graph, h: Graph) -> VertexMap:
    """Strongest of not-homomorphism / homomorphism / locally-surjective / locally-bijective.

    Locally bijective means the restriction to every open neighbourhood is a
    bijection onto the neighbourhood of the image.
    """
    if isinstance(f, Mapping):
        try:
            f = [f[v] for v in range(g.vertex_count)]
        except KeyError as exc:
            raise ContractError(f"map undefined on vertex {exc.args[0]}") from None
    fm = tuple(int(x) for x in f)
    if len(fm) != g.vertex_count:
        raise ContractError(f"map has {len(fm)} entries for {g.vertex_count} vertices")
    if any(not 0 <= x < h.vertex_count for x in fm):
        raise ContractError("map leaves the codomain vertex range")
    label = LOCALLY_BIJECTIVE
    for u, v in g.edges:
        if not h.has_edge(fm[u], fm[v]):
            return VertexMap(g, h, fm, NOT_HOMOMORPHISM)
    for u in range(g.vertex_count):
        image = [fm[w] for w in g.adjacency[u]]
        target = h.neighbors(fm[u])
        if set(image) != target:
            label = HOMOMORPHISM
            break
        if len(image) != len(target):
            label = LOCALLY_SURJECTIVE
    fibers = None
    if label == LOCALLY_BIJECTIVE and components(h).block_count == 1:
        counts = [0] * h.vertex_count
        for x in fm:
            counts[x] += 1
        fibers = tuple(counts)
    return VertexMap(g, h, fm, label, fibers)


@dataclass(frozen=True)
class CoverGraph:
    """Cover graph whose vertices are connecting edges ``(a, b)`` of the host.

    ``f1`` and ``f2`` send a cover vertex to its endpoints ``a`` and ``b``
    (host vertex ids). For the cross variant ``a`` lies in ``layer_x`` and
    ``b`` in ``layer_y``; for the self variant both lie in the one layer and
    every host edge appears in both orientations.
    """

    host: Graph
    relation: EdgeRelation
    class_id: int
    mode: str
    layer_x: tuple[int, ...]
    layer_y: tuple[int, ...]
    nodes: tuple[tuple[int, int], ...]
    graph: Graph

    @property
    def f1(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.nodes)

    @property
    def f2(self) -> tuple[int, ...]:
        return tuple(b for _, b in self.nodes)

    def layer_graph(self, which: int = 1) -> tuple[Graph, tuple[int, ...]]:
        """The layer as a relabeled graph plus the local-to-host vertex map."""
        layer = self.layer_x if which == 1 else self.layer_y
        return subgraph(class_subgraph(self.host, self.relation, self.class_id), layer)

    def classify(self, which: int = 1) -> VertexMap:
        """Classify ``f1`` (``which=1``) or ``f2`` as a map onto its layer."""
        layer_g, keep = self.layer_graph(which)
        local = {v: i for i, v in enumerate(keep)}
        proj = self.f1 if which == 1 else self.f2
        return classify_map([local[v] for v in proj], self.graph, layer_g)

    def induced_map(self) -> dict[int, int]:
        """``f2`` composed with the inverse of ``f1``; needs ``f1`` to be a bijection."""
        f1 = self.f1
        if len(set(f1)) != len(f1) or set(f1) != set(self.layer_x):
            raise ContractError("f1 is not a bijection onto the layer")
        return dict(sorted(zip(f1, self.f2)))


def _cover_edges(phi: Graph, nodes) -> list[tuple[int, int]]:
    # (a1,b1) ~ (a2,b2) iff [a1,a2] and [b1,b2] are class edges
    index = {nd: i for i, nd in enumerate(nodes)}
    edges = []
    for i, (a1, b1) in enumerate(nodes):
        for a2 in phi.adjacency[a1]:
            for b2 in phi.adjacency[b1]:
                j = index.get((a2, b2))
                if j is not None and i < j:
                    edges.append((i, j))
    return edges


def _layers(g: Graph, r: EdgeRelation, class_id: int):
    if not 0 <= class_id < r.class_count:
        raise ContractError(f"no class {class_id}")
    return class_subgraph(g, r, class_id), components(class_subgraph(g, r, class_id))


def _require_rsp(g: Graph, r: EdgeRelation) -> None:
    if not check_rsp(g, r).holds:
        raise ContractError("relation does not have the relaxed square property")


def build_cross_cover(g: Graph, r: EdgeRelation, class_id: int, x: int, y: int) -> CoverGraph:
    """Cover graph on the edges joining the class layers through ``x`` and ``y``."""
    _require_rsp(g, r)
    phi, parts = _layers(g, r, class_id)
    bx, by = parts.block_of[x], parts.block_of[y]
    if bx == by:
        raise InputError(f"{x} and {y} lie in the same layer; use build_self_cover")
    lx, ly = parts.blocks[bx], parts.blocks[by]
    sy = set(ly)
    nodes = tuple(sorted((a, b) for a in lx for b in g.adjacency[a] if b in sy))
    if not nodes:
        raise InputError(f"layers through {x} and {y} are not adjacent")
    cover = Graph(len(nodes), _cover_edges(phi, nodes))
    return CoverGraph(g, r, class_id, "cross", lx, ly, nodes, cover)


def build_self_cover(g: Graph, r: EdgeRelation, class_id: int, x: int | None = None) -> CoverGraph:
    """Cover graph on the oriented non-class edges inside one layer.

    With ``x=None`` the whole (possibly disconnected) class subgraph plays the
    role of the layer.
    """
    _require_rsp(g, r)
    phi, parts = _layers(g, r, class_id)
    layer = tuple(range(g.vertex_count)) if x is None else parts.blocks[parts.block_of[x]]
    return _self_cover(g, r, class_id, phi, layer)


def _self_cover(g, r, class_id, phi, layer) -> CoverGraph:
    inside = set(layer)
    nodes = tuple(
        sorted(
            (a, b)
            for a in layer
            for b in g.adjacency[a]
            if b in inside and r.class_of[g.edge_id(a, b)] != class_id
        )
    )
    if not nodes:
        raise InputError("no non-class edge joins two vertices of the layer")
    cover = Graph(len(nodes), _cover_edges(phi, nodes))
    return CoverGraph(g, r, class_id, "self", layer, layer, nodes, cover)


def spanning_self_cover(g: Graph, edge_ids) -> CoverGraph:
    """Self cover over the spanning subgraph formed by ``edge_ids``; no RSP requirement."""
    chosen = set(edge_ids)
    r = EdgeRelation.from_labels(e not in chosen for e in range(g.edge_count))
    class_id = r.class_of[min(chosen)]
    return _self_cover(g, r, class_id, class_subgraph(g, r, class_id), tuple(range(g.vertex_count)))


class Joined(NamedTuple):
    """Two graphs glued by connecting edges, with the 2-class relation {own edges, connecting edges}.

    The second graph's vertex ids are shifted by the first graph's vertex count.
    """

    graph: Graph
    relation: EdgeRelation

    def connecting_class(self, offset: int) -> int:
        """Class id of the connecting edges, given the id shift of the second graph."""
        for e, (u, v) in enumerate(self.graph.edges):
            if u < offset <= v:
                return self.relation.class_of[e]
        raise ContractError("no connecting edge")


def _join(g1: Graph, g2: Graph, cross) -> Joined:
    off = g1.vertex_count
    layer = set(g1.edges) | {(u + off, v + off) for u, v in g2.edges}
    h = Graph(off + g2.vertex_count, list(layer) + [(a, b + off) for a, b in cross])
    return Joined(h, EdgeRelation.from_labels(e not in layer for e in h.edges))


def connect_quasicover(g1: Graph, g2: Graph, g: Graph, f1, f2) -> Joined:
    """Glue ``g1`` and ``g2`` through a common quasi-cover ``g``.

    ``g2`` is shifted by ``g1.vertex_count``; ``[x, y]`` is added whenever some
    vertex of ``g`` maps to ``x`` under ``f1`` and to ``y`` under ``f2``.
    """
    m1, m2 = classify_map(f1, g, g1), classify_map(f2, g, g2)
    if not (m1.is_locally_surjective and m2.is_locally_surjective):
        raise ContractError("both maps must be locally surjective homomorphisms")
    cross = sorted({(m1.map[w], m2.map[w]) for w in range(g.vertex_count)})
    return _join(g1, g2, cross)


def connect_cover(g: Graph, g_prime: Graph, cover_map) -> Joined:
    """Join a cover to its base: every vertex of ``g`` gets exactly one connecting edge."""
    if not classify_map(cover_map, g, g_prime).is_locally_bijective:
        raise ContractError("map is not a covering map")
    return connect_quasicover(g, g_prime, g, range(g.vertex_count), cover_map)


def compose_common_cover(h12: Graph, g2: Graph, h23: Graph, maps) -> Joined:
    """Join two covers of ``g2``: ``[h, h']`` whenever both sit over the same vertex of ``g2``."""
    map12, map23 = maps
    c12, c23 = classify_map(map12, h12, g2), classify_map(map23, h23, g2)
    if not (c12.is_locally_bijective and c23.is_locally_bijective):
        raise ContractError("both maps must be covering maps onto g2")
    over: dict[int, list[int]] = {}
    for hp, v in enumerate(c23.map):
        over.setdefault(v, []).append(hp)
    cross = [(h, hp) for h, v in enumerate(c12.map) for hp in over.get(v, ())]
    return _join(h12, h23, cross)


def check_layer_regularity(g: Graph, r: EdgeRelation, class_id: int) -> bool:
    """Every vertex of a layer has the same number of non-class neighbours in any given layer."""
    _require_rsp(g, r)
    if check_well_behaved(g, r) is not None:
        raise ContractError("relation is not well-behaved")
    _, parts = _layers(g, r, class_id)
    block = parts.block_of
    for layer in parts.blocks:
        profile = None
        for v in layer:
            counts: dict[int, int] = {}
            for w in g.adjacency[v]:
                if r.class_of[g.edge_id(v, w)] != class_id:
                    counts[block[w]] = counts.get(block[w], 0) + 1
            if profile is None:
                profile = counts
            elif counts != profile:
                return False
    return True


def format_map(f: Sequence[int]) -> str:
    return "".join(f"{i} {v}\n" for i, v in enumerate(f))


def parse_map(text: str, n: int) -> list[int]:
    """Read a vertex map file of ``v image`` lines; every vertex ``0..n-1`` must appear once."""
    out: list = [None] * n
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if len(tok) != 2:
            raise InputError(f"line {lineno}: expected 'v image', got {line!r}")
        try:
            v, w = int(tok[0]), int(tok[1])
        except ValueError:
            raise InputError(f"line {lineno}: malformed token in {line!r}") from None
        if not 0 <= v < n or out[v] is not None:
            raise InputError(f"line {lineno}: vertex {v} out of range or repeated")
        if w < 0:
            raise InputError(f"line {lineno}: negative image {w}")
        out[v] = w
    if None in out:
        raise InputError(f"map is not total: vertex {out.index(None)} has no image")
    return out
