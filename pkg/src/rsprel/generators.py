"""Standard graph families, the circulant/bipartite RSP constructions and the fixture catalogue."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ContractError, InputError
from .graph import Graph
from .relations import EdgeRelation
from .rsp import ChoiceStep, check_rsp

__all__ = [
    "cycle",
    "path",
    "complete",
    "complete_bipartite",
    "hypercube",
    "petersen",
    "c6c9_chords",
    "c6_long_chords",
    "k5_choice_scripts",
    "km_relation",
    "kmm_relation",
    "kmn_relation",
    "another_km_relation",
    "FixtureSpec",
    "named_fixture",
    "FIXTURES",
]


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``path(2)`` is K_2)."""
    if n < 1:
        raise InputError(f"path needs at least 1 vertex, got {n}")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise InputError(f"complete graph needs at least 1 vertex, got {n}")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with parts ``0..m-1`` and ``m..m+n-1``."""
    if m < 1 or n < 1:
        raise InputError(f"K_{{{m},{n}}} needs non-empty parts")
    return Graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def hypercube(d: int) -> Graph:
    if d < 1:
        raise InputError(f"hypercube dimension must be positive, got {d}")
    n = 1 << d
    return Graph(n, [(v, v ^ (1 << i)) for v in range(n) for i in range(d) if v < v ^ (1 << i)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def c6c9_chords() -> tuple[Graph, EdgeRelation]:
    """C_6 on ``0..5`` and C_9 on ``6..14`` joined by ``[k, k mod 6]`` and ``[k, (k+3) mod 6]``.

    ``k`` runs over the nine C_9 vertices; the relation has the cycle edges as
    one class and the 18 connecting edges as the other.
    """
    edges = [(i, (i + 1) % 6) for i in range(6)]
    edges += [(6 + k, 6 + (k + 1) % 9) for k in range(9)]
    edges += [(6 + k, k % 6) for k in range(9)]
    edges += [(6 + k, (k + 3) % 6) for k in range(9)]
    g = Graph(15, edges)
    return g, EdgeRelation.from_labels(int(u < 6 and v >= 6) for u, v in g.edges)


def c6_long_chords() -> tuple[Graph, EdgeRelation]:
    """C_6 plus the three long diagonals; classes are cycle edges and diagonals."""
    g = Graph(6, [(k, (k + 1) % 6) for k in range(6)] + [(1, 4), (2, 5), (3, 0)])
    return g, EdgeRelation.from_labels(int(v - u == 3) for u, v in g.edges)


def k5_choice_scripts() -> tuple[list[ChoiceStep], list[ChoiceStep]]:
    """The two hand-picked merge orders on K_5 (one ends with two classes, the other with one)."""
    first = [
        ChoiceStep((0, 1), (1, 4), (0, 1, 4, 3)),
        ChoiceStep((0, 1), (1, 2), (0, 1, 2, 3)),
        ChoiceStep((0, 1), (0, 4), (0, 1, 2, 4)),
        ChoiceStep((0, 1), (0, 2), (0, 1, 4, 2)),
        ChoiceStep((0, 1), (1, 3), (0, 1, 3, 4)),
    ]
    second = [
        ChoiceStep((0, 1), (0, 4), (0, 1, 3, 4)),
        ChoiceStep((1, 2), (1, 3), (1, 2, 4, 3)),
        ChoiceStep((1, 4), (3, 4), (1, 2, 3, 4)),
        ChoiceStep((0, 1), (0, 3), (0, 1, 2, 3)),
        ChoiceStep((0, 2), (2, 3), (0, 2, 3, 4)),
    ]
    return first, second


def km_relation(m: int) -> tuple[Graph, EdgeRelation]:
    """K_m on Z_m with one class per cyclic difference ``1..floor(m/2)``."""
    if m < 3:
        raise InputError(f"km_relation needs m >= 3, got {m}")
    g = complete(m)
    return g, EdgeRelation.from_labels(min(v - u, m - (v - u)) for u, v in g.edges)


def kmm_relation(m: int, s: EdgeRelation) -> tuple[Graph, EdgeRelation]:
    """K_{m,m} on ``{0,1} x Z_m`` (vertex ``p*m + i``) built from an RSP-relation ``s`` on K_m.

    Edges joining equal second coordinates form one class; every other edge
    takes the class of its projection ``[i, j]`` under ``s``.
    """
    if m < 2:
        raise InputError(f"kmm_relation needs m >= 2, got {m}")
    km = complete(m)
    if s.edge_count != km.edge_count:
        raise ContractError(f"relation has {s.edge_count} edges, K_{m} has {km.edge_count}")
    if not check_rsp(km, s).holds:
        raise ContractError("seed relation on K_m is not an RSP-relation")
    g = complete_bipartite(m, m)
    labels = []
    for u, v in g.edges:
        i, j = u, v - m
        labels.append(("match",) if i == j else ("s", s.class_of[km.edge_id(i, j)]))
    return g, EdgeRelation.from_labels(labels)


def kmn_relation(m: int, n: int, s: EdgeRelation, k: list[int] | None = None) -> tuple[Graph, EdgeRelation]:
    """Extend an RSP-relation ``s`` on K_{m,m} to K_{m,n} by copying columns.

    Vertices ``0..m-1`` are the small side and ``m..m+n-1`` the large side, so
    K_{m,m} sits on the first ``2m`` ids. Extra column ``m+i`` (``i = 1..n-m``)
    repeats the class pattern of column ``k[i-1]`` (1-based); by default
    ``k_i = ((i-1) mod m) + 1``.
    """
    if not 1 <= m < n:
        raise InputError(f"kmn_relation needs 1 <= m < n, got m={m}, n={n}")
    kmm = complete_bipartite(m, m)
    if s.edge_count != kmm.edge_count:
        raise ContractError(f"relation has {s.edge_count} edges, K_{{{m},{m}}} has {kmm.edge_count}")
    if not check_rsp(kmm, s).holds:
        raise ContractError("seed relation on K_{m,m} is not an RSP-relation")
    if k is None:
        k = [((i - 1) % m) + 1 for i in range(1, n - m + 1)]
    if len(k) != n - m or any(not 1 <= ki <= m for ki in k):
        raise InputError(f"column assignment {k} must have {n - m} entries in 1..{m}")
    g = complete_bipartite(m, n)
    labels = []
    for x, y in g.edges:
        col = y - m
        src = col if col < m else k[col - m] - 1
        labels.append(s.class_of[kmm.edge_id(x, m + src)])
    return g, EdgeRelation.from_labels(labels)


def another_km_relation(n: int) -> tuple[Graph, EdgeRelation]:
    """K_n with one class ``{[0,1]}`` plus all edges inside ``{2..n-1}``, the cross edges as the other."""
    if n < 5:
        raise InputError(f"another_km_relation needs n >= 5, got {n}")
    g = complete(n)
    return g, EdgeRelation.from_labels(int(u < 2 <= v) for u, v in g.edges)


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    params: tuple[int, ...] = ()
    expected_properties: dict = field(default_factory=dict, compare=False, hash=False)


def _graph_only(builder):
    return lambda *p: (builder(*p), None)


FIXTURES = {
    "cycle": _graph_only(cycle),
    "path": _graph_only(path),
    "complete": _graph_only(complete),
    "complete_bipartite": _graph_only(complete_bipartite),
    "hypercube": _graph_only(hypercube),
    "petersen": _graph_only(petersen),
    "c6c9_chords": c6c9_chords,
    "c6_long_chords": c6_long_chords,
    "k5_paper_orderings": lambda: (complete(5), None),
    "km": km_relation,
    "another_km": another_km_relation,
}


def named_fixture(spec: FixtureSpec | str) -> tuple[Graph, EdgeRelation | None]:
    """Resolve a fixture by name, e.g. ``FixtureSpec("cycle", (6,))``."""
    if isinstance(spec, str):
        spec = FixtureSpec(spec)
    try:
        builder = FIXTURES[spec.name]
    except KeyError:
        raise InputError(f"unknown fixture {spec.name!r}; known: {', '.join(sorted(FIXTURES))}") from None
    try:
        return builder(*spec.params)
    except TypeError as exc:
        raise InputError(f"bad parameters {spec.params} for fixture {spec.name!r}: {exc}") from None
