"""Relaxed square property: predicate, well-behavedness, the merging heuristic and exact oracles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from ._bijection import find_bijection
from .errors import ContractError, InputError, ResourceError
from .graph import Graph, Square, enumerate_squares, is_connected
from .relations import (
    EdgeRelation,
    compute_delta1,
    compute_tau,
    is_refinement,
    transitive_closure,
)

__all__ = [
    "RspReport",
    "ForbiddenColoringWitness",
    "ChoiceStep",
    "check_rsp",
    "check_class_cover",
    "check_well_behaved",
    "find_forbidden_k23",
    "algorithm1",
    "lower_bound_relation",
    "oracle_finest",
    "find_refinement",
    "verify_finest",
    "relations_equivalent",
    "parse_script",
    "format_script",
]

Pair = tuple[int, int]


@dataclass(frozen=True)
class RspReport:
    holds: bool
    witness: tuple[Pair, Pair] | None = None

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "rsp: holds"
        e, f = self.witness
        return f"rsp: fails at [{e[0]},{e[1]}] [{f[0]},{f[1]}]: no square with same-class opposite edges"


@dataclass(frozen=True)
class ForbiddenColoringWitness:
    """K_{2,3} on ``{x, y} | {a, b, c}`` whose edges ``[a,x], [x,c], [y,b]`` form one class.

    ``classes`` lists the six edges with their class ids.
    """

    x: int
    y: int
    a: int
    b: int
    c: int
    classes: tuple[tuple[Pair, int], ...]

    def describe(self) -> str:
        cls = " ".join(f"[{u},{v}]:{c}" for (u, v), c in self.classes)
        return f"forbidden K23 x={self.x} y={self.y} a={self.a} b={self.b} c={self.c} {cls}"


@dataclass(frozen=True)
class ChoiceStep:
    """One forced choice for :func:`algorithm1`: the adjacent pair to take and the square to use."""

    e: Pair
    f: Pair
    square: tuple[int, int, int, int]


@lru_cache(maxsize=128)
def _square_options(g: Graph) -> tuple[tuple[int, int, tuple[Pair, ...]], ...]:
    # for every adjacent pair e=[x,y], f=[x,z] (e < f), the opposite edges
    # ([z,w], [y,w]) of each square x-y-w-z they span
    out = []
    for e, f, x in g.adjacent_edge_pairs:
        ue, ve = g.edges[e]
        uf, vf = g.edges[f]
        y = ve if ue == x else ue
        z = vf if uf == x else uf
        opts = []
        for w in sorted((g.neighbors(y) & g.neighbors(z)) - {x}):
            opts.append((g.edge_id(z, w), g.edge_id(y, w)))
        out.append((e, f, tuple(opts)))
    return tuple(out)


def _require_total(g: Graph, r: EdgeRelation) -> None:
    if r.edge_count != g.edge_count:
        raise ContractError(f"relation covers {r.edge_count} edges, graph has {g.edge_count}")


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise InputError("graph is not connected")


def _first_violation(options, cls: Sequence[int]) -> tuple[int, int] | None:
    for e, f, opts in options:
        ce, cf = cls[e], cls[f]
        if ce == cf:
            continue
        for e1, f1 in opts:
            if cls[e1] == ce and cls[f1] == cf:
                break
        else:
            return e, f
    return None


def check_rsp(g: Graph, r: EdgeRelation) -> RspReport:
    """Check that adjacent edges in distinct classes span a square with same-class opposite edges.

    On failure the witness is the lexicographically first offending pair of
    edge ids, reported as vertex pairs.
    """
    _require_connected(g)
    _require_total(g, r)
    bad = _first_violation(_square_options(g), r.class_of)
    if bad is None:
        return RspReport(True)
    return RspReport(False, (g.edges[bad[0]], g.edges[bad[1]]))


def check_class_cover(g: Graph, r: EdgeRelation) -> bool:
    """Every vertex meets every class (necessary for RSP on connected graphs)."""
    _require_total(g, r)
    k = r.class_count
    for v in range(g.vertex_count):
        if len({r.class_of[e] for e in g.incident_edges(v)}) != k:
            return False
    return True


def _witness(g: Graph, cls, x, y, a, b, c) -> ForbiddenColoringWitness:
    edges = [(a, x), (x, c), (y, b), (a, y), (c, y), (x, b)]
    return ForbiddenColoringWitness(
        x, y, a, b, c, tuple(((min(u, v), max(u, v)), cls[g.edge_id(u, v)]) for u, v in edges)
    )


def check_well_behaved(g: Graph, r: EdgeRelation) -> ForbiddenColoringWitness | None:
    """First K_{2,3} with a forbidden colouring, or ``None`` if there is none.

    Each forbidden K_{2,3} contains a square ``a-x-c-y`` whose two edges at
    ``x`` share a class that neither edge at ``y`` has; the scan walks those
    squares and looks for the completing vertex ``b``.
    """
    _require_total(g, r)
    cls = r.class_of
    eid = g.edge_id
    for sq in enumerate_squares(g):
        vs = sq.vertices
        for i in range(4):
            x, c, y, a = vs[i], vs[(i + 1) % 4], vs[(i + 2) % 4], vs[(i + 3) % 4]
            phi = cls[eid(a, x)]
            if cls[eid(x, c)] != phi or cls[eid(c, y)] == phi or cls[eid(a, y)] == phi:
                continue
            for b in sorted((g.neighbors(x) & g.neighbors(y)) - {a, c}):
                if cls[eid(y, b)] == phi and cls[eid(x, b)] != phi:
                    return _witness(g, cls, x, y, min(a, c), b, max(a, c))
    return None


def find_forbidden_k23(g: Graph, r: EdgeRelation) -> list[tuple[int, int, int, int, int]]:
    """All forbidden colourings as ``(x, y, a, b, c)`` with ``a < c``, by scanning every K_{2,3}."""
    _require_total(g, r)
    cls = r.class_of
    eid = g.edge_id
    out = []
    for x in range(g.vertex_count):
        for y in range(g.vertex_count):
            if x == y:
                continue
            common = sorted(g.neighbors(x) & g.neighbors(y))
            if len(common) < 3:
                continue
            for b in common:
                for a, c in combinations([v for v in common if v != b], 2):
                    phi = cls[eid(a, x)]
                    if (
                        cls[eid(x, c)] == phi
                        and cls[eid(y, b)] == phi
                        and cls[eid(a, y)] != phi
                        and cls[eid(c, y)] != phi
                        and cls[eid(x, b)] != phi
                    ):
                        out.append((x, y, a, b, c))
    return sorted(out)


def lower_bound_relation(g: Graph) -> EdgeRelation:
    """``(tau | delta_1)*``, contained in every RSP-relation."""
    return transitive_closure(compute_tau(g) | compute_delta1(g), g.edge_count)


def _spanned_squares(g: Graph, e: int, f: int) -> list[tuple[tuple[int, ...], int, int]]:
    # squares spanned by adjacent e, f as (canonical vertices, opposite of e, opposite of f)
    (a, b), (c, d) = g.edges[e], g.edges[f]
    x = ({a, b} & {c, d}).pop()
    y = b if a == x else a
    z = d if c == x else c
    out = []
    for w in (g.neighbors(y) & g.neighbors(z)) - {x}:
        out.append((Square.canonical((x, y, w, z)), g.edge_id(z, w), g.edge_id(y, w)))
    out.sort()
    return out


def algorithm1(
    g: Graph,
    order: Iterable[ChoiceStep] | None = None,
    trace: list | None = None,
) -> EdgeRelation:
    """Grow ``(delta_1 | tau)*`` by merging classes until the relaxed square property holds.

    ``order`` forces the first choices (pair taken from the queue and square
    used to merge); afterwards, and by default, pairs are taken in
    lexicographic edge-id order and the lexicographically first spanned
    square is used. If ``trace`` is a list, each merge is appended to it as
    ``(e, f, square_vertices)``.
    """
    _require_connected(g)
    base = lower_bound_relation(g)
    ds = DisjointSet(range(g.edge_count))
    for cls_members in base.classes:
        first = min(cls_members)
        for e in cls_members:
            ds.merge(first, e)

    def satisfied(e: int, f: int) -> bool:
        return any(
            ds.connected(e, e1) and ds.connected(f, f1) for _, e1, f1 in _spanned_squares(g, e, f)
        )

    def merge(e: int, f: int, sq, e1: int, f1: int) -> None:
        ds.merge(e, e1)
        ds.merge(f, f1)
        if trace is not None:
            trace.append((g.edges[e], g.edges[f], sq))

    for step in order or ():
        try:
            e, f = g.edge_id(*step.e), g.edge_id(*step.f)
        except KeyError:
            raise ContractError(f"choice {step} names a non-edge") from None
        if not set(g.edges[e]) & set(g.edges[f]) or e == f:
            raise ContractError(f"choice {step} does not name two adjacent edges")
        if ds.connected(e, f) or satisfied(e, f):
            continue
        want = Square.canonical(step.square)
        for sq, e1, f1 in _spanned_squares(g, e, f):
            if sq == want:
                merge(e, f, sq, e1, f1)
                break
        else:
            raise ContractError(f"square {step.square} is not spanned by {step.e} and {step.f}")

    for e, f, _ in g.adjacent_edge_pairs:
        if ds.connected(e, f) or satisfied(e, f):
            continue
        sq, e1, f1 = _spanned_squares(g, e, f)[0]
        merge(e, f, sq, e1, f1)
        # after merging this square has same-class opposite edges, so the
        # pair leaves the queue on its next visit

    return EdgeRelation.from_labels(ds[e] for e in range(g.edge_count))


def parse_script(text: str) -> list[ChoiceStep]:
    """Read choice steps, one per line: ``eu ev fu fv a b c d``."""
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            t = [int(x) for x in line.split()]
        except ValueError:
            raise InputError(f"line {lineno}: malformed token in {line!r}") from None
        if len(t) != 8:
            raise InputError(f"line {lineno}: expected 8 integers, got {len(t)}")
        steps.append(ChoiceStep((t[0], t[1]), (t[2], t[3]), (t[4], t[5], t[6], t[7])))
    return steps


# exhaustive searches ---------------------------------------------------------


def format_script(steps: Iterable[ChoiceStep]) -> str:
    return "".join(" ".join(map(str, (*s.e, *s.f, *s.square))) + "\n" for s in steps)


def _ready_at(options, position) -> dict[int, list]:
    # bucket each RSP constraint by the search step at which all its edges are fixed
    ready: dict[int, list] = {}
    for e, f, opts in options:
        involved = [e, f] + [x for pair in opts for x in pair]
        pos = [position[x] for x in involved if x in position]
        if pos:
            ready.setdefault(max(pos), []).append((e, f, opts))
    return ready


def _constraint_ok(cls, e, f, opts) -> bool:
    ce, cf = cls[e], cls[f]
    if ce == cf:
        return True
    for e1, f1 in opts:
        if cls[e1] == ce and cls[f1] == cf:
            return True
    return False


def _all_rsp_relations(g: Graph) -> list[EdgeRelation]:
    m = g.edge_count
    options = _square_options(g)
    ready = _ready_at(options, {e: e for e in range(m)})
    # vertices whose incident edges are all assigned after step k
    closes: dict[int, list[list[int]]] = {}
    for v in range(g.vertex_count):
        inc = g.incident_edges(v)
        if inc:
            closes.setdefault(max(inc), []).append(inc)
    cap = min(g.degree(v) for v in range(g.vertex_count))
    cls = [0] * m
    found: list[EdgeRelation] = []

    def rec(k: int, used: int, frozen: bool) -> None:
        if k == m:
            r = EdgeRelation(tuple(cls))
            if check_rsp(g, r).holds:
                found.append(r)
            return
        top = used if frozen else min(used + 1, cap)
        for lab in range(top):
            cls[k] = lab
            nused = max(used, lab + 1)
            if not all(_constraint_ok(cls, *c) for c in ready.get(k, ())):
                continue
            # a finished vertex must already meet every class, and no class may open later
            nfrozen = frozen
            bad = False
            for inc in closes.get(k, ()):
                if len({cls[e] for e in inc}) != nused:
                    bad = True
                    break
                nfrozen = True
            if not bad:
                rec(k + 1, nused, nfrozen)

    if m:
        cls[0] = 0
        rec(0, 0, False)
    else:
        found.append(EdgeRelation(()))
    return found


def _minimal(relations: list[EdgeRelation]) -> list[EdgeRelation]:
    rels = sorted(relations, key=lambda r: -r.class_count)
    out = []
    for i, r in enumerate(rels):
        if not any(
            s.class_count > r.class_count and is_refinement(s, r) for s in rels[:i]
        ):
            out.append(r)
    return sorted(out, key=lambda r: r.class_of)


def oracle_finest(g: Graph, limit: int = 12) -> list[EdgeRelation]:
    """All finest RSP-relations of ``g`` by exhaustive enumeration of edge partitions.

    Partitions are generated as restricted growth strings; branches are cut
    as soon as an assigned adjacent pair provably has no usable square or a
    finished vertex misses a class. Every survivor is re-checked with
    :func:`check_rsp` before the minimal elements are taken.
    """
    _require_connected(g)
    if g.edge_count > limit:
        raise ResourceError(f"oracle refuses {g.edge_count} edges (limit {limit})")
    return _minimal(_all_rsp_relations(g))


def find_refinement(g: Graph, r: EdgeRelation, limit: int = 1 << 24) -> EdgeRelation | None:
    """A proper RSP refinement of ``r``, or ``None`` if ``r`` is finest.

    Coarsenings of RSP-relations are RSP-relations, so a proper RSP
    refinement exists iff some single class can be cut into two parts with
    the other classes untouched; only those bipartitions are searched.
    ``limit`` caps the number of candidate bipartitions.
    """
    report = check_rsp(g, r)
    if not report.holds:
        raise ContractError("relation does not have the relaxed square property")
    space = sum(1 << (len(c) - 1) for c in r.classes)
    if space > limit:
        raise ResourceError(f"{space} candidate splits exceed limit {limit}")
    options = _square_options(g)
    new = r.class_count
    for phi, members in enumerate(r.classes):
        if len(members) < 2:
            continue
        order = sorted(members)
        position = {e: i for i, e in enumerate(order)}
        ready = _ready_at(options, position)
        closes: dict[int, list[list[int]]] = {}
        for v in range(g.vertex_count):
            inc = [e for e in g.incident_edges(v) if e in position]
            if inc:
                closes.setdefault(max(position[e] for e in inc), []).append(inc)
        cls = list(r.class_of)
        hit = _split_search(cls, order, ready, closes, phi, new)
        if hit is not None:
            cand = EdgeRelation.from_labels(hit)
            if check_rsp(g, cand).holds:
                return cand
    return None


def _split_search(cls, order, ready, closes, phi, new):
    n = len(order)

    def rec(k: int, has_new: bool):
        if k == n:
            return list(cls) if has_new else None
        choices = (phi,) if k == 0 else (phi, new)
        for lab in choices:
            cls[order[k]] = lab
            if not all(_constraint_ok(cls, *c) for c in ready.get(k, ())):
                continue
            if any(len({cls[e] for e in inc}) != 2 for inc in closes.get(k, ())):
                continue
            hit = rec(k + 1, has_new or lab == new)
            if hit is not None:
                return hit
        cls[order[k]] = phi
        return None

    return rec(0, False)


def verify_finest(g: Graph, r: EdgeRelation, limit: int = 1 << 24) -> bool:
    """True iff no proper refinement of ``r`` has the relaxed square property."""
    return find_refinement(g, r, limit) is None


def relations_equivalent(g: Graph, r: EdgeRelation, s: EdgeRelation, limit: int = 10) -> bool:
    """True iff an automorphism of ``g`` carries the classes of ``r`` onto those of ``s``."""
    _require_total(g, r)
    _require_total(g, s)
    if g.vertex_count > limit:
        raise ResourceError(f"automorphism search refuses {g.vertex_count} vertices (limit {limit})")
    return find_bijection(g, g, r.class_of, s.class_of) is not None
