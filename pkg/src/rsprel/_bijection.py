"""Backtracking search for edge-preserving vertex bijections.

Optionally the bijection must also carry one edge colouring onto another up
to renaming of colours; this is what relation equivalence needs.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .graph import Graph


def _invariant(g: Graph, v: int) -> tuple:
    return (g.degree(v), tuple(sorted(g.degree(w) for w in g.adjacency[v])))


def _search_order(g: Graph) -> list[int]:
    # BFS from highest degree vertex per component so that every vertex after
    # the first of its component already has a mapped neighbour
    order: list[int] = []
    seen = [False] * g.vertex_count
    for s in sorted(range(g.vertex_count), key=lambda v: (-g.degree(v), v)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in sorted(g.adjacency[v], key=lambda w: (-g.degree(w), w)):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def find_bijection(
    g: Graph,
    h: Graph,
    colors_g: Sequence[int] | None = None,
    colors_h: Sequence[int] | None = None,
) -> list[int] | None:
    """Return ``pi`` with ``pi[v]`` the image of ``v``, or ``None``.

    ``pi`` is an isomorphism ``g -> h``; with colourings (edge id -> colour)
    it must additionally induce a bijection between the colour classes.
    """
    n = g.vertex_count
    if n != h.vertex_count or g.edge_count != h.edge_count:
        return None
    coloured = colors_g is not None
    if coloured:
        if sorted(_multiset(colors_g)) != sorted(_multiset(colors_h)):
            return None
    inv_g = [_invariant(g, v) for v in range(n)]
    inv_h = [_invariant(h, v) for v in range(n)]
    if sorted(inv_g) != sorted(inv_h):
        return None
    candidates = {}
    for v in range(n):
        candidates[v] = [w for w in range(n) if inv_h[w] == inv_g[v]]

    order = _search_order(g)
    pi = [-1] * n
    used = [False] * n
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        mapped_nbrs = [u for u in g.adjacency[v] if pi[u] >= 0]
        for w in candidates[v]:
            if used[w]:
                continue
            hn = h.neighbors(w)
            # adjacency to mapped vertices must be preserved in both directions
            if any(pi[u] not in hn for u in mapped_nbrs):
                continue
            if sum(1 for x in hn if used[x]) != len(mapped_nbrs):
                continue
            added = []
            ok = True
            if coloured:
                for u in mapped_nbrs:
                    cg = colors_g[g.edge_id(u, v)]
                    ch = colors_h[h.edge_id(pi[u], w)]
                    if cg in fwd:
                        if fwd[cg] != ch:
                            ok = False
                            break
                    elif ch in back:
                        ok = False
                        break
                    else:
                        fwd[cg] = ch
                        back[ch] = cg
                        added.append(cg)
            if ok:
                pi[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                pi[v] = -1
                used[w] = False
            for cg in added:
                del back[fwd.pop(cg)]
        return False

    return list(pi) if extend(0) else None


def _multiset(colors: Sequence[int]) -> list[int]:
    counts: dict[int, int] = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    return list(counts.values())
