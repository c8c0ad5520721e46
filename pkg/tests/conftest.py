import sys

import pytest

from rsprel.generators import (
    c6_long_chords,
    c6c9_chords,
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    km_relation,
    path,
    petersen,
)
from rsprel.graph import Graph


def q3_minus_edge() -> Graph:
    g = hypercube(3)
    return Graph(8, g.edges[1:])


# connected graphs small enough for the exhaustive oracle (|E| <= 12)
SMALL = {
    "C4": cycle(4),
    "C5": cycle(5),
    "C6": cycle(6),
    "C7": cycle(7),
    "C8": cycle(8),
    "P2": path(2),
    "P3": path(3),
    "P4": path(4),
    "P5": path(5),
    "K3": complete(3),
    "K4": complete(4),
    "K5": complete(5),
    "K23": complete_bipartite(2, 3),
    "K24": complete_bipartite(2, 4),
    "Q3-e": q3_minus_edge(),
}

# every graph used by property checks
ALL_GRAPHS = dict(SMALL, Q3=hypercube(3), Petersen=petersen(), K33=complete_bipartite(3, 3))


def rsp_fixtures():
    """(name, graph, relation) triples known to be RSP."""
    out = []
    for m in range(3, 9):
        g, r = km_relation(m)
        out.append((f"km{m}", g, r))
    g, r = c6c9_chords()
    out.append(("c6c9", g, r))
    g, r = c6_long_chords()
    out.append(("c6long", g, r))
    return out


@pytest.fixture(params=sorted(SMALL), ids=str)
def small_graph(request):
    return SMALL[request.param]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
