"""Cover graphs between layers, and gluing graphs back together along covers."""

from rsprel import build_cross_cover, build_self_cover, check_layer_regularity, check_rsp, lower_bound_relation
from rsprel import ContractError, connect_cover, connect_quasicover
from rsprel.generators import c6c9_chords, cycle, hypercube, km_relation

# C6 and C9 joined by chords.  Class 0 holds the two cycles, so its layers
# are the C6 on 0..5 and the C9 on 6..14; the chords form the cover graph.
g, r = c6c9_chords()
print("C6/C9 graph:", g.vertex_count, "vertices,", r.class_count, "classes, RSP", check_rsp(g, r).holds)
cov = build_cross_cover(g, r, 0, 0, 6)
m1, m2 = cov.classify(1), cov.classify(2)
print(f"cover graph: {cov.graph.vertex_count} nodes, {cov.graph.edge_count} edges")
print(f"  onto C6: {m1.classification}, fibers {m1.fiber_sizes}")
print(f"  onto C9: {m2.classification}, fibers {m2.fiber_sizes}")

# Self cover of the cube along one parallel class
q3 = hypercube(3)
rq = lower_bound_relation(q3)
sc = build_self_cover(q3, rq, 0)
print("\nQ3 self cover:", sc.graph.vertex_count, "nodes,", sc.graph.edge_count, "edges")

# C6 double covers C3; gluing along the cover map gives a graph with an RSP
# relation whose connecting class is the matching.
c6, c3 = cycle(6), cycle(3)
j = connect_cover(c6, c3, [i % 3 for i in range(6)])
print("\nC3 + C6 glued:", j.graph.vertex_count, "vertices,", j.graph.edge_count, "edges,",
      "RSP", check_rsp(j.graph, j.relation).holds, "connecting class", j.connecting_class(6))

# Quasi-cover version: C6 sits over two copies of C3 with a twist
j = connect_quasicover(c3, c3, c6, [i % 3 for i in range(6)], [(i + 1) % 3 for i in range(6)])
print("C3 ~ C3 via C6:", j.graph.edge_count, "edges, RSP", check_rsp(j.graph, j.relation).holds)

# Regularity across a layer for well-behaved relations
# (K7's relation contains a forbidden K_{2,3} colouring, so it is refused)
for m in (5, 7):
    g, r = km_relation(m)
    try:
        print(f"K{m} class 0 layers regular:", check_layer_regularity(g, r, 0))
    except ContractError as exc:
        print(f"K{m}: {exc}")
