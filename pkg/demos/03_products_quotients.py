"""Products carry a natural RSP relation; quotients by layers take it apart again."""

from rsprel import EdgeRelation, build_product, check_rsp, product_relation
from rsprel import is_equitable, layer_partition, quotient_graph, quotient_product_holds, refined_partition
from rsprel.generators import cycle, km_relation, path

# Edges of a product are keyed by which coordinates move and the classes
# they move in.  Try all three product flavours on C5 and P3.
c5, p3 = cycle(5), path(3)
for kind in ("cartesian", "strong", "direct"):
    p = build_product(kind, [c5, p3])
    r = product_relation(p, [EdgeRelation.trivial(c5.edge_count), EdgeRelation.trivial(p3.edge_count)])
    print(f"{kind:9s} C5.P3: {p.graph.vertex_count} vertices, {p.graph.edge_count} edges, "
          f"{r.class_count} classes, RSP {check_rsp(p.graph, r).holds}")

# Cartesian case: quotient by the refined partition looks like the product of
# the per-class quotients.
p = build_product("cartesian", [c5, p3])
r = product_relation(p, [EdgeRelation.trivial(c5.edge_count), EdgeRelation.trivial(p3.edge_count)])
part = refined_partition(p.graph, r)
print("\nrefined partition blocks:", part.block_count, " product check:", quotient_product_holds(p.graph, r))

# On K9 every class complement is connected, so the refined partition is
# trivial.  The layers of a single class are more interesting: the triangle
# class cuts K9 into three blocks, and the partition is equitable.
g, r = km_relation(9)
for cid in range(r.class_count):
    part = layer_partition(g, r, cid)
    cert = is_equitable(g, part)
    q = quotient_graph(g, part)
    print(f"K9 class {cid}: {part.block_count} layer(s), quotient {q.vertex_count} vertices / {q.edge_count} edges")
    if part.block_count > 1 and cert is not None:
        print(cert.format(), end="")
