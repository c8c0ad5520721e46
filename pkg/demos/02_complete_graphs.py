"""RSP relations on complete graphs: one class per cyclic difference."""

from rsprel import check_rsp, find_refinement, verify_finest
from rsprel.generators import another_km_relation, km_relation, path
from rsprel.products import build_product, product_relation
from rsprel.relations import EdgeRelation

# Label K_m on Z_m and put [x, x+i] into class i.  Every such relation has
# the relaxed square property.
for m in range(3, 10):
    g, r = km_relation(m)
    print(f"K{m}: {r.class_count} classes, class sizes {r.class_sizes()}, RSP {check_rsp(g, r).holds}")

# For m != 4 nothing finer works ...
for m in (5, 6, 7):
    print(f"K{m} relation finest: {verify_finest(*km_relation(m))}")

# ... but K4 is also K2 x K2 (strong product), and the strong product
# relation splits the cycle class in two.
g, r = km_relation(4)
finer = find_refinement(g, r)
k2 = path(2)
p = build_product("strong", [k2, k2])
strong = product_relation(p, [EdgeRelation.trivial(1)] * 2)
print("\nK4 refinement:", [sorted(g.edges[e] for e in c) for c in finer.classes])
print("equals the K2 x K2 strong relation:", finer == strong)

# A second, lopsided finest relation on K5: one class holds [0,1] and the
# triangle on {2,3,4}, the other holds every edge between the two groups.
g, r = another_km_relation(5)
print("\nanother K5 relation sizes", r.class_sizes(), "finest", verify_finest(g, r))
