"""Where an RSP relation can live: the tau/delta relations and the greedy construction."""

from rsprel import algorithm1, check_rsp, compute_delta0, compute_delta1, compute_tau, oracle_finest
from rsprel import is_refinement, lower_bound_relation, transitive_closure
from rsprel.generators import complete, complete_bipartite, hypercube, k5_choice_scripts


def show(g, r, label):
    classes = [sorted(g.edges[e] for e in c) for c in r.classes]
    print(f"{label}: {r.class_count} classes")
    for c in classes:
        print("   ", " ".join(f"{u}{v}" for u, v in c))


# The cube has no K_{2,3}, so the lower and upper bounds coincide and the
# three parallel classes are the only finest RSP relation.
q3 = hypercube(3)
lo = lower_bound_relation(q3)
hi = transitive_closure(compute_delta0(q3))
print("Q3 bounds agree:", lo == hi)
show(q3, lo, "Q3 (tau|delta1)*")

# K_{2,3} is the smallest graph where the bounds drift apart.  Every square
# sits inside the K_{2,3} itself, so delta1 is empty, tau is empty too, and
# the lower bound is the discrete relation; delta0 glues everything.
k23 = complete_bipartite(2, 3)
print("\nK23 tau pairs:", len(compute_tau(k23)), " delta1 pairs:", len(compute_delta1(k23)))
print("K23 delta0* classes:", transitive_closure(compute_delta0(k23)).class_count)
for f in oracle_finest(k23):
    assert is_refinement(lower_bound_relation(k23), f)
    show(k23, f, "K23 finest")

# The greedy algorithm is order sensitive.  Two hand-picked merge orders on
# K5 end in different places.
k5 = complete(5)
first, second = k5_choice_scripts()
for name, script in (("first", first), ("second", second)):
    trace = []
    r = algorithm1(k5, script, trace)
    assert check_rsp(k5, r).holds
    print(f"\nK5, {name} order, merges via squares {[sq for _, _, sq in trace]}")
    show(k5, r, "result")
