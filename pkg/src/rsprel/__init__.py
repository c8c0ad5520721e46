"""Equivalence relations with the relaxed square property on finite simple graphs.

Submodules: ``graph`` (graphs, squares, partitions), ``relations`` (edge
relations and the tau/delta generators), ``rsp`` (checks, greedy and exact
search for finest relations), ``products``, ``quotients``, ``covers``,
``generators`` and ``cli``.
"""

from .errors import ContractError, InputError, ResourceError, RspError
from .graph import (
    Graph,
    Square,
    VertexPartition,
    components,
    enumerate_squares,
    format_graph,
    is_connected,
    is_k23_free,
    min_degree,
    parse_graph,
    square_in_k23,
)
from .relations import (
    EdgeRelation,
    PairSet,
    compute_delta0,
    compute_delta1,
    compute_tau,
    format_relation,
    is_refinement,
    merge_classes,
    parse_relation,
    remove_class,
    transitive_closure,
)
from .rsp import (
    ChoiceStep,
    algorithm1,
    check_rsp,
    check_well_behaved,
    find_refinement,
    lower_bound_relation,
    oracle_finest,
    relations_equivalent,
    verify_finest,
)
from .products import build_product, product_relation
from .quotients import (
    class_subgraph,
    is_equitable,
    is_isomorphic,
    layer_partition,
    quotient_graph,
    quotient_product_holds,
    refined_partition,
)
from .covers import (
    build_cross_cover,
    build_self_cover,
    check_layer_regularity,
    classify_map,
    compose_common_cover,
    connect_cover,
    connect_quasicover,
)
from . import generators

__version__ = "0.1.0"
