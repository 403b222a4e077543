"""Orientations of planar multigraphs: group connectivity, weights, discharging."""

from .multigraph import (
    EdgeCutWitness,
    Multigraph,
    canonical_form,
    enumerate_class,
    essential_edge_connectivity,
    find_pattern,
    global_min_cut,
    isomorphic,
    lift_path,
)
from .partitions import (
    VertexPartition,
    co_weight,
    graph_weight,
    partition_weight,
    quotient,
    refinement_residual,
    restored_partition,
    tree_packing_bound,
    tree_packing_number,
)
from .catalog import (
    NamedPattern,
    f_family_member,
    is_s5_contractible,
    make_named,
    n5_member,
    small_contractible_closed_form,
)
from .orientation import (
    Boundary,
    BudgetExhausted,
    ModularFlowCert,
    Orientation,
    asf_cert,
    circular_flow_cert,
    extend_through_contraction,
    extend_through_lifting,
    find_beta_orientation,
    is_strongly_zk,
    mod_orientation,
    verify_beta_orientation,
)
from .planar import (
    FaceSet,
    NonPlanarError,
    RotationSystem,
    common_face_endpoints,
    discharge,
    embed,
    face_config_scan,
    trace_faces,
    weak_adjacency,
)
from .reducer import (
    ReductionError,
    ReductionTrace,
    find_contractible_subgraph,
    find_lift_plan,
    forbidden_scan,
    reduce,
    solve_beta,
)
from .mgf import GraphDocument, MgfError, parse_graph, serialize

__all__ = [name for name in dir() if not name.startswith("_")]
