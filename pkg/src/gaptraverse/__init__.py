"""Traversal search over incomplete typed infrastructure graphs.

Searches combine existing edges with policy-admissible gap transitions,
track multi-dimensional accumulation state, and return the full set of
admissible traversals instead of a single optimum.
"""

from .graph import DegreeStats, NodeId, PropertyBag, TypedGraph, build_graph
from .acceptability import (
    AlwaysAccept,
    CompositeDomain,
    Conjunction,
    DomainProvider,
    EmptyDomain,
    GapPredicate,
    HasAvailablePorts,
    MaxDistance,
    PropertyCompatible,
    PropertyEquals,
    PropertyValueDomain,
    ScopeDomain,
    SpatialDomain,
    accepts,
    candidates,
    euclidean_distance,
    node_coordinates,
)
from .engine import (
    DEFAULT_SAFETY_CAP,
    Accumulator,
    Beam,
    CounterAcc,
    ExplorationDecision,
    Fifo,
    Lifo,
    Priority,
    SearchConfig,
    SearchStats,
    SolutionSet,
    Transition,
    TransitionKind,
    Traversal,
    TraversalState,
    VectorAcc,
    estimate_state_bound,
    expand,
    recompute_accumulation,
    search,
)
from .oracle import OracleConfig, enumerate_solutions
from .analysis import (
    DominanceRelation,
    DominanceResult,
    DominatedSolution,
    KneePoint,
    SweepResult,
    SweepSpec,
    accumulation_dimensions,
    dimension_value,
    dominance_filter,
    knee_report,
    sweep,
)
from .scenarios import (
    DatacenterAccumulation,
    DatacenterParams,
    DatacenterPolicy,
    TelcoAccumulation,
    TelcoParams,
    TelcoPolicy,
    datacenter_config,
    generate_datacenter,
    generate_telco,
    telco_config,
)
from .documents import (
    load_policy,
    load_topology,
    policy_to_config,
    policy_to_sweep_spec,
    result_document,
    save_topology,
    sweep_csv,
)
from .cli import run_cli
from . import errors, fixtures

__version__ = "0.1.0"

__all__ = [
    "AlwaysAccept",
    "Accumulator",
    "Beam",
    "CompositeDomain",
    "Conjunction",
    "CounterAcc",
    "DEFAULT_SAFETY_CAP",
    "DatacenterAccumulation",
    "DatacenterParams",
    "DatacenterPolicy",
    "DegreeStats",
    "DomainProvider",
    "DominanceRelation",
    "DominanceResult",
    "DominatedSolution",
    "EmptyDomain",
    "ExplorationDecision",
    "Fifo",
    "GapPredicate",
    "HasAvailablePorts",
    "KneePoint",
    "Lifo",
    "MaxDistance",
    "NodeId",
    "OracleConfig",
    "Priority",
    "PropertyBag",
    "PropertyCompatible",
    "PropertyEquals",
    "PropertyValueDomain",
    "ScopeDomain",
    "SearchConfig",
    "SearchStats",
    "SolutionSet",
    "SpatialDomain",
    "SweepResult",
    "SweepSpec",
    "TelcoAccumulation",
    "TelcoParams",
    "TelcoPolicy",
    "Transition",
    "TransitionKind",
    "Traversal",
    "TraversalState",
    "TypedGraph",
    "VectorAcc",
    "accepts",
    "accumulation_dimensions",
    "build_graph",
    "candidates",
    "datacenter_config",
    "dimension_value",
    "dominance_filter",
    "enumerate_solutions",
    "errors",
    "estimate_state_bound",
    "euclidean_distance",
    "expand",
    "fixtures",
    "generate_datacenter",
    "generate_telco",
    "knee_report",
    "load_policy",
    "load_topology",
    "node_coordinates",
    "policy_to_config",
    "policy_to_sweep_spec",
    "recompute_accumulation",
    "result_document",
    "run_cli",
    "save_topology",
    "search",
    "sweep",
    "sweep_csv",
    "telco_config",
]
