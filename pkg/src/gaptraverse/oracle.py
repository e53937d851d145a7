"""Brute-force reference enumeration for desk-scale verification.

Deliberately shares nothing with the engine's frontier/expansion machinery:
it recursively generates every simple node sequence from the start, keeps
only steps that classify as an edge or an admissible gap, folds the
accumulator over prefixes, and applies the exploration predicate to each
prefix in isolation.  A pruned prefix kills its whole subtree, exactly as
in the engine.  Exponential on purpose; use only on small graphs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

from .engine import (
    Accumulator,
    ExplorationDecision,
    SearchConfig,
    SearchStats,
    SigmaFn,
    SolutionSet,
    Transition,
    TransitionKind,
    Traversal,
    TraversalState,
)
from .acceptability import DomainProvider, GapPredicate
from .errors import ConfigError, GraphTooLargeWarning
from .graph import NodeId, TypedGraph, node_sort_key

ADVISORY_MAX_NODES = 14


@dataclass(frozen=True)
class OracleConfig:
    """Same semantic inputs as a search config plus a hard depth limit.

    ``depth_limit`` defaults to |N|, which never truncates anything since
    simple traversals take at most |N| - 1 steps.
    """

    graph: TypedGraph
    start: NodeId
    domain: DomainProvider
    predicate: GapPredicate
    accumulator: Accumulator
    sigma: SigmaFn
    depth_limit: Optional[int] = None

    @classmethod
    def from_search_config(cls, cfg: SearchConfig, depth_limit=None) -> "OracleConfig":
        return cls(
            graph=cfg.graph,
            start=cfg.start,
            domain=cfg.domain,
            predicate=cfg.predicate,
            accumulator=cfg.accumulator,
            sigma=cfg.sigma,
            depth_limit=depth_limit,
        )


def enumerate_solutions(cfg: OracleConfig) -> SolutionSet:
    """Exhaustively enumerate every terminated traversal state."""
    g = cfg.graph
    if not g.has_node(cfg.start):
        raise ConfigError(f"start node {cfg.start!r} is not in the graph")
    if g.node_count > ADVISORY_MAX_NODES:
        warnings.warn(
            f"exhaustive enumeration over {g.node_count} nodes may take very long",
            GraphTooLargeWarning,
            stacklevel=2,
        )

    limit = g.node_count if cfg.depth_limit is None else cfg.depth_limit
    all_nodes = sorted(g.nodes, key=node_sort_key)
    result = SolutionSet(stats=SearchStats())

    def classify(n, m) -> Optional[TransitionKind]:
        if g.has_edge(n, m):
            return TransitionKind.EDGE
        if m in cfg.domain.candidates(g, n) and cfg.predicate.accepts(g, n, m):
            return TransitionKind.GAP
        return None

    def walk(traversal: Traversal, accumulation) -> None:
        decision = cfg.sigma(traversal, accumulation)
        if decision is ExplorationDecision.PRUNE:
            return
        if decision is ExplorationDecision.TERMINATE:
            result.solutions.append(TraversalState(traversal, accumulation))
        if traversal.length >= limit:
            return
        n = traversal.current_node()
        visited = traversal.visited_nodes()
        for m in all_nodes:
            if m in visited:
                continue
            kind = classify(n, m)
            if kind is None:
                continue
            extended = traversal.extended(Transition(n, m, kind))
            walk(extended, cfg.accumulator.step(accumulation, extended))

    walk(Traversal(cfg.start), cfg.accumulator.initial)
    return result
