"""Optical-route parametrization and synthetic fiber topologies.

Nodes are ODFs, splice boxes and amplifiers grouped into sites; fiber
segments carry ``length_m`` and ``attenuation_db``.  Gaps model intra-site
splices: allowed between nearby equipment of compatible fiber type, paid
for with a per-distance attenuation plus a connector loss.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from ..acceptability import (
    Conjunction,
    MaxDistance,
    PropertyCompatible,
    ScopeDomain,
    euclidean_distance,
)
from ..engine import (
    DEFAULT_SAFETY_CAP,
    Accumulator,
    ExplorationDecision,
    Fifo,
    FrontierPolicy,
    SearchConfig,
    TransitionKind,
    Traversal,
)
from ..errors import InvalidParams, MissingProperty, NotAnOdf, UnknownNode
from ..graph import NodeId, TypedGraph, build_graph


@dataclass(frozen=True)
class TelcoPolicy:
    """Operational rules for building an optical route to a target ODF."""

    target: NodeId
    max_gap_distance_m: float = 100.0
    attenuation_budget_db: float = 30.0
    max_gaps: int = 1
    max_amplifiers: int = 1
    # Gap physics (not mandated by any rule set, just sensible defaults):
    # a spliced extension loses this much per km plus a fixed connector loss.
    gap_attenuation_db_per_km: float = 0.35
    gap_connector_loss_db: float = 0.5
    fiber_compatibility: Optional[Mapping] = None

    def __post_init__(self):
        if min(self.max_gap_distance_m, self.attenuation_budget_db) < 0:
            raise InvalidParams("distance and attenuation limits must be >= 0")
        if min(self.max_gaps, self.max_amplifiers) < 0:
            raise InvalidParams("gap and amplifier limits must be >= 0")

    def with_budget(self, attenuation_budget_db: float) -> "TelcoPolicy":
        return replace(self, attenuation_budget_db=attenuation_budget_db)


@dataclass(frozen=True)
class TelcoAccumulation:
    total_length_m: float = 0.0
    total_attenuation_db: float = 0.0
    gap_count: int = 0
    amplifier_count: int = 0

    def as_dict(self) -> dict:
        return {
            "total_length_m": self.total_length_m,
            "total_attenuation_db": self.total_attenuation_db,
            "gap_count": self.gap_count,
            "amplifier_count": self.amplifier_count,
        }


def _edge_number(g: TypedGraph, source, target, key) -> float:
    props = g.edge_props(source, target)
    if key not in props:
        raise MissingProperty((source, target), key)
    return float(props[key])


def telco_accumulator(g: TypedGraph, policy: TelcoPolicy) -> Accumulator:
    """Sums length and attenuation, counts gaps and amplifiers entered."""

    def step(acc: TelcoAccumulation, traversal: Traversal) -> TelcoAccumulation:
        t = traversal.steps[-1]
        if t.kind is TransitionKind.EDGE:
            length = _edge_number(g, t.source, t.target, "length_m")
            attenuation = _edge_number(g, t.source, t.target, "attenuation_db")
            gaps = 0
        else:
            length = euclidean_distance(g, t.source, t.target)
            attenuation = (
                policy.gap_attenuation_db_per_km * (length / 1000.0)
                + policy.gap_connector_loss_db
            )
            gaps = 1
        entered_amplifier = g.node_props(t.target).get("node_type") == "amplifier"
        return TelcoAccumulation(
            total_length_m=acc.total_length_m + length,
            total_attenuation_db=acc.total_attenuation_db + attenuation,
            gap_count=acc.gap_count + gaps,
            amplifier_count=acc.amplifier_count + (1 if entered_amplifier else 0),
        )

    return Accumulator(initial=TelcoAccumulation(), step=step)


def telco_sigma(policy: TelcoPolicy):
    """Prune on any budget violation; only then consider terminating."""

    def sigma(traversal: Traversal, acc: TelcoAccumulation) -> ExplorationDecision:
        if acc.total_attenuation_db > policy.attenuation_budget_db:
            return ExplorationDecision.PRUNE
        if acc.gap_count > policy.max_gaps:
            return ExplorationDecision.PRUNE
        if acc.amplifier_count > policy.max_amplifiers:
            return ExplorationDecision.PRUNE
        if traversal.current_node() == policy.target:
            return ExplorationDecision.TERMINATE
        return ExplorationDecision.CONTINUE

    return sigma


def telco_config(
    g: TypedGraph,
    start: NodeId,
    policy: TelcoPolicy,
    frontier: FrontierPolicy = Fifo(),
    safety_cap: Optional[int] = DEFAULT_SAFETY_CAP,
) -> SearchConfig:
    """Full search parametrization for an ODF-to-ODF optical route.

    Gap candidates are same-site equipment; a gap is admissible when the
    endpoints are strictly closer than the distance limit and their fiber
    types are compatible (equal, unless a compatibility table says more).
    """
    if not g.has_node(start):
        raise UnknownNode(start)
    if not g.has_node(policy.target):
        raise UnknownNode(policy.target)
    if g.node_props(start).get("node_type") != "odf":
        raise NotAnOdf(start)

    return SearchConfig(
        graph=g,
        start=start,
        domain=ScopeDomain("site"),
        predicate=Conjunction(
            [
                MaxDistance(policy.max_gap_distance_m),
                PropertyCompatible("fiber_type", policy.fiber_compatibility),
            ]
        ),
        accumulator=telco_accumulator(g, policy),
        sigma=telco_sigma(policy),
        frontier=frontier,
        safety_cap=safety_cap,
    )


# --------------------------------------------------------------------------
# Synthetic topologies
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TelcoParams:
    """Knobs for the synthetic optical network generator."""

    seed: int = 0
    sites: int = 4
    odfs_per_site: int = 2
    amplifier_fraction: float = 0.3
    site_spacing_m: float = 25_000.0
    intra_length_range_m: tuple = (5.0, 90.0)
    intra_attenuation_range_db: tuple = (0.2, 1.0)
    trunk_length_range_m: tuple = (8_000.0, 24_000.0)
    trunk_attenuation_range_db: tuple = (6.0, 14.0)

    def __post_init__(self):
        if self.sites < 1 or self.odfs_per_site < 1:
            raise InvalidParams("sites and odfs_per_site must be >= 1")
        if not 0.0 <= self.amplifier_fraction <= 1.0:
            raise InvalidParams("amplifier_fraction must be within [0, 1]")
        for lo, hi in (
            self.intra_length_range_m,
            self.intra_attenuation_range_db,
            self.trunk_length_range_m,
            self.trunk_attenuation_range_db,
        ):
            if lo < 0 or hi < lo:
                raise InvalidParams(f"bad range ({lo}, {hi})")


def generate_telco(params: TelcoParams) -> TypedGraph:
    """Deterministic chain of sites with intra-site fan-out.

    Every site holds ODFs and one splice box; trunk fibers join consecutive
    sites, passing through an amplifier where one was placed.  Undirected
    cabling is emitted as two directed edges.
    """
    rng = random.Random(params.seed)
    nodes = []
    links = []  # undirected

    def place(site_index: int) -> tuple:
        cx = site_index * params.site_spacing_m
        return (cx + rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0))

    def fiber(lo_hi_len, lo_hi_att) -> dict:
        return {
            "length_m": round(rng.uniform(*lo_hi_len), 1),
            "attenuation_db": round(rng.uniform(*lo_hi_att), 2),
            "fiber_type": "sm",
        }

    splice_of = {}
    amp_of = {}
    for i in range(params.sites):
        site = f"S{i}"
        for j in range(params.odfs_per_site):
            nodes.append(
                (
                    f"{site}-ODF{j + 1}",
                    {
                        "node_type": "odf",
                        "site": site,
                        "coordinates": place(i),
                        "fiber_type": "sm",
                    },
                )
            )
        splice_of[i] = f"{site}-SPL"
        nodes.append(
            (
                splice_of[i],
                {
                    "node_type": "splice",
                    "site": site,
                    "coordinates": place(i),
                    "fiber_type": "sm",
                },
            )
        )
        if rng.random() < params.amplifier_fraction:
            amp_of[i] = f"{site}-AMP"
            nodes.append(
                (
                    amp_of[i],
                    {
                        "node_type": "amplifier",
                        "site": site,
                        "coordinates": place(i),
                        "fiber_type": "sm",
                    },
                )
            )

    for i in range(params.sites):
        for j in range(params.odfs_per_site):
            links.append(
                (
                    f"S{i}-ODF{j + 1}",
                    splice_of[i],
                    fiber(params.intra_length_range_m, params.intra_attenuation_range_db),
                )
            )

    for i in range(params.sites - 1):
        trunk = fiber(params.trunk_length_range_m, params.trunk_attenuation_range_db)
        if i + 1 in amp_of:
            links.append((splice_of[i], amp_of[i + 1], trunk))
            links.append(
                (
                    amp_of[i + 1],
                    splice_of[i + 1],
                    fiber(params.intra_length_range_m, params.intra_attenuation_range_db),
                )
            )
        else:
            links.append((splice_of[i], splice_of[i + 1], trunk))

    edges = []
    for a, b, props in links:
        edges.append((a, b, props))
        edges.append((b, a, props))
    return build_graph(nodes, edges)
