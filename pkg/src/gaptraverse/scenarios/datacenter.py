"""Datacenter circuit parametrization and synthetic cabling topologies.

Rooms hold rows, rows hold racks, racks hold devices.  The routing question
is whether a customer server can reach upstream network equipment, counting
the cross-connects (gaps) that would have to be deployed along the way.
Service tier decides how far a gap may reach: standard clients get
rack-local cross-connects to patch panels only, premium clients may patch
anywhere in the room.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Optional

from ..acceptability import (
    CompositeDomain,
    HasAvailablePorts,
    PropertyValueDomain,
    ScopeDomain,
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
from ..errors import InvalidParams, MissingProperty, NotAServer, UnknownNode
from ..graph import NodeId, TypedGraph, build_graph

STANDARD = "standard"
PREMIUM = "premium"

SAME_RACK = "same_rack"
SAME_ROOM = "same_room"


@dataclass(frozen=True)
class DatacenterPolicy:
    """Client-tier rules for deploying new cabling."""

    tier: str
    max_gaps: int
    max_row_changes: int = 1
    gap_scope: str = SAME_RACK

    def __post_init__(self):
        if self.tier not in (STANDARD, PREMIUM):
            raise InvalidParams(f"unknown tier: {self.tier!r}")
        if self.gap_scope not in (SAME_RACK, SAME_ROOM):
            raise InvalidParams(f"unknown gap scope: {self.gap_scope!r}")
        if self.tier == STANDARD and self.gap_scope != SAME_RACK:
            raise InvalidParams("standard clients may not patch across racks")
        if self.max_gaps < 0 or self.max_row_changes < 0:
            raise InvalidParams("limits must be >= 0")

    @classmethod
    def standard(cls, max_gaps: int = 2, max_row_changes: int = 1) -> "DatacenterPolicy":
        return cls(STANDARD, max_gaps, max_row_changes, SAME_RACK)

    @classmethod
    def premium(cls, max_gaps: int = 5, max_row_changes: int = 1) -> "DatacenterPolicy":
        return cls(PREMIUM, max_gaps, max_row_changes, SAME_ROOM)

    def with_max_gaps(self, max_gaps: int) -> "DatacenterPolicy":
        return replace(self, max_gaps=max_gaps)


@dataclass(frozen=True)
class DatacenterAccumulation:
    gap_count: int = 0
    racks_traversed: int = 0
    row_changes: int = 0

    def as_dict(self) -> dict:
        return {
            "gap_count": self.gap_count,
            "racks_traversed": self.racks_traversed,
            "row_changes": self.row_changes,
        }


def _node_prop(g: TypedGraph, node, key):
    props = g.node_props(node)
    if key not in props:
        raise MissingProperty(node, key)
    return props[key]


def datacenter_accumulator(g: TypedGraph, start: NodeId) -> Accumulator:
    """Counts gaps, distinct racks entered (start rack included) and row crossings."""

    def step(acc: DatacenterAccumulation, traversal: Traversal) -> DatacenterAccumulation:
        t = traversal.steps[-1]
        seen_racks = {
            _node_prop(g, node, "rack")
            for node in (traversal.start, *(s.target for s in traversal.steps[:-1]))
        }
        new_rack = _node_prop(g, t.target, "rack") not in seen_racks
        crossed_row = _node_prop(g, t.source, "row") != _node_prop(g, t.target, "row")
        return DatacenterAccumulation(
            gap_count=acc.gap_count + (1 if t.kind is TransitionKind.GAP else 0),
            racks_traversed=acc.racks_traversed + (1 if new_rack else 0),
            row_changes=acc.row_changes + (1 if crossed_row else 0),
        )

    return Accumulator(initial=DatacenterAccumulation(racks_traversed=1), step=step)


def datacenter_config(
    g: TypedGraph,
    start: NodeId,
    policy: DatacenterPolicy,
    frontier: FrontierPolicy = Fifo(),
    safety_cap: Optional[int] = DEFAULT_SAFETY_CAP,
) -> SearchConfig:
    """Search parametrization for connecting a server to upstream equipment.

    Standard tier: gap candidates are patch panels in the server's own rack.
    Premium tier: any node in the same room.  Either way a gap needs free
    ports on both ends, and the search terminates on any node whose
    ``upstream`` property is set.
    """
    if not g.has_node(start):
        raise UnknownNode(start)
    if g.node_props(start).get("node_type") != "server":
        raise NotAServer(start)
    _node_prop(g, start, "rack")  # accumulation needs the start rack

    if policy.gap_scope == SAME_RACK:
        domain = CompositeDomain.intersection(
            ScopeDomain("rack"), PropertyValueDomain("node_type", "patch_panel")
        )
    else:
        domain = ScopeDomain("room")

    def sigma(traversal: Traversal, acc: DatacenterAccumulation) -> ExplorationDecision:
        if acc.gap_count > policy.max_gaps:
            return ExplorationDecision.PRUNE
        if acc.row_changes > policy.max_row_changes:
            return ExplorationDecision.PRUNE
        if g.node_props(traversal.current_node()).get("upstream"):
            return ExplorationDecision.TERMINATE
        return ExplorationDecision.CONTINUE

    return SearchConfig(
        graph=g,
        start=start,
        domain=domain,
        predicate=HasAvailablePorts(),
        accumulator=datacenter_accumulator(g, start),
        sigma=sigma,
        frontier=frontier,
        safety_cap=safety_cap,
    )


# --------------------------------------------------------------------------
# Synthetic topologies
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DatacenterParams:
    """Knobs for the synthetic structured-cabling generator."""

    seed: int = 0
    rooms: int = 1
    rows_per_room: int = 2
    racks_per_row: int = 4
    panels_per_rack: int = 2
    racks_per_distribution: int = 4  # every Nth rack (and the row's last) is a distribution rack

    def __post_init__(self):
        for name in ("rooms", "rows_per_room", "racks_per_row", "panels_per_rack",
                     "racks_per_distribution"):
            if getattr(self, name) < 1:
                raise InvalidParams(f"{name} must be >= 1")


def generate_datacenter(params: DatacenterParams) -> TypedGraph:
    """Deterministic room/row/rack hierarchy with structured cabling.

    Client racks hold one server and patch panels; distribution racks hold
    an upstream switch and panels.  Panels chain within each rack, the
    first panels chain along each row, and the distribution panel connects
    to its switch.  Servers arrive uncabled: connecting them is the point.
    """
    rng = random.Random(params.seed)
    nodes = []
    links = []

    for r in range(params.rooms):
        room = f"RM{r + 1}"
        for w in range(params.rows_per_room):
            row = f"{room}/ROW{w + 1}"
            row_first_panels = []
            for k in range(params.racks_per_row):
                rack = f"{row}/RK{k + 1}"
                scopes = {"room": room, "row": row, "rack": rack}
                is_distribution = (
                    (k + 1) % params.racks_per_distribution == 0
                    or k == params.racks_per_row - 1
                )
                panel_ids = []
                for p in range(params.panels_per_rack):
                    panel = f"{rack}/PNL{p + 1}"
                    panel_ids.append(panel)
                    nodes.append(
                        (
                            panel,
                            {
                                "node_type": "patch_panel",
                                "available_ports": rng.randint(0, 6),
                                **scopes,
                            },
                        )
                    )
                for a, b in zip(panel_ids, panel_ids[1:]):
                    links.append((a, b, {"cabling": "intra_rack"}))
                if is_distribution:
                    switch = f"{rack}/SW1"
                    nodes.append(
                        (
                            switch,
                            {
                                "node_type": "switch",
                                "available_ports": rng.randint(0, 4),
                                "upstream": True,
                                **scopes,
                            },
                        )
                    )
                    links.append((panel_ids[0], switch, {"cabling": "intra_rack"}))
                else:
                    server = f"{rack}/SRV1"
                    nodes.append(
                        (
                            server,
                            {
                                "node_type": "server",
                                "available_ports": rng.randint(1, 2),
                                **scopes,
                            },
                        )
                    )
                row_first_panels.append(panel_ids[0])
            for a, b in zip(row_first_panels, row_first_panels[1:]):
                links.append((a, b, {"cabling": "row"}))

    edges = []
    for a, b, props in links:
        edges.append((a, b, props))
        edges.append((b, a, props))
    return build_graph(nodes, edges)
