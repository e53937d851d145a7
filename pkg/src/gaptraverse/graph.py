"""Immutable typed-graph data model.

A typed graph is a finite set of nodes and directed edges where every node
and every edge carries a schemaless property bag.  Property conventions
(``site``, ``rack``, ``coordinates``, ``attenuation_db``, ...) are imposed by
the scenario layers, not here.  Graphs are immutable after construction and
safe to share across concurrent searches.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import (
    DanglingEdgeEndpoint,
    DuplicateEdge,
    DuplicateNode,
    EmptyGraph,
    UnknownNode,
)

NodeId = Union[str, int]
PropertyValue = Union[str, int, float, bool, tuple]
PropertyBag = Mapping[str, PropertyValue]


def node_sort_key(n: NodeId):
    """Total order over node ids, stable even when str and int ids mix."""
    return (n.__class__.__name__, n)


def _freeze_bag(bag: PropertyBag) -> dict:
    # Lists coming from JSON (e.g. coordinate pairs) become tuples so that
    # property bags are hashable-value-only and safely shared.
    return {k: tuple(v) if isinstance(v, list) else v for k, v in bag.items()}


class DegreeStats(NamedTuple):
    avg_out_degree: Fraction
    max_out_degree: int


class TypedGraph:
    """Directed graph with property bags on nodes and edges.

    Treated as immutable: all construction goes through :func:`build_graph`
    and nothing mutates the internal maps afterwards.  Adjacency lists are
    kept sorted by node id so traversal order never depends on insertion
    order.
    """

    __slots__ = ("_node_props", "_edge_props", "_adjacency", "__weakref__")

    def __init__(self, node_props: dict, edge_props: dict, adjacency: dict):
        self._node_props = node_props
        self._edge_props = edge_props
        self._adjacency = adjacency

    @property
    def nodes(self) -> list[NodeId]:
        return sorted(self._node_props, key=node_sort_key)

    @property
    def edges(self) -> list[tuple[NodeId, NodeId]]:
        return sorted(self._edge_props, key=lambda e: (node_sort_key(e[0]), node_sort_key(e[1])))

    @property
    def node_count(self) -> int:
        return len(self._node_props)

    @property
    def edge_count(self) -> int:
        return len(self._edge_props)

    def has_node(self, n: NodeId) -> bool:
        return n in self._node_props

    def has_edge(self, n: NodeId, m: NodeId) -> bool:
        return (n, m) in self._edge_props

    def node_props(self, n: NodeId) -> PropertyBag:
        try:
            return self._node_props[n]
        except KeyError:
            raise UnknownNode(n) from None

    def edge_props(self, n: NodeId, m: NodeId) -> PropertyBag:
        try:
            return self._edge_props[(n, m)]
        except KeyError:
            raise UnknownNode((n, m)) from None

    def out_neighbors(self, n: NodeId) -> list[NodeId]:
        """All m with (n, m) an edge, sorted by node id."""
        try:
            return list(self._adjacency[n])
        except KeyError:
            raise UnknownNode(n) from None

    def degree_stats(self) -> DegreeStats:
        """Exact average out-degree (|E|/|N| as a fraction) and max out-degree."""
        if not self._node_props:
            raise EmptyGraph("degree_stats requires at least one node")
        avg = Fraction(len(self._edge_props), len(self._node_props))
        max_deg = max(len(v) for v in self._adjacency.values())
        return DegreeStats(avg, max_deg)

    def __eq__(self, other):
        if not isinstance(other, TypedGraph):
            return NotImplemented
        return (
            self._node_props == other._node_props
            and self._edge_props == other._edge_props
        )

    def __hash__(self):  # pragma: no cover - identity hashing is enough
        return id(self)

    def __repr__(self):
        return f"TypedGraph(|N|={self.node_count}, |E|={self.edge_count})"


def build_graph(
    nodes: Iterable[tuple[NodeId, PropertyBag]],
    edges: Iterable[tuple[NodeId, NodeId, PropertyBag]],
) -> TypedGraph:
    """Validate and assemble an immutable :class:`TypedGraph`.

    Raises :class:`DuplicateNode`, :class:`DanglingEdgeEndpoint` or
    :class:`DuplicateEdge`, naming the offending id or pair.  At most one
    directed edge per ordered pair is allowed; undirected inputs are the
    file loader's business and arrive here as two directed edges.
    """
    node_props: dict = {}
    for node_id, bag in nodes:
        if node_id in node_props:
            raise DuplicateNode(node_id)
        node_props[node_id] = _freeze_bag(bag)

    edge_props: dict = {}
    for source, target, bag in edges:
        if source not in node_props:
            raise DanglingEdgeEndpoint(source, target, source)
        if target not in node_props:
            raise DanglingEdgeEndpoint(source, target, target)
        if (source, target) in edge_props:
            raise DuplicateEdge(source, target)
        edge_props[(source, target)] = _freeze_bag(bag)

    adjacency: dict = {n: [] for n in node_props}
    for source, target in edge_props:
        adjacency[source].append(target)
    for n in adjacency:
        adjacency[n].sort(key=node_sort_key)

    return TypedGraph(node_props, edge_props, adjacency)
