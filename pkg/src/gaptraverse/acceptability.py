"""Gap admissibility, split into two pluggable stages.

A *domain provider* answers "which nodes are even worth evaluating as gap
targets from n" and must be cheap (scope lookup, spatial grid).  A *gap
predicate* then gives the fine-grained yes/no for a single candidate pair.
The search engine only ever evaluates predicates on domain candidates, and
only for pairs that are not already edges.

Both stages are pure with respect to queries: any internal index is built
on first use against a given graph and read-only afterwards, so providers
and predicates can be shared across concurrent searches.
"""

from __future__ import annotations

import math
import weakref
from abc import ABC, abstractmethod
from collections import defaultdict
from typing import Mapping, Sequence

from .errors import MissingCoordinates, MissingProperty, UnknownNode
from .graph import NodeId, TypedGraph, node_sort_key

COORDINATES_KEY = "coordinates"


def node_coordinates(g: TypedGraph, n: NodeId) -> tuple[float, float]:
    """The (x, y) position of n in meters, or MissingCoordinates."""
    props = g.node_props(n)
    value = props.get(COORDINATES_KEY)
    if value is None:
        raise MissingCoordinates(n)
    x, y = value
    return float(x), float(y)


def euclidean_distance(g: TypedGraph, n: NodeId, m: NodeId) -> float:
    ax, ay = node_coordinates(g, n)
    bx, by = node_coordinates(g, m)
    return math.hypot(bx - ax, by - ay)


# --------------------------------------------------------------------------
# Domain providers
# --------------------------------------------------------------------------


class DomainProvider(ABC):
    """Produces the finite candidate set of gap targets for a node."""

    @abstractmethod
    def members(self, g: TypedGraph, n: NodeId) -> set[NodeId]:
        """Raw candidate set; may include n, callers filter it out."""

    def candidates(self, g: TypedGraph, n: NodeId) -> list[NodeId]:
        """Sorted, duplicate-free candidates, never including n itself."""
        if not g.has_node(n):
            raise UnknownNode(n)
        found = self.members(g, n)
        found.discard(n)
        return sorted(found, key=node_sort_key)


def candidates(provider: DomainProvider, g: TypedGraph, n: NodeId) -> list[NodeId]:
    return provider.candidates(g, n)


class EmptyDomain(DomainProvider):
    """No gap candidates: search degenerates to edge-only exploration."""

    def members(self, g, n):
        return set()

    def __repr__(self):
        return "EmptyDomain()"


class ScopeDomain(DomainProvider):
    """All nodes sharing a property value (site, rack, room, ...) with n.

    A query node lacking the scope key has no scope, hence no candidates.
    """

    def __init__(self, scope_key: str):
        self.scope_key = scope_key
        self._index = weakref.WeakKeyDictionary()

    def _scopes(self, g: TypedGraph) -> dict:
        cached = self._index.get(g)
        if cached is None:
            cached = defaultdict(set)
            for node in g.nodes:
                value = g.node_props(node).get(self.scope_key)
                if value is not None:
                    cached[value].add(node)
            self._index[g] = cached
        return cached

    def members(self, g, n):
        value = g.node_props(n).get(self.scope_key)
        if value is None:
            return set()
        return set(self._scopes(g)[value])

    def __repr__(self):
        return f"ScopeDomain({self.scope_key!r})"


class SpatialDomain(DomainProvider):
    """All nodes within radius_m (inclusive) of n, by Euclidean distance.

    Backed by a uniform grid with cell size equal to the radius; probing the
    3x3 cell neighborhood and then checking exact distances makes the grid an
    index, not an approximation.  Nodes without coordinates are not indexed
    and can never be candidates; querying *from* such a node is an error.
    """

    def __init__(self, radius_m: float):
        if radius_m <= 0:
            raise ValueError("radius_m must be positive")
        self.radius_m = float(radius_m)
        self._index = weakref.WeakKeyDictionary()

    def _cell(self, x: float, y: float) -> tuple[int, int]:
        return (math.floor(x / self.radius_m), math.floor(y / self.radius_m))

    def _cells(self, g: TypedGraph) -> dict:
        cached = self._index.get(g)
        if cached is None:
            cached = defaultdict(list)
            for node in g.nodes:
                value = g.node_props(node).get(COORDINATES_KEY)
                if value is None:
                    continue
                x, y = float(value[0]), float(value[1])
                cached[self._cell(x, y)].append((node, x, y))
            self._index[g] = cached
        return cached

    def members(self, g, n):
        nx, ny = node_coordinates(g, n)
        cells = self._cells(g)
        cx, cy = self._cell(nx, ny)
        found = set()
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for node, x, y in cells.get((cx + dx, cy + dy), ()):
                    if math.hypot(x - nx, y - ny) <= self.radius_m:
                        found.add(node)
        return found

    def __repr__(self):
        return f"SpatialDomain({self.radius_m!r})"


class PropertyValueDomain(DomainProvider):
    """All nodes whose property equals a fixed value, regardless of n.

    Mostly useful inside a :class:`CompositeDomain` intersection, e.g. to
    restrict a scope to one node type.
    """

    def __init__(self, key: str, value):
        self.key = key
        self.value = value

    def members(self, g, n):
        return {
            node
            for node in g.nodes
            if g.node_props(node).get(self.key) == self.value
        }

    def __repr__(self):
        return f"PropertyValueDomain({self.key!r}, {self.value!r})"


class CompositeDomain(DomainProvider):
    """Intersection or union of other providers."""

    def __init__(self, providers: Sequence[DomainProvider], mode: str = "intersection"):
        if mode not in ("intersection", "union"):
            raise ValueError(f"unknown composite mode: {mode!r}")
        if not providers:
            raise ValueError("CompositeDomain needs at least one provider")
        self.providers = tuple(providers)
        self.mode = mode

    @classmethod
    def intersection(cls, *providers: DomainProvider) -> "CompositeDomain":
        return cls(providers, "intersection")

    @classmethod
    def union(cls, *providers: DomainProvider) -> "CompositeDomain":
        return cls(providers, "union")

    def members(self, g, n):
        sets = [p.members(g, n) for p in self.providers]
        result = sets[0]
        for s in sets[1:]:
            result = result & s if self.mode == "intersection" else result | s
        return result

    def __repr__(self):
        return f"CompositeDomain({list(self.providers)!r}, {self.mode!r})"


# --------------------------------------------------------------------------
# Gap predicates
# --------------------------------------------------------------------------


class GapPredicate(ABC):
    """Fine-grained yes/no on one candidate pair.  Pure and deterministic."""

    @abstractmethod
    def accepts(self, g: TypedGraph, n: NodeId, m: NodeId) -> bool:
        ...


def accepts(pred: GapPredicate, g: TypedGraph, n: NodeId, m: NodeId) -> bool:
    return pred.accepts(g, n, m)


class AlwaysAccept(GapPredicate):
    def accepts(self, g, n, m):
        return True

    def __repr__(self):
        return "AlwaysAccept()"


class MaxDistance(GapPredicate):
    """True iff the endpoints are strictly closer than the limit.

    Strict on purpose: the spatial *domain* uses an inclusive radius as a
    coarse superset filter, the predicate is the fine filter.
    """

    def __init__(self, limit_m: float):
        self.limit_m = float(limit_m)

    def accepts(self, g, n, m):
        return euclidean_distance(g, n, m) < self.limit_m

    def __repr__(self):
        return f"MaxDistance({self.limit_m!r})"


def _require_prop(g: TypedGraph, node: NodeId, key: str):
    props = g.node_props(node)
    if key not in props:
        raise MissingProperty(node, key)
    return props[key]


class PropertyEquals(GapPredicate):
    """True iff both nodes carry the key and the values are equal."""

    def __init__(self, key: str):
        self.key = key

    def accepts(self, g, n, m):
        return _require_prop(g, n, self.key) == _require_prop(g, m, self.key)

    def __repr__(self):
        return f"PropertyEquals({self.key!r})"


class PropertyCompatible(GapPredicate):
    """Table-driven compatibility between the two nodes' property values.

    Without a table, equal values are compatible (the sane default for
    e.g. fiber types).  With a table, the target's value must be listed
    under the source's value; symmetry is the table author's choice.
    """

    def __init__(self, key: str, table: Mapping | None = None):
        self.key = key
        self.table = None if table is None else {k: frozenset(v) for k, v in table.items()}

    def accepts(self, g, n, m):
        a = _require_prop(g, n, self.key)
        b = _require_prop(g, m, self.key)
        if self.table is None:
            return a == b
        return b in self.table.get(a, frozenset())

    def __repr__(self):
        return f"PropertyCompatible({self.key!r}, table={self.table!r})"


class HasAvailablePorts(GapPredicate):
    """True iff both endpoints have at least one available port."""

    KEY = "available_ports"

    def accepts(self, g, n, m):
        return _require_prop(g, n, self.KEY) > 0 and _require_prop(g, m, self.KEY) > 0

    def __repr__(self):
        return "HasAvailablePorts()"


class Conjunction(GapPredicate):
    """True iff every member predicate accepts (short-circuits)."""

    def __init__(self, predicates: Sequence[GapPredicate]):
        self.predicates = tuple(predicates)

    def accepts(self, g, n, m):
        return all(p.accepts(g, n, m) for p in self.predicates)

    def __repr__(self):
        return f"Conjunction({list(self.predicates)!r})"
