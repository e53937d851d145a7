"""Frontier-driven traversal search over typed graphs.

A traversal walks existing edges and, where the policy allows it, *gaps*:
pairs that are not edges but whose target lies in the source's candidate
domain and passes the gap predicate.  Each partial traversal carries an
application-defined accumulation state, and a three-way exploration
predicate decides per state whether to keep going, record the state as a
solution (and keep going), or discard the whole branch.

Everything the search does is parametrized through :class:`SearchConfig`;
the engine itself knows nothing about attenuation budgets or rack scopes.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .acceptability import DomainProvider, GapPredicate
from .errors import ConfigError, EmptyGraph, InvalidTraversal, MissingProperty
from .graph import NodeId, TypedGraph

DEFAULT_SAFETY_CAP = 1_000_000


class TransitionKind(Enum):
    EDGE = "edge"
    GAP = "gap"


@dataclass(frozen=True)
class Transition:
    """One step between two nodes, tagged with how it is realized.

    EDGE means the pair is an edge of the governing graph; GAP means it is
    not, but the target is an admissible candidate (domain + predicate).
    """

    source: NodeId
    target: NodeId
    kind: TransitionKind

    def __repr__(self):
        arrow = "->" if self.kind is TransitionKind.EDGE else "~>"
        return f"{self.source!r}{arrow}{self.target!r}"


@dataclass(frozen=True)
class Traversal:
    """A contiguous, cycle-free sequence of transitions from a start node."""

    start: NodeId
    steps: tuple[Transition, ...] = ()

    @property
    def length(self) -> int:
        return len(self.steps)

    def current_node(self) -> NodeId:
        """The start node for an empty traversal, else the last target."""
        return self.steps[-1].target if self.steps else self.start

    def visited_nodes(self) -> frozenset:
        """Every node the traversal touches, the start node included."""
        return frozenset((self.start, *(s.target for s in self.steps)))

    def extended(self, transition: Transition) -> "Traversal":
        return Traversal(self.start, self.steps + (transition,))

    def __repr__(self):
        if not self.steps:
            return f"Traversal({self.start!r})"
        return "Traversal(" + "".join(
            [repr(self.start)]
            + [
                ("->" if s.kind is TransitionKind.EDGE else "~>") + repr(s.target)
                for s in self.steps
            ]
        ) + ")"


# --------------------------------------------------------------------------
# Accumulation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class VectorAcc:
    """Fixed set of named numeric dimensions, e.g. ("length_m", "cost")."""

    names: tuple[str, ...]
    values: tuple[float, ...]

    @classmethod
    def zero(cls, *names: str) -> "VectorAcc":
        return cls(tuple(names), (0.0,) * len(names))

    def get(self, name: str) -> float:
        return self.values[self.names.index(name)]

    def add(self, **deltas: float) -> "VectorAcc":
        updated = list(self.values)
        for name, delta in deltas.items():
            updated[self.names.index(name)] += delta
        return VectorAcc(self.names, tuple(updated))

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))


@dataclass(frozen=True)
class CounterAcc:
    """Named natural-number counters, e.g. hops or gaps used."""

    names: tuple[str, ...]
    values: tuple[int, ...]

    @classmethod
    def zero(cls, *names: str) -> "CounterAcc":
        return cls(tuple(names), (0,) * len(names))

    def get(self, name: str) -> int:
        return self.values[self.names.index(name)]

    def add(self, **deltas: int) -> "CounterAcc":
        updated = list(self.values)
        for name, delta in deltas.items():
            updated[self.names.index(name)] += delta
        return CounterAcc(self.names, tuple(updated))

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))


@dataclass(frozen=True)
class Accumulator:
    """Initial state plus the fold step applied on every extension.

    ``step`` receives the previous state and the traversal *including* the
    transition just taken (its last step); simple accumulators look only at
    that last step, history-dependent ones may scan the whole prefix.  Must
    be pure and deterministic.
    """

    initial: object
    step: Callable[[object, Traversal], object]


class ExplorationDecision(Enum):
    CONTINUE = "continue"
    TERMINATE = "terminate"
    PRUNE = "prune"


SigmaFn = Callable[[Traversal, object], ExplorationDecision]


# --------------------------------------------------------------------------
# Frontier policies
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Fifo:
    """Breadth-first extraction order."""


@dataclass(frozen=True)
class Lifo:
    """Depth-first extraction order."""


@dataclass(frozen=True)
class Priority:
    """Best-first by a total-order key on the accumulation state.

    Ties break by insertion order, so runs are fully deterministic.
    """

    key: Callable[[object], object]


@dataclass(frozen=True)
class Beam:
    """Keep at most ``width`` states per depth level, best-first by key.

    Depth is the traversal length; within a level, extraction follows the
    key with insertion order as tie-break.  Not exhaustive: dropped states
    are gone for good.
    """

    width: int
    key: Callable[[object], object]


FrontierPolicy = object  # one of Fifo | Lifo | Priority | Beam


class _FifoFrontier:
    def __init__(self):
        self._queue = deque()

    def push(self, state):
        self._queue.append(state)

    def pop(self):
        return self._queue.popleft()

    def __len__(self):
        return len(self._queue)


class _LifoFrontier(_FifoFrontier):
    def pop(self):
        return self._queue.pop()


class _PriorityFrontier:
    def __init__(self, key):
        self._key = key
        self._heap = []
        self._tick = 0

    def push(self, state):
        heapq.heappush(self._heap, (self._key(state.accumulation), self._tick, state))
        self._tick += 1

    def pop(self):
        return heapq.heappop(self._heap)[2]

    def __len__(self):
        return len(self._heap)


class _BeamFrontier:
    # Level-synchronized: states of the current depth are consumed while
    # their successors (all one level deeper) gather in a buffer; when the
    # level is exhausted the buffer is truncated to the beam width.
    def __init__(self, width, key):
        if width < 1:
            raise ConfigError("beam width must be >= 1")
        self._width = width
        self._key = key
        self._current = deque()
        self._buffer = []
        self._tick = 0

    def push(self, state):
        self._buffer.append((self._key(state.accumulation), self._tick, state))
        self._tick += 1

    def pop(self):
        if not self._current:
            self._buffer.sort(key=lambda item: item[:2])
            self._current.extend(s for _, _, s in self._buffer[: self._width])
            self._buffer.clear()
        return self._current.popleft()

    def __len__(self):
        return len(self._current) + len(self._buffer)


def _make_frontier(policy: FrontierPolicy):
    if isinstance(policy, Fifo):
        return _FifoFrontier()
    if isinstance(policy, Lifo):
        return _LifoFrontier()
    if isinstance(policy, Priority):
        return _PriorityFrontier(policy.key)
    if isinstance(policy, Beam):
        return _BeamFrontier(policy.width, policy.key)
    raise ConfigError(f"unknown frontier policy: {policy!r}")


# --------------------------------------------------------------------------
# Search
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TraversalState:
    """A traversal paired with its accumulation."""

    traversal: Traversal
    accumulation: object


@dataclass(frozen=True)
class SearchConfig:
    graph: TypedGraph
    start: NodeId
    domain: DomainProvider
    predicate: GapPredicate
    accumulator: Accumulator
    sigma: SigmaFn
    frontier: FrontierPolicy = Fifo()
    safety_cap: Optional[int] = DEFAULT_SAFETY_CAP


@dataclass
class SearchStats:
    states_expanded: int = 0
    states_pruned: int = 0
    states_terminated: int = 0
    gap_transitions_generated: int = 0


@dataclass
class SolutionSet:
    """All terminated traversal states, in extraction order.

    ``safety_cap_exceeded`` flags that the expansion budget ran out before
    the frontier drained; the solutions found up to that point are kept.
    """

    solutions: list[TraversalState] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)
    safety_cap_exceeded: bool = False

    def __len__(self):
        return len(self.solutions)

    def accumulations(self) -> list:
        return [s.accumulation for s in self.solutions]


def expand(cfg: SearchConfig, state: TraversalState) -> list[TraversalState]:
    """Successor states of one traversal state.

    Edge successors come first (sorted by target), then gap successors
    (sorted by target).  A pair that is both an edge and a domain candidate
    is emitted once, as an edge.  Already-visited targets are skipped, which
    keeps every traversal simple.
    """
    traversal = state.traversal
    n = traversal.current_node()
    visited = traversal.visited_nodes()
    g = cfg.graph

    successors = []

    def push(m, kind):
        transition = Transition(n, m, kind)
        extended = traversal.extended(transition)
        accumulation = cfg.accumulator.step(state.accumulation, extended)
        successors.append(TraversalState(extended, accumulation))

    for m in g.out_neighbors(n):
        if m not in visited:
            push(m, TransitionKind.EDGE)

    for m in cfg.domain.candidates(g, n):
        if m in visited or g.has_edge(n, m):
            continue
        try:
            admissible = cfg.predicate.accepts(g, n, m)
        except MissingProperty as exc:
            raise MissingProperty(
                exc.owner, exc.key, f"while evaluating gap candidate ({n!r}, {m!r})"
            ) from exc
        if admissible:
            push(m, TransitionKind.GAP)

    return successors


def search(cfg: SearchConfig) -> SolutionSet:
    """Run the parametric traversal search to exhaustion (or the cap).

    Each extracted state is judged by the exploration predicate: PRUNE
    drops it, TERMINATE records it, and both TERMINATE and CONTINUE expand
    its successors into the frontier.  The empty traversal at the start
    node goes through the same judgement, so a search whose start already
    satisfies the termination rule yields a length-0 solution.
    """
    if not cfg.graph.has_node(cfg.start):
        raise ConfigError(f"start node {cfg.start!r} is not in the graph")
    if cfg.safety_cap is not None and cfg.safety_cap < 0:
        raise ConfigError("safety_cap must be >= 0")

    frontier = _make_frontier(cfg.frontier)
    frontier.push(TraversalState(Traversal(cfg.start), cfg.accumulator.initial))

    result = SolutionSet()
    stats = result.stats

    while len(frontier):
        state = frontier.pop()
        decision = cfg.sigma(state.traversal, state.accumulation)

        if decision is ExplorationDecision.PRUNE:
            stats.states_pruned += 1
            continue
        if decision is ExplorationDecision.TERMINATE:
            stats.states_terminated += 1
            result.solutions.append(state)
        elif decision is not ExplorationDecision.CONTINUE:
            raise ConfigError(f"sigma returned {decision!r}")

        if cfg.safety_cap is not None and stats.states_expanded >= cfg.safety_cap:
            result.safety_cap_exceeded = True
            break
        stats.states_expanded += 1

        for successor in expand(cfg, state):
            if successor.traversal.steps[-1].kind is TransitionKind.GAP:
                stats.gap_transitions_generated += 1
            frontier.push(successor)

    return result


def recompute_accumulation(cfg: SearchConfig, traversal: Traversal) -> object:
    """Audit helper: re-fold the accumulator over a traversal's prefixes.

    Checks contiguity and the edge/gap classification of every step against
    the config's graph, domain and predicate before folding, so a corrupted
    traversal raises :class:`InvalidTraversal` instead of yielding junk.
    """
    g = cfg.graph
    expected_source = traversal.start
    for step in traversal.steps:
        if step.source != expected_source:
            raise InvalidTraversal(
                f"non-contiguous traversal: expected step from {expected_source!r}, "
                f"got {step!r}"
            )
        if step.kind is TransitionKind.EDGE:
            if not g.has_edge(step.source, step.target):
                raise InvalidTraversal(f"{step!r} tagged as edge but not in the graph")
        else:
            if g.has_edge(step.source, step.target):
                raise InvalidTraversal(f"{step!r} tagged as gap but the edge exists")
            if step.target not in cfg.domain.candidates(g, step.source):
                raise InvalidTraversal(f"{step!r} target not in the candidate domain")
            if not cfg.predicate.accepts(g, step.source, step.target):
                raise InvalidTraversal(f"{step!r} rejected by the gap predicate")
        expected_source = step.target

    accumulation = cfg.accumulator.initial
    for k in range(1, traversal.length + 1):
        prefix = Traversal(traversal.start, traversal.steps[:k])
        accumulation = cfg.accumulator.step(accumulation, prefix)
    return accumulation


def estimate_state_bound(g: TypedGraph, max_domain: int, depth: int) -> int:
    """Worst-case count of traversal states explored up to a given length.

    Computed exactly as (|E|/|N| + max_domain) ** depth in rational
    arithmetic, rounded up to a whole state count.  Diagnostic only; the
    real search is usually far below this because of pruning.
    """
    if g.node_count == 0:
        raise EmptyGraph("estimate_state_bound requires at least one node")
    if max_domain < 0 or depth < 0:
        raise ValueError("max_domain and depth must be >= 0")
    branching = Fraction(g.edge_count, g.node_count) + max_domain
    return math.ceil(branching**depth)
