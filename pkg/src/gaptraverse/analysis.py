"""Analyses over solution sets and policy families.

The search returns *all* admissible traversals; picking among them is a
downstream concern.  This module provides the two analyses the framework
is typically used for: dominance structure over multi-dimensional
accumulations, and budget sweeps that characterize how connectivity reacts
to policy severity.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

from .engine import SearchConfig, SolutionSet, TraversalState, search
from .errors import (
    ConfigError,
    DimensionMismatch,
    EmptyPairSet,
    GapTraverseError,
    TooFewBudgets,
)
from .graph import NodeId


def accumulation_dimensions(acc) -> Mapping:
    """Named numeric dimensions of an accumulation state."""
    if hasattr(acc, "as_dict"):
        return acc.as_dict()
    if isinstance(acc, Mapping):
        return acc
    if dataclasses.is_dataclass(acc):
        return dataclasses.asdict(acc)
    raise DimensionMismatch(f"cannot read dimensions from {acc!r}")


def dimension_value(acc, name: str):
    dims = accumulation_dimensions(acc)
    if name not in dims:
        raise DimensionMismatch(f"accumulation {acc!r} lacks dimension {name!r}")
    return dims[name]


# --------------------------------------------------------------------------
# Dominance
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DominanceRelation:
    """Componentwise comparison, minimizing every named dimension."""

    dimensions: tuple[str, ...]

    def dominates(self, a: TraversalState, b: TraversalState) -> bool:
        """a is no worse than b everywhere and strictly better somewhere."""
        strictly_better = False
        for name in self.dimensions:
            va = dimension_value(a.accumulation, name)
            vb = dimension_value(b.accumulation, name)
            if va > vb:
                return False
            if va < vb:
                strictly_better = True
        return strictly_better


@dataclass(frozen=True)
class DominatedSolution:
    state: TraversalState
    dominated_by: TraversalState


@dataclass
class DominanceResult:
    frontier: list[TraversalState]
    dominated: list[DominatedSolution]


def dominance_filter(
    solutions: Union[SolutionSet, Sequence[TraversalState]],
    rel: DominanceRelation,
) -> DominanceResult:
    """Split solutions into the non-dominated frontier and the rest.

    Order is stable: both lists preserve the input order, and each dominated
    entry records the first state (in input order) that dominates it.
    """
    states = list(solutions.solutions if isinstance(solutions, SolutionSet) else solutions)
    frontier: list[TraversalState] = []
    dominated: list[DominatedSolution] = []
    for state in states:
        dominator = next((o for o in states if o is not state and rel.dominates(o, state)), None)
        if dominator is None:
            frontier.append(state)
        else:
            dominated.append(DominatedSolution(state, dominator))
    return DominanceResult(frontier, dominated)


# --------------------------------------------------------------------------
# Budget sweeps
# --------------------------------------------------------------------------


class SweepSearchError(GapTraverseError):
    """A per-pair search failed; carries which pair and budget."""

    def __init__(self, pair, budget, cause):
        self.pair = pair
        self.budget = budget
        self.cause = cause
        super().__init__(f"search failed for pair {pair!r} at budget {budget!r}: {cause}")


ConfigFactory = Callable[[NodeId, NodeId, float], SearchConfig]


@dataclass(frozen=True)
class SweepSpec:
    """A family of threshold-prune searches over (pair, budget) points.

    ``config_factory(source, target, budget)`` must return a config whose
    exploration predicate prunes exactly when the swept accumulation
    dimension exceeds the budget, all other parameters fixed; that is what
    makes the family monotone and the reuse optimization sound.
    """

    budgets: tuple[float, ...]
    pairs: tuple[tuple[NodeId, NodeId], ...]
    config_factory: ConfigFactory

    def __post_init__(self):
        if any(b2 <= b1 for b1, b2 in zip(self.budgets, self.budgets[1:])):
            raise ConfigError("budgets must be strictly increasing")


@dataclass
class SweepResult:
    budgets: tuple[float, ...]
    pairs: tuple[tuple[NodeId, NodeId], ...]
    reachable: dict  # budget -> {pair: bool}
    fractions: dict  # budget -> Fraction
    solution_counts: dict = field(default_factory=dict)  # (budget, pair) -> int

    def connectivity_fraction(self, budget) -> Fraction:
        return self.fractions[budget]


def sweep(spec: SweepSpec) -> SweepResult:
    """Which pairs admit at least one valid traversal, per budget.

    Budgets run in increasing order and a pair proven reachable at one
    budget is not searched again at larger ones; solution counts are
    therefore recorded only for the (pair, budget) points actually run.
    """
    if not spec.pairs:
        raise EmptyPairSet("sweep needs at least one (source, target) pair")
    if not spec.budgets:
        raise ConfigError("sweep needs at least one budget")

    reachable: dict = {}
    fractions: dict = {}
    counts: dict = {}
    proven: set = set()

    for budget in spec.budgets:
        verdicts = {}
        for pair in spec.pairs:
            if pair in proven:
                verdicts[pair] = True
                continue
            source, target = pair
            try:
                cfg = spec.config_factory(source, target, budget)
                result = search(cfg)
            except GapTraverseError as exc:
                raise SweepSearchError(pair, budget, exc) from exc
            counts[(budget, pair)] = len(result.solutions)
            verdicts[pair] = len(result.solutions) > 0
            if verdicts[pair]:
                proven.add(pair)
        reachable[budget] = verdicts
        fractions[budget] = Fraction(sum(verdicts.values()), len(spec.pairs))

    ordered = [fractions[b] for b in spec.budgets]
    if any(f2 < f1 for f1, f2 in zip(ordered, ordered[1:])):
        raise GapTraverseError("sweep produced a non-monotone connectivity curve")
    return SweepResult(spec.budgets, spec.pairs, reachable, fractions, counts)


@dataclass(frozen=True)
class KneePoint:
    budget: float
    fraction: Fraction
    marginal_gain: Optional[Fraction]  # None for the first budget


def knee_report(result: SweepResult) -> list[KneePoint]:
    """Connectivity per budget with first differences, smallest budget first.

    Purely descriptive: where the gains flatten out is the reader's call.
    """
    if len(result.budgets) < 2:
        raise TooFewBudgets("knee_report needs at least two budgets")
    points = []
    previous = None
    for budget in result.budgets:
        fraction = result.fractions[budget]
        gain = None if previous is None else fraction - previous
        points.append(KneePoint(budget, fraction, gain))
        previous = fraction
    return points
