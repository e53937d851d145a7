import random
from fractions import Fraction

import pytest

from gaptraverse import (
    DominanceRelation,
    SweepSpec,
    Traversal,
    TraversalState,
    VectorAcc,
    dominance_filter,
    fixtures,
    knee_report,
    search,
    sweep,
)
from gaptraverse.analysis import SweepSearchError
from gaptraverse.errors import (
    ConfigError,
    DimensionMismatch,
    EmptyPairSet,
    TooFewBudgets,
    UnknownNode,
)
from gaptraverse.scenarios import TelcoPolicy, telco_config

DIMS = ("gaps", "racks", "rows")


def state(*values) -> TraversalState:
    return TraversalState(Traversal(f"start{values}"), VectorAcc(DIMS, tuple(map(float, values))))


REL = DominanceRelation(DIMS)


def test_tradeoff_pair_is_mutually_non_dominated():
    a, b = state(0, 2, 1), state(1, 1, 0)
    result = dominance_filter([a, b], REL)
    assert result.frontier == [a, b]
    assert result.dominated == []


def test_strict_domination():
    best, worst = state(0, 0, 0), state(1, 1, 1)
    result = dominance_filter([best, worst], REL)
    assert result.frontier == [best]
    assert len(result.dominated) == 1
    assert result.dominated[0].state == worst
    assert result.dominated[0].dominated_by == best


def test_singleton_is_its_own_frontier():
    only = state(2, 2, 2)
    result = dominance_filter([only], REL)
    assert result.frontier == [only]


def test_equal_accumulations_do_not_dominate_each_other():
    a, b = state(1, 1, 1), state(1, 1, 1)
    result = dominance_filter([a, b], REL)
    assert len(result.frontier) == 2


def test_dominance_is_irreflexive_antisymmetric_and_partitions():
    rng = random.Random(42)
    for _ in range(50):
        states = [
            state(rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3))
            for _ in range(rng.randint(1, 10))
        ]
        for s in states:
            assert not REL.dominates(s, s)
        for a in states:
            for b in states:
                assert not (REL.dominates(a, b) and REL.dominates(b, a))
        result = dominance_filter(states, REL)
        recombined = result.frontier + [d.state for d in result.dominated]
        assert sorted(map(id, recombined)) == sorted(map(id, states))
        for d in result.dominated:
            assert REL.dominates(d.dominated_by, d.state)
        for f in result.frontier:
            assert not any(REL.dominates(o, f) for o in states)


def test_dominance_missing_dimension():
    odd = TraversalState(Traversal("s"), VectorAcc(("gaps",), (1.0,)))
    with pytest.raises(DimensionMismatch):
        dominance_filter([state(0, 0, 0), odd], REL)


def test_dominance_accepts_solution_set():
    g = fixtures.telco_route_fixture()
    result = search(telco_config(g, "A", TelcoPolicy(target="D")))
    rel = DominanceRelation(("total_attenuation_db", "gap_count"))
    assert dominance_filter(result, rel).frontier == result.solutions


# -- sweep ----------------------------------------------------------------------


def single_route_spec(budgets=(20.0, 25.0, 30.0, 35.0)):
    g = fixtures.single_route_27db_fixture()

    def factory(source, target, budget):
        return telco_config(
            g, source, TelcoPolicy(target=target, attenuation_budget_db=budget)
        )

    return SweepSpec(budgets=tuple(budgets), pairs=(("O1", "O2"),), config_factory=factory)


def test_sweep_single_route_fractions():
    result = sweep(single_route_spec())
    fractions = [result.fractions[b] for b in result.budgets]
    assert fractions == [0, 0, 1, 1]
    assert result.reachable[20.0][("O1", "O2")] is False
    assert result.reachable[30.0][("O1", "O2")] is True


def test_sweep_reuses_proven_pairs():
    result = sweep(single_route_spec())
    assert (30.0, ("O1", "O2")) in result.solution_counts
    # proven reachable at 30, so 35 was never searched
    assert (35.0, ("O1", "O2")) not in result.solution_counts


def test_sweep_fractions_nondecreasing():
    result = sweep(single_route_spec())
    fractions = [result.fractions[b] for b in result.budgets]
    assert all(b >= a for a, b in zip(fractions, fractions[1:]))


def test_sweep_single_budget_matches_direct_search():
    g = fixtures.single_route_27db_fixture()
    for budget in (25.0, 30.0):
        result = sweep(single_route_spec(budgets=(budget,)))
        direct = search(
            telco_config(g, "O1", TelcoPolicy(target="O2", attenuation_budget_db=budget))
        )
        assert result.reachable[budget][("O1", "O2")] == (len(direct.solutions) > 0)


def test_sweep_empty_pair_set():
    spec = single_route_spec()
    with pytest.raises(EmptyPairSet):
        sweep(SweepSpec(spec.budgets, (), spec.config_factory))


def test_sweep_budgets_must_increase():
    spec = single_route_spec()
    with pytest.raises(ConfigError):
        SweepSpec((30.0, 20.0), spec.pairs, spec.config_factory)


def test_sweep_annotates_search_errors():
    g = fixtures.single_route_27db_fixture()

    def factory(source, target, budget):
        return telco_config(
            g, source, TelcoPolicy(target="nope", attenuation_budget_db=budget)
        )

    spec = SweepSpec((20.0, 25.0), (("O1", "O2"),), factory)
    with pytest.raises(SweepSearchError) as exc:
        sweep(spec)
    assert exc.value.pair == ("O1", "O2")
    assert exc.value.budget == 20.0
    assert isinstance(exc.value.cause, UnknownNode)


def test_sweep_budget_below_everything_gives_zero_fraction():
    result = sweep(single_route_spec(budgets=(1.0, 2.0)))
    assert [result.fractions[b] for b in result.budgets] == [0, 0]


# -- knee report -------------------------------------------------------------------


def test_knee_report_fractions_and_gains():
    result = sweep(single_route_spec())
    points = knee_report(result)
    assert [(p.fraction, p.marginal_gain) for p in points] == [
        (0, None),
        (0, 0),
        (1, 1),
        (0 + 1, 0),
    ]
    assert [p.budget for p in points] == [20.0, 25.0, 30.0, 35.0]


def test_knee_report_constant_curve():
    result = sweep(single_route_spec(budgets=(30.0, 35.0, 40.0)))
    points = knee_report(result)
    assert [p.marginal_gain for p in points] == [None, Fraction(0), Fraction(0)]


def test_knee_report_needs_two_budgets():
    result = sweep(single_route_spec(budgets=(30.0,)))
    with pytest.raises(TooFewBudgets):
        knee_report(result)
