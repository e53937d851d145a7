"""Acceptance gate: one test (and one printed PASS/FAIL line) per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines as they
print; without ``-s`` they still appear in pytest's captured output.
"""

import random
import time

from gaptraverse import (
    DominanceRelation,
    EmptyDomain,
    ExplorationDecision,
    Fifo,
    HasAvailablePorts,
    Lifo,
    OracleConfig,
    Priority,
    ScopeDomain,
    SearchConfig,
    SweepSpec,
    TransitionKind,
    build_graph,
    dominance_filter,
    enumerate_solutions,
    estimate_state_bound,
    fixtures,
    run_cli,
    search,
    sweep,
)
from gaptraverse.acceptability import CompositeDomain, PropertyValueDomain
from gaptraverse.documents import result_document, save_topology
from gaptraverse.engine import Accumulator, CounterAcc, DEFAULT_SAFETY_CAP
from gaptraverse.scenarios import (
    DatacenterParams,
    DatacenterPolicy,
    TelcoParams,
    TelcoPolicy,
    datacenter_config,
    generate_datacenter,
    generate_telco,
    telco_config,
)

from helpers import (
    complete_graph,
    dijkstra_distance,
    hops_gaps_weight_accumulator,
    random_config,
    random_graph,
    threshold_sigma,
)


def check(number, description, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[ACCEPTANCE {number:02d}] {status}: {description}")
    assert ok, f"criterion {number} failed: {description} {detail}"


def test_criterion_1_oracle_equivalence_500_configs():
    started = time.monotonic()
    mismatches = []
    for i in range(500):
        rng = random.Random(10_000 + i)
        g = random_graph(rng, min_nodes=3, max_nodes=12)
        cfg = random_config(rng, g)
        engine = set(search(cfg).solutions)
        oracle = set(enumerate_solutions(OracleConfig.from_search_config(cfg)).solutions)
        if engine != oracle:
            mismatches.append(i)
    elapsed = time.monotonic() - started
    check(
        1,
        f"engine = oracle on 500 randomized configs in {elapsed:.1f}s",
        not mismatches and elapsed < 60.0,
        detail=f"mismatching configs: {mismatches[:5]}, elapsed {elapsed:.1f}s",
    )


def test_criterion_2_telco_scenario_exact():
    g = fixtures.telco_route_fixture()
    cfg = telco_config(g, "A", TelcoPolicy(target="D"))
    result = search(cfg)
    oracle = enumerate_solutions(OracleConfig.from_search_config(cfg))

    exact_set = set(result.solutions) == set(oracle.solutions)
    one_solution = len(result.solutions) == 1
    acc = result.solutions[0].accumulation if one_solution else None
    expected_attenuation = 3.0 + (0.35 * (50.0 / 1000.0) + 0.5) + 3.5
    steps = [
        (s.source, s.target, s.kind) for s in result.solutions[0].traversal.steps
    ] if one_solution else []
    route_ok = steps == [
        ("A", "B", TransitionKind.EDGE),
        ("B", "C", TransitionKind.GAP),
        ("C", "D", TransitionKind.EDGE),
    ]
    budgets_ok = (
        one_solution
        and acc.gap_count == 1
        and acc.total_attenuation_db == expected_attenuation
        and acc.total_attenuation_db <= 30.0
        and acc.amplifier_count <= 1
    )
    doc = result_document(result, cfg.accumulator, cfg.start)
    per_step = all(
        "total_attenuation_db" in step["accumulation"]
        for solution in doc["solutions"]
        for step in solution["steps"]
    )
    check(
        2,
        "telco fixture: exact solution set, one intra-site gap within budgets, "
        "per-step attenuation exposed",
        exact_set and one_solution and route_ok and budgets_ok and per_step,
    )


def test_criterion_3_datacenter_tier_contrast():
    g = fixtures.datacenter_contrast_fixture()
    premium = search(datacenter_config(g, "SRV-1", DatacenterPolicy.premium()))
    standard = search(datacenter_config(g, "SRV-1", DatacenterPolicy.standard()))
    check(
        3,
        "same fixture: premium >= 1 solution, standard exactly 0",
        len(premium.solutions) >= 1 and len(standard.solutions) == 0,
        detail=f"premium={len(premium.solutions)} standard={len(standard.solutions)}",
    )


def test_criterion_4_non_dominated_tradeoff():
    g = fixtures.datacenter_tradeoff_fixture()
    result = search(datacenter_config(g, "SRV-1", DatacenterPolicy.premium()))
    accs = sorted(
        (a.gap_count, a.racks_traversed, a.row_changes) for a in result.accumulations()
    )
    rel = DominanceRelation(("gap_count", "racks_traversed", "row_changes"))
    dominance = dominance_filter(result, rel)
    check(
        4,
        "trade-off fixture: exactly (0,2,1) and (1,1,0), both non-dominated",
        accs == [(0, 2, 1), (1, 1, 0)]
        and len(dominance.frontier) == 2
        and not dominance.dominated,
        detail=f"accumulations={accs}",
    )


def test_criterion_5_sweep_shape():
    started = time.monotonic()
    budgets = (20.0, 25.0, 30.0, 35.0)

    # single-route fixture: exact fractions
    fixture = fixtures.single_route_27db_fixture()

    def fixture_factory(source, target, budget):
        return telco_config(
            fixture, source, TelcoPolicy(target=target, attenuation_budget_db=budget)
        )

    fixed = sweep(SweepSpec(budgets, (("O1", "O2"),), fixture_factory))
    exact = [fixed.fractions[b] for b in budgets] == [0, 0, 1, 1]

    # seeded generated network: nondecreasing connectivity
    g = generate_telco(TelcoParams(seed=2024, sites=5, odfs_per_site=2))

    def generated_factory(source, target, budget):
        return telco_config(
            g, source, TelcoPolicy(target=target, attenuation_budget_db=budget)
        )

    pairs = tuple(
        (f"S{a}-ODF1", f"S{b}-ODF1") for a, b in [(0, 1), (0, 2), (0, 4), (1, 3), (2, 4)]
    )
    generated = sweep(SweepSpec(budgets, pairs, generated_factory))
    curve = [generated.fractions[b] for b in budgets]
    nondecreasing = all(b >= a for a, b in zip(curve, curve[1:]))
    elapsed = time.monotonic() - started
    check(
        5,
        f"sweep: fixture fractions (0,0,1,1); generated curve {curve} nondecreasing "
        f"in {elapsed:.1f}s",
        exact and nondecreasing and elapsed < 30.0,
    )


def hop_bounded_config(g, start, max_hops, safety_cap=DEFAULT_SAFETY_CAP):
    def step(acc, traversal):
        return acc.add(hops=1)

    def sigma(traversal, acc):
        if acc.get("hops") > max_hops:
            return ExplorationDecision.PRUNE
        if g.node_props(traversal.current_node()).get("upstream"):
            return ExplorationDecision.TERMINATE
        return ExplorationDecision.CONTINUE

    return SearchConfig(
        graph=g,
        start=start,
        domain=CompositeDomain.intersection(
            ScopeDomain("rack"), PropertyValueDomain("node_type", "patch_panel")
        ),
        predicate=HasAvailablePorts(),
        accumulator=Accumulator(CounterAcc.zero("hops"), step),
        sigma=sigma,
        safety_cap=safety_cap,
    )


def test_criterion_6_termination():
    g = generate_datacenter(
        DatacenterParams(seed=1, rooms=5, rows_per_room=5, racks_per_row=10,
                         panels_per_rack=3)
    )
    big_enough = g.node_count >= 1000
    server = next(
        n for n in g.nodes if g.node_props(n).get("node_type") == "server"
    )
    bounded = search(hop_bounded_config(g, server, max_hops=4))
    finished = not bounded.safety_cap_exceeded

    def never_stop(traversal, acc):
        return ExplorationDecision.CONTINUE

    horizonless = SearchConfig(
        graph=complete_graph(20),
        start="k0",
        domain=EmptyDomain(),
        predicate=HasAvailablePorts(),
        accumulator=Accumulator(CounterAcc.zero("hops"), lambda a, t: a),
        sigma=never_stop,
        safety_cap=5000,
    )
    capped = search(horizonless)
    check(
        6,
        f"length-bounded sigma finishes on a {g.node_count}-node graph; "
        "horizonless sigma trips the safety cap instead of hanging",
        big_enough and finished and capped.safety_cap_exceeded,
        detail=f"nodes={g.node_count} expanded={bounded.stats.states_expanded}",
    )


def test_criterion_7_dijkstra_reduction_200_graphs():
    failures = []
    for i in range(200):
        rng = random.Random(20_000 + i)
        g = random_graph(rng, min_nodes=4, max_nodes=12)
        start, target = rng.sample(g.nodes, 2)

        def terminate(traversal, _t=target):
            return traversal.current_node() == _t

        cfg = SearchConfig(
            graph=g,
            start=start,
            domain=EmptyDomain(),
            predicate=HasAvailablePorts(),
            accumulator=hops_gaps_weight_accumulator(g),
            sigma=threshold_sigma(10**9, 0, 10**9, terminate),
            frontier=Priority(key=lambda acc: acc.get("weight")),
        )
        result = search(cfg)
        expected = dijkstra_distance(g, start, target)
        if expected is None:
            if result.solutions:
                failures.append(i)
        elif (
            not result.solutions
            or min(s.accumulation.get("weight") for s in result.solutions) != expected
        ):
            failures.append(i)
    check(
        7,
        "minimum accumulation equals Dijkstra on 200 random graphs (exact)",
        not failures,
        detail=f"failing graphs: {failures[:5]}",
    )


def test_criterion_8_frontier_set_independence_100_configs():
    failures = []
    for i in range(100):
        rng = random.Random(30_000 + i)
        g = random_graph(rng)
        base = random_config(rng, g)
        sets = []
        for frontier in (Fifo(), Lifo(), Priority(key=lambda acc: acc.get("weight"))):
            cfg = SearchConfig(
                graph=base.graph,
                start=base.start,
                domain=base.domain,
                predicate=base.predicate,
                accumulator=base.accumulator,
                sigma=base.sigma,
                frontier=frontier,
            )
            sets.append(set(search(cfg).solutions))
        if not sets[0] == sets[1] == sets[2]:
            failures.append(i)
    check(
        8,
        "FIFO, LIFO and priority frontiers return identical solution sets "
        "on 100 randomized configs",
        not failures,
        detail=f"failing configs: {failures[:5]}",
    )


def test_criterion_9_policy_relaxation_monotonicity():
    failures = []
    for i in range(100):
        rng = random.Random(40_000 + i)
        g = random_graph(rng)
        start = rng.choice(g.nodes)
        target = rng.choice(g.nodes)

        def terminate(traversal, _t=target):
            return traversal.current_node() == _t

        def budgeted(budget):
            return SearchConfig(
                graph=g,
                start=start,
                domain=ScopeDomain("site"),
                predicate=HasAvailablePorts(),
                accumulator=hops_gaps_weight_accumulator(g),
                sigma=threshold_sigma(6, 2, budget, terminate),
            )

        b1 = rng.uniform(2, 20)
        b2 = b1 + rng.uniform(0, 20)
        tight = set(search(budgeted(b1)).solutions)
        loose = set(search(budgeted(b2)).solutions)
        if not tight <= loose:
            failures.append(i)
    check(
        9,
        "S(B1) is a subset of S(B2) whenever B1 <= B2, on randomized configs",
        not failures,
        detail=f"failing configs: {failures[:5]}",
    )


def test_criterion_10_complexity_estimator(tmp_path, capsys):
    ids = [f"v{i}" for i in range(5)]
    pairs = [(a, b) for a in ids for b in ids if a != b][:10]
    g = build_graph([(i, {}) for i in ids], [(a, b, {}) for a, b in pairs])
    library_ok = (
        estimate_state_bound(g, max_domain=3, depth=2) == 25
        and estimate_state_bound(g, max_domain=3, depth=0) == 1
        and estimate_state_bound(build_graph([("x", {})], []), 0, 5) == 0
    )
    save_topology(g, tmp_path / "t.json")
    code = run_cli(
        ["estimate", str(tmp_path / "t.json"), "--max-domain", "3", "--depth", "2"]
    )
    printed = capsys.readouterr().out.strip()
    check(
        10,
        "estimate reproduces the density-plus-domain bound exactly "
        "(10 edges, 5 nodes, b=3, L=2 -> 25)",
        library_ok and code == 0 and printed == "25",
        detail=f"cli printed {printed!r}",
    )
