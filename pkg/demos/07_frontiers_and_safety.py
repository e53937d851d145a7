"""Exploration order, worst-case growth, and the safety cap.

The frontier policy fixes the order states are expanded in, never the set
of solutions (beam search excepted: it deliberately drops states).  The
state-count estimator shows why a weak exploration predicate is dangerous,
and the safety cap is what stands between such a predicate and a hang.
"""

from gaptraverse import (
    Accumulator,
    Beam,
    CounterAcc,
    EmptyDomain,
    AlwaysAccept,
    ExplorationDecision,
    Fifo,
    Lifo,
    OracleConfig,
    Priority,
    SearchConfig,
    build_graph,
    enumerate_solutions,
    estimate_state_bound,
    search,
)

# A diamond: three routes of different cost from s to t.
nodes = [(n, {}) for n in ("s", "m1", "m2", "m3", "t")]
edges = [("s", "m1", {"cost": 1}), ("s", "m2", {"cost": 2}), ("s", "m3", {"cost": 3}),
         ("m1", "t", {"cost": 0}), ("m2", "t", {"cost": 0}), ("m3", "t", {"cost": 0})]
g = build_graph(nodes, edges)


def add_cost(acc, traversal):
    step = traversal.steps[-1]
    return acc.add(cost=g.edge_props(step.source, step.target)["cost"])


def sigma(traversal, acc):
    if traversal.current_node() == "t":
        return ExplorationDecision.TERMINATE
    return ExplorationDecision.CONTINUE


def run(frontier):
    cfg = SearchConfig(
        graph=g, start="s", domain=EmptyDomain(), predicate=AlwaysAccept(),
        accumulator=Accumulator(CounterAcc.zero("cost"), add_cost),
        sigma=sigma, frontier=frontier,
    )
    result = search(cfg)
    costs = [s.accumulation.get("cost") for s in result.solutions]
    print(f"{frontier.__class__.__name__:>8}: solution costs in extraction order {costs}")
    return cfg, result


run(Fifo())
run(Lifo())
cfg, _ = run(Priority(key=lambda acc: acc.get("cost")))
run(Beam(width=2, key=lambda acc: acc.get("cost")))  # drops the cost-3 branch

# The brute-force oracle agrees with any exhaustive frontier.
oracle = enumerate_solutions(OracleConfig.from_search_config(cfg))
print("oracle found the same", len(oracle.solutions), "solutions")

# Worst-case state count grows as (density + domain size) ** depth.
for depth in (2, 4, 8, 16):
    print(f"bound at depth {depth:>2}:", estimate_state_bound(g, max_domain=3, depth=depth))

# A predicate that never prunes would crawl a dense graph forever;
# the cap turns that into a flagged, partial result instead.
dense = build_graph(
    [(f"k{i}", {}) for i in range(18)],
    [(f"k{i}", f"k{j}", {"cost": 1}) for i in range(18) for j in range(18) if i != j],
)
reckless = SearchConfig(
    graph=dense, start="k0", domain=EmptyDomain(), predicate=AlwaysAccept(),
    accumulator=Accumulator(CounterAcc.zero("cost"), lambda a, t: a),
    sigma=lambda traversal, acc: ExplorationDecision.CONTINUE,
    safety_cap=10_000,
)
result = search(reckless)
print("reckless sigma:", result.stats.states_expanded, "states expanded,",
      "cap exceeded:", result.safety_cap_exceeded)
