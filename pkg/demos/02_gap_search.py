"""The core idea: traversals may cross edges *and* admissible gaps.

A gap from n to m is allowed when m lies in n's candidate domain (here:
same site) and the gap predicate accepts the pair (here: closer than
100 m).  The searched graph is never modified; gaps exist only inside the
returned traversals, tagged so the buildable segments are obvious.
"""

from gaptraverse import (
    Accumulator,
    CounterAcc,
    ExplorationDecision,
    MaxDistance,
    ScopeDomain,
    SearchConfig,
    TransitionKind,
    fixtures,
    search,
)

g = fixtures.telco_route_fixture()
print("edges:", g.edges)
print("B and C share a site, 50 m apart, but no edge joins them.")


def count_gaps(acc, traversal):
    if traversal.steps[-1].kind is TransitionKind.GAP:
        return acc.add(gaps=1)
    return acc


def sigma(traversal, acc):
    if acc.get("gaps") > 1:
        return ExplorationDecision.PRUNE
    if traversal.current_node() == "D":
        return ExplorationDecision.TERMINATE
    return ExplorationDecision.CONTINUE


cfg = SearchConfig(
    graph=g,
    start="A",
    domain=ScopeDomain("site"),
    predicate=MaxDistance(100.0),
    accumulator=Accumulator(CounterAcc.zero("gaps"), count_gaps),
    sigma=sigma,
)

result = search(cfg)
for state in result.solutions:
    print("found:", state.traversal, "with", state.accumulation.as_dict())
    for step in state.traversal.steps:
        tag = "existing edge" if step.kind is TransitionKind.EDGE else "GAP to build"
        print(f"   {step.source} -> {step.target}: {tag}")
print("stats:", result.stats)
