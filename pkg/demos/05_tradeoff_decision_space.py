"""Non-scalarizable trade-offs: the output is a decision space.

Two ways to reach upstream equipment: zero new cables but two racks and a
row boundary, or one rack-local cross-connect and no movement at all.
Neither dominates the other, so the search returns both and the dominance
filter confirms the frontier; picking one is a downstream (often human)
decision.
"""

from gaptraverse import DominanceRelation, dominance_filter, fixtures, search
from gaptraverse.scenarios import DatacenterPolicy, datacenter_config

g = fixtures.datacenter_tradeoff_fixture()
result = search(datacenter_config(g, "SRV-1", DatacenterPolicy.premium()))

print("admissible traversals:")
for state in result.solutions:
    print("  ", state.traversal, state.accumulation.as_dict())

rel = DominanceRelation(("gap_count", "racks_traversed", "row_changes"))
outcome = dominance_filter(result, rel)
print(f"non-dominated: {len(outcome.frontier)}, dominated: {len(outcome.dominated)}")
print("an operator minimizing deployed cables picks the gap-free route;")
print("one minimizing spatial footprint picks the single-rack cross-connect.")
