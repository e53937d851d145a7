"""Optical route construction under physical budgets.

Four operational rules at once: intra-site gaps under 100 m, a 30 dB
attenuation budget, at most one gap, amplifiers traversed at most once.
None of this fits a single scalar edge weight; the accumulation carries
all four dimensions and the exploration predicate enforces them.
"""

from gaptraverse import fixtures, search
from gaptraverse.scenarios import TelcoPolicy, telco_config

g = fixtures.telco_route_fixture()

result = search(telco_config(g, "A", TelcoPolicy(target="D")))
for state in result.solutions:
    acc = state.accumulation
    print("route:", state.traversal)
    print(f"  length {acc.total_length_m:.0f} m, attenuation {acc.total_attenuation_db} dB,"
          f" gaps {acc.gap_count}, amplifiers {acc.amplifier_count}")
    print(f"  remaining budget: {30.0 - acc.total_attenuation_db:.4f} dB")

# Tighten the attenuation budget below the route's total and it disappears;
# note the route is pruned, not returned-and-flagged.
tight = search(telco_config(g, "A", TelcoPolicy(target="D", attenuation_budget_db=5.0)))
print("with a 5 dB budget:", len(tight.solutions), "solutions")

# Forbid gaps and the incomplete documentation wins.
no_gaps = search(telco_config(g, "A", TelcoPolicy(target="D", max_gaps=0)))
print("with gaps forbidden:", len(no_gaps.solutions), "solutions")
