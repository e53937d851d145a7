"""Calibrating a policy before deploying anything.

Sweep the attenuation budget over a fleet of ODF pairs and watch the
fraction of connectable pairs: the curve tells the operator where
loosening the budget stops buying connectivity.  Pairs proven reachable
at a small budget are not re-searched at larger ones (the family is
monotone by construction).
"""

from gaptraverse import SweepSpec, knee_report, sweep, sweep_csv
from gaptraverse.scenarios import TelcoParams, TelcoPolicy, generate_telco, telco_config

g = generate_telco(TelcoParams(seed=2024, sites=5, odfs_per_site=2))
pairs = tuple(
    (f"S{a}-ODF1", f"S{b}-ODF1") for a, b in [(0, 1), (0, 2), (0, 4), (1, 3), (2, 4)]
)


def family(source, target, budget):
    return telco_config(g, source, TelcoPolicy(target=target, attenuation_budget_db=budget))


spec = SweepSpec(budgets=(20.0, 25.0, 30.0, 35.0), pairs=pairs, config_factory=family)
result = sweep(spec)

for point in knee_report(result):
    gain = "" if point.marginal_gain is None else f"   (+{point.marginal_gain})"
    print(f"budget {point.budget:>5} dB: {point.fraction} of pairs connectable{gain}")

print()
print(sweep_csv(result))
