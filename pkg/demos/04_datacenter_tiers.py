"""Feasibility as a property of policy, not of the graph.

The same topology, the same query; a premium client can be connected and a
standard client cannot.  Nothing about the infrastructure differs: only
the gap scope (room vs. own rack and patch panels only) and the gap
budget encoded in the policy.
"""

from gaptraverse import fixtures, search
from gaptraverse.scenarios import DatacenterPolicy, datacenter_config

g = fixtures.datacenter_contrast_fixture()
print("rack of SRV-1 has one panel, PNL-1, with zero free ports.")

for policy in (DatacenterPolicy.premium(), DatacenterPolicy.standard()):
    result = search(datacenter_config(g, "SRV-1", policy))
    print(f"{policy.tier}: {len(result.solutions)} solution(s)")
    for state in result.solutions:
        print("  ", state.traversal, state.accumulation.as_dict())
