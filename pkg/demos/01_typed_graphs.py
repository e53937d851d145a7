"""Typed graphs: nodes and directed edges with free-form property bags.

The graph layer knows nothing about fibers or racks; it stores properties,
validates structure and answers adjacency queries deterministically.
"""

from gaptraverse import build_graph
from gaptraverse.errors import DuplicateEdge

nodes = [
    ("odf-1", {"node_type": "odf", "site": "paris-07", "coordinates": [2.0, 8.5]}),
    ("spl-1", {"node_type": "splice", "site": "paris-07", "coordinates": [2.0, 40.0]}),
    ("odf-2", {"node_type": "odf", "site": "paris-12", "coordinates": [480.0, 12.0]}),
]
edges = [
    ("odf-1", "spl-1", {"length_m": 42.0, "attenuation_db": 0.4, "fiber_type": "sm"}),
    ("spl-1", "odf-1", {"length_m": 42.0, "attenuation_db": 0.4, "fiber_type": "sm"}),
    ("spl-1", "odf-2", {"length_m": 3100.0, "attenuation_db": 4.1, "fiber_type": "sm"}),
]

g = build_graph(nodes, edges)
print(g)
print("nodes:", g.nodes)
print("out_neighbors(spl-1):", g.out_neighbors("spl-1"))
print("edge spl-1 -> odf-2 carries:", dict(g.edge_props("spl-1", "odf-2")))

stats = g.degree_stats()
print(f"average out-degree {stats.avg_out_degree} (exact), max {stats.max_out_degree}")

# Structural rules are enforced at construction: one directed edge per pair.
try:
    build_graph(nodes, edges + [("spl-1", "odf-2", {})])
except DuplicateEdge as exc:
    print("rejected:", exc)
