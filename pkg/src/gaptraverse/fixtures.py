"""Small hand-built topologies used by the test suite and the demo scripts.

Each fixture is tiny enough to reason through by hand, which is the point:
expected solution sets for these graphs were derived by exhaustive
enumeration and are frozen in the tests.
"""

from __future__ import annotations

from .graph import TypedGraph, build_graph


def telco_route_fixture() -> TypedGraph:
    """Four nodes, two fiber segments, one admissible intra-site gap.

    A and D are ODFs in their own sites; B and C are splice boxes sharing
    site S1, 50 m apart.  The only way from A to D combines the two fibers
    with a B~>C gap.
    """
    nodes = [
        ("A", {"node_type": "odf", "site": "S0", "coordinates": (0.0, -100.0),
               "fiber_type": "sm"}),
        ("B", {"node_type": "splice", "site": "S1", "coordinates": (0.0, 0.0),
               "fiber_type": "sm"}),
        ("C", {"node_type": "splice", "site": "S1", "coordinates": (0.0, 50.0),
               "fiber_type": "sm"}),
        ("D", {"node_type": "odf", "site": "S2", "coordinates": (0.0, 150.0),
               "fiber_type": "sm"}),
    ]
    edges = [
        ("A", "B", {"length_m": 1200.0, "attenuation_db": 3.0, "fiber_type": "sm"}),
        ("C", "D", {"length_m": 1800.0, "attenuation_db": 3.5, "fiber_type": "sm"}),
    ]
    return build_graph(nodes, edges)


def single_route_27db_fixture() -> TypedGraph:
    """A lone ODF pair joined by one three-segment route totalling 27 dB.

    Sites are all distinct, so no gaps exist; the route is reachable exactly
    when the attenuation budget admits 27 dB.
    """
    nodes = [
        ("O1", {"node_type": "odf", "site": "T0", "coordinates": (0.0, 0.0),
                "fiber_type": "sm"}),
        ("M1", {"node_type": "splice", "site": "T1", "coordinates": (9000.0, 0.0),
                "fiber_type": "sm"}),
        ("M2", {"node_type": "splice", "site": "T2", "coordinates": (18000.0, 0.0),
                "fiber_type": "sm"}),
        ("O2", {"node_type": "odf", "site": "T3", "coordinates": (27000.0, 0.0),
                "fiber_type": "sm"}),
    ]
    segment = {"length_m": 9000.0, "attenuation_db": 9.0, "fiber_type": "sm"}
    edges = [
        ("O1", "M1", dict(segment)),
        ("M1", "M2", dict(segment)),
        ("M2", "O2", dict(segment)),
    ]
    return build_graph(nodes, edges)


def datacenter_contrast_fixture() -> TypedGraph:
    """One room where tier decides everything.

    The server's own rack panel has no free ports, so a standard client
    (rack-local gaps only) is stuck.  A premium client may patch to the
    neighbouring rack's panel and ride the row cabling to the upstream
    switch.
    """
    row = {"room": "RM1", "row": "RM1/ROW1"}
    nodes = [
        ("SRV-1", {"node_type": "server", "rack": "RM1/ROW1/RK1",
                   "available_ports": 1, **row}),
        ("PNL-1", {"node_type": "patch_panel", "rack": "RM1/ROW1/RK1",
                   "available_ports": 0, **row}),
        ("PNL-2", {"node_type": "patch_panel", "rack": "RM1/ROW1/RK2",
                   "available_ports": 4, **row}),
        ("SW-1", {"node_type": "switch", "rack": "RM1/ROW1/RK3",
                  "available_ports": 0, "upstream": True, **row}),
    ]
    edges = [
        ("PNL-1", "PNL-2", {"cabling": "row"}),
        ("PNL-2", "SW-1", {"cabling": "row"}),
    ]
    return build_graph(nodes, edges)


def datacenter_tradeoff_fixture() -> TypedGraph:
    """Two incomparable ways from a server to upstream equipment.

    Either follow existing cabling across a row boundary into the
    distribution rack (no new cable, two racks, one row crossed), or deploy
    one rack-local cross-connect to the in-rack switch (one gap, one rack,
    no row change).  Premium search returns exactly these two.
    """
    row1 = {"room": "RM1", "row": "RM1/ROW1", "rack": "RM1/ROW1/RK1"}
    row2 = {"room": "RM1", "row": "RM1/ROW2", "rack": "RM1/ROW2/RK9"}
    nodes = [
        ("SRV-1", {"node_type": "server", "available_ports": 2, **row1}),
        ("PNL-1", {"node_type": "patch_panel", "available_ports": 0, **row1}),
        ("TOR-1", {"node_type": "switch", "available_ports": 1, "upstream": True,
                   **row1}),
        ("PNL-D", {"node_type": "patch_panel", "available_ports": 0, **row2}),
        ("SW-D", {"node_type": "switch", "available_ports": 0, "upstream": True,
                  **row2}),
    ]
    edges = [
        ("SRV-1", "PNL-1", {"cabling": "intra_rack"}),
        ("PNL-1", "PNL-D", {"cabling": "row"}),
        ("PNL-D", "SW-D", {"cabling": "intra_rack"}),
    ]
    return build_graph(nodes, edges)
