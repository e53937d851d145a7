import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaptraverse import (
    CompositeDomain,
    Conjunction,
    EmptyDomain,
    HasAvailablePorts,
    MaxDistance,
    PropertyCompatible,
    PropertyEquals,
    PropertyValueDomain,
    ScopeDomain,
    SpatialDomain,
    accepts,
    build_graph,
    candidates,
    fixtures,
)
from gaptraverse.errors import MissingCoordinates, MissingProperty, UnknownNode


def coord_graph(points, extra_props=None):
    nodes = [
        (f"p{i}", {"coordinates": xy, **(extra_props or {})})
        for i, xy in enumerate(points)
    ]
    return build_graph(nodes, [])


def test_empty_domain():
    g = fixtures.telco_route_fixture()
    assert candidates(EmptyDomain(), g, "A") == []


def test_scope_domain_on_telco_fixture():
    g = fixtures.telco_route_fixture()
    # Oracle: scan every node's site property by hand.
    same_site_as_b = [
        n for n in g.nodes
        if n != "B" and g.node_props(n).get("site") == g.node_props("B").get("site")
    ]
    assert candidates(ScopeDomain("site"), g, "B") == same_site_as_b == ["C"]
    assert candidates(ScopeDomain("site"), g, "A") == []


def test_scope_domain_excludes_self_and_missing_key():
    g = build_graph([("A", {"site": "s"}), ("B", {"site": "s"}), ("C", {})], [])
    assert candidates(ScopeDomain("site"), g, "A") == ["B"]
    assert candidates(ScopeDomain("site"), g, "C") == []  # no scope, no candidates


def test_spatial_domain_example():
    g = coord_graph([(0.0, 0.0), (0.0, 50.0), (0.0, 150.0)])
    assert candidates(SpatialDomain(100.0), g, "p0") == ["p1"]


def test_spatial_domain_radius_inclusive():
    g = coord_graph([(0.0, 0.0), (0.0, 100.0)])
    assert candidates(SpatialDomain(100.0), g, "p0") == ["p1"]


def test_spatial_domain_missing_coordinates():
    g = build_graph([("A", {}), ("B", {"coordinates": (0.0, 0.0)})], [])
    with pytest.raises(MissingCoordinates):
        candidates(SpatialDomain(50.0), g, "A")
    # nodes without coordinates are silently not candidates
    assert candidates(SpatialDomain(50.0), g, "B") == []


def test_candidates_unknown_node():
    g = build_graph([("A", {"site": "s"})], [])
    with pytest.raises(UnknownNode):
        candidates(ScopeDomain("site"), g, "Z")


@given(
    st.lists(
        st.tuples(
            st.floats(-500, 500, allow_nan=False), st.floats(-500, 500, allow_nan=False)
        ),
        min_size=1,
        max_size=30,
    ),
    st.floats(1.0, 400.0, allow_nan=False),
    st.randoms(),
)
def test_spatial_grid_matches_linear_scan(points, radius, rng):
    g = coord_graph(points)
    ids = g.nodes
    n = ids[rng.randrange(len(ids))]
    nx, ny = g.node_props(n)["coordinates"]
    brute = sorted(
        m
        for m in ids
        if m != n
        and math.hypot(
            g.node_props(m)["coordinates"][0] - nx,
            g.node_props(m)["coordinates"][1] - ny,
        )
        <= radius
    )
    assert candidates(SpatialDomain(radius), g, n) == brute


def test_composite_intersection_and_union():
    g = build_graph(
        [
            ("A", {"site": "s", "node_type": "panel"}),
            ("B", {"site": "s", "node_type": "panel"}),
            ("C", {"site": "s", "node_type": "switch"}),
            ("D", {"site": "t", "node_type": "panel"}),
        ],
        [],
    )
    scope = ScopeDomain("site")
    panels = PropertyValueDomain("node_type", "panel")
    both = CompositeDomain.intersection(scope, panels)
    either = CompositeDomain.union(scope, panels)
    assert candidates(both, g, "A") == sorted(
        set(candidates(scope, g, "A")) & set(candidates(panels, g, "A"))
    ) == ["B"]
    assert candidates(either, g, "A") == sorted(
        set(candidates(scope, g, "A")) | set(candidates(panels, g, "A"))
    ) == ["B", "C", "D"]


def test_domain_determinism():
    rng = random.Random(7)
    g = coord_graph([(rng.uniform(0, 100), rng.uniform(0, 100)) for _ in range(12)])
    domain = SpatialDomain(40.0)
    assert candidates(domain, g, "p3") == candidates(domain, g, "p3")


# -- predicates -------------------------------------------------------------


def two_points(d):
    return coord_graph([(0.0, 0.0), (0.0, d)])


def test_max_distance_below_limit():
    assert accepts(MaxDistance(100.0), two_points(50.0), "p0", "p1") is True


def test_max_distance_exactly_at_limit_is_rejected():
    assert accepts(MaxDistance(100.0), two_points(100.0), "p0", "p1") is False


def test_has_available_ports():
    g = build_graph(
        [("n", {"available_ports": 1}), ("m", {"available_ports": 0}),
         ("k", {"available_ports": 2})],
        [],
    )
    pred = HasAvailablePorts()
    assert accepts(pred, g, "n", "m") is False
    assert accepts(pred, g, "n", "k") is True


def test_has_available_ports_missing_property():
    g = build_graph([("n", {"available_ports": 1}), ("m", {})], [])
    with pytest.raises(MissingProperty) as exc:
        accepts(HasAvailablePorts(), g, "n", "m")
    assert exc.value.key == "available_ports"


def test_property_equals():
    g = build_graph([("n", {"ft": "sm"}), ("m", {"ft": "sm"}), ("k", {"ft": "mm"})], [])
    assert accepts(PropertyEquals("ft"), g, "n", "m") is True
    assert accepts(PropertyEquals("ft"), g, "n", "k") is False
    with pytest.raises(MissingProperty):
        accepts(PropertyEquals("absent"), g, "n", "m")


def test_property_compatible_defaults_to_same_value():
    g = build_graph([("n", {"ft": "sm"}), ("m", {"ft": "mm"})], [])
    assert accepts(PropertyCompatible("ft"), g, "n", "m") is False
    table = {"sm": ["sm", "mm"]}
    assert accepts(PropertyCompatible("ft", table), g, "n", "m") is True
    # the table is directional unless the author says otherwise
    assert accepts(PropertyCompatible("ft", table), g, "m", "n") is False


def test_conjunction():
    g = coord_graph([(0.0, 0.0), (0.0, 50.0)], extra_props={"ft": "sm"})
    pred = Conjunction([MaxDistance(100.0), PropertyEquals("ft")])
    assert accepts(pred, g, "p0", "p1") is True
    tight = Conjunction([MaxDistance(10.0), PropertyEquals("absent")])
    # distance already fails, so the missing property is never consulted
    assert accepts(tight, g, "p0", "p1") is False
