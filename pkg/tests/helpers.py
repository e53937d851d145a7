"""Shared builders for randomized engine/oracle comparison tests."""

from __future__ import annotations

import heapq
import random

from gaptraverse import (
    Accumulator,
    AlwaysAccept,
    Conjunction,
    EmptyDomain,
    ExplorationDecision,
    Fifo,
    HasAvailablePorts,
    MaxDistance,
    PropertyEquals,
    ScopeDomain,
    SearchConfig,
    TransitionKind,
    TypedGraph,
    VectorAcc,
    build_graph,
)

GAP_WEIGHT = 3.0


def random_graph(rng: random.Random, min_nodes=3, max_nodes=10, max_edges=20) -> TypedGraph:
    """Small random digraph with site groups of at most 6 nodes.

    Scope domains therefore never exceed 5 candidates.  Every node carries
    coordinates, a two-valued 'kind' and an available_ports count, so any of
    the stock predicates can run without missing-property errors.
    """
    n = rng.randint(min_nodes, max_nodes)
    ids = [f"n{i}" for i in range(n)]

    nodes = []
    site_index = 0
    remaining = list(ids)
    while remaining:
        group_size = min(len(remaining), rng.randint(1, 6))
        for node in remaining[:group_size]:
            nodes.append(
                (
                    node,
                    {
                        "site": f"g{site_index}",
                        "coordinates": (rng.uniform(0, 300), rng.uniform(0, 300)),
                        "kind": rng.choice(["x", "y"]),
                        "available_ports": rng.randint(0, 3),
                    },
                )
            )
        remaining = remaining[group_size:]
        site_index += 1

    pairs = [(a, b) for a in ids for b in ids if a != b]
    rng.shuffle(pairs)
    edge_count = rng.randint(0, min(max_edges, len(pairs)))
    edges = [
        (a, b, {"weight": rng.randint(1, 9)}) for a, b in pairs[:edge_count]
    ]
    return build_graph(nodes, edges)


def hops_gaps_weight_accumulator(g: TypedGraph) -> Accumulator:
    """Counts transitions and gaps, sums edge weights (gaps cost GAP_WEIGHT)."""

    def step(acc: VectorAcc, traversal) -> VectorAcc:
        t = traversal.steps[-1]
        if t.kind is TransitionKind.EDGE:
            weight = float(g.edge_props(t.source, t.target)["weight"])
            gaps = 0.0
        else:
            weight = GAP_WEIGHT
            gaps = 1.0
        return acc.add(hops=1.0, gaps=gaps, weight=weight)

    return Accumulator(initial=VectorAcc.zero("hops", "gaps", "weight"), step=step)


def random_domain(rng: random.Random):
    return rng.choice([EmptyDomain(), ScopeDomain("site"), ScopeDomain("site")])


def random_predicate(rng: random.Random):
    return rng.choice(
        [
            AlwaysAccept(),
            MaxDistance(rng.uniform(80, 400)),
            PropertyEquals("kind"),
            HasAvailablePorts(),
            Conjunction([MaxDistance(rng.uniform(120, 400)), PropertyEquals("kind")]),
        ]
    )


def threshold_sigma(max_hops, max_gaps, max_weight, terminate):
    """Prune on any exceeded threshold, else apply the terminate test."""

    def sigma(traversal, acc):
        if acc.get("hops") > max_hops:
            return ExplorationDecision.PRUNE
        if acc.get("gaps") > max_gaps:
            return ExplorationDecision.PRUNE
        if max_weight is not None and acc.get("weight") > max_weight:
            return ExplorationDecision.PRUNE
        if terminate(traversal):
            return ExplorationDecision.TERMINATE
        return ExplorationDecision.CONTINUE

    return sigma


def random_config(rng: random.Random, g: TypedGraph, frontier=Fifo()) -> SearchConfig:
    ids = g.nodes
    target = rng.choice(ids)
    if rng.random() < 0.3:
        kinds = {n: g.node_props(n).get("kind") for n in ids}

        def terminate(traversal):
            return kinds[traversal.current_node()] == "x"

    else:

        def terminate(traversal):
            return traversal.current_node() == target

    sigma = threshold_sigma(
        max_hops=rng.randint(1, 6),
        max_gaps=rng.randint(0, 3),
        max_weight=rng.choice([12.0, 25.0, 50.0, None]),
        terminate=terminate,
    )
    return SearchConfig(
        graph=g,
        start=rng.choice(ids),
        domain=random_domain(rng),
        predicate=random_predicate(rng),
        accumulator=hops_gaps_weight_accumulator(g),
        sigma=sigma,
        frontier=frontier,
    )


def dijkstra_distance(g: TypedGraph, source, target, weight_key="weight"):
    """Textbook Dijkstra over edges only; None when unreachable."""
    dist = {source: 0}
    heap = [(0, source)]
    done = set()
    while heap:
        d, n = heapq.heappop(heap)
        if n in done:
            continue
        done.add(n)
        if n == target:
            return d
        for m in g.out_neighbors(n):
            nd = d + int(g.edge_props(n, m)[weight_key])
            if m not in dist or nd < dist[m]:
                dist[m] = nd
                heapq.heappush(heap, (nd, m))
    return dist.get(target)


def complete_graph(n: int) -> TypedGraph:
    ids = [f"k{i}" for i in range(n)]
    nodes = [(i, {"site": "all"}) for i in ids]
    edges = [(a, b, {"weight": 1}) for a in ids for b in ids if a != b]
    return build_graph(nodes, edges)
