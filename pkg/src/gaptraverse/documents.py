"""Versioned JSON document formats: topology, policy, results.

Topology documents carry nodes and links; links are undirected by default
and expand to two directed edges on load.  Policy documents either select a
built-in scenario (telco, datacenter) or declare a custom parametrization:
domain, predicate, named accumulation dimensions, and threshold/equality
exploration rules.  Result documents are self-contained enough that a
verifier can recheck every transition and every accumulation from the
topology + policy + result alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .acceptability import (
    AlwaysAccept,
    CompositeDomain,
    Conjunction,
    DomainProvider,
    EmptyDomain,
    GapPredicate,
    HasAvailablePorts,
    MaxDistance,
    PropertyCompatible,
    PropertyEquals,
    PropertyValueDomain,
    ScopeDomain,
    SpatialDomain,
)
from .analysis import SweepResult, accumulation_dimensions, dimension_value
from .engine import (
    Accumulator,
    Beam,
    ExplorationDecision,
    Fifo,
    FrontierPolicy,
    Lifo,
    Priority,
    SearchConfig,
    SolutionSet,
    TransitionKind,
    Traversal,
    VectorAcc,
)
from .errors import ParseError, SchemaError
from .graph import NodeId, TypedGraph, build_graph

FORMAT_VERSION = 1

SWEEP_CSV_COLUMNS = ("budget", "source", "target", "reachable", "fraction")


# --------------------------------------------------------------------------
# Topology documents
# --------------------------------------------------------------------------


def _load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(path, str(exc)) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(raw, dict):
        raise SchemaError("<document>", "top level must be an object")
    version = raw.get("format_version")
    if version != FORMAT_VERSION:
        raise SchemaError("format_version", f"expected {FORMAT_VERSION}, got {version!r}")
    return raw


def _check_id(value, where: str) -> NodeId:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise SchemaError(where, f"node id must be a string or integer, got {value!r}")
    return value


def _check_properties(value, where: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise SchemaError(where, "properties must be an object")
    return value


def load_topology(path) -> TypedGraph:
    """Read a topology document and build the validated graph."""
    raw = _load_json(path)
    unknown = set(raw) - {"format_version", "nodes", "links"}
    if unknown:
        raise SchemaError(sorted(unknown)[0], "unexpected top-level field")

    nodes = []
    for i, entry in enumerate(raw.get("nodes", [])):
        if not isinstance(entry, dict) or "id" not in entry:
            raise SchemaError(f"nodes[{i}]", "each node needs an 'id'")
        extra = set(entry) - {"id", "type", "properties"}
        if extra:
            raise SchemaError(f"nodes[{i}].{sorted(extra)[0]}", "unexpected field")
        node_id = _check_id(entry["id"], f"nodes[{i}].id")
        props = dict(_check_properties(entry.get("properties"), f"nodes[{i}].properties"))
        if "type" in entry:
            props["node_type"] = entry["type"]
        nodes.append((node_id, props))

    edges = []
    for i, entry in enumerate(raw.get("links", [])):
        if not isinstance(entry, dict) or "from" not in entry or "to" not in entry:
            raise SchemaError(f"links[{i}]", "each link needs 'from' and 'to'")
        extra = set(entry) - {"from", "to", "directed", "properties"}
        if extra:
            raise SchemaError(f"links[{i}].{sorted(extra)[0]}", "unexpected field")
        source = _check_id(entry["from"], f"links[{i}].from")
        target = _check_id(entry["to"], f"links[{i}].to")
        props = _check_properties(entry.get("properties"), f"links[{i}].properties")
        directed = entry.get("directed", False)
        if not isinstance(directed, bool):
            raise SchemaError(f"links[{i}].directed", "must be true or false")
        edges.append((source, target, props))
        if not directed:
            edges.append((target, source, props))

    return build_graph(nodes, edges)  # GraphValidationError forwarded as-is


def topology_document(g: TypedGraph) -> dict:
    """The document form of a graph; every link is emitted directed."""
    nodes = []
    for node_id in g.nodes:
        props = dict(g.node_props(node_id))
        entry = {"id": node_id}
        if "node_type" in props:
            entry["type"] = props.pop("node_type")
        entry["properties"] = {
            k: list(v) if isinstance(v, tuple) else v for k, v in props.items()
        }
        nodes.append(entry)
    links = []
    for source, target in g.edges:
        props = g.edge_props(source, target)
        links.append(
            {
                "from": source,
                "to": target,
                "directed": True,
                "properties": {
                    k: list(v) if isinstance(v, tuple) else v for k, v in props.items()
                },
            }
        )
    return {"format_version": FORMAT_VERSION, "nodes": nodes, "links": links}


def dump_topology(g: TypedGraph) -> str:
    """Deterministic serialization: same graph, same bytes."""
    return json.dumps(topology_document(g), indent=2, sort_keys=True) + "\n"


def save_topology(g: TypedGraph, path) -> None:
    Path(path).write_text(dump_topology(g))


# --------------------------------------------------------------------------
# Policy documents
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CustomPolicy:
    domain_spec: dict
    predicate_spec: dict
    dimensions: tuple[dict, ...]
    rules: tuple[dict, ...]


@dataclass(frozen=True)
class SweepSection:
    budgets: tuple[float, ...]
    pairs: tuple[tuple[NodeId, NodeId], ...]
    dimension: Optional[str] = None


@dataclass(frozen=True)
class PolicyDocument:
    scenario: str  # telco | datacenter | custom
    scenario_fields: dict
    frontier_spec: object = "fifo"
    sweep: Optional[SweepSection] = None
    custom: Optional[CustomPolicy] = None


_DIMENSION_KINDS = {
    "count_transitions",
    "count_edges",
    "count_gaps",
    "sum_edge_property",
    "count_property_equals",
}


def _parse_custom(section: dict) -> CustomPolicy:
    for required in ("domain", "predicate", "accumulation", "rules"):
        if required not in section:
            raise SchemaError(f"custom.{required}", "required for custom policies")
    dims = []
    names = set()
    for i, dim in enumerate(section["accumulation"]):
        if not isinstance(dim, dict) or "name" not in dim or "kind" not in dim:
            raise SchemaError(f"custom.accumulation[{i}]", "needs 'name' and 'kind'")
        if dim["kind"] not in _DIMENSION_KINDS:
            raise SchemaError(
                f"custom.accumulation[{i}].kind", f"unknown kind {dim['kind']!r}"
            )
        if dim["kind"] in ("sum_edge_property", "count_property_equals") and "property" not in dim:
            raise SchemaError(f"custom.accumulation[{i}].property", "required")
        names.add(dim["name"])
        dims.append(dim)
    rules = []
    for i, rule in enumerate(section["rules"]):
        if not isinstance(rule, dict) or len(rule) != 1:
            raise SchemaError(f"custom.rules[{i}]", "must be {'prune_if': ...} or {'terminate_if': ...}")
        action, cond = next(iter(rule.items()))
        if action not in ("prune_if", "terminate_if"):
            raise SchemaError(f"custom.rules[{i}]", f"unknown action {action!r}")
        if "dimension" in cond and cond["dimension"] not in names:
            raise SchemaError(
                f"custom.rules[{i}].dimension",
                f"{cond['dimension']!r} is not a declared accumulation dimension",
            )
        rules.append(rule)
    return CustomPolicy(
        domain_spec=section["domain"],
        predicate_spec=section["predicate"],
        dimensions=tuple(dims),
        rules=tuple(rules),
    )


def load_policy(path) -> PolicyDocument:
    raw = _load_json(path)
    scenario = raw.get("scenario")
    if scenario not in ("telco", "datacenter", "custom"):
        raise SchemaError("scenario", f"must be telco, datacenter or custom, got {scenario!r}")

    sweep_section = None
    if "sweep" in raw:
        sw = raw["sweep"]
        if not isinstance(sw, dict) or "budgets" not in sw or "pairs" not in sw:
            raise SchemaError("sweep", "needs 'budgets' and 'pairs'")
        budgets = tuple(sw["budgets"])
        if any(b2 <= b1 for b1, b2 in zip(budgets, budgets[1:])):
            raise SchemaError("sweep.budgets", "must be strictly increasing")
        pairs = []
        for i, pair in enumerate(sw["pairs"]):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(f"sweep.pairs[{i}]", "must be a [source, target] pair")
            pairs.append((pair[0], pair[1]))
        sweep_section = SweepSection(budgets, tuple(pairs), sw.get("dimension"))

    custom = None
    if scenario == "custom":
        if "custom" not in raw:
            raise SchemaError("custom", "required when scenario is custom")
        custom = _parse_custom(raw["custom"])

    return PolicyDocument(
        scenario=scenario,
        scenario_fields=raw.get(scenario, {}) if scenario != "custom" else {},
        frontier_spec=raw.get("frontier", "fifo"),
        sweep=sweep_section,
        custom=custom,
    )


# --------------------------------------------------------------------------
# Building engine objects from declarative specs
# --------------------------------------------------------------------------


def build_domain(spec: dict) -> DomainProvider:
    kind = spec.get("kind")
    if kind == "empty":
        return EmptyDomain()
    if kind == "scope":
        return ScopeDomain(spec["key"])
    if kind == "spatial":
        return SpatialDomain(spec["radius_m"])
    if kind == "property_value":
        return PropertyValueDomain(spec["key"], spec["value"])
    if kind in ("intersection", "union"):
        return CompositeDomain([build_domain(s) for s in spec["of"]], kind)
    raise SchemaError("domain.kind", f"unknown domain kind {kind!r}")


def build_predicate(spec: dict) -> GapPredicate:
    kind = spec.get("kind")
    if kind == "always":
        return AlwaysAccept()
    if kind == "max_distance":
        return MaxDistance(spec["limit_m"])
    if kind == "property_equals":
        return PropertyEquals(spec["key"])
    if kind == "property_compatible":
        return PropertyCompatible(spec["key"], spec.get("table"))
    if kind == "has_available_ports":
        return HasAvailablePorts()
    if kind == "all":
        return Conjunction([build_predicate(s) for s in spec["of"]])
    raise SchemaError("predicate.kind", f"unknown predicate kind {kind!r}")


def build_accumulator(g: TypedGraph, dimensions) -> Accumulator:
    """Accumulator over named dimensions, each fed by one counting rule."""
    names = tuple(d["name"] for d in dimensions)

    def step(acc: VectorAcc, traversal: Traversal) -> VectorAcc:
        t = traversal.steps[-1]
        deltas = {}
        for dim in dimensions:
            kind = dim["kind"]
            if kind == "count_transitions":
                delta = 1.0
            elif kind == "count_edges":
                delta = 1.0 if t.kind is TransitionKind.EDGE else 0.0
            elif kind == "count_gaps":
                delta = 1.0 if t.kind is TransitionKind.GAP else 0.0
            elif kind == "sum_edge_property":
                if t.kind is TransitionKind.EDGE:
                    props = g.edge_props(t.source, t.target)
                    delta = float(props.get(dim["property"], dim.get("default", 0.0)))
                else:
                    delta = float(dim.get("gap_value", 0.0))
            else:  # count_property_equals
                value = g.node_props(t.target).get(dim["property"])
                delta = 1.0 if value == dim["value"] else 0.0
            deltas[dim["name"]] = delta
        return acc.add(**deltas)

    return Accumulator(initial=VectorAcc.zero(*names), step=step)


def _condition_holds(cond: dict, g: TypedGraph, traversal: Traversal, acc) -> bool:
    if "dimension" in cond:
        value = dimension_value(acc, cond["dimension"])
        if "gt" in cond:
            return value > cond["gt"]
        if "ge" in cond:
            return value >= cond["ge"]
        if "lt" in cond:
            return value < cond["lt"]
        if "le" in cond:
            return value <= cond["le"]
        if "eq" in cond:
            return value == cond["eq"]
        raise SchemaError("rules", f"dimension condition needs a comparator: {cond!r}")
    if "node_property" in cond:
        value = g.node_props(traversal.current_node()).get(cond["node_property"])
        if "eq" in cond:
            return value == cond["eq"]
        return bool(value)
    if "node_is" in cond:
        return traversal.current_node() == cond["node_is"]
    raise SchemaError("rules", f"unsupported condition: {cond!r}")


def build_sigma(g: TypedGraph, rules):
    """Threshold/equality rules; any prune hit wins over any terminate hit."""

    prune_conds = [r["prune_if"] for r in rules if "prune_if" in r]
    terminate_conds = [r["terminate_if"] for r in rules if "terminate_if" in r]

    def sigma(traversal: Traversal, acc) -> ExplorationDecision:
        if any(_condition_holds(c, g, traversal, acc) for c in prune_conds):
            return ExplorationDecision.PRUNE
        if any(_condition_holds(c, g, traversal, acc) for c in terminate_conds):
            return ExplorationDecision.TERMINATE
        return ExplorationDecision.CONTINUE

    return sigma


def build_frontier(spec, dimension_key=None) -> FrontierPolicy:
    if spec == "fifo" or spec is None:
        return Fifo()
    if spec == "lifo":
        return Lifo()
    if isinstance(spec, dict) and spec.get("kind") == "priority":
        name = spec.get("key_dimension", dimension_key)
        if name is None:
            raise SchemaError("frontier.key_dimension", "priority frontier needs a dimension")
        return Priority(key=lambda acc: dimension_value(acc, name))
    if isinstance(spec, dict) and spec.get("kind") == "beam":
        name = spec.get("key_dimension", dimension_key)
        if name is None or "width" not in spec:
            raise SchemaError("frontier", "beam frontier needs 'width' and a dimension")
        return Beam(width=spec["width"], key=lambda acc: dimension_value(acc, name))
    raise SchemaError("frontier", f"unknown frontier spec {spec!r}")


def has_prune_horizon(custom: CustomPolicy) -> bool:
    """True iff the rules provably bound traversal length.

    Only a strict/inclusive upper bound on a dimension that grows by one on
    *every* transition guarantees a horizon; anything subtler is the
    caller's risk and needs an explicit safety cap.
    """
    length_dims = {d["name"] for d in custom.dimensions if d["kind"] == "count_transitions"}
    for rule in custom.rules:
        cond = rule.get("prune_if")
        if cond and cond.get("dimension") in length_dims and ("gt" in cond or "ge" in cond):
            return True
    return False


def build_custom_config(
    g: TypedGraph,
    custom: CustomPolicy,
    start: NodeId,
    target: Optional[NodeId] = None,
    frontier_spec="fifo",
    safety_cap: Optional[int] = None,
    extra_rules: tuple = (),
) -> SearchConfig:
    rules = custom.rules + tuple(extra_rules)
    if target is not None:
        rules = rules + ({"terminate_if": {"node_is": target}},)
    kwargs = {} if safety_cap is None else {"safety_cap": safety_cap}
    return SearchConfig(
        graph=g,
        start=start,
        domain=build_domain(custom.domain_spec),
        predicate=build_predicate(custom.predicate_spec),
        accumulator=build_accumulator(g, custom.dimensions),
        sigma=build_sigma(g, rules),
        frontier=build_frontier(frontier_spec, custom.dimensions[0]["name"]),
        **kwargs,
    )


# --------------------------------------------------------------------------
# Scenario wiring
# --------------------------------------------------------------------------


_TELCO_FIELDS = {
    "target",
    "max_gap_distance_m",
    "attenuation_budget_db",
    "max_gaps",
    "max_amplifiers",
    "gap_attenuation_db_per_km",
    "gap_connector_loss_db",
    "fiber_compatibility",
}

_DATACENTER_FIELDS = {"tier", "max_gaps", "max_row_changes"}


def _telco_policy(fields: dict, target=None):
    from .scenarios.telco import TelcoPolicy

    unknown = set(fields) - _TELCO_FIELDS
    if unknown:
        raise SchemaError(f"telco.{sorted(unknown)[0]}", "unknown policy field")
    kwargs = dict(fields)
    if target is not None:
        kwargs["target"] = target
    if "target" not in kwargs:
        raise SchemaError("telco.target", "a target ODF is required (or pass --to)")
    return TelcoPolicy(**kwargs)


def _datacenter_policy(fields: dict):
    from .scenarios.datacenter import DatacenterPolicy

    unknown = set(fields) - _DATACENTER_FIELDS
    if unknown:
        raise SchemaError(f"datacenter.{sorted(unknown)[0]}", "unknown policy field")
    tier = fields.get("tier")
    if tier == "standard":
        base = DatacenterPolicy.standard()
    elif tier == "premium":
        base = DatacenterPolicy.premium()
    else:
        raise SchemaError("datacenter.tier", f"must be standard or premium, got {tier!r}")
    import dataclasses as _dc

    overrides = {k: v for k, v in fields.items() if k in ("max_gaps", "max_row_changes")}
    return _dc.replace(base, **overrides) if overrides else base


def default_key_dimension(doc: PolicyDocument) -> str:
    if doc.scenario == "telco":
        return "total_attenuation_db"
    if doc.scenario == "datacenter":
        return "gap_count"
    return doc.custom.dimensions[0]["name"]


def policy_to_config(
    g: TypedGraph,
    doc: PolicyDocument,
    start: NodeId,
    target: Optional[NodeId] = None,
    frontier_spec=None,
    safety_cap: Optional[int] = None,
) -> SearchConfig:
    """Materialize a search config from a loaded policy document."""
    from .scenarios.datacenter import datacenter_config
    from .scenarios.telco import telco_config

    frontier = build_frontier(
        doc.frontier_spec if frontier_spec is None else frontier_spec,
        dimension_key=default_key_dimension(doc),
    )
    if doc.scenario == "telco":
        policy = _telco_policy(doc.scenario_fields, target)
        kwargs = {} if safety_cap is None else {"safety_cap": safety_cap}
        return telco_config(g, start, policy, frontier=frontier, **kwargs)
    if doc.scenario == "datacenter":
        policy = _datacenter_policy(doc.scenario_fields)
        kwargs = {} if safety_cap is None else {"safety_cap": safety_cap}
        return datacenter_config(g, start, policy, frontier=frontier, **kwargs)
    return build_custom_config(
        g,
        doc.custom,
        start,
        target=target,
        frontier_spec=doc.frontier_spec if frontier_spec is None else frontier_spec,
        safety_cap=safety_cap,
    )


def policy_to_sweep_spec(g: TypedGraph, doc: PolicyDocument, safety_cap=None):
    """Build the (pair, budget) search family described by the policy's sweep section.

    Supported for the telco scenario (attenuation budget) and for custom
    policies (prune threshold on a named dimension, terminating at the
    pair's target).
    """
    from .analysis import SweepSpec

    if doc.sweep is None:
        raise SchemaError("sweep", "the policy document has no sweep section")
    section = doc.sweep

    if doc.scenario == "telco":
        dimension = section.dimension or "total_attenuation_db"
        if dimension != "total_attenuation_db":
            raise SchemaError("sweep.dimension", "telco sweeps budget total_attenuation_db")

        def factory(source, target, budget):
            policy = _telco_policy(doc.scenario_fields, target).with_budget(budget)
            kwargs = {} if safety_cap is None else {"safety_cap": safety_cap}
            from .scenarios.telco import telco_config

            return telco_config(g, source, policy, **kwargs)

    elif doc.scenario == "custom":
        if section.dimension is None:
            raise SchemaError("sweep.dimension", "custom sweeps need a dimension")
        declared = {d["name"] for d in doc.custom.dimensions}
        if section.dimension not in declared:
            raise SchemaError("sweep.dimension", f"{section.dimension!r} not declared")

        def factory(source, target, budget):
            budget_rule = {"prune_if": {"dimension": section.dimension, "gt": budget}}
            return build_custom_config(
                g,
                doc.custom,
                source,
                target=target,
                safety_cap=safety_cap,
                extra_rules=(budget_rule,),
            )

    else:
        raise SchemaError("sweep", "sweeps are supported for telco and custom policies")

    return SweepSpec(section.budgets, section.pairs, factory)


# --------------------------------------------------------------------------
# Result documents
# --------------------------------------------------------------------------


def _step_accumulations(accumulator: Accumulator, traversal: Traversal):
    acc = accumulator.initial
    out = []
    for k in range(1, traversal.length + 1):
        acc = accumulator.step(acc, Traversal(traversal.start, traversal.steps[:k]))
        out.append(acc)
    return out


def result_document(
    result: SolutionSet,
    accumulator: Accumulator,
    start: NodeId,
    meta: Optional[dict] = None,
    max_solutions: Optional[int] = None,
) -> dict:
    """Machine-readable search outcome with per-step accumulations.

    ``max_solutions`` truncates the listing only; counts and stats always
    describe the full run.
    """
    listed = result.solutions
    if max_solutions is not None:
        listed = listed[:max_solutions]
    solutions = []
    for state in listed:
        t = state.traversal
        steps = []
        for transition, acc in zip(t.steps, _step_accumulations(accumulator, t)):
            steps.append(
                {
                    "from": transition.source,
                    "to": transition.target,
                    "kind": transition.kind.value,
                    "accumulation": dict(accumulation_dimensions(acc)),
                }
            )
        solutions.append(
            {
                "start": t.start,
                "length": t.length,
                "steps": steps,
                "final_accumulation": dict(accumulation_dimensions(state.accumulation)),
            }
        )
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "search_result",
        "start": start,
        "solution_count": len(result.solutions),
        "listed_count": len(listed),
        "safety_cap_exceeded": result.safety_cap_exceeded,
        "stats": {
            "states_expanded": result.stats.states_expanded,
            "states_pruned": result.stats.states_pruned,
            "states_terminated": result.stats.states_terminated,
            "gap_transitions_generated": result.stats.gap_transitions_generated,
        },
        "solutions": solutions,
    }
    if meta:
        doc["meta"] = meta
    return doc


def sweep_csv(result: SweepResult) -> str:
    """Budget/pair reachability as CSV (fixed column order)."""
    lines = [",".join(SWEEP_CSV_COLUMNS)]
    for budget in result.budgets:
        fraction = float(result.fractions[budget])
        for source, target in result.pairs:
            reachable = result.reachable[budget][(source, target)]
            lines.append(
                f"{budget},{source},{target},{'true' if reachable else 'false'},{fraction}"
            )
    return "\n".join(lines) + "\n"
