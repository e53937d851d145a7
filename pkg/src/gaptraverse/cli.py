"""Command-line interface.

Subcommands: ``validate``, ``search``, ``sweep``, ``generate``, ``estimate``
(plus a hidden ``oracle-search`` that runs the brute-force enumerator for
debugging parity failures).  Exit codes: 0 success, 1 usage error,
2 validation error, 3 safety cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import sweep
from .documents import (
    default_key_dimension,
    dump_topology,
    has_prune_horizon,
    load_policy,
    load_topology,
    policy_to_config,
    policy_to_sweep_spec,
    result_document,
    sweep_csv,
)
from .engine import DEFAULT_SAFETY_CAP, estimate_state_bound, search
from .errors import GapTraverseError, InvalidParams
from .oracle import OracleConfig, enumerate_solutions
from .scenarios.datacenter import DatacenterParams, generate_datacenter
from .scenarios.telco import TelcoParams, generate_telco

SAFETY_CAP_ENV = "GAPTRAVERSE_SAFETY_CAP"
ESTIMATE_SENTINEL_ABOVE = 10**30


class UsageError(Exception):
    pass


def _err(message: str) -> None:
    print(f"gaptraverse: {message}", file=sys.stderr)


def _write_output(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _effective_safety_cap(args) -> int:
    if getattr(args, "safety_cap", None) is not None:
        return args.safety_cap
    env = os.environ.get(SAFETY_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SAFETY_CAP_ENV} must be an integer, got {env!r}")
    return DEFAULT_SAFETY_CAP


def _explicit_safety_cap(args) -> bool:
    return getattr(args, "safety_cap", None) is not None or SAFETY_CAP_ENV in os.environ


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------


def _path_string(solution: dict) -> str:
    chunks = [str(solution["start"])]
    for step in solution["steps"]:
        arrow = "->" if step["kind"] == "edge" else "~>"
        chunks.append(f" {arrow} {step['to']}")
    return "".join(chunks)


def _render_search(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        solutions = doc["solutions"]
        dims = list(solutions[0]["final_accumulation"]) if solutions else []
        lines = [",".join(["solution", "length", "path"] + dims)]
        for i, solution in enumerate(solutions, 1):
            final = solution["final_accumulation"]
            lines.append(
                ",".join(
                    [str(i), str(solution["length"]), _path_string(solution)]
                    + [str(final[d]) for d in dims]
                )
            )
        return "\n".join(lines) + "\n"
    # table
    lines = []
    if not doc["solutions"]:
        lines.append("no admissible traversal")
    for i, solution in enumerate(doc["solutions"], 1):
        lines.append(f"solution {i}: {_path_string(solution)}")
        for step in solution["steps"]:
            acc = "  ".join(f"{k}={v}" for k, v in step["accumulation"].items())
            arrow = "->" if step["kind"] == "edge" else "~> (gap)"
            lines.append(f"  {step['from']} {arrow} {step['to']}   {acc}")
        final = "  ".join(f"{k}={v}" for k, v in solution["final_accumulation"].items())
        lines.append(f"  final: {final}")
    stats = doc["stats"]
    lines.append(
        f"stats: expanded={stats['states_expanded']} pruned={stats['states_pruned']} "
        f"terminated={stats['states_terminated']} gaps={stats['gap_transitions_generated']}"
    )
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Handlers
# --------------------------------------------------------------------------


def _cmd_validate(args) -> int:
    g = load_topology(args.topology)
    line = f"topology valid: {g.node_count} nodes, {g.edge_count} directed edges"
    if g.node_count:
        stats = g.degree_stats()
        line += f", avg out-degree {stats.avg_out_degree}, max {stats.max_out_degree}"
    print(line)
    return 0


def _frontier_spec_from_args(args, policy_doc):
    if args.frontier is None:
        return None
    if args.frontier in ("fifo", "lifo"):
        return args.frontier
    key = args.key_dimension or default_key_dimension(policy_doc)
    if args.frontier == "priority":
        return {"kind": "priority", "key_dimension": key}
    return {"kind": "beam", "width": args.beam_width, "key_dimension": key}


def _build_config(args):
    g = load_topology(args.topology)
    policy_doc = load_policy(args.policy)
    if (
        policy_doc.scenario == "custom"
        and not has_prune_horizon(policy_doc.custom)
        and not _explicit_safety_cap(args)
    ):
        raise UsageError(
            "custom policy has no provable prune horizon; pass --safety-cap "
            f"(or set {SAFETY_CAP_ENV})"
        )
    cfg = policy_to_config(
        g,
        policy_doc,
        start=args.source,
        target=args.target,
        frontier_spec=_frontier_spec_from_args(args, policy_doc),
        safety_cap=_effective_safety_cap(args),
    )
    return cfg


def _report_search(args, cfg, result) -> int:
    doc = result_document(
        result,
        cfg.accumulator,
        cfg.start,
        meta={"topology": str(args.topology), "policy": str(args.policy)},
        max_solutions=args.max_solutions,
    )
    _write_output(_render_search(doc, args.format), args.out)
    if result.solutions:
        _err(f"{len(result.solutions)} solution(s) found")
    else:
        _err("no admissible traversal")
    if result.safety_cap_exceeded:
        _err("safety cap exceeded before the frontier emptied; results are partial")
        return 3
    return 0


def _cmd_search(args) -> int:
    cfg = _build_config(args)
    return _report_search(args, cfg, search(cfg))


def _cmd_oracle_search(args) -> int:
    cfg = _build_config(args)
    result = enumerate_solutions(OracleConfig.from_search_config(cfg))
    return _report_search(args, cfg, result)


def _cmd_sweep(args) -> int:
    g = load_topology(args.topology)
    policy_doc = load_policy(args.policy)
    spec = policy_to_sweep_spec(g, policy_doc, safety_cap=_effective_safety_cap(args))
    result = sweep(spec)
    _write_output(sweep_csv(result), args.out)
    for budget in result.budgets:
        _err(f"budget {budget}: connectivity {result.fractions[budget]}")
    return 0


def _cmd_generate(args) -> int:
    if args.kind == "telco":
        params = TelcoParams(
            seed=args.seed,
            sites=args.sites,
            odfs_per_site=args.odfs_per_site,
            amplifier_fraction=args.amplifier_fraction,
        )
        g = generate_telco(params)
    else:
        params = DatacenterParams(
            seed=args.seed,
            rooms=args.rooms,
            rows_per_room=args.rows_per_room,
            racks_per_row=args.racks_per_row,
            panels_per_rack=args.panels_per_rack,
            racks_per_distribution=args.racks_per_distribution,
        )
        g = generate_datacenter(params)
    _write_output(dump_topology(g), args.out)
    _err(f"generated {g.node_count} nodes, {g.edge_count} directed edges")
    return 0


def _cmd_estimate(args) -> int:
    g = load_topology(args.topology)
    bound = estimate_state_bound(g, args.max_domain, args.depth)
    if bound > ESTIMATE_SENTINEL_ABOVE:
        print("overflow(>1e30)")
    else:
        print(bound)
    return 0


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaptraverse",
        description="Policy-driven traversal search over incomplete typed graphs.",
    )
    sub = parser.add_subparsers(
        dest="command", metavar="{validate,search,sweep,generate,estimate}"
    )

    p = sub.add_parser("validate", help="check a topology file")
    p.add_argument("topology")
    p.set_defaults(handler=_cmd_validate)

    def add_search_args(p):
        p.add_argument("topology")
        p.add_argument("policy")
        p.add_argument("--from", dest="source", required=True, metavar="ID")
        p.add_argument("--to", dest="target", metavar="ID")
        p.add_argument("--frontier", choices=["fifo", "lifo", "priority", "beam"])
        p.add_argument("--key-dimension", help="accumulation dimension for priority/beam")
        p.add_argument("--beam-width", type=int, default=4)
        p.add_argument("--max-solutions", type=int, metavar="K",
                       help="truncate the listed solutions (full run still happens)")
        p.add_argument("--safety-cap", type=int, metavar="N")
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--format", choices=["json", "csv", "table"], default="table")

    p = sub.add_parser("search", help="search traversals from a start node")
    add_search_args(p)
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("oracle-search")  # hidden: not listed in the metavar above
    add_search_args(p)
    p.set_defaults(handler=_cmd_oracle_search)

    p = sub.add_parser("sweep", help="budget sweep over the policy's pair set")
    p.add_argument("topology")
    p.add_argument("policy")
    p.add_argument("--safety-cap", type=int, metavar="N")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("generate", help="emit a synthetic topology")
    p.add_argument("kind", choices=["telco", "datacenter"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sites", type=int, default=4)
    p.add_argument("--odfs-per-site", type=int, default=2)
    p.add_argument("--amplifier-fraction", type=float, default=0.3)
    p.add_argument("--rooms", type=int, default=1)
    p.add_argument("--rows-per-room", type=int, default=2)
    p.add_argument("--racks-per-row", type=int, default=4)
    p.add_argument("--panels-per-rack", type=int, default=2)
    p.add_argument("--racks-per-distribution", type=int, default=4)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser("estimate", help="worst-case state-count bound")
    p.add_argument("topology")
    p.add_argument("--max-domain", type=int, required=True, metavar="B")
    p.add_argument("--depth", type=int, required=True, metavar="L")
    p.set_defaults(handler=_cmd_estimate)

    return parser


def run_cli(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if (exc.code or 0) == 0 else 1
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.handler(args)
    except (UsageError, InvalidParams) as exc:
        _err(str(exc))
        return 1
    except GapTraverseError as exc:
        _err(str(exc))
        return 2


def main() -> None:  # console-script entry point
    sys.exit(run_cli(sys.argv[1:]))
