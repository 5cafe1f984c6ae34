"""``swapnet`` command-line front end.

Exit status: 0 on success or pass, 1 when a theorem assertion fails, 2 on
usage errors and malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .census import (
    CONJECTURES,
    THEOREMS,
    CapError,
    GraphClass,
    check_theorem,
    conjecture_search,
    default_workers,
    se_census,
)
from .constructions import NAMED_KINDS, CliquePathsParams, clique_with_paths, make_named
from .destruction import DestroyerError, DestroyerSpec, format_cost, player_costs, social_cost
from .equilibrium import best_response_dynamics, is_swap_equilibrium
from .graph import Graph, GraphError, is_connected
from .io import from_graph6, read_graph, to_dot, to_edge_list, to_graph6


class UsageError(Exception):
    pass


def parse_constructor(text: str) -> Graph:
    kind, sep, arg = text.partition(":")
    if not sep:
        raise UsageError(f"constructor {text!r} must look like kind:args")
    try:
        if kind == "clique-paths":
            t, k = (int(x) for x in arg.split(","))
            return clique_with_paths(CliquePathsParams(t, k))
        if kind in NAMED_KINDS:
            return make_named(kind, int(arg))
    except ValueError:
        raise UsageError(f"bad constructor arguments in {text!r}") from None
    raise UsageError(f"unknown constructor {kind!r}; expected star, path, cycle, complete or clique-paths")


def parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b or a single integer") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _load_graph(args) -> Graph:
    if args.construct:
        return parse_constructor(args.construct)
    if args.g6:
        return from_graph6(args.g6)
    if args.graph == "-":
        return read_graph(sys.stdin.read())
    try:
        with open(args.graph) as fh:
            return read_graph(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="FILE", help="graph file (edge list or graph6; '-' for stdin)")
    src.add_argument("--g6", metavar="STRING", help="graph6 string")
    src.add_argument("--construct", metavar="CTOR", help="star:n, path:n, cycle:n, complete:n, clique-paths:t,k")


def _destroyer(text: str) -> DestroyerSpec:
    try:
        return DestroyerSpec.parse(text)
    except DestroyerError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swapnet", description="Swap equilibria under edge and vertex destruction.")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, help_text in (("cost", "per-player costs and social cost"),
                            ("check", "swap-equilibrium verdict with witness"),
                            ("dynamics", "round-robin improving-move dynamics")):
        p = sub.add_parser(verb, help=help_text)
        p.add_argument("--destroyer", required=True, type=_destroyer)
        _add_source(p)
        p.add_argument("--json", action="store_true")
        if verb == "dynamics":
            p.add_argument("--max-steps", type=int, default=100)
            p.add_argument("--best-response", action="store_true",
                           help="move to the cost-minimizing deviation instead of the first improving one")

    p = sub.add_parser("census", help="SE census over an exhaustive graph class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trees", action="store_true", help="free trees up to isomorphism")
    p.add_argument("--destroyer", required=True, type=_destroyer)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("theorem", help="mechanically check a structural theorem")
    p.add_argument("name", choices=THEOREMS)
    p.add_argument("--n", type=parse_range_arg)
    p.add_argument("--t", type=parse_range_arg)
    p.add_argument("--k", type=parse_range_arg)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("conjecture", help="counterexample search (reports only)")
    p.add_argument("name", choices=CONJECTURES)
    p.add_argument("--n", type=parse_range_arg, required=True)
    p.add_argument("--trees", action="store_true", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("construct", help="print a constructed graph")
    p.add_argument("ctor")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--g6", dest="fmt", action="store_const", const="g6")
    fmt.add_argument("--edges", dest="fmt", action="store_const", const="edges")
    fmt.add_argument("--dot", dest="fmt", action="store_const", const="dot")

    p = sub.add_parser("export", help="convert a graph between formats")
    _add_source(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--format", dest="fmt", choices=("g6", "edges", "dot"))
    fmt.add_argument("--edges", dest="fmt", action="store_const", const="edges")
    fmt.add_argument("--dot", dest="fmt", action="store_const", const="dot")
    return parser


def parse_range_arg(text: str) -> tuple[int, int]:
    try:
        return parse_range(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _render(g: Graph, fmt: str | None) -> str:
    if fmt == "edges":
        return to_edge_list(g).rstrip("\n")
    if fmt == "dot":
        return to_dot(g).rstrip("\n")
    return to_graph6(g)


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True) if as_json else text)


def _cmd_cost(args) -> int:
    g = _load_graph(args)
    costs = player_costs(g, args.destroyer)
    sc = social_cost(g, args.destroyer)
    obj = {"graph": to_graph6(g), "destroyer": str(args.destroyer),
           "costs": {str(v): format_cost(c) for v, c in costs.items()}, "social_cost": format_cost(sc)}
    lines = [f"graph {to_graph6(g)} (n={g.n}, m={g.m}), destroyer {args.destroyer}", "player  cost"]
    lines += [f"{v:<7} {format_cost(c)}" for v, c in costs.items()]
    lines.append(f"SC      {format_cost(sc)}")
    _emit(obj, args.json, "\n".join(lines))
    return 0


def _cmd_check(args) -> int:
    g = _load_graph(args)
    if not is_connected(g):
        raise UsageError("check requires a connected graph")
    verdict = is_swap_equilibrium(g, args.destroyer)
    obj = {"graph": to_graph6(g), "destroyer": str(args.destroyer), "is_se": verdict.is_se,
           "witness": verdict.witness.to_json() if verdict.witness else None}
    text = f"SE: {'yes' if verdict.is_se else 'no'}"
    if verdict.witness:
        text += f"\nwitness: {verdict.witness}"
    _emit(obj, args.json, text)
    return 0


def _cmd_dynamics(args) -> int:
    g = _load_graph(args)
    if not is_connected(g):
        raise UsageError("dynamics requires a connected graph")
    trace = best_response_dynamics(g, args.destroyer, args.max_steps, args.best_response)
    lines = [f"start {trace.initial_graph6} SC {format_cost(trace.initial_social_cost)}"]
    for s in trace.steps:
        lines.append(f"step {s.index}: {s.deviation} cost {format_cost(s.cost_before)} -> "
                     f"{format_cost(s.cost_after)}, SC {format_cost(s.social_cost)}, graph {s.graph6}")
    lines.append(f"outcome: {trace.outcome}")
    _emit(trace.to_json(), args.json, "\n".join(lines))
    return 0


def _workers(args) -> int:
    return default_workers() if args.workers is None else max(1, args.workers)


def _cmd_census(args) -> int:
    report = se_census(GraphClass(args.n, args.trees), args.destroyer, _workers(args))
    print(report.dumps() if args.json else report.table())
    return 0 if report.passed else 1


def _cmd_theorem(args) -> int:
    t_values = range(args.t[0], args.t[1] + 1) if args.t else None
    k_values = range(args.k[0], args.k[1] + 1) if args.k else None
    result = check_theorem(args.name, args.n, t_values, k_values, _workers(args))
    _emit(result.to_json(), args.json, result.line())
    return 0 if result.passed else 1


def _cmd_conjecture(args) -> int:
    report = conjecture_search(args.name, args.n, args.trees, _workers(args))
    print(report.dumps() if args.json else report.table())
    return 0


def _cmd_construct(args) -> int:
    print(_render(parse_constructor(args.ctor), args.fmt))
    return 0


def _cmd_export(args) -> int:
    print(_render(_load_graph(args), args.fmt))
    return 0


_COMMANDS = {
    "cost": _cmd_cost,
    "check": _cmd_check,
    "dynamics": _cmd_dynamics,
    "census": _cmd_census,
    "theorem": _cmd_theorem,
    "conjecture": _cmd_conjecture,
    "construct": _cmd_construct,
    "export": _cmd_export,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.verb](args)
    except (UsageError, GraphError, DestroyerError, CapError) as exc:
        print(f"swapnet: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
