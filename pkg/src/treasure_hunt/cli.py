"""Command-line front end.

Subcommands::

    gen caterpillar|random|tree   write an instance file (graph + start/treasure)
    advise                        write advice bits and print the plan summary
    hunt                          run the agent and print the outcome
    rendezvous                    run the two-agent reduction
    sweep                         advice/cost tradeoff as CSV
    verify claim1|census|bounds   run the counting and bound oracles

Machine-readable output goes to stdout (or ``--out``); diagnostics go to
stderr.  Exit status: 0 success, 1 failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import analysis
from .agent import find_treasure, format_trace
from .bitcodec import MalformedAdvice, decode
from .graph_core import (
    CaterpillarSpec,
    GraphError,
    Instance,
    PortLabeledGraph,
    bfs_distances,
    dump_graph,
    dump_instance,
    make_caterpillar,
    parse_instance,
    random_connected_graph,
    random_tree,
)
from .oracle import create_advice, plan_bound, select_ell
from .rendezvous import rendezvous_via_th


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _kv(pairs: dict[str, object]) -> str:
    return "".join(f"{k}={v}\n" for k, v in pairs.items())


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(args: argparse.Namespace, need_treasure: bool = True) -> tuple[PortLabeledGraph, Instance]:
    graph = None
    inst = Instance(None)
    if args.graph:
        try:
            graph = parse_instance(_read(args.graph)).graph
        except GraphError as exc:
            raise UsageError(f"{args.graph}: {exc}") from None
    if getattr(args, "instance", None):
        try:
            inst = parse_instance(_read(args.instance))
        except GraphError as exc:
            raise UsageError(f"{args.instance}: {exc}") from None
    graph = inst.graph or graph
    if graph is None:
        raise UsageError("no graph given (use --graph or an instance file with a graph section)")
    if need_treasure and (inst.start is None or inst.treasure is None):
        raise UsageError("instance needs 'start' and 'treasure' lines")
    for idx in (inst.start, inst.treasure):
        if idx is not None and not 0 <= idx < graph.n:
            raise UsageError(f"node index {idx} out of range")
    return graph, inst


def _read_advice(path: str) -> str:
    text = _read(path)
    line = text.splitlines()[0] if text else ""
    if any(ch not in "01" for ch in line):
        raise UsageError(f"{path}: advice must be a line of 0/1 characters")
    return line


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "caterpillar":
        if args.D is None or args.k is None or args.ports is None:
            raise UsageError("gen caterpillar needs --D, --k and --ports")
        try:
            ports = tuple(int(p) for p in args.ports.split(","))
            graph, start, treasure = make_caterpillar(CaterpillarSpec(args.D, args.k, ports))
        except (ValueError, GraphError) as exc:
            raise UsageError(str(exc)) from None
    else:
        if args.seed is None or args.n is None:
            raise UsageError(f"gen {args.family} needs --n and --seed")
        try:
            if args.family == "tree":
                graph = random_tree(args.n, args.seed)
            else:
                graph = random_connected_graph(args.n, args.e if args.e is not None else args.n - 1, args.seed)
        except GraphError as exc:
            raise UsageError(str(exc)) from None
        rng = random.Random(f"instance-{args.seed}")
        start = args.start if args.start is not None else rng.randrange(graph.n)
        treasure = args.treasure if args.treasure is not None else rng.randrange(graph.n)
    if args.graph_out:
        Path(args.graph_out).write_text(dump_graph(graph))
    _emit(dump_instance(graph, start, treasure), args.out)
    return 0


def cmd_advise(args: argparse.Namespace) -> int:
    graph, inst = _load(args)
    if args.ell is not None:
        try:
            plan = create_advice(graph, inst.start, inst.treasure, args.ell)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.target_cost is not None:
        try:
            _, plan = select_ell(graph, inst.start, inst.treasure, args.target_cost, args.mode)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        plan = create_advice(graph, inst.start, inst.treasure, 0)
        plan = create_advice(graph, inst.start, inst.treasure, plan.logsum)
    if args.advice:
        Path(args.advice).write_text(plan.encoded + "\n")
    summary = plan.summary(graph.num_edges)
    if not args.advice:
        summary["advice"] = plan.encoded
    _emit(_kv(summary), args.out)
    return 0


def cmd_hunt(args: argparse.Namespace) -> int:
    graph, inst = _load(args)
    if not args.advice:
        raise UsageError("hunt needs --advice")
    advice = _read_advice(args.advice)
    try:
        outcome = find_treasure(graph, inst.start, inst.treasure, advice)
    except MalformedAdvice as exc:
        raise UsageError(f"{args.advice}: {exc}") from None
    payload = decode(advice)
    beta = Fraction(payload.ell, payload.logsum) if payload.logsum else Fraction(1)
    info: dict[str, object] = {
        "found": str(outcome.found).lower(),
        "cost": outcome.cost,
        "D": bfs_distances(graph, inst.start)[inst.treasure],
        "ell": payload.ell,
        "beta": f"{beta.numerator}/{beta.denominator}",
    }
    if payload.logsum and payload.ell < payload.logsum and payload.D:
        bound_args = (payload.D, graph.num_edges, payload.ell, payload.logsum,
                      max(len(a) for a in payload.substrings))
        info["bound_general"] = math.ceil(analysis.cost_bound("general", *bound_args))
        if graph.is_tree():
            info["bound_tree"] = math.ceil(analysis.cost_bound("tree", *bound_args))
    text = _kv(info)
    if args.trace:
        Path(args.trace).write_text(format_trace(outcome.trace))
    _emit(text, args.out)
    return 0


def cmd_rendezvous(args: argparse.Namespace) -> int:
    graph, inst = _load(args, need_treasure=False)
    a = args.a if args.a is not None else inst.start
    b = args.b if args.b is not None else inst.treasure
    if a is None or b is None:
        raise UsageError("rendezvous needs two start nodes (--a/--b or start/treasure lines)")
    if a == b or not (0 <= a < graph.n and 0 <= b < graph.n):
        raise UsageError("start nodes must be distinct valid indices")
    try:
        out = rendezvous_via_th(graph, a, b, args.ell)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(_kv({
        "met": str(out.met).lower(),
        "rounds": out.rounds,
        "total_cost": out.total_cost,
        "advice_bits_a": len(out.advice_a),
        "advice_bits_b": len(out.advice_b),
    }), args.out)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    graph, inst = _load(args)
    ells = None
    if args.ells:
        try:
            ells = [int(x) for x in args.ells.split(",")]
        except ValueError:
            raise UsageError("--ells takes comma-separated integers") from None
    try:
        rows = analysis.sweep(graph, inst.start, inst.treasure, ells, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(analysis.sweep_csv(rows), args.out)
    return 0 if all(r.holds and r.found for r in rows) else 1


def _verify_bounds(seeds: range, max_n: int) -> list[str]:
    failures = []
    for seed in seeds:
        rng = random.Random(seed)
        n = rng.randint(2, max_n)
        for tree in (False, True):
            e = n - 1 if tree else rng.randint(n - 1, min(n * (n - 1) // 2, 3 * n))
            graph = random_connected_graph(n, e, seed)
            s, t = rng.randrange(n), rng.randrange(n)
            logsum = create_advice(graph, s, t, 0).logsum
            for ell in sorted({0, logsum // 2, logsum}):
                plan = create_advice(graph, s, t, ell)
                outcome = find_treasure(graph, s, t, plan.encoded)
                kind = "tree" if tree else "general"
                bound = plan_bound(plan, graph.num_edges, kind)
                if not outcome.found or outcome.cost > bound:
                    failures.append(f"seed={seed} tree={tree} ell={ell} cost={outcome.cost} bound={bound}")
    return failures


def cmd_verify(args: argparse.Namespace) -> int:
    if args.check == "claim1":
        if args.D is None or args.M is None:
            raise UsageError("verify claim1 needs --D and --M")
        try:
            res = analysis.count_tuples_bruteforce(args.D, args.M)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        except AssertionError as exc:
            print(f"FAIL: {exc}", file=sys.stderr)
            return 1
        _emit(_kv({"exact": res.exact_count, "bound": res.simplex_bound}), args.out)
        return 0
    if args.check == "census":
        if args.D is None or args.k is None:
            raise UsageError("verify census needs --D and --k")
        try:
            count = analysis.caterpillar_census(args.D, args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        except AssertionError as exc:
            print(f"FAIL: {exc}", file=sys.stderr)
            return 1
        _emit(_kv({"count": count, "expected": args.k ** args.D}), args.out)
        return 0
    seed = args.seed if args.seed is not None else 1
    failures = _verify_bounds(range(seed, seed + args.count), args.max_n)
    for line in failures:
        print(f"FAIL: {line}", file=sys.stderr)
    _emit(_kv({"instances": 2 * args.count, "failures": len(failures)}), args.out)
    return 1 if failures else 0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="treasure-hunt", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--graph", help="graph file (graph-v1)")
        p.add_argument("--instance", help="instance file: graph section and/or start/treasure lines")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("family", choices=["caterpillar", "random", "tree"])
    p.add_argument("--D", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--ports", help="caterpillar forward ports, comma separated")
    p.add_argument("--n", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--start", type=int)
    p.add_argument("--treasure", type=int)
    p.add_argument("--graph-out", help="also write the bare graph here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("advise", help="build advice for an instance")
    io_flags(p)
    p.add_argument("--ell", type=int)
    p.add_argument("--target-cost", type=int)
    p.add_argument("--mode", choices=["certified", "empirical"], default="certified")
    p.add_argument("--advice", help="write the advice bits here")
    p.set_defaults(func=cmd_advise)

    p = sub.add_parser("hunt", help="run the agent")
    io_flags(p)
    p.add_argument("--advice", help="advice file")
    p.add_argument("--trace", help="write the move trace here")
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("rendezvous", help="two-agent rendezvous via treasure hunt")
    io_flags(p)
    p.add_argument("--a", type=int, help="start of the moving agent")
    p.add_argument("--b", type=int, help="start of the waiting agent")
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_rendezvous)

    p = sub.add_parser("sweep", help="advice/cost tradeoff CSV")
    io_flags(p)
    p.add_argument("--ells", help="comma-separated budgets (default: all)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run counting and bound checks")
    p.add_argument("check", choices=["claim1", "census", "bounds"])
    p.add_argument("--D", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-n", type=int, default=40)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
