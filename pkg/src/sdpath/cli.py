"""Command-line front end.

Exit codes: 0 YES, 1 NO, 2 UNKNOWN, 64 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .core import Status, is_f_conforming, stats
from .formats import parse_path, parse_sdg, write_sdg
from .generate import (
    ColoredGraph,
    from_cnf,
    from_cubic_independent_set,
    from_multicolored_clique,
    parse_dimacs,
    random_instance,
)
from .kernelize import kernelize_fen
from .portfolio import STRATEGIES, PortfolioPolicy, bench, bench_csv, solve

EXIT = {Status.YES: 0, Status.NO: 1, Status.INCONCLUSIVE: 2}
USAGE_ERROR = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2, which means UNKNOWN here
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _policy(args: argparse.Namespace) -> PortfolioPolicy:
    return PortfolioPolicy(
        fen_budget=args.fen_budget,
        type_budget=args.type_budget,
        color_budget=args.color_budget,
        strategy=args.strategy,
        time_budget=args.time_budget,
        epsilon=args.epsilon,
        seed=args.seed,
        k=args.k,
    )


def cmd_solve(args: argparse.Namespace) -> int:
    instance = parse_sdg(_read(args.instance))
    out, report = solve(instance, _policy(args))
    print(out.status.value)
    if out.is_yes:
        print("PATH " + " ".join(map(str, out.certificate.vertices)))
    print(f"strategy: {report.chosen or 'none'}; {report.summary()}", file=sys.stderr)
    return EXIT[out.status]


def cmd_verify(args: argparse.Namespace) -> int:
    instance = parse_sdg(_read(args.instance))
    g = instance.graph
    try:
        cert = parse_path(_read(args.path), g)
    except ValueError as exc:
        print("NO")
        print(f"not a walk: {exc}", file=sys.stderr)
        return 1
    check = is_f_conforming(g, cert, require_simple=not args.walk)
    problems = []
    if not check:
        problems.append(check.message)
    if cert.vertices[0] != instance.s or cert.vertices[-1] != instance.t:
        problems.append(f"does not run from {instance.s} to {instance.t}")
    if instance.max_vertices is not None and cert.num_vertices > instance.max_vertices:
        problems.append(f"{cert.num_vertices} vertices exceed k = {instance.max_vertices}")
    if problems:
        print("NO")
        print("; ".join(problems), file=sys.stderr)
        return 1
    print("YES")
    return 0


def cmd_kernelize(args: argparse.Namespace) -> int:
    instance = parse_sdg(_read(args.instance))
    reduced, trace = kernelize_fen(instance)
    _emit(write_sdg(reduced, f"kernel of {args.instance}"), args.output)
    if args.trace:
        data = {
            "kept": list(trace.kept) if trace.kept is not None else None,
            "steps": [list(map(lambda x: list(x) if isinstance(x, tuple) else x, st)) for st in trace.steps],
            "vertex_map": {str(k): v for k, v in trace.vertex_map.items()},
            "edge_map": {str(k): v for k, v in trace.edge_map.items()},
        }
        Path(args.trace).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
    print(f"kernel: {instance.graph.n} -> {reduced.graph.n} vertices", file=sys.stderr)
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "cnf":
        instance = from_cnf(parse_dimacs(_read(args.input)), args.split)
    elif kind == "mcc":
        data = json.loads(_read(args.input))
        graph = ColoredGraph(
            data["n"],
            tuple(tuple(e) for e in data["edges"]),
            tuple(tuple(c) for c in data["classes"]),
        )
        instance = from_multicolored_clique(graph, args.split)
    elif kind == "iset":
        data = json.loads(_read(args.input))
        instance = from_cubic_independent_set(
            data["n"], [tuple(e) for e in data["edges"]], data["k"]
        )
    else:
        instance = random_instance(args.n, args.m, args.mu, args.seed)
    _emit(write_sdg(instance, f"generated: {kind}"), args.output)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    instance = parse_sdg(_read(args.instance))
    st = stats(instance.graph, instance.s, instance.t)
    print(json.dumps(st.as_dict(), indent=1, sort_keys=True))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    rows = bench(args.corpus, _policy(args))
    _emit(bench_csv(rows), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdpath", description="Self-deleting s-t path toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def solver_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--strategy", choices=STRATEGIES, default="auto")
        p.add_argument("--k", type=int, default=None, help="vertex budget (shortest variant)")
        p.add_argument("--epsilon", type=float, default=None, help="use randomized color coding")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--fen-budget", type=int, default=20)
        p.add_argument("--type-budget", type=int, default=24)
        p.add_argument("--color-budget", type=int, default=64)
        p.add_argument("--time-budget", type=float, default=None, help="seconds for the oracle")

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("instance")
    solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a path file against an instance")
    p.add_argument("instance")
    p.add_argument("path")
    p.add_argument("--walk", action="store_true", help="allow repeated vertices")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kernelize", help="shrink an instance (feedback edge kernel)")
    p.add_argument("instance")
    p.add_argument("-o", "--output")
    p.add_argument("--trace", help="write the reduction trace as JSON")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("generate", help="build an instance from a reduction or at random")
    p.add_argument("kind", choices=("cnf", "mcc", "iset", "random"))
    p.add_argument("input", nargs="?", help="DIMACS file (cnf) or JSON file (mcc, iset)")
    p.add_argument("--split", action="store_true", help="one deletion per vertex (cnf, mcc)")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--m", type=int, default=15)
    p.add_argument("--mu", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="print instance statistics as JSON")
    p.add_argument("instance")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="solve every .sdg file of a directory, CSV out")
    p.add_argument("corpus")
    p.add_argument("-o", "--output")
    solver_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "generate" and args.kind != "random" and not args.input:
        parser.error(f"generate {args.kind} needs an input file")
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
