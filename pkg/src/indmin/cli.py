"""Command-line interface: ``indmin <command> ...``.

Graphs are read as graph6, given literally, as a file path, or ``-`` for
stdin.  Results are JSON on stdout with a ``schema`` field.  Exit codes:
0 success / isomorphic / property holds, 1 clean negative, 2 usage, input
or budget error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import List, Optional

from . import cwx, dichotomy, generators, iso, reductions, structure
from .budget import Budget, BudgetExhausted
from .graph import Graph, from_graph6, to_graph6
from .oracles import P4_BRUTE_SCALE, find_induced_p4, induced_minor_bruteforce, is_p4_free, iso_bruteforce

SCHEMA = "indmin/1"
DEFAULT_SEED = 20240229
PROPERTIES = ("k3uk1-free", "p4-free", "cobipartite", "restricted-split", "compact-minor:T", "induced-minor:H.g6")


class UsageError(ValueError):
    pass


def read_graph(arg: str) -> Graph:
    if arg == "-":
        text = sys.stdin.readline()
    elif os.path.exists(arg):
        with open(arg) as fh:
            text = next((line for line in fh if line.strip()), "")
    else:
        text = arg
    text = text.strip()
    if not text:
        raise UsageError(f"no graph in {arg!r}")
    try:
        return from_graph6(text)
    except ValueError as exc:
        raise UsageError(f"bad graph6 {text!r}: {exc}") from exc


def emit(payload: dict, out=None) -> None:
    out = out or sys.stdout
    json.dump({"schema": SCHEMA, **payload}, out, sort_keys=True)
    out.write("\n")


def _budget(args) -> Budget:
    return Budget(args.budget) if args.budget else Budget()


# ------------------------------------------------------------------ commands


def cmd_classify(args) -> int:
    h = read_graph(args.pattern)
    verdict = dichotomy.classify(h)
    emit({"command": "classify", "pattern": to_graph6(h), **verdict.to_json()})
    return 0


def cmd_iso(args) -> int:
    g1, g2 = read_graph(args.g1), read_graph(args.g2)
    res = iso.isomorphic(g1, g2, args.algo, _budget(args))
    payload = {"command": "iso", **res.to_json()}
    if args.oracle:
        truth = iso_bruteforce(g1, g2) is not None
        payload["oracle"] = truth
        payload["oracle_agrees"] = truth == res.isomorphic
        if truth != res.isomorphic:
            emit(payload)
            return 2
    emit(payload)
    return 0 if res.isomorphic else 1


def cmd_reduce(args) -> int:
    g = read_graph(args.graph)
    out, tags = reductions.reduce(g, args.target)
    cert = reductions.certificate(out, tags, args.target)
    emit({"command": "reduce", "target": args.target, "n": out.n, "graph6": to_graph6(out), "certificate": cert})
    return 0 if cert["valid"] else 1


def _check(g: Graph, prop: str, budget: Budget):
    if prop == "k3uk1-free":
        bad = structure.find_k3uk1_violation(g)
        return bad is None, None if bad is None else {"vertex": bad[0], "cycle": bad[1]}
    if prop == "p4-free":
        if g.n > P4_BRUTE_SCALE:
            return is_p4_free(g), None
        p4 = find_induced_p4(g)
        return p4 is None, None if p4 is None else {"induced_p4": list(p4)}
    if prop == "cobipartite":
        ok, wit = dichotomy.cobipartite_witness(g)
        return ok, {"cliques": [list(wit[0]), list(wit[1])]} if ok else {"odd_cycle_in_complement": wit}
    if prop == "restricted-split":
        part = dichotomy.restricted_split_partition(g)
        return part is not None, None if part is None else part.to_json()
    if prop.startswith("compact-minor:"):
        t = int(prop.split(":", 1)[1])
        model = structure.find_compact_clique_minor(g, t, budget)
        return model is not None, None if model is None else model.to_json()
    if prop.startswith("induced-minor:"):
        h = read_graph(prop.split(":", 1)[1])
        model = induced_minor_bruteforce(g, h, budget)
        return model is not None, None if model is None else model.to_json()
    raise UsageError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")


def cmd_check(args) -> int:
    g = read_graph(args.graph)
    holds, witness = _check(g, args.property, _budget(args))
    payload = {"command": "check", "property": args.property, "holds": holds}
    if witness is not None:
        payload["witness"] = witness
    emit(payload)
    return 0 if holds else 1


def cmd_cw(args) -> int:
    if args.verify:
        expr_file, g_arg = args.verify
        g = read_graph(g_arg)
        with open(expr_file) as fh:
            e = cwx.parse(fh.read())
        ok = cwx.verify(e, g)
        emit({"command": "cw", "verified": ok, "width": cwx.width(e)})
        return 0 if ok else 1
    if not args.graph:
        raise UsageError("cw --build needs a graph")
    g = read_graph(args.graph)
    e = cwx.build(g, args.build)
    payload = {"command": "cw", "method": args.build, "width": cwx.width(e), "verified": cwx.verify(e, g)}
    if args.build == "gemfree":
        payload["bound"] = cwx.W_GEM
    payload["expression"] = cwx.to_text(e)
    emit(payload)
    return 0


def cmd_gen(args) -> int:
    parts = [int(x) for x in args.parts.split(",")] if args.parts else None
    seed = args.seed
    for i in range(args.count):
        g = generators.generate(args.family, args.n, seed + i, parts)
        if args.oracle and args.family == "gemfree-suture" and not generators.is_gem_free(g):
            raise RuntimeError("generated graph failed the gem oracle")
        sys.stdout.write(to_graph6(g) + "\n")
    return 0


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="indmin", description="Induced-minor-free graph classes: classify, test, reduce, decide isomorphism.")
    p.add_argument("--budget", type=int, default=None, help="work budget (default from INDMIN_BUDGET)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force where possible")
    # the same flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--oracle", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="GI and clique-width status of H-induced-minor-free graphs")
    s.add_argument("pattern")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("iso", parents=[common], help="decide isomorphism of two graphs")
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("--algo", choices=iso.ALGORITHMS, default="auto")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("reduce", parents=[common], help="hardness reduction of a graph")
    s.add_argument("graph")
    s.add_argument("--target", choices=reductions.TARGETS, required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("check", parents=[common], help="test a graph property")
    s.add_argument("graph")
    s.add_argument("--property", required=True, help=" | ".join(PROPERTIES))
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("cw", parents=[common], help="build or verify clique-width expressions")
    s.add_argument("graph", nargs="?")
    s.add_argument("--build", choices=("cograph", "gemfree"), default="gemfree")
    s.add_argument("--verify", nargs=2, metavar=("EXPR", "GRAPH"))
    s.set_defaults(func=cmd_cw)

    s = sub.add_parser("gen", parents=[common], help="generate random instances as graph6")
    s.add_argument("family", choices=generators.FAMILIES)
    s.add_argument("--n", type=int, default=8)
    s.add_argument("--parts", help="part sizes for multipartite, e.g. 2,2,2")
    s.add_argument("--count", type=int, default=1)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    start = time.perf_counter()
    try:
        code = args.func(args)
    except BudgetExhausted as exc:
        emit({"command": args.command, "error": "budget", "message": str(exc)})
        return 2
    except (UsageError, ValueError, OSError, RuntimeError) as exc:
        emit({"command": args.command, "error": type(exc).__name__, "message": str(exc)})
        return 2
    if os.environ.get("INDMIN_TIMING"):
        sys.stderr.write(f"{args.command}: {time.perf_counter() - start:.3f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
