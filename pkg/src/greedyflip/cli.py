"""Command-line interface.

Exit codes: 0 on success (an empty complex is a success for ``enumerate``
and ``count``), 2 for user errors, 3 when an internal invariant fails.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
import time
from pathlib import Path

from . import backend
from .coxeter import CoxeterSystem, build_system, longest_element, multicluster_word
from .enumeration import (
    ALGORITHMS,
    NEGATIVE,
    POSITIVE,
    count_facets,
    enumerate_facets,
    euler_characteristic,
    flip_graph,
    greedy_tree,
    is_sphere,
    EULER_CAP,
    facet_label,
)
from .errors import CapExceeded, EmptyComplex, GreedyFlipError, NotAFacet, NotTypeA
from .subword import Instance, contains, negative_greedy, positive_greedy
from .typea import arrangement, permutation_word, render

BENCH_COLUMNS = ("type", "k", "n", "m", "facets", "wall_time_s", "us_per_facet", "algorithm")


class UsageError(Exception):
    pass


class InvariantViolation(Exception):
    pass


# ---------------------------------------------------------------- parsing

def parse_word(text: str, system: CoxeterSystem, what: str = "word") -> tuple:
    """Parse whitespace-separated generator names ``s1 .. sn`` into 0-based letters."""
    letters = []
    for tok in re.finditer(r"[^\s,]+", text):
        name = tok.group()
        m = re.fullmatch(r"[sS]?(\d+)", name)
        if not m or not 1 <= int(m.group(1)) <= system.rank:
            raise UsageError(
                f"{what}:1:{tok.start() + 1}: unknown generator {name!r} "
                f"(expected s1..s{system.rank})"
            )
        letters.append(int(m.group(1)) - 1)
    return tuple(letters)


def parse_group(text: str) -> CoxeterSystem:
    path = Path(text)
    try:
        if path.is_file():
            return build_system(path)
        return build_system(text)
    except GreedyFlipError as exc:
        raise UsageError(f"group: {exc}") from None


def parse_rho(text: str, system: CoxeterSystem):
    stripped = text.strip()
    if stripped in ("", "e"):
        return ()
    if stripped == "w0":
        return longest_element(system)
    if stripped.startswith("["):
        if not system.is_type_a():
            raise UsageError("rho:1:1: permutation notation is only available in type A")
        if not stripped.endswith("]"):
            raise UsageError(f"rho:1:{len(stripped)}: missing closing ']'")
        entries = []
        for tok in re.finditer(r"[^\s,\[\]]+", stripped):
            try:
                entries.append(int(tok.group()))
            except ValueError:
                raise UsageError(f"rho:1:{tok.start() + 1}: expected an integer, got {tok.group()!r}") from None
        if sorted(entries) != list(range(1, system.rank + 2)):
            raise UsageError(f"rho:1:1: {stripped} is not a permutation of 1..{system.rank + 1}")
        return permutation_word(entries)
    return parse_word(stripped, system, "rho")


def parse_positions(text: str, m: int) -> tuple:
    out = []
    for tok in re.finditer(r"[^\s,{}]+", text):
        try:
            k = int(tok.group())
        except ValueError:
            raise UsageError(f"facet:1:{tok.start() + 1}: expected a position, got {tok.group()!r}") from None
        if not 1 <= k <= m:
            raise UsageError(f"facet:1:{tok.start() + 1}: position {k} outside 1..{m}")
        out.append(k)
    return tuple(sorted(out))


def instance_from_args(args) -> Instance:
    system = parse_group(args.group)
    word = parse_word(args.word, system, "word")
    rho = parse_rho(args.rho, system)
    return Instance(system, word, rho)


def parse_range(text: str, what: str) -> list:
    text = text.strip()
    m = re.fullmatch(r"(\d+)\s*(?::|\.\.|-)\s*(\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise UsageError(f"{what}: empty range {text!r}")
        return list(range(lo, hi + 1))
    if re.fullmatch(r"\d+(\s*,\s*\d+)*", text):
        return [int(x) for x in text.split(",")]
    raise UsageError(f"{what}: malformed range {text!r} (use LO:HI, LO..HI or a comma list)")


def _sign_arg(text: str) -> str:
    if text in ("-", "neg", "negative"):
        return NEGATIVE
    if text in ("+", "pos", "positive"):
        return POSITIVE
    raise argparse.ArgumentTypeError(f"invalid sign {text!r} (use + or -)")


def _fmt(facet) -> str:
    return " ".join(map(str, facet))


# ---------------------------------------------------------------- commands

def cmd_enumerate(args, out):
    inst = instance_from_args(args)
    facets = enumerate_facets(inst, args.algo)
    if args.sort:
        facets = sorted(facets)
    for f in facets:
        out.write(_fmt(f) + "\n")


def cmd_count(args, out):
    inst = instance_from_args(args)
    out.write(f"{count_facets(inst, args.algo)}\n")


def _require(inst):
    if not contains(inst.word, inst.rho):
        raise EmptyComplex("empty complex")


def cmd_greedy(args, out):
    inst = instance_from_args(args)
    _require(inst)
    facet = negative_greedy(inst) if args.sign == NEGATIVE else positive_greedy(inst)
    out.write(_fmt(facet.positions) + "\n")


def _tree_text(tree) -> str:
    """Indented tree; ``|`` marks the greedy index as in the usual drawings."""
    kids = {}
    gamma = {tree.root: tree.m if tree.sign == NEGATIVE else 1}
    for a in tree.arcs:
        kids.setdefault(a.parent, []).append(a.child)
        lo, hi = sorted((a.flipped, a.partner))
        gamma[a.child] = hi - 1 if tree.sign == NEGATIVE else lo + 1

    def label(node):
        g = gamma[node]
        if tree.sign == NEGATIVE:
            left, right = [k for k in node if k <= g], [k for k in node if k > g]
        else:
            left, right = [k for k in node if k < g], [k for k in node if k >= g]
        return f"{facet_label(tuple(left), tree.m)}|{facet_label(tuple(right), tree.m)}"

    lines = []
    stack = [(tree.root, 0)]
    while stack:
        node, depth = stack.pop()
        lines.append("  " * depth + label(node))
        for child in reversed(kids.get(node, [])):
            stack.append((child, depth + 1))
    return "\n".join(lines) + "\n"


def cmd_tree(args, out):
    inst = instance_from_args(args)
    _require(inst)
    tree = greedy_tree(inst, args.sign)
    out.write(tree.to_dot() if args.dot else _tree_text(tree))


def cmd_graph(args, out):
    inst = instance_from_args(args)
    graph = flip_graph(inst)
    if args.dot:
        out.write(graph.to_dot())
        return
    for e in graph.edges:
        out.write(f"{_fmt(e.source)} -> {_fmt(e.target)}  ({e.i},{e.j})\n")


def cmd_render(args, out):
    inst = instance_from_args(args)
    _require(inst)
    if args.facet is None:
        positions = negative_greedy(inst).positions
    else:
        positions = parse_positions(args.facet, inst.m)
    try:
        text = render(arrangement(inst, positions), args.format)
    except NotAFacet as exc:
        raise UsageError(f"facet: {exc}") from None
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)


def cmd_check(args, out):
    inst = instance_from_args(args)
    _require(inst)
    sphere = is_sphere(inst)
    dim = inst.m - inst.rho.length - 1
    report = f"{'sphere' if sphere else 'ball'} (dimension {dim})"
    if inst.m <= args.cap:
        chi = euler_characteristic(inst, args.cap)
        expected = (-1) ** dim if sphere else 0
        if chi != expected:
            raise InvariantViolation(f"reduced Euler characteristic {chi}, expected {expected}")
        report += f"; reduced Euler characteristic {chi}"
    out.write(report + "\n")


def bench_rows(type_letter, ns, ks, algos, timer=time.perf_counter):
    """Yield one BenchRecord dict per (n, k, algorithm) cell.

    Counts are compared across algorithms before any timing is reported.
    """
    for n in ns:
        system = build_system(f"{type_letter}{n}")
        c = tuple(range(n))
        w0 = longest_element(system)
        for k in ks:
            inst = Instance(system, multicluster_word(system, c, k), w0)
            cells = []
            for algo in algos:
                start = timer()
                count = count_facets(inst, algo)
                cells.append((algo, count, timer() - start))
            counts = {count for _, count, _ in cells}
            if len(counts) != 1:
                raise InvariantViolation(
                    f"{type_letter}{n} k={k}: algorithms disagree on the facet count: "
                    + ", ".join(f"{a}={c}" for a, c, _ in cells)
                )
            for algo, count, elapsed in cells:
                yield {
                    "type": f"{type_letter}{n}",
                    "k": k,
                    "n": n,
                    "m": inst.m,
                    "facets": count,
                    "wall_time_s": f"{elapsed:.6f}",
                    "us_per_facet": f"{1e6 * elapsed / max(count, 1):.3f}",
                    "algorithm": algo,
                }


def cmd_bench(args, out):
    ns = parse_range(args.n_range, "--n-range")
    ks = parse_range(args.k_range, "--k-range")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise UsageError(f"--algos: unknown algorithm {a!r}")
    type_letter = args.type.upper()
    if type_letter not in ("A", "B", "C", "D"):
        raise UsageError(f"--type: unsupported family {args.type!r} (use A, B, C or D)")
    for n in ns:
        try:
            build_system(f"{type_letter}{n}")
        except GreedyFlipError as exc:
            raise UsageError(f"--n-range: {exc}") from None
    writer = csv.DictWriter(out, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in bench_rows(type_letter, ns, ks, algos):
        writer.writerow(row)
        out.flush()


# ---------------------------------------------------------------- parser

def _add_instance_args(p):
    p.add_argument("-g", "--group", required=True, help="type such as A3, B4, H3, I2(5), or a matrix file")
    p.add_argument("-Q", "--word", required=True, help='word in the generators, e.g. "s2 s3 s1"')
    p.add_argument("-r", "--rho", default="w0", help='target: a word, "w0", "e", or [4,1,3,2] in type A')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greedyflip", description="Enumerate facets of subword complexes on finite Coxeter groups."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({backend.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all facets, one per line")
    _add_instance_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="greedy-neg")
    p.add_argument("--sort", action="store_true", help="print facets in lexicographic order")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="count facets")
    _add_instance_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="greedy-neg")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("greedy", help="print the positive or negative greedy facet")
    _add_instance_args(p)
    p.add_argument("--sign", type=_sign_arg, default=NEGATIVE, help="+ or -")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("tree", help="print a greedy flip tree")
    _add_instance_args(p)
    p.add_argument("--sign", type=_sign_arg, default=NEGATIVE, help="+ or -")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("graph", help="print the increasing flip graph")
    _add_instance_args(p)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("render", help="draw a type A pseudoline arrangement")
    _add_instance_args(p)
    p.add_argument("--facet", help="1-based positions; defaults to the negative greedy facet")
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("check", help="report whether the complex is a sphere or a ball")
    _add_instance_args(p)
    p.add_argument("--cap", type=int, default=EULER_CAP, help="largest word length for the face scan")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="time algorithms on multi-cluster complexes, CSV output")
    p.add_argument("--type", default="A", help="family: A, B, C or D")
    p.add_argument("--n-range", default="2:5", help="ranks, e.g. 2:5")
    p.add_argument("--k-range", default="1", help="cluster parameter k, e.g. 1:3")
    p.add_argument("--algos", default="inductive,greedy-neg", help="comma-separated algorithms")
    p.set_defaults(func=cmd_bench, usage=p.format_usage())
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"greedyflip: error: {exc}", file=sys.stderr)
        if args.command == "bench":
            sys.stderr.write(args.usage)
        return 2
    except EmptyComplex:
        print("greedyflip: empty complex", file=sys.stderr)
        return 2
    except (NotTypeA, CapExceeded, NotAFacet) as exc:
        print(f"greedyflip: error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolation, AssertionError) as exc:
        print(f"greedyflip: internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except BrokenPipeError:
        return 0
    return 0


if __name__ == "__main__":
    sys.exit(main())
