"""Facet enumeration: inductive, greedy flip trees, flip graph, topology check.

Every enumerator yields facets as ascending tuples of 1-based positions.
"""

from __future__ import annotations

import graphlib
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .backend import GreedyWalker
from .coxeter import demazure
from .errors import CapExceeded
from .subword import Instance, contains, negative_greedy, positive_greedy

NEGATIVE = "negative"
POSITIVE = "positive"
ALGORITHMS = ("inductive", "greedy-pos", "greedy-neg", "bfs")
EULER_CAP = 16


def _sign(sign) -> str:
    if sign in (NEGATIVE, "-", "neg", -1):
        return NEGATIVE
    if sign in (POSITIVE, "+", "pos", 1):
        return POSITIVE
    raise ValueError(f"sign must be positive or negative, got {sign!r}")


# ---------------------------------------------------------------- inductive

def enumerate_inductive(inst: Instance) -> Iterator[tuple]:
    """Facets by the right induction on the word, using an explicit stack.

    A frame ``(p, rho', tail)`` stands for the facets of ``K(q_1..q_p, rho')``
    joined with the positions ``tail`` already decided above ``p``.
    """
    word = inst.word
    if not contains(word, inst.rho):
        return
    stack = [(len(word), inst.rho, ())]
    while stack:
        p, rho, tail = stack.pop()
        if p == 0:
            yield tail
            continue
        s = word[p - 1]
        if not rho.is_right_descent(s):
            # q_p cannot end a reduced expression of rho: p is in every facet
            stack.append((p - 1, rho, (p,) + tail))
        elif not contains(word[: p - 1], rho):
            stack.append((p - 1, rho.right_mul(s), tail))
        else:
            stack.append((p - 1, rho, (p,) + tail))
            stack.append((p - 1, rho.right_mul(s), tail))


# ---------------------------------------------------------------- greedy trees

def greedy_walker(inst: Instance, sign=NEGATIVE):
    """A kernel walker positioned on the root of the chosen greedy flip tree.

    Returns None for an empty complex.
    """
    sign = _sign(sign)
    if not contains(inst.word, inst.rho):
        return None
    root = negative_greedy(inst) if sign == NEGATIVE else positive_greedy(inst)
    sys = inst.system
    return GreedyWalker(
        root.members, root.roots, sys.refl_table(), sys.N, sign == NEGATIVE, inst.inv_rho_inv
    )


def enumerate_greedy(inst: Instance, sign=NEGATIVE) -> Iterator[tuple]:
    """Facets in preorder of the greedy flip tree; O(m) working memory."""
    walker = greedy_walker(inst, sign)
    if walker is None:
        return
    yield walker.positions()
    while walker.advance():
        yield walker.positions()


@dataclass(frozen=True)
class TreeArc:
    """A tree arc between two facets differing in one position.

    ``flipped`` leaves ``parent`` and ``partner`` enters ``child``.
    """

    parent: tuple
    child: tuple
    flipped: int
    partner: int


@dataclass
class GreedyTree:
    root: tuple
    sign: str
    m: int = 0
    arcs: list = field(default_factory=list)

    @property
    def nodes(self) -> list:
        return [self.root] + [a.child for a in self.arcs]

    def children(self, node: tuple) -> list:
        return [a.child for a in self.arcs if a.parent == node]

    def to_dot(self) -> str:
        return tree_to_dot(self)


def greedy_tree(inst: Instance, sign=NEGATIVE) -> GreedyTree | None:
    """Materialise the arcs visited by the greedy flip walk (None if empty)."""
    sign = _sign(sign)
    walker = greedy_walker(inst, sign)
    if walker is None:
        return None
    tree = GreedyTree(walker.positions(), sign, inst.m)
    path = [walker.positions()]
    while walker.advance():
        child = walker.positions()
        del path[walker.depth :]
        flipped, partner = walker.last_flip()
        tree.arcs.append(TreeArc(path[-1], child, flipped + 1, partner + 1))
        path.append(child)
    return tree


# ---------------------------------------------------------------- flip graph

@dataclass(frozen=True)
class FlipEdge:
    """Increasing flip: ``source`` minus ``i`` equals ``target`` minus ``j``, with i < j."""

    source: tuple
    target: tuple
    i: int
    j: int


@dataclass
class FlipGraph:
    vertices: list
    edges: list
    m: int = 0

    def out_degree(self) -> dict:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            deg[e.source] += 1
        return deg

    def in_degree(self) -> dict:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            deg[e.target] += 1
        return deg

    def sources(self) -> list:
        return [v for v, d in self.in_degree().items() if d == 0]

    def sinks(self) -> list:
        return [v for v, d in self.out_degree().items() if d == 0]

    def topological_order(self) -> list:
        """Raises graphlib.CycleError if the increasing orientation has a cycle."""
        ts = graphlib.TopologicalSorter({v: set() for v in self.vertices})
        for e in self.edges:
            ts.add(e.target, e.source)
        return list(ts.static_order())

    def undirected_edges(self) -> set:
        return {frozenset((e.source, e.target)) for e in self.edges}

    def to_dot(self) -> str:
        return graph_to_dot(self)


def flip_graph(inst: Instance) -> FlipGraph:
    """Breadth-first search of all flips from the positive greedy facet.

    Stores every facet: exponential space, meant for cross-checks and export.
    """
    if not contains(inst.word, inst.rho):
        return FlipGraph([], [], inst.m)
    start = positive_greedy(inst)
    seen = {start.positions}
    queue = deque([start])
    edges = []
    while queue:
        facet = queue.popleft()
        here = facet.positions
        for i in facet.flippable_positions():
            nxt = facet.copy()
            j = nxt.flip(i)
            there = nxt.positions
            if i < j:
                edges.append(FlipEdge(here, there, i, j))
            if there not in seen:
                seen.add(there)
                queue.append(nxt)
    return FlipGraph(sorted(seen), sorted(edges, key=lambda e: (e.source, e.target)), inst.m)


def enumerate_bfs(inst: Instance) -> Iterator[tuple]:
    yield from flip_graph(inst).vertices


# ---------------------------------------------------------------- dispatch

def enumerate_facets(inst: Instance, algorithm: str = "greedy-neg") -> Iterator[tuple]:
    if algorithm == "inductive":
        return enumerate_inductive(inst)
    if algorithm == "greedy-neg":
        return enumerate_greedy(inst, NEGATIVE)
    if algorithm == "greedy-pos":
        return enumerate_greedy(inst, POSITIVE)
    if algorithm == "bfs":
        return enumerate_bfs(inst)
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")


def count_facets(inst: Instance, algorithm: str = "greedy-neg") -> int:
    if algorithm in ("greedy-neg", "greedy-pos"):
        walker = greedy_walker(inst, NEGATIVE if algorithm == "greedy-neg" else POSITIVE)
        return 0 if walker is None else 1 + walker.run()
    return sum(1 for _ in enumerate_facets(inst, algorithm))


# ---------------------------------------------------------------- topology

def euler_characteristic(inst: Instance, cap: int = EULER_CAP) -> int:
    """Reduced Euler characteristic of K(Q, rho) by scanning every face.

    The empty face counts with dimension -1; the void complex gives 0.
    """
    if inst.m > cap:
        raise CapExceeded(f"word length {inst.m} exceeds the face-scan cap {cap}")
    faces = set()
    for facet in enumerate_inductive(inst):
        mask = 0
        for k in facet:
            mask |= 1 << (k - 1)
        sub = mask
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & mask
    return sum(-1 if bin(f).count("1") % 2 == 0 else 1 for f in faces)


def is_sphere(inst: Instance) -> bool:
    """K(Q, rho) is a sphere exactly when rho is the Demazure product of Q."""
    return demazure(inst.system, inst.word) == inst.rho


# ---------------------------------------------------------------- DOT export

def facet_label(positions: tuple, m: int | None = None) -> str:
    """Concatenated positions (``"34789"``); comma-separated when the word has 10+ letters."""
    if (m is not None and m >= 10) or any(k >= 10 for k in positions):
        return ",".join(map(str, positions))
    return "".join(map(str, positions))


def _dot_id(positions: tuple) -> str:
    return "f_" + "_".join(map(str, positions)) if positions else "f_empty"


def tree_to_dot(tree: GreedyTree) -> str:
    lines = [f"digraph {tree.sign}_greedy_tree {{", "  node [shape=box];"]
    for node in tree.nodes:
        lines.append(f'  {_dot_id(node)} [label="{facet_label(node, tree.m)}"];')
    for a in tree.arcs:
        i, j = sorted((a.flipped, a.partner))
        # the negative tree is oriented towards its root, the positive one away from it
        src, dst = (a.child, a.parent) if tree.sign == NEGATIVE else (a.parent, a.child)
        lines.append(f'  {_dot_id(src)} -> {_dot_id(dst)} [label="({i},{j})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(graph: FlipGraph) -> str:
    lines = ["digraph flip_graph {", "  rankdir=LR;", "  node [shape=box];"]
    for v in graph.vertices:
        lines.append(f'  {_dot_id(v)} [label="{facet_label(v, graph.m)}"];')
    for e in graph.edges:
        lines.append(f'  {_dot_id(e.source)} -> {_dot_id(e.target)} [label="({e.i},{e.j})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
