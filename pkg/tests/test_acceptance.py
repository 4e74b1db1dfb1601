"""Acceptance criteria, one test per criterion.

The terminal summary prints one PASS/FAIL line per criterion (see conftest).
"""

import gc
import math
import random
import time
import tracemalloc

import pytest

from greedyflip.coxeter import build_system, demazure, longest_element, multicluster_word
from greedyflip.enumeration import (
    ALGORITHMS,
    NEGATIVE,
    POSITIVE,
    enumerate_facets,
    enumerate_greedy,
    euler_characteristic,
    flip_graph,
    greedy_tree,
    greedy_walker,
)
from greedyflip.subword import (
    Instance,
    facet_from_positions,
    negative_greedy,
    negative_greedy_index,
    positive_greedy,
    positive_greedy_index,
)
from greedyflip.typea import arrangement, root_readout, type_a_root

from conftest import RUNNING_FACETS, RUNNING_RHO, RUNNING_WORD, random_corpus
from test_enumeration import NEGATIVE_TREE, POSITIVE_TREE, parse_tree

CORPUS_SEED = 20261018


@pytest.fixture(scope="module")
def corpus():
    """At least 200 random instances over supported types of rank <= 4, m <= 12."""
    insts = random_corpus(CORPUS_SEED, 240, max_m=12)
    assert all(inst.system.rank <= 4 and inst.m <= 12 for inst in insts)
    return insts


def running_instance():
    return Instance(build_system("A3"), RUNNING_WORD, RUNNING_RHO)


@pytest.mark.acceptance(1, "running example: four enumerators give the 12 reference facets in < 1 s")
def test_criterion_1_running_example():
    start = time.perf_counter()
    inst = running_instance()
    expected = "".join(" ".join(map(str, f)) + "\n" for f in RUNNING_FACETS)
    for algorithm in ALGORITHMS:
        got = "".join(" ".join(map(str, f)) + "\n" for f in sorted(enumerate_facets(inst, algorithm)))
        assert got == expected, algorithm
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2, "positive and negative greedy facets, plus the two derived ones")
def test_criterion_2_greedy_facets():
    inst = running_instance()
    assert positive_greedy(inst).positions == (1, 2, 3, 5, 6)
    assert negative_greedy(inst).positions == (3, 4, 7, 8, 9)
    sys = inst.system
    head = Instance(sys, RUNNING_WORD[:-1], inst.rho.right_mul(RUNNING_WORD[-1]))
    assert negative_greedy(head).positions == (3, 4, 6, 7, 8)
    tail = Instance(sys, RUNNING_WORD[1:], inst.rho.left_mul(RUNNING_WORD[0]))
    assert positive_greedy(tail).positions == (1, 2, 4, 5, 7)


@pytest.mark.acceptance(3, "greedy indices 7 and 9; update rule matches the oracle on every tree arc")
def test_criterion_3_greedy_indices():
    inst = running_instance()
    assert negative_greedy_index(inst, facet_from_positions(inst, (1, 3, 4, 7, 9))) == 7
    assert negative_greedy_index(inst, facet_from_positions(inst, (3, 4, 7, 8, 9))) == 9
    arcs = 0
    for arc in greedy_tree(inst, NEGATIVE).arcs:
        assert negative_greedy_index(inst, facet_from_positions(inst, arc.child)) == arc.flipped - 1
        arcs += 1
    for arc in greedy_tree(inst, POSITIVE).arcs:
        assert positive_greedy_index(inst, facet_from_positions(inst, arc.child)) == arc.flipped + 1
        arcs += 1
    assert arcs == 22


@pytest.mark.acceptance(4, "both greedy trees match the reference trees, 11 arcs each")
def test_criterion_4_tree_structure():
    inst = running_instance()
    for sign, text, root_flips in ((NEGATIVE, NEGATIVE_TREE, [9, 8, 4]), (POSITIVE, POSITIVE_TREE, [1, 2, 5])):
        root, arcs, _ = parse_tree(text)
        tree = greedy_tree(inst, sign)
        assert tree.root == root
        assert sorted(tree.nodes) == sorted([root] + [c for _, c in arcs])
        assert {(a.parent, a.child) for a in tree.arcs} == set(arcs)
        assert len(tree.arcs) == 11
        assert [a.flipped for a in tree.arcs if a.parent == root] == root_flips


@pytest.mark.acceptance(5, "multi-cluster k=1 in A2..A5 gives 5, 14, 42, 132 facets, each < 5 s")
def test_criterion_5_catalan():
    for n, expected in zip(range(2, 6), (5, 14, 42, 132)):
        assert expected == math.comb(2 * n + 2, n + 1) // (n + 2)
        start = time.perf_counter()
        sys = build_system(f"A{n}")
        inst = Instance(sys, multicluster_word(sys, tuple(range(n)), 1), longest_element(sys))
        for algorithm in ALGORITHMS:
            facets = list(enumerate_facets(inst, algorithm))
            assert len(facets) == len(set(facets)) == expected, (n, algorithm)
        assert time.perf_counter() - start < 5.0


@pytest.mark.acceptance(6, "sphere/ball: reduced Euler characteristic on 60 random instances")
def test_criterion_6_sphere_ball():
    insts = random_corpus(CORPUS_SEED + 6, 60, types=["A1", "A2", "A3", "B2"], max_m=12, sphere_bias=0.5)
    spheres = 0
    for inst in insts:
        assert not inst.is_empty()
        chi = euler_characteristic(inst, cap=12)
        if inst.rho == demazure(inst.system, inst.word):
            spheres += 1
            assert chi == (-1) ** (inst.m - inst.rho.length - 1)
        else:
            assert chi == 0
    assert len(insts) >= 50 and 0 < spheres < len(insts)


@pytest.mark.acceptance(7, "four enumerators agree on 240 random instances; 10^4 random flips keep exact root functions")
def test_criterion_7_equivalence(corpus):
    for inst in corpus:
        results = [sorted(enumerate_facets(inst, a)) for a in ALGORITHMS]
        assert all(r == results[0] for r in results)
        assert len(set(results[0])) == len(results[0]) > 0
    rng = random.Random(CORPUS_SEED)
    flips = 0
    while flips < 10_000:
        inst = corpus[rng.randrange(len(corpus))]
        F = negative_greedy(inst)
        for _ in range(200):
            options = F.flippable_positions()
            if not options:
                break
            F.flip(rng.choice(options))
            flips += 1
            assert F.rootfn == facet_from_positions(inst, F.positions).rootfn
    assert flips >= 10_000


def _peak_greedy(inst):
    for _ in enumerate_greedy(inst):  # warm-up
        pass
    gc.collect()
    tracemalloc.start()
    count = sum(1 for _ in enumerate_greedy(inst))
    peak = tracemalloc.get_traced_memory()[1]
    tracemalloc.stop()
    return count, peak


@pytest.mark.acceptance(8, "stack depth <= m, delay <= 2m flips, peak memory independent of facet count")
def test_criterion_8_resource_bounds(corpus):
    for inst in corpus + [running_instance()]:
        for sign in (NEGATIVE, POSITIVE):
            walker = greedy_walker(inst, sign)
            before = walker.flips
            while walker.advance():
                assert walker.flips - before <= 2 * inst.m
                before = walker.flips
            assert walker.flips - before <= 2 * inst.m
            assert walker.max_depth <= inst.m
    A9 = build_system("A9")
    w0 = longest_element(A9)
    big = Instance(A9, multicluster_word(A9, tuple(range(9)), 1), w0)
    small = Instance(A9, w0.reduced_word() + (0,) * 9, w0)
    assert big.m == small.m == 54
    n_big, p_big = _peak_greedy(big)
    n_small, p_small = _peak_greedy(small)
    assert n_big >= 10_000 and n_small <= 100
    # same group, same target, same word length; only the facet count differs
    assert abs(p_big - p_small) <= 8 * 1024


@pytest.mark.acceptance(9, "increasing flip graph acyclic; unique source = lex min = positive greedy, unique sink = lex max = negative greedy")
def test_criterion_9_source_sink(corpus):
    for inst in corpus:
        g = flip_graph(inst)
        order = g.topological_order()
        assert len(order) == len(g.vertices)
        assert g.sources() == [g.vertices[0]] == [positive_greedy(inst).positions]
        assert g.sinks() == [g.vertices[-1]] == [negative_greedy(inst).positions]


@pytest.mark.acceptance(10, "type A: contacts = facet, traced permutation = rho, readouts = root function")
def test_criterion_10_type_a(corpus):
    insts = [inst for inst in corpus if inst.system.is_type_a()] + [running_instance()]
    assert len(insts) >= 20
    facets = 0
    for inst in insts:
        n = inst.system.rank
        target = list(range(1, n + 2))
        for s in inst.rho.reduced_word():
            target[s], target[s + 1] = target[s + 1], target[s]
        for positions in enumerate_facets(inst, "greedy-neg"):
            F = facet_from_positions(inst, positions)
            arr = arrangement(inst, F)
            assert arr.contacts == set(positions)
            assert list(arr.permutation) == target
            for k in range(1, inst.m + 1):
                assert root_readout(inst, arr, k) == type_a_root(inst.system, F.root(k))
            facets += 1
    assert facets > 100
