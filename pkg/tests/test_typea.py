import itertools
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from greedyflip.coxeter import element_from_word
from greedyflip.enumeration import enumerate_inductive
from greedyflip.errors import NotTypeA
from greedyflip.subword import Instance, facet_from_positions
from greedyflip.typea import (
    CONTACT,
    CROSSING,
    arrangement,
    network_from_word,
    permutation_word,
    render,
    root_readout,
    type_a_root,
)

from conftest import RUNNING_FACETS, RUNNING_WORD, random_corpus, system

DATA = Path(__file__).parent / "data"


def test_network_examples():
    net = network_from_word(RUNNING_WORD, 3)
    assert net.levels == 4 and net.m == 9
    assert net.commutators[0] == 2  # between levels 2 and 3
    empty = network_from_word((), 3)
    assert empty.levels == 4 and empty.m == 0
    a1 = network_from_word((0, 0), 1)
    assert a1.levels == 2 and a1.commutators == (1, 1)
    with pytest.raises(NotTypeA):
        network_from_word((3,), 3)


def test_arrangement_of_running_facet(running):
    arr = arrangement(running, (1, 3, 4, 7, 9))
    assert arr.contacts == {1, 3, 4, 7, 9}
    assert [k for k, t in enumerate(arr.tags, 1) if t == CONTACT] == [1, 3, 4, 7, 9]
    assert arr.permutation == (4, 1, 3, 2)


def test_every_running_facet_traces_rho(running):
    for facet in RUNNING_FACETS:
        arr = arrangement(running, facet)
        assert arr.permutation == (4, 1, 3, 2)
        pairs = arr.crossing_pairs()
        assert len(pairs) == len(set(pairs)) == 4  # any two lines cross at most once


def test_trivial_target_is_parallel(A3):
    inst = Instance(A3, RUNNING_WORD, ())
    arr = arrangement(inst, range(1, 10))
    assert set(arr.tags) == {CONTACT}
    assert arr.permutation == (1, 2, 3, 4)
    assert all(set(path) == {label} for label, path in arr.lines.items())


def test_readouts_of_running_facet(running):
    f13479 = facet_from_positions(running, (1, 3, 4, 7, 9))
    t1, b1 = root_readout(running, f13479, 1)
    t8, b8 = root_readout(running, f13479, 8)
    assert (t1, b1) == (t8, b8)
    assert t1 > b1  # e_t - e_b positive
    assert (t1, b1) == type_a_root(running.system, f13479.root(1))
    for k in range(1, 10):
        assert root_readout(running, f13479, k) == type_a_root(running.system, f13479.root(k))


def test_first_readout_is_simple(running):
    for facet in RUNNING_FACETS:
        t, b = root_readout(running, facet, 1)
        p = RUNNING_WORD[0] + 1
        assert (t, b) == (p + 1, p)


def test_type_a_root_embedding():
    A3 = system("A3")
    for s in range(3):
        assert type_a_root(A3, s) == (s + 2, s + 1)
    assert type_a_root(A3, A3.neg(0)) == (1, 2)
    assert {type_a_root(A3, r) for r in range(A3.N)} == {(t, b) for b, t in itertools.combinations(range(1, 5), 2)}


def test_type_a_consistency_on_corpus():
    checked = 0
    for inst in random_corpus(21, 80, types=["A1", "A2", "A3", "A4"], max_m=10):
        n = inst.system.rank
        target = one_line(inst.rho, n)
        for facet in enumerate_inductive(inst):
            arr = arrangement(inst, facet)
            F = facet_from_positions(inst, facet)
            assert arr.contacts == set(facet)
            assert arr.permutation == target
            assert arr.tags.count(CROSSING) == inst.rho.length
            for k in range(1, inst.m + 1):
                assert root_readout(inst, arr, k) == type_a_root(inst.system, F.root(k))
            checked += 1
    assert checked > 100


def one_line(w, n):
    """Labels bottom to top after applying the reduced word of w to 1..n+1."""
    perm = list(range(1, n + 2))
    for s in w.reduced_word():
        perm[s], perm[s + 1] = perm[s + 1], perm[s]
    return tuple(perm)


def test_not_type_a():
    B3 = system("B3")
    inst = Instance(B3, (0, 1, 2), ())
    with pytest.raises(NotTypeA):
        arrangement(inst, (1, 2, 3))


def test_permutation_word():
    A3 = system("A3")
    word = permutation_word((4, 1, 3, 2))
    assert len(word) == 4
    assert element_from_word(A3, word) == element_from_word(A3, (1, 2, 1, 0))
    assert permutation_word((1, 2, 3)) == ()
    with pytest.raises(ValueError):
        permutation_word((1, 1, 2))
    for perm in itertools.permutations(range(1, 5)):
        assert one_line(element_from_word(A3, permutation_word(perm)), 3) == perm


def test_ascii_golden(running):
    text = render(arrangement(running, (1, 3, 4, 7, 9)), "ascii")
    assert text == (DATA / "running_I.txt").read_text()
    assert text == render(arrangement(running, (1, 3, 4, 7, 9)), "ascii")


def test_ascii_empty_network(A3):
    text = render(arrangement(Instance(A3, (), ()), ()), "ascii")
    lines = [line for line in text.splitlines() if line.strip()]
    assert lines == ["4 ----- 4", "3 ----- 3", "2 ----- 2", "1 ----- 1"]


def test_svg_is_well_formed(running):
    svg = render(arrangement(running, (1, 3, 4, 7, 9)), "svg")
    root = ET.fromstring(svg.split("\n", 1)[1])
    ns = "{http://www.w3.org/2000/svg}"
    assert root.tag == ns + "svg"
    assert len(root.findall(f".//{ns}polyline")) == 4
    assert len(root.findall(f".//{ns}line")) == 9
    with pytest.raises(ValueError):
        render(arrangement(running, (1, 3, 4, 7, 9)), "png")
