"""Subword complexes: facets, root functions, flips, greedy facets and indices.

Positions are 1-based in every public function and attribute, as in the
usual facet notation ``{1, 3, 4, 7, 9}``. Letters of words are 0-based
generator indices.
"""

from __future__ import annotations

from array import array
from typing import Iterable, Sequence

from .backend import flip_inplace
from .coxeter import CoxeterSystem, Element, element_from_word
from .errors import EmptyComplex, NotAFacet, NotFlippable


class Instance:
    """A subword complex ``K(Q, rho)``: a word and a target element.

    ``rho`` may be given as a word in the generators or as an
    :class:`~greedyflip.coxeter.Element`.
    """

    def __init__(self, system: CoxeterSystem, word: Sequence[int], rho):
        self.system = system
        self.word = tuple(int(s) for s in word)
        for s in self.word:
            if not 0 <= s < system.rank:
                raise ValueError(f"letter {s} out of range for rank {system.rank}")
        if isinstance(rho, Element):
            self.rho = rho
            self.rho_word = rho.reduced_word()
        else:
            self.rho_word = tuple(rho)
            self.rho = element_from_word(system, self.rho_word)
        N = system.N
        rinv = self.rho.inverse().perm
        # inv(rho^-1): positive roots sent negative by rho^-1
        self.inv_rho_inv = bytes(1 if rinv[k] >= N else 0 for k in range(N))

    @property
    def m(self) -> int:
        return len(self.word)

    def is_empty(self) -> bool:
        return not contains(self.word, self.rho)

    def __repr__(self):
        names = " ".join(self.system.generator_name(s) for s in self.word)
        return f"Instance(Q='{names}', rho={self.rho!r})"


class Facet:
    """A facet together with its root function, mutated in place by flips."""

    __slots__ = ("instance", "members", "roots")

    def __init__(self, instance: Instance, members: bytearray, roots: array):
        self.instance = instance
        self.members = members
        self.roots = roots

    @property
    def positions(self) -> tuple:
        return tuple(k + 1 for k, b in enumerate(self.members) if b)

    @property
    def rootfn(self) -> tuple:
        return tuple(self.roots)

    def __contains__(self, k: int) -> bool:
        return 1 <= k <= len(self.members) and bool(self.members[k - 1])

    def root(self, k: int) -> int:
        return self.roots[k - 1]

    def is_flippable(self, k: int) -> bool:
        if k not in self:
            raise ValueError(f"position {k} is not in the facet")
        r = self.roots[k - 1]
        N = self.instance.system.N
        return r >= N or bool(self.instance.inv_rho_inv[r])

    def flippable_positions(self) -> list:
        return [k for k in self.positions if self.is_flippable(k)]

    def root_configuration(self) -> tuple:
        """Sorted multiset of the roots at flippable positions."""
        return tuple(sorted(self.roots[k - 1] for k in self.flippable_positions()))

    def flip(self, i: int) -> int:
        """Flip position ``i`` in place and return the position ``j`` that enters."""
        if i not in self or not self.is_flippable(i):
            raise NotFlippable(f"position {i} is not flippable in {self.positions}")
        sys = self.instance.system
        return flip_inplace(self.members, self.roots, sys.refl_table(), sys.N, i - 1) + 1

    def copy(self) -> "Facet":
        return Facet(self.instance, bytearray(self.members), array("i", self.roots))

    def __eq__(self, other):
        return isinstance(other, Facet) and self.members == other.members

    def __hash__(self):
        return hash(bytes(self.members))

    def __repr__(self):
        return f"Facet({set(self.positions) or '{}'})"


# ---------------------------------------------------------------- basics

def contains(word: Sequence[int], rho: Element) -> bool:
    """True when ``word`` contains a reduced expression of ``rho``.

    Sweeps right to left, placing inversions as soon as possible.
    """
    if rho.length > len(word):
        return False
    w = rho
    for s in reversed(word):
        if w.is_right_descent(s):
            w = w.right_mul(s)
            if w.length == 0:
                return True
    return w.length == 0


def facet_from_positions(inst: Instance, positions: Iterable[int]) -> Facet:
    """Build a facet and its root function from 1-based positions.

    Raises NotAFacet unless the complement is a reduced expression of rho.
    """
    m = inst.m
    members = bytearray(m)
    for k in positions:
        if not 1 <= k <= m:
            raise NotAFacet(f"position {k} outside 1..{m}")
        members[k - 1] = 1
    sys = inst.system
    N = sys.N
    roots = array("i", [0] * m)
    prefix = tuple(range(2 * N))  # sigma of the crossed prefix, as a permutation
    for k, s in enumerate(inst.word):
        r = prefix[s]
        roots[k] = r
        if not members[k]:
            if r >= N:
                raise NotAFacet(f"complement of {_fmt(members)} is not reduced (position {k + 1})")
            prefix = tuple(prefix[x] for x in sys.simple_perm[s])
    if prefix != inst.rho.perm:
        raise NotAFacet(f"complement of {_fmt(members)} is not an expression of rho")
    return Facet(inst, members, roots)


def _fmt(members) -> str:
    return "{" + ", ".join(str(k + 1) for k, b in enumerate(members) if b) + "}"


def root(inst: Instance, facet: Facet, k: int) -> int:
    return facet.root(k)


def root_configuration(inst: Instance, facet: Facet) -> tuple:
    return facet.root_configuration()


def is_flippable(inst: Instance, facet: Facet, k: int) -> bool:
    return facet.is_flippable(k)


def flip(inst: Instance, facet: Facet, i: int) -> tuple:
    """Flip ``i`` in place; returns ``(facet, j)`` where ``j`` entered the facet."""
    j = facet.flip(i)
    return facet, j


# ---------------------------------------------------------------- greedy facets

def _require_nonempty(inst: Instance):
    if not contains(inst.word, inst.rho):
        raise EmptyComplex(f"{inst!r} has no facets")


def positive_greedy_positions(word: Sequence[int], rho: Element) -> tuple | None:
    """Positions of the positive greedy facet, or None for an empty complex.

    Sweeps right to left, crossing every letter that shortens what remains.
    """
    w, keep = rho, []
    for k in range(len(word), 0, -1):
        s = word[k - 1]
        if w.is_right_descent(s):
            w = w.right_mul(s)
        else:
            keep.append(k)
    if w.length:
        return None
    return tuple(reversed(keep))


def negative_greedy_positions(word: Sequence[int], rho: Element) -> tuple | None:
    """Positions of the negative greedy facet, or None for an empty complex.

    Sweeps left to right, crossing every letter that is a left descent.
    """
    v, keep = rho, []
    for k, s in enumerate(word, 1):
        if v.is_left_descent(s):
            v = v.left_mul(s)
        else:
            keep.append(k)
    if v.length:
        return None
    return tuple(keep)


def positive_greedy(inst: Instance) -> Facet:
    pos = positive_greedy_positions(inst.word, inst.rho)
    if pos is None:
        raise EmptyComplex(f"{inst!r} has no facets")
    return facet_from_positions(inst, pos)


def negative_greedy(inst: Instance) -> Facet:
    pos = negative_greedy_positions(inst.word, inst.rho)
    if pos is None:
        raise EmptyComplex(f"{inst!r} has no facets")
    return facet_from_positions(inst, pos)


# Alternative constructions of the greedy facets, kept as independent
# cross-checks of the sweeps above. Each follows one recursive description
# literally; `first` recursion drops the first letter, `last` the last one.

def positive_greedy_by_last(word, rho) -> tuple:
    """Positive greedy facet by recursion on the last letter (descent test on rho q_m)."""
    if not word:
        return ()
    m, s = len(word), word[-1]
    if rho.is_right_descent(s):
        return positive_greedy_by_last(word[:-1], rho.right_mul(s))
    return positive_greedy_by_last(word[:-1], rho) + (m,)


def negative_greedy_by_first(word, rho) -> tuple:
    """Negative greedy facet by recursion on the first letter (descent test on q_1 rho)."""
    if not word:
        return ()
    s = word[0]
    if rho.is_left_descent(s):
        return tuple(x + 1 for x in negative_greedy_by_first(word[1:], rho.left_mul(s)))
    return (1,) + tuple(x + 1 for x in negative_greedy_by_first(word[1:], rho))


def positive_greedy_by_first(word, rho) -> tuple:
    """Positive greedy facet by recursion on the first letter (containment test on the tail)."""
    if not word:
        return ()
    if contains(word[1:], rho):
        return (1,) + tuple(x + 1 for x in positive_greedy_by_first(word[1:], rho))
    return tuple(x + 1 for x in positive_greedy_by_first(word[1:], rho.left_mul(word[0])))


def negative_greedy_by_last(word, rho) -> tuple:
    """Negative greedy facet by recursion on the last letter (containment test on the head)."""
    if not word:
        return ()
    m = len(word)
    if contains(word[:-1], rho):
        return negative_greedy_by_last(word[:-1], rho) + (m,)
    return negative_greedy_by_last(word[:-1], rho.right_mul(word[-1]))


def positive_greedy_noninversion_sweep(word, rho) -> tuple:
    """Positive greedy facet sweeping left to right, keeping non-inversions as long as possible."""
    v, keep = rho, []
    for k, s in enumerate(word, 1):
        if contains(word[k:], v):
            keep.append(k)
        else:
            v = v.left_mul(s)
    return tuple(keep)


def negative_greedy_noninversion_sweep(word, rho) -> tuple:
    """Negative greedy facet sweeping right to left, keeping non-inversions as long as possible."""
    w, keep = rho, []
    for k in range(len(word), 0, -1):
        if contains(word[: k - 1], w):
            keep.append(k)
        else:
            w = w.right_mul(word[k - 1])
    return tuple(reversed(keep))


# ---------------------------------------------------------------- greedy indices

def _crossed_prefix_elements(inst: Instance, members) -> list:
    """``out[x]`` is sigma of the crossed letters among the first ``x`` positions."""
    sys = inst.system
    w = sys.identity()
    out = [w]
    for k, s in enumerate(inst.word):
        if not members[k]:
            w = w.right_mul(s)
        out.append(w)
    return out


def negative_greedy_index(inst: Instance, facet: Facet) -> int:
    """Largest x such that I ∩ [x] is the negative greedy facet of its prefix complex.

    Reference implementation straight from the definition, O(m^2) sweeps.
    """
    _require_nonempty(inst)
    members = facet.members
    sigmas = _crossed_prefix_elements(inst, members)
    best = 0
    for x in range(1, inst.m + 1):
        greedy = negative_greedy_positions(inst.word[:x], sigmas[x])
        if greedy == tuple(k + 1 for k in range(x) if members[k]):
            best = x
    return best


def prefix_greedy_flags(inst: Instance, facet: Facet) -> list:
    """``flags[x-1]`` tells whether I ∩ [x] equals the prefix complex's negative greedy facet."""
    members = facet.members
    sigmas = _crossed_prefix_elements(inst, members)
    return [
        negative_greedy_positions(inst.word[:x], sigmas[x])
        == tuple(k + 1 for k in range(x) if members[k])
        for x in range(1, inst.m + 1)
    ]


def suffix_greedy_flags(inst: Instance, facet: Facet) -> list:
    """``flags[x-1]`` tells whether I restricted to positions x..m is positive greedy there."""
    sys, word, members = inst.system, inst.word, facet.members
    m = inst.m
    flags = [False] * m
    w = sys.identity()  # sigma of crossed letters among positions x..m
    for x in range(m, 0, -1):
        if not members[x - 1]:
            w = w.left_mul(word[x - 1])
        greedy = positive_greedy_positions(word[x - 1:], w)
        flags[x - 1] = greedy == tuple(k - x + 1 for k in range(x, m + 1) if members[k - 1])
    return flags


def positive_greedy_index(inst: Instance, facet: Facet) -> int:
    """Smallest x such that I restricted to positions x..m is positive greedy there.

    Reference implementation straight from the definition, O(m^2) sweeps.
    """
    _require_nonempty(inst)
    flags = suffix_greedy_flags(inst, facet)
    return next(x for x in range(1, inst.m + 1) if flags[x - 1]) if inst.m else 1


# ---------------------------------------------------------------- duality

def reverse_instance(inst: Instance) -> Instance:
    """Instance on the reversed word with target ``rho^-1``."""
    return Instance(inst.system, inst.word[::-1], inst.rho.inverse())
