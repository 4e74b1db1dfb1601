"""Type A pictures: primitive sorting networks and pseudoline arrangements.

In type A_n the generator ``s_p`` (letter ``p - 1``) is the adjacent
transposition of ``p`` and ``p + 1``. The word gives a network with ``n + 1``
levels, numbered bottom to top, and one commutator per letter between levels
``p`` and ``p + 1``. A facet becomes a pseudoline arrangement whose contacts
are the facet positions and whose crossings are the complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotTypeA
from .subword import Facet, Instance, facet_from_positions

CONTACT = "contact"
CROSSING = "crossing"


@dataclass(frozen=True)
class Network:
    n: int
    commutators: tuple  # lower level (1-based) of each commutator, left to right

    @property
    def levels(self) -> int:
        return self.n + 1

    @property
    def m(self) -> int:
        return len(self.commutators)


@dataclass(frozen=True)
class Arrangement:
    """Pseudolines traced through a network.

    ``lines[label][x]`` is the level of pseudoline ``label`` (1-based, named
    after its level on the left) just before commutator ``x + 1``; the last
    entry is its level on the right.
    """

    network: Network
    contacts: frozenset
    tags: tuple
    lines: dict
    permutation: tuple  # labels read bottom to top on the right

    def labels_before(self, k: int) -> list:
        """Pseudoline label at each level (index 0 = level 1) just before commutator k."""
        at = [0] * self.network.levels
        for label, path in self.lines.items():
            at[path[k - 1] - 1] = label
        return at

    def crossing_pairs(self) -> list:
        pairs = []
        for k, tag in enumerate(self.tags, 1):
            if tag == CROSSING:
                p = self.network.commutators[k - 1]
                at = self.labels_before(k)
                pairs.append(frozenset((at[p - 1], at[p])))
        return pairs


def network_from_word(word: Sequence[int], n: int) -> Network:
    for s in word:
        if not 0 <= s < n:
            raise NotTypeA(f"letter s{s + 1} is not a generator of A{n}")
    return Network(n, tuple(s + 1 for s in word))


def _check_type_a(inst: Instance) -> int:
    if not inst.system.is_type_a():
        raise NotTypeA(f"{inst.system!r} is not of type A")
    return inst.system.rank


def arrangement(inst: Instance, facet) -> Arrangement:
    """Trace the pseudolines of a facet (a Facet or 1-based positions)."""
    n = _check_type_a(inst)
    if not isinstance(facet, Facet):
        facet = facet_from_positions(inst, facet)
    net = network_from_word(inst.word, n)
    contacts = frozenset(facet.positions)
    at = list(range(1, n + 2))  # label currently on each level
    paths = {label: [label] for label in at}
    tags = []
    for k, p in enumerate(net.commutators, 1):
        if k in contacts:
            tags.append(CONTACT)
        else:
            tags.append(CROSSING)
            at[p - 1], at[p] = at[p], at[p - 1]
        for level, label in enumerate(at, 1):
            paths[label].append(level)
    return Arrangement(
        network=net,
        contacts=contacts,
        tags=tuple(tags),
        lines={label: tuple(path) for label, path in paths.items()},
        permutation=tuple(at),
    )


def root_readout(inst: Instance, facet, k: int) -> tuple:
    """Labels ``(t, b)`` of the pseudolines reaching the top and bottom of commutator k."""
    arr = facet if isinstance(facet, Arrangement) else arrangement(inst, facet)
    p = arr.network.commutators[k - 1]
    at = arr.labels_before(k)
    return at[p], at[p - 1]


def type_a_root(system, r: int) -> tuple:
    """``(t, b)`` such that root ``r`` is ``e_t - e_b`` in the usual coordinates.

    The simple root of ``s_p`` is ``e_{p+1} - e_p``.
    """
    coords = [int(c.a) for c in system.roots[r]]
    n = len(coords)
    vec = [0] * (n + 2)
    for i, c in enumerate(coords):
        vec[i + 2] += c
        vec[i + 1] -= c
    t = [j for j in range(1, n + 2) if vec[j] == 1]
    b = [j for j in range(1, n + 2) if vec[j] == -1]
    if len(t) != 1 or len(b) != 1:
        raise ValueError(f"root {r} is not of the form e_t - e_b")
    return t[0], b[0]


def permutation_word(perm: Sequence[int]) -> tuple:
    """Reduced word (0-based letters) of a permutation in one-line notation.

    Bubble sort; each swap of entries ``p, p+1`` contributes ``s_p``.
    """
    target = list(perm)
    n1 = len(target)
    if sorted(target) != list(range(1, n1 + 1)):
        raise ValueError(f"{list(perm)} is not a permutation of 1..{n1}")
    word = []
    arr = target[:]
    # sort arr to the identity by adjacent swaps; the swaps read backwards give the word
    changed = True
    while changed:
        changed = False
        for p in range(n1 - 1):
            if arr[p] > arr[p + 1]:
                arr[p], arr[p + 1] = arr[p + 1], arr[p]
                word.append(p)
                changed = True
    return tuple(reversed(word))


# ---------------------------------------------------------------- rendering

_ASCII = {
    CROSSING: ("-\\ /-", "  X  ", "-/ \\-"),
    CONTACT: ("-\\_/-", "     ", "-/^\\-"),
}


def render_ascii(arr: Arrangement) -> str:
    net = arr.network
    L = net.levels
    width = len(str(L))
    rows = []
    for level in range(L, 0, -1):
        line = [f"{level:>{width}} "]
        gap = [" " * (width + 1)]
        for k, p in enumerate(net.commutators):
            glyph = _ASCII[arr.tags[k]]
            if level == p + 1:
                line.append(glyph[0])
            elif level == p:
                line.append(glyph[2])
            else:
                line.append("-----")
            gap.append(glyph[1] if level == p + 1 else "     ")
        if not net.commutators:
            line.append("-----")
        line.append(f" {arr.permutation[level - 1]}")
        rows.append("".join(line))
        if level > 1:
            rows.append("".join(gap).rstrip())
    return "\n".join(rows) + "\n"


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def render_svg(arr: Arrangement, col: int = 40, pitch: int = 30, margin: int = 30) -> str:
    net = arr.network
    L, m = net.levels, net.m
    width = 2 * margin + max(m, 1) * col
    height = 2 * margin + (L - 1) * pitch

    def y(level):
        return margin + (L - level) * pitch

    def fmt(v):
        return f"{v:.1f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g stroke="#bbbbbb" stroke-width="1">',
    ]
    for k, p in enumerate(net.commutators):
        x = margin + (k + 0.5) * col
        out.append(f'<line x1="{fmt(x)}" y1="{fmt(y(p + 1))}" x2="{fmt(x)}" y2="{fmt(y(p))}"/>')
    out.append("</g>")
    out.append('<g fill="none" stroke-width="2">')
    for label in sorted(arr.lines):
        path = arr.lines[label]
        pts = [(margin, y(path[0]))]
        for k, p in enumerate(net.commutators):
            before, after = path[k], path[k + 1]
            x = margin + (k + 0.5) * col
            if before in (p, p + 1):
                mid = (y(p) + y(p + 1)) / 2
                pts.append((x - 0.35 * col, y(before)))
                if arr.tags[k] == CONTACT:
                    pts.append((x, mid))
                pts.append((x + 0.35 * col, y(after)))
        pts.append((width - margin, y(path[-1])))
        d = " ".join(f"{fmt(px)},{fmt(py)}" for px, py in pts)
        color = _PALETTE[(label - 1) % len(_PALETTE)]
        out.append(f'<polyline stroke="{color}" points="{d}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="12">')
    for level in range(1, L + 1):
        out.append(f'<text x="{margin - 18}" y="{fmt(y(level) + 4)}">{level}</text>')
        out.append(
            f'<text x="{width - margin + 8}" y="{fmt(y(level) + 4)}">{arr.permutation[level - 1]}</text>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(arr: Arrangement, format: str = "ascii") -> str:
    if format == "ascii":
        return render_ascii(arr)
    if format == "svg":
        return render_svg(arr)
    raise ValueError(f"unknown render format {format!r}")
