"""Pure-Python flip kernels. Same interface as the compiled ``_walk`` module.

All positions here are 0-based. ``members`` is a bytearray mask over the
word, ``roots`` an ``array('i')`` holding the root function, ``refl`` the
flattened reflection table of the system (row ``t`` at offset ``t * 2N``).
"""

from array import array


def flip_inplace(members, roots, refl, N, p):
    """Flip position ``p`` of the facet in place and return its partner.

    Raises ValueError when ``p`` is not in the facet or has no partner.
    """
    if not members[p]:
        raise ValueError(f"position {p} is not in the facet")
    r = roots[p]
    m = len(members)
    if r < N:
        beta = r
        q = p + 1
        while q < m and (members[q] or roots[q] != beta):
            q += 1
        if q == m:
            raise ValueError(f"position {p} is not flippable")
        lo, hi = p, q
    else:
        beta = r - N
        q = p - 1
        while q >= 0 and (members[q] or roots[q] != beta):
            q -= 1
        if q < 0:
            raise ValueError(f"position {p} is not flippable")
        lo, hi = q, p
    base = beta * 2 * N
    for k in range(lo + 1, hi + 1):
        roots[k] = refl[base + roots[k]]
    members[p] = 0
    members[q] = 1
    return q


class GreedyWalker:
    """Preorder depth-first walk of a greedy flip tree.

    The walk owns one live facet and a stack of at most ``m`` flips. In the
    negative tree the children of a node with greedy index ``g`` are the
    flips of positions ``j <= g`` carrying a negative root, visited in
    decreasing order, and a child gets greedy index ``j - 1``. The positive
    tree mirrors this: flippable positions ``i >= g`` with a positive root,
    increasing order, child index ``i + 1``.
    """

    def __init__(self, members, roots, refl, N, negative, inv_mask):
        self.members = bytearray(members)
        self.roots = array("i", roots)
        self.refl = refl
        self.N = N
        self.negative = bool(negative)
        self.inv_mask = bytes(inv_mask)
        m = len(self.members)
        self.m = m
        self.stack_flipped = array("i", [0] * max(m, 1))
        self.stack_partner = array("i", [0] * max(m, 1))
        self.depth = 0
        self.max_depth = 0
        self.flips = 0
        self.scan = m - 1 if self.negative else 0
        self.done = False

    def _child_at(self, k):
        if not self.members[k]:
            return False
        r = self.roots[k]
        if self.negative:
            return r >= self.N
        return r < self.N and self.inv_mask[r]

    def advance(self):
        """Move to the next facet in preorder; False once the tree is exhausted."""
        if self.done:
            return False
        members, roots, refl, N = self.members, self.roots, self.refl, self.N
        step = -1 if self.negative else 1
        m = self.m
        while True:
            k = self.scan
            while 0 <= k < m:
                if self._child_at(k):
                    q = flip_inplace(members, roots, refl, N, k)
                    self.flips += 1
                    d = self.depth
                    self.stack_flipped[d] = k
                    self.stack_partner[d] = q
                    self.depth = d + 1
                    if self.depth > self.max_depth:
                        self.max_depth = self.depth
                    self.scan = k + step
                    return True
                k += step
            if self.depth == 0:
                self.done = True
                return False
            self.depth -= 1
            d = self.depth
            k = self.stack_flipped[d]
            flip_inplace(members, roots, refl, N, self.stack_partner[d])
            self.flips += 1
            self.scan = k + step

    def run(self):
        """Advance to the end and return the number of facets visited on the way."""
        count = 0
        while self.advance():
            count += 1
        return count

    def positions(self):
        # build an exact-size list first: tuple(genexpr) over-allocates and
        # leaves a trail of resized tuples in the interpreter's free lists
        return tuple([k + 1 for k in range(self.m) if self.members[k]])

    def rootfn(self):
        return tuple(self.roots)

    def last_flip(self):
        """0-based (flipped, partner) pair of the arc into the current node."""
        if self.depth == 0:
            return None
        d = self.depth - 1
        return self.stack_flipped[d], self.stack_partner[d]
