# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled flip kernels. Mirrors ``_walk_py`` exactly; positions are 0-based."""

from array import array


cdef int _flip(unsigned char[:] members, int[:] roots, const int[:] refl, int N, int p) except -2:
    cdef int m = members.shape[0]
    cdef int r = roots[p]
    cdef int beta, q, lo, hi, k, base
    if not members[p]:
        raise ValueError(f"position {p} is not in the facet")
    if r < N:
        beta = r
        q = p + 1
        while q < m and (members[q] or roots[q] != beta):
            q += 1
        if q == m:
            raise ValueError(f"position {p} is not flippable")
        lo = p
        hi = q
    else:
        beta = r - N
        q = p - 1
        while q >= 0 and (members[q] or roots[q] != beta):
            q -= 1
        if q < 0:
            raise ValueError(f"position {p} is not flippable")
        lo = q
        hi = p
    base = beta * 2 * N
    for k in range(lo + 1, hi + 1):
        roots[k] = refl[base + roots[k]]
    members[p] = 0
    members[q] = 1
    return q


def flip_inplace(members, roots, refl, int N, int p):
    """Flip position ``p`` of the facet in place and return its partner."""
    return _flip(members, roots, refl, N, p)


cdef class GreedyWalker:
    """Preorder depth-first walk of a greedy flip tree (see ``_walk_py``)."""

    cdef readonly bytearray members
    cdef readonly object roots
    cdef object refl
    cdef unsigned char[:] _members
    cdef int[:] _roots
    cdef const int[:] _refl
    cdef const unsigned char[:] _inv
    cdef int[:] _flipped
    cdef int[:] _partner
    cdef object _stack_keep
    cdef readonly int N, m, depth, max_depth
    cdef readonly long long flips
    cdef readonly bint negative, done
    cdef int scan

    def __init__(self, members, roots, refl, int N, negative, inv_mask):
        self.members = bytearray(members)
        self.roots = array("i", roots)
        self.refl = refl
        self._members = self.members
        self._roots = self.roots
        self._refl = refl
        self._inv = bytes(inv_mask) if len(inv_mask) else b"\0"
        self.N = N
        self.m = len(self.members)
        self.negative = bool(negative)
        size = self.m if self.m > 0 else 1
        self._stack_keep = (array("i", [0] * size), array("i", [0] * size))
        self._flipped = self._stack_keep[0]
        self._partner = self._stack_keep[1]
        self.depth = 0
        self.max_depth = 0
        self.flips = 0
        self.scan = self.m - 1 if self.negative else 0
        self.done = False

    cdef inline bint _child_at(self, int k):
        cdef int r
        if not self._members[k]:
            return False
        r = self._roots[k]
        if self.negative:
            return r >= self.N
        return r < self.N and self._inv[r] != 0

    cdef bint _advance(self) except -1:
        cdef int step = -1 if self.negative else 1
        cdef int k, q, d
        if self.done:
            return False
        while True:
            k = self.scan
            while 0 <= k < self.m:
                if self._child_at(k):
                    q = _flip(self._members, self._roots, self._refl, self.N, k)
                    self.flips += 1
                    d = self.depth
                    self._flipped[d] = k
                    self._partner[d] = q
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
            k = self._flipped[d]
            _flip(self._members, self._roots, self._refl, self.N, self._partner[d])
            self.flips += 1
            self.scan = k + step

    def advance(self):
        """Move to the next facet in preorder; False once the tree is exhausted."""
        return self._advance()

    def run(self):
        cdef long long count = 0
        while self._advance():
            count += 1
        return count

    def positions(self):
        # build an exact-size list first: tuple(genexpr) over-allocates and
        # leaves a trail of resized tuples in the interpreter's free lists
        return tuple([k + 1 for k in range(self.m) if self._members[k]])

    def rootfn(self):
        return tuple(self.roots)

    def last_flip(self):
        if self.depth == 0:
            return None
        return self._flipped[self.depth - 1], self._partner[self.depth - 1]
