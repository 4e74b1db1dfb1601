"""Finite Coxeter systems as permutation groups on their root systems.

Roots are stored exactly, with coordinates in the simple-root basis taken
from the ring Z[phi] (phi the golden ratio), which covers every bond label
in {2, 3, 4, 5, 6}. Once the root table is built, group elements are plain
permutations of root indices and every later computation is table lookup.

Root indices ``0 .. N-1`` are the positive roots (simple root ``i`` sits at
index ``i``) and ``k + N`` is the negative of root ``k``.
"""

from __future__ import annotations

import math
import re
from array import array
from collections import deque
from functools import total_ordering
from itertools import cycle
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvalidMatrix, OrbitBoundExceeded

DEFAULT_ORBIT_CAP = 100_000
GOLDEN = (1 + math.sqrt(5)) / 2


@total_ordering
class QuadInt:
    """Exact number ``a + b*phi`` with ``phi**2 == phi + 1``."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = a
        self.b = b

    def __add__(self, other):
        other = _quad(other)
        return QuadInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _quad(other)
        return QuadInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _quad(other) - self

    def __neg__(self):
        return QuadInt(-self.a, -self.b)

    def __mul__(self, other):
        other = _quad(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return QuadInt(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def sign(self) -> int:
        # a + b*phi = ((2a + b) + b*sqrt5) / 2
        x, y = 2 * self.a + self.b, self.b
        if x >= 0 and y >= 0:
            return 0 if x == 0 and y == 0 else 1
        if x <= 0 and y <= 0:
            return -1
        lhs, rhs = x * x, 5 * y * y
        if x > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __float__(self):
        return self.a + self.b * GOLDEN

    def __eq__(self, other):
        if isinstance(other, int):
            return self.a == other and self.b == 0
        return isinstance(other, QuadInt) and self.a == other.a and self.b == other.b

    def __lt__(self, other):
        return (self - _quad(other)).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"({self.a}{self.b:+d}*phi)"


def _quad(x) -> QuadInt:
    return x if isinstance(x, QuadInt) else QuadInt(int(x), 0)


ZERO = QuadInt(0, 0)
ONE = QuadInt(1, 0)
PHI = QuadInt(0, 1)

# Cartan pair (A[i][j], A[j][i]) for i < j; the product equals 4 cos^2(pi/m).
_CARTAN_PAIRS = {
    2: (ZERO, ZERO),
    3: (-ONE, -ONE),
    4: (-ONE, QuadInt(-2)),
    5: (-PHI, -PHI),
    6: (-ONE, QuadInt(-3)),
}


# ---------------------------------------------------------------- matrices

def _chain(n: int) -> list[list[int]]:
    mat = [[2] * n for _ in range(n)]
    for i in range(n):
        mat[i][i] = 1
    for i in range(n - 1):
        mat[i][i + 1] = mat[i + 1][i] = 3
    return mat


def _set(mat, i, j, m):
    mat[i][j] = mat[j][i] = m


def coxeter_matrix(type_string: str) -> list[list[int]]:
    """Coxeter matrix of a named finite type such as ``"A3"`` or ``"I2(5)"``.

    Generators are numbered along the Dynkin diagram in Bourbaki order.
    """
    text = type_string.strip().replace(" ", "")
    m = re.fullmatch(r"I_?2\((\d+)\)", text, re.IGNORECASE)
    if m:
        bond = int(m.group(1))
        if bond not in _CARTAN_PAIRS:
            raise InvalidMatrix(f"dihedral type I2({bond}) unsupported: bonds must lie in 2..6")
        mat = [[1, bond], [bond, 1]]
        return mat
    m = re.fullmatch(r"([A-HJ-Za-hj-z])_?(\d+)", text)
    if not m:
        raise InvalidMatrix(f"unrecognised Coxeter type {type_string!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if family == "A" and n >= 1:
        return _chain(n)
    if family in "BC" and n >= 2:
        mat = _chain(n)
        _set(mat, n - 2, n - 1, 4)
        return mat
    if family == "D" and n >= 4:
        mat = _chain(n)
        _set(mat, n - 2, n - 1, 2)
        _set(mat, n - 3, n - 1, 3)
        return mat
    if family == "E" and n in (6, 7, 8):
        mat = [[2] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = 1
        # 1 - 3 - 4 - 5 - ... with 2 hanging off 4
        _set(mat, 0, 2, 3)
        _set(mat, 1, 3, 3)
        for i in range(2, n - 1):
            _set(mat, i, i + 1, 3)
        return mat
    if family == "F" and n == 4:
        mat = _chain(4)
        _set(mat, 1, 2, 4)
        return mat
    if family == "G" and n == 2:
        return [[1, 6], [6, 1]]
    if family == "H" and n in (3, 4):
        mat = _chain(n)
        _set(mat, 0, 1, 5)
        return mat
    raise InvalidMatrix(f"unsupported Coxeter type {type_string!r}")


def validate_matrix(mat: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(mat)
    if n == 0:
        raise InvalidMatrix("Coxeter matrix must have rank at least 1")
    out = []
    for i, row in enumerate(mat):
        if len(row) != n:
            raise InvalidMatrix(f"row {i + 1} has {len(row)} entries, expected {n}")
        out.append([int(x) for x in row])
    for i in range(n):
        if out[i][i] != 1:
            raise InvalidMatrix(f"diagonal entry ({i + 1},{i + 1}) must be 1")
        for j in range(n):
            if out[i][j] != out[j][i]:
                raise InvalidMatrix(f"matrix not symmetric at ({i + 1},{j + 1})")
            if i != j and out[i][j] not in _CARTAN_PAIRS:
                raise InvalidMatrix(
                    f"bond label {out[i][j]} at ({i + 1},{j + 1}) unsupported (allowed: 2..6)"
                )
    return out


def parse_matrix_text(text: str, source: str = "<matrix>") -> list[list[int]]:
    """Parse ``n`` followed by ``n`` rows of ``n`` bond labels.

    Errors carry a ``source:line:column`` prefix.
    """
    lines = [(no, ln) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise InvalidMatrix(f"{source}:1:1: empty matrix file")
    no, first = lines[0]
    try:
        n = int(first.strip())
    except ValueError:
        col = len(first) - len(first.lstrip()) + 1
        raise InvalidMatrix(f"{source}:{no}:{col}: expected the rank, got {first.strip()!r}") from None
    if len(lines) - 1 != n:
        raise InvalidMatrix(f"{source}:{no}:1: expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for no, ln in lines[1:]:
        row = []
        for tok in re.finditer(r"\S+", ln):
            try:
                row.append(int(tok.group()))
            except ValueError:
                raise InvalidMatrix(
                    f"{source}:{no}:{tok.start() + 1}: bond label must be an integer, got {tok.group()!r}"
                ) from None
        if len(row) != n:
            raise InvalidMatrix(f"{source}:{no}:1: expected {n} entries, found {len(row)}")
        rows.append(row)
    try:
        return validate_matrix(rows)
    except InvalidMatrix as exc:
        raise InvalidMatrix(f"{source}: {exc}") from None


def _cartan(mat: list[list[int]]) -> list[list[QuadInt]]:
    n = len(mat)
    car = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        car[i][i] = QuadInt(2)
        for j in range(i + 1, n):
            car[i][j], car[j][i] = _CARTAN_PAIRS[mat[i][j]]
    return car


# ---------------------------------------------------------------- systems

class CoxeterSystem:
    """Immutable root and reflection tables of a finite Coxeter system.

    Attributes
    ----------
    rank : int
        Number of simple generators ``n``.
    matrix : tuple of tuples
        The Coxeter matrix.
    roots : tuple
        All ``2N`` roots as coordinate tuples of :class:`QuadInt`.
    N : int
        Number of positive roots.
    simple_perm : tuple
        ``simple_perm[s][k]`` is the index of ``s(roots[k])``.
    refl_perm : tuple
        ``refl_perm[t][k]`` is the index of ``s_t(roots[k])`` for positive ``t``.
    """

    def __init__(self, matrix, name: str | None = None, orbit_cap: int = DEFAULT_ORBIT_CAP):
        mat = validate_matrix(matrix)
        self.matrix = tuple(tuple(r) for r in mat)
        self.rank = n = len(mat)
        self.name = name
        cartan = _cartan(mat)

        def reflect_coords(s, coords):
            c = sum((coords[j] * cartan[s][j] for j in range(n)), ZERO)
            if c == 0:
                return coords
            out = list(coords)
            out[s] = out[s] - c
            return tuple(out)

        simple = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
        seen = {r: None for r in simple}
        parent = {}  # root -> (generator, root it was reached from)
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            for s in range(n):
                gamma = reflect_coords(s, beta)
                if gamma not in seen:
                    seen[gamma] = None
                    parent[gamma] = (s, beta)
                    queue.append(gamma)
                    if len(seen) > orbit_cap:
                        raise OrbitBoundExceeded(
                            f"root orbit exceeded {orbit_cap} roots; the group is not finite "
                            "or not supported"
                        )

        positive, discovery = [], list(seen)
        for r in discovery:
            signs = {c.sign() for c in r} - {0}
            if len(signs) != 1:
                raise InvalidMatrix(f"mixed-sign root {r}: not a finite root system")
            if signs == {1}:
                positive.append(r)
        simple_set = set(simple)
        rest = sorted(
            (r for r in positive if r not in simple_set),
            key=lambda r: (sum(float(c) for c in r), tuple(float(c) for c in r)),
        )
        pos = simple + rest
        N = len(pos)
        if 2 * N != len(discovery):
            raise InvalidMatrix("root orbit is not symmetric under negation")
        roots = pos + [tuple(-c for c in r) for r in pos]
        index = {r: k for k, r in enumerate(roots)}

        self.N = N
        self.roots = tuple(roots)
        self.index = index
        self.simple_perm = tuple(
            tuple(index[reflect_coords(s, r)] for r in roots) for s in range(n)
        )
        # s_{s(beta)} = s . s_beta . s, built in discovery order so the parent is ready
        refl: list = [None] * N
        for s in range(n):
            refl[s] = self.simple_perm[s]
        for r in discovery:
            k = index[r]
            if k >= N or refl[k] is not None:
                continue
            s, beta = parent[r]
            sp, rb = self.simple_perm[s], refl[index[beta]]
            refl[k] = tuple(sp[rb[sp[x]]] for x in range(2 * N))
        self.refl_perm = tuple(refl)
        self._refl_flat = None

    # -- basic tables

    def neg(self, k: int) -> int:
        return (k + self.N) % (2 * self.N)

    def is_positive(self, k: int) -> bool:
        return k < self.N

    def apply_generator(self, s: int, r: int) -> int:
        return self.simple_perm[s][r]

    def reflect(self, t: int, r: int) -> int:
        """Index of ``s_beta(roots[r])`` where ``beta = roots[t]`` is positive."""
        if t >= self.N:
            t -= self.N
        return self.refl_perm[t][r]

    def refl_table(self) -> array:
        """Reflection table flattened row-major into an ``array('i')``."""
        if self._refl_flat is None:
            flat = array("i")
            for row in self.refl_perm:
                flat.extend(row)
            self._refl_flat = flat
        return self._refl_flat

    def root_coords(self, k: int) -> tuple:
        return self.roots[k]

    def is_type_a(self) -> bool:
        return self.matrix == tuple(tuple(r) for r in _chain(self.rank))

    def generator_name(self, s: int) -> str:
        return f"s{s + 1}"

    # -- elements

    def identity(self) -> "Element":
        return Element(self, tuple(range(2 * self.N)))

    def generator(self, s: int) -> "Element":
        return Element(self, self.simple_perm[s])

    def element(self, word: Iterable[int]) -> "Element":
        return element_from_word(self, word)

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"CoxeterSystem({label}, N={self.N})"


def build_system(spec, orbit_cap: int = DEFAULT_ORBIT_CAP) -> CoxeterSystem:
    """Build a system from a type string, a matrix, or a path to a matrix file."""
    if isinstance(spec, CoxeterSystem):
        return spec
    if isinstance(spec, Path):
        return CoxeterSystem(parse_matrix_text(spec.read_text(), str(spec)), orbit_cap=orbit_cap)
    if isinstance(spec, str):
        return CoxeterSystem(coxeter_matrix(spec), name=spec.strip(), orbit_cap=orbit_cap)
    return CoxeterSystem(spec, orbit_cap=orbit_cap)


class Element:
    """Group element stored as the permutation it induces on root indices.

    ``perm[k]`` is the index of ``w(roots[k])``.
    """

    __slots__ = ("system", "perm", "_length", "_inv")

    def __init__(self, system: CoxeterSystem, perm: Sequence[int]):
        self.system = system
        self.perm = tuple(perm)
        self._length = None
        self._inv = None

    @property
    def length(self) -> int:
        if self._length is None:
            N = self.system.N
            self._length = sum(1 for k in range(N) if self.perm[k] >= N)
        return self._length

    def __len__(self):
        return self.length

    def inverse(self) -> "Element":
        if self._inv is None:
            inv = [0] * len(self.perm)
            for k, v in enumerate(self.perm):
                inv[v] = k
            self._inv = Element(self.system, inv)
            self._inv._inv = self
        return self._inv

    def __mul__(self, other: "Element") -> "Element":
        p = self.perm
        return Element(self.system, tuple(p[x] for x in other.perm))

    def right_mul(self, s: int) -> "Element":
        """``w * s``."""
        p = self.perm
        return Element(self.system, tuple(p[x] for x in self.system.simple_perm[s]))

    def left_mul(self, s: int) -> "Element":
        """``s * w``."""
        sp = self.system.simple_perm[s]
        return Element(self.system, tuple(sp[x] for x in self.perm))

    def __call__(self, r: int) -> int:
        return self.perm[r]

    def is_right_descent(self, s: int) -> bool:
        return self.perm[s] >= self.system.N

    def is_left_descent(self, s: int) -> bool:
        return self.inverse().perm[s] >= self.system.N

    def inversion_set(self) -> frozenset:
        N = self.system.N
        return frozenset(k for k in range(N) if self.perm[k] >= N)

    def is_identity(self) -> bool:
        return all(k == v for k, v in enumerate(self.perm))

    def reduced_word(self) -> tuple:
        """A reduced word, obtained by stripping right descents."""
        w, out = self, []
        while not w.is_identity():
            s = next(s for s in range(self.system.rank) if w.is_right_descent(s))
            out.append(s)
            w = w.right_mul(s)
        return tuple(reversed(out))

    def __eq__(self, other):
        return isinstance(other, Element) and self.perm == other.perm and self.system is other.system

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        word = " ".join(self.system.generator_name(s) for s in self.reduced_word())
        return f"Element({word or 'e'})"


def element_from_word(system: CoxeterSystem, word: Iterable[int]) -> Element:
    """Product ``q1 q2 ... qk`` of the letters, in increasing position order."""
    perm = tuple(range(2 * system.N))
    sp = system.simple_perm
    for s in word:
        row = sp[s]
        perm = tuple(perm[x] for x in row)
    return Element(system, perm)


def length(w: Element) -> int:
    return w.length


def is_right_descent(w: Element, s: int) -> bool:
    return w.is_right_descent(s)


def is_left_descent(w: Element, s: int) -> bool:
    return w.is_left_descent(s)


def inversion_set(w: Element) -> frozenset:
    return w.inversion_set()


def demazure(system: CoxeterSystem, word: Iterable[int]) -> Element:
    """Demazure product: fold the word, keeping only length-increasing letters."""
    w = system.identity()
    for s in word:
        if not w.is_right_descent(s):
            w = w.right_mul(s)
    return w


def longest_element(system: CoxeterSystem) -> Element:
    w = system.identity()
    while True:
        for s in range(system.rank):
            if not w.is_right_descent(s):
                w = w.right_mul(s)
                break
        else:
            return w


def sorting_word(system: CoxeterSystem, target: Element, c: Sequence[int]) -> tuple:
    """The ``c``-sorting word of ``target``.

    ``c`` must list every generator exactly once. Letters of ``c^infinity`` are
    kept whenever they are a left descent of what remains of ``target``.
    """
    if sorted(c) != list(range(system.rank)):
        raise ValueError("c must be a Coxeter element word using each generator once")
    r, out = target, []
    if r.is_identity():
        return ()
    for s in cycle(c):
        if r.is_left_descent(s):
            out.append(s)
            r = r.left_mul(s)
            if r.is_identity():
                return tuple(out)


def multicluster_word(system: CoxeterSystem, c: Sequence[int], k: int) -> tuple:
    """``c^k`` followed by the ``c``-sorting word of the longest element."""
    return tuple(c) * k + sorting_word(system, longest_element(system), c)
