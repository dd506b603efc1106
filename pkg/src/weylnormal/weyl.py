"""Weyl groups of types A-D, F4, G2 as integer matrix groups.

Group elements act on ``V`` in simple-root coordinates: a vector
``v = sum_j c_j alpha_j`` is the column ``c`` and ``g`` maps it to ``M_g c``.
Polynomials on ``V^m`` are written in these coordinates and ``g`` acts on them
by ``(g f)(v_1..v_m) = f(g^{-1} v_1, ..., g^{-1} v_m)``.

Each type also carries an orthogonal ("epsilon") realization in which a large
subgroup acts by signed permutations of coordinates.  For A_n and G2 the
epsilon space has one extra coordinate and ``V`` sits in it as the hyperplane
``sum x = 0``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import BudgetExceeded, InvalidCartanType, ShapeMismatch
from .linalg import (
    Matrix,
    as_matrix,
    identity,
    inverse,
    is_signed_permutation,
    left_inverse,
    matmul,
    signed_perm_matrix,
    transpose,
)
from .poly import Polynomial

DEFAULT_ORDER_BUDGET = 50_000

_TYPE_RE = re.compile(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*")


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam not in "ABCDFG" or len(fam) != 1:
            raise InvalidCartanType(f"unsupported family {self.family!r}")
        r = self.rank
        if not isinstance(r, int) or r < 1:
            raise InvalidCartanType(f"rank must be a positive integer, got {r!r}")
        if fam == "F" and r != 4:
            raise InvalidCartanType("type F exists only in rank 4")
        if fam == "G" and r != 2:
            raise InvalidCartanType("type G exists only in rank 2")
        if fam == "D" and r < 2:
            raise InvalidCartanType("type D needs rank >= 2")

    @classmethod
    def parse(cls, s: str) -> "CartanType":
        m = _TYPE_RE.fullmatch(s)
        if not m:
            raise InvalidCartanType(f"cannot parse Cartan type {s!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _as_type(t) -> CartanType:
    return t if isinstance(t, CartanType) else CartanType.parse(t)


def cartan_matrix(t) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with ``a[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)``."""
    t = _as_type(t)
    n = t.rank
    fam = t.family
    if fam == "G":
        return ((2, -1), (-3, 2))
    if fam == "F":
        return ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if fam == "B" and n >= 2:
        a[n - 2][n - 1] = -2
    elif fam == "C" and n >= 2:
        a[n - 1][n - 2] = -2
    elif fam == "D":
        if n == 2:
            a[0][1] = a[1][0] = 0
        else:
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    return tuple(tuple(r) for r in a)


def simple_roots_epsilon(t) -> Matrix:
    """Simple roots as rows, in epsilon coordinates."""
    t = _as_type(t)
    n = t.rank
    fam = t.family
    if fam == "A":
        rows = [[1 if k == j else -1 if k == j + 1 else 0 for k in range(n + 1)] for j in range(n)]
    elif fam in "BCD":
        rows = [[1 if k == j else -1 if k == j + 1 else 0 for k in range(n)] for j in range(n - 1)]
        last = [0] * n
        if fam == "B":
            last[n - 1] = 1
        elif fam == "C":
            last[n - 1] = 2
        else:
            last[n - 2] = last[n - 1] = 1
        rows.append(last)
    elif fam == "G":
        rows = [[1, -1, 0], [-2, 1, 1]]
    else:  # F4
        h = Fraction(1, 2)
        rows = [[0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h]]
    return as_matrix(rows)


def to_epsilon_coordinates(t) -> Matrix:
    """Matrix ``E`` with ``x = E c``: epsilon coordinates of the vector with root coordinates ``c``."""
    return transpose(simple_roots_epsilon(t))


def simple_reflections(t) -> list[Matrix]:
    """Matrices of ``s_i`` in the root basis: ``s_i(alpha_j) = alpha_j - a[j][i] alpha_i``."""
    t = _as_type(t)
    a = cartan_matrix(t)
    n = t.rank
    out = []
    for i in range(n):
        M = [[int(r == c) for c in range(n)] for r in range(n)]
        for c in range(n):
            M[i][c] -= a[c][i]
        out.append(tuple(tuple(r) for r in M))
    return out


def _imul(A, B):
    n = len(A)
    Bt = tuple(zip(*B))
    return tuple(tuple(sum(x * y for x, y in zip(A[i], Bt[j])) for j in range(n)) for i in range(n))


def closure(generators, budget: int = DEFAULT_ORDER_BUDGET, mul=_imul) -> list[Matrix]:
    """Breadth-first closure of a finite matrix group, identity first."""
    n = len(generators[0])
    e = identity(n)
    seen = {e: 0}
    out = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = mul(g, s)
            if h not in seen:
                if len(out) >= budget:
                    raise BudgetExceeded(f"group has more than {budget} elements")
                seen[h] = len(out)
                out.append(h)
                queue.append(h)
    return out


# Signed-permutation generators of the group acting on epsilon space.  The
# restriction to V of the generated group is W, except for F4, where it is the
# index-3 subgroup W(B4).
def _epsilon_generators(t: CartanType) -> list[Matrix]:
    fam, n = t.family, t.rank

    def swap(size, a, b, sign=1):
        perm = list(range(size))
        perm[a], perm[b] = b, a
        return signed_perm_matrix(perm, [sign] * size)

    def flip(size, a):
        return signed_perm_matrix(list(range(size)), [-1 if k == a else 1 for k in range(size)])

    if fam == "A":
        return [swap(n + 1, k, k + 1) for k in range(n)]
    if fam in "BC":
        return [swap(n, k, k + 1) for k in range(n - 1)] + [flip(n, n - 1)]
    if fam == "D":
        perm = list(range(n))
        perm[n - 2], perm[n - 1] = n - 1, n - 2
        signs = [1] * n
        signs[n - 2] = signs[n - 1] = -1
        return [swap(n, k, k + 1) for k in range(n - 1)] + [signed_perm_matrix(perm, signs)]
    if fam == "G":
        # -(2 3) agrees with the long-root reflection on the plane sum x = 0
        return [swap(3, 0, 1), swap(3, 1, 2, sign=-1)]
    return [swap(4, k, k + 1) for k in range(3)] + [flip(4, 3)]


@dataclass
class WeylGroup:
    """Exhaustively enumerated Weyl group; immutable after construction."""

    ctype: CartanType
    elements: list[Matrix]
    coordinate_change: Matrix  # E, root coords -> epsilon coords
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def rank(self) -> int:
        return self.ctype.rank

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._index

    def index(self, g: Matrix) -> int:
        return self._index[g]

    @property
    def identity(self) -> Matrix:
        return self.elements[0]

    @cached_property
    def generators(self) -> list[Matrix]:
        return simple_reflections(self.ctype)

    @cached_property
    def inverses(self) -> list[int]:
        return [self._index[inverse(g)] for g in self.elements]

    def inverse(self, g: Matrix) -> Matrix:
        return self.elements[self.inverses[self._index[g]]]

    def product(self, g: Matrix, h: Matrix) -> Matrix:
        return _imul(g, h)

    def act(self, g: Matrix, f: Polynomial) -> Polynomial:
        """``(g f)(v_1..v_m) = f(g^{-1} v_1, ..., g^{-1} v_m)``."""
        if f.n != self.rank:
            raise ShapeMismatch(f"polynomial has {f.n} coordinates per copy, group rank is {self.rank}")
        return f.act_linear(self.inverse(g))

    # -- epsilon realization -------------------------------------------------

    @property
    def epsilon_dim(self) -> int:
        return len(self.coordinate_change)

    @cached_property
    def coordinate_change_left_inverse(self) -> Matrix:
        """``E^+`` with ``E^+ E = 1``; recovers root coordinates of vectors in V."""
        return left_inverse(self.coordinate_change)

    @cached_property
    def epsilon_subgroup(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Signed permutations ``(perm, signs)`` of the epsilon subgroup, identity first."""
        from .linalg import signed_perm_of

        gens = _epsilon_generators(self.ctype)
        return [signed_perm_of(P) for P in closure(gens)]

    @cached_property
    def epsilon_coset_representatives(self) -> list[Matrix]:
        """Left coset reps ``c`` of the epsilon subgroup ``H`` (as epsilon matrices): ``W = U c H``."""
        if len(self.epsilon_subgroup) == self.order:
            return [identity(self.epsilon_dim)]
        E = self.coordinate_change
        if len(E) != len(E[0]):
            raise NotImplementedError("coset decomposition needs a square coordinate change")
        Einv = inverse(E)
        reps: list[Matrix] = []
        rep_invs: list[Matrix] = []
        for g in self.elements:
            ge = matmul(matmul(E, g), Einv)
            if any(is_signed_permutation(matmul(ci, ge)) for ci in rep_invs):
                continue
            reps.append(ge)
            rep_invs.append(inverse(ge))
        return reps

    def epsilon_matrix(self, g: Matrix) -> Matrix:
        """``E M_g E^{-1}`` (square realizations only)."""
        E = self.coordinate_change
        return matmul(matmul(E, g), inverse(E))


def enumerate_group(t, budget: int = DEFAULT_ORDER_BUDGET) -> WeylGroup:
    """Enumerate ``W(t)`` by closure of its simple reflections."""
    t = _as_type(t)
    elements = closure(simple_reflections(t), budget=budget)
    return WeylGroup(t, elements, to_epsilon_coordinates(t))


_GROUP_CACHE: dict = {}


def weyl_group(t, budget: int = DEFAULT_ORDER_BUDGET) -> WeylGroup:
    """Cached :func:`enumerate_group`."""
    t = _as_type(t)
    W = _GROUP_CACHE.get(t)
    if W is None:
        W = _GROUP_CACHE[t] = enumerate_group(t, budget)
    return W


def sigma_root_matrix(n: int) -> Matrix:
    """The sign change ``x_n -> -x_n`` written in D_n root coordinates."""
    E = to_epsilon_coordinates(CartanType("D", n))
    S = tuple(tuple((-1 if (i == j == n - 1) else int(i == j)) for j in range(n)) for i in range(n))
    return matmul(matmul(inverse(E), S), E)


def act_matrix(M: Matrix, f: Polynomial) -> Polynomial:
    """Diagonal action of an arbitrary invertible ``M`` (root coordinates) on ``f``."""
    return f.act_linear(inverse(M))
