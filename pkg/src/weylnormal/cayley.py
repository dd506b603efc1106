"""Transfer of invariants from a symmetric group to an arbitrary finite group.

Let ``G = {g_1..g_n}`` act on ``U`` (basis ``u_1..u_k``) through rational
matrices.  ``Sym(V^k)`` has variables ``x_{il}`` (``i`` a group element,
``l`` a basis index of ``U``); here ``x_{il}`` is the coordinate ``x{l}_{i}``
of a polynomial of shape ``(k, n)``.  ``eta`` sends ``x_{il}`` to ``g_i(u_l)``;
polynomials on ``U`` have shape ``(1, k)`` with ``u_j = x1_j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .errors import NotInvariant, ShapeMismatch
from .linalg import Matrix, as_matrix, identity, matmul, transpose
from .poly import Polynomial


class InvalidGroupTable(ValueError):
    pass


@dataclass
class FiniteGroupTable:
    """Multiplication table (``table[a][b]`` = index of ``g_a g_b``) plus a matrix representation."""

    names: list[str]
    table: list[list[int]]
    rep: list[Matrix]

    def __post_init__(self):
        self.validate()

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def dim(self) -> int:
        return len(self.rep[0])

    def validate(self) -> None:
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise InvalidGroupTable("table must be square and nonempty")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise InvalidGroupTable("table entries out of range")
        if self.table[0] != list(range(n)) or [row[0] for row in self.table] != list(range(n)):
            raise InvalidGroupTable("element 0 must be the identity")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise InvalidGroupTable("rows must be permutations (cancellation law)")
        idx = range(n) if n <= 24 else random.Random(0).sample(range(n), 24)
        T = self.table
        for a in idx:
            for b in idx:
                for c in idx:
                    if T[T[a][b]][c] != T[a][T[b][c]]:
                        raise InvalidGroupTable(f"not associative at ({a}, {b}, {c})")
        if len(self.rep) != n:
            raise InvalidGroupTable("need one representation matrix per element")
        for a in range(n):
            for b in range(n):
                if matmul(self.rep[a], self.rep[b]) != self.rep[T[a][b]]:
                    raise InvalidGroupTable(f"representation is not a homomorphism at ({a}, {b})")

    def act(self, a: int, f: Polynomial) -> Polynomial:
        """``g_a . f``: the algebra automorphism of Sym(U) extending ``u_l -> g_a(u_l)``."""
        if f.shape != (1, self.dim):
            raise ShapeMismatch(f"expected shape (1, {self.dim})")
        return f.substitute_linear(transpose(self.rep[a]), 1)

    def is_invariant(self, f: Polynomial) -> bool:
        return all(self.act(a, f) == f for a in range(self.order))

    def reynolds(self, f: Polynomial) -> Polynomial:
        acc = Polynomial.zero(f.shape)
        for a in range(self.order):
            acc = acc + self.act(a, f)
        return acc.scale(Fraction(1, self.order))


def _table_from_matrices(mats: list[Matrix]) -> list[list[int]]:
    index = {M: i for i, M in enumerate(mats)}
    return [[index[matmul(A, B)] for B in mats] for A in mats]


def trivial_group(k: int = 1) -> FiniteGroupTable:
    return FiniteGroupTable(["e"], [[0]], [identity(k)])


def cyclic2_sign() -> FiniteGroupTable:
    """C_2 acting on a line by the sign character."""
    return FiniteGroupTable(["e", "s"], [[0, 1], [1, 0]], [as_matrix([[1]]), as_matrix([[-1]])])


def symmetric_group(k: int) -> FiniteGroupTable:
    """S_k with its permutation representation on Q^k (``P e_j = e_{g(j)}``)."""
    perms = list(permutations(range(k)))
    mats = []
    for g in perms:
        M = [[0] * k for _ in range(k)]
        for j in range(k):
            M[g[j]][j] = 1
        mats.append(tuple(tuple(r) for r in M))
    names = ["".join(str(x + 1) for x in g) for g in perms]
    return FiniteGroupTable(names, _table_from_matrices(mats), mats)


def group_by_name(name: str) -> FiniteGroupTable:
    key = name.strip().upper()
    if key in ("1", "C1", "TRIVIAL"):
        return trivial_group()
    if key == "C2":
        return cyclic2_sign()
    if key.startswith("S") and key[1:].isdigit():
        return symmetric_group(int(key[1:]))
    raise ValueError(f"unknown group {name!r}; use trivial, C2, or S<k>")


@dataclass
class CayleyEmbedding:
    permutations: list[tuple[int, ...]]  # permutations[a][i] = index of g_a g_i

    def is_faithful(self) -> bool:
        return len(set(self.permutations)) == len(self.permutations)

    def is_homomorphism(self, G: FiniteGroupTable) -> bool:
        P = self.permutations
        n = len(P)
        for a in range(n):
            for b in range(n):
                comp = tuple(P[a][P[b][i]] for i in range(n))
                if comp != P[G.table[a][b]]:
                    return False
        return True


def cayley_embed(G: FiniteGroupTable) -> CayleyEmbedding:
    """Left translations ``g_i -> g g_i``, one permutation of ``{0..n-1}`` per element."""
    G.validate()
    emb = CayleyEmbedding([tuple(row) for row in G.table])
    if not emb.is_faithful():
        raise InvalidGroupTable("left translation is not injective")
    return emb


def permute_rows(p: Polynomial, perm) -> Polynomial:
    """Substitute ``x_{il} -> x_{perm(i), l}`` (S_n acting on V^k)."""
    k, n = p.shape
    if len(perm) != n:
        raise ShapeMismatch("permutation size must equal the number of coordinates")
    M = tuple(tuple(int(perm[i] == j) for j in range(n)) for i in range(n))
    return p.act_linear(M)


def eta(p: Polynomial, G: FiniteGroupTable) -> Polynomial:
    """The algebra map ``Sym(V^k) -> Sym(U)``, ``x_{il} -> g_i(u_l)``."""
    k, n = p.shape
    if n != G.order or k != G.dim:
        raise ShapeMismatch(f"expected shape ({G.dim}, {G.order}), got {p.shape}")
    images = []
    for l in range(k):
        for i in range(n):
            col = [G.rep[i][j][l] for j in range(k)]
            images.append(Polynomial((1, k), {Polynomial.variable((1, k), 1, j + 1).leading_key(): c
                                              for j, c in enumerate(col) if c}))
    return p.substitute(images, shape=(1, k))


def noether_transfer(f: Polynomial, G: FiniteGroupTable, check: bool = True) -> Polynomial:
    """``f' = (1/n) sum_i f(x_{i1}, ..., x_{ik})``; symmetric in ``i`` and ``eta(f') = f``."""
    k = G.dim
    n = G.order
    if f.shape != (1, k):
        raise ShapeMismatch(f"expected shape (1, {k})")
    if check and not G.is_invariant(f):
        raise NotInvariant("f is not G-invariant")
    acc = Polynomial.zero((k, n))
    for i in range(n):
        images = [Polynomial.variable((k, n), l + 1, i + 1) for l in range(k)]
        acc = acc + f.substitute(images, shape=(k, n))
    return acc.scale(Fraction(1, n))


def random_polynomial(shape, degree: int, rng: random.Random, terms: int = 4, coeff_range: int = 5) -> Polynomial:
    """Random polynomial of total degree <= ``degree`` with small integer coefficients."""
    m, n = shape
    N = m * n
    acc: dict = {}
    for _ in range(terms):
        d = rng.randint(0, degree)
        e = [0] * N
        for _ in range(d):
            e[rng.randrange(N)] += 1
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            acc[tuple(e)] = acc.get(tuple(e), 0) + c
    return Polynomial.from_exponents(shape, acc)


def random_invariant(G: FiniteGroupTable, degree: int, rng: random.Random) -> Polynomial:
    """A nonzero G-invariant on U obtained by averaging a random polynomial."""
    while True:
        f = G.reynolds(random_polynomial((1, G.dim), degree, rng))
        if f:
            return f
