"""Basic invariants, Reynolds averaging and Molien dimensions.

Two routes to the Reynolds operator are provided.  ``method="direct"`` sums
``g . f`` over every enumerated group element in root coordinates.  The
default orbit route pushes ``f`` to epsilon coordinates, sums over the
signed-permutation subgroup there (a cheap relabelling of monomials), applies
the remaining coset representatives (only F4 has any), and pulls the result
back.  Both give the same polynomial; the test suite checks that.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import comb, prod
import random

from .echelon import GradedSubspaceBasis, primitive_part
from .errors import BudgetExceeded, ShapeMismatch
from .linalg import inverse
from .poly import Polynomial, _add_into, keyspace, linear_images, monomials_of_degree, jacobian_determinant_at
from .weyl import CartanType, WeylGroup, weyl_group

DEFAULT_MONOMIAL_BUDGET = 250_000


# -- coordinate transport ----------------------------------------------------


def pull_back(W: WeylGroup, F: Polynomial, memo: dict | None = None) -> Polynomial:
    """Epsilon-coordinate polynomial (shape ``(m, n')``) -> root coordinates (shape ``(m, n)``)."""
    m, ne = F.shape
    if ne != W.epsilon_dim:
        raise ShapeMismatch(f"expected {W.epsilon_dim} epsilon coordinates per copy")
    E = W.coordinate_change
    images = linear_images(F.shape, {i: E for i in range(1, m + 1)}, target_shape=(m, W.rank))
    return F.substitute(images, shape=(m, W.rank), memo=memo)


def push_forward(W: WeylGroup, f: Polynomial) -> Polynomial:
    """Root-coordinate polynomial -> an epsilon-coordinate polynomial restricting to it on ``V^m``."""
    m, n = f.shape
    if n != W.rank:
        raise ShapeMismatch(f"expected {W.rank} coordinates per copy")
    L = W.coordinate_change_left_inverse
    images = linear_images(f.shape, {i: L for i in range(1, m + 1)}, target_shape=(m, W.epsilon_dim))
    return f.substitute(images, shape=(m, W.epsilon_dim))


def _signed_perm_orbit_sum(terms: dict, m: int, ne: int, H) -> dict:
    """``sum_{h in H} h . F`` with ``h = (perm, signs)`` acting on each copy."""
    ks = keyspace(m * ne)
    out: dict = {}
    for key, c in terms.items():
        e = ks.unpack(key)
        for perm, signs in H:
            new = [0] * (m * ne)
            sgn = 1
            for i in range(m):
                base = i * ne
                for k in range(ne):
                    x = e[base + k]
                    if x:
                        new[base + perm[k]] = x
                        if signs[k] < 0 and x & 1:
                            sgn = -sgn
            nk = ks.pack(new)
            v = out.get(nk, 0) + sgn * c
            if v:
                out[nk] = v
            else:
                out.pop(nk, None)
    return out


def _epsilon_group_sum(W: WeylGroup, F: Polynomial, memo_by_coset: list | None = None) -> Polynomial:
    """``sum_{w in W} w . F`` for an epsilon-coordinate polynomial ``F``."""
    m, ne = F.shape
    S = Polynomial._raw(F.shape, _signed_perm_orbit_sum(F.terms, m, ne, W.epsilon_subgroup))
    reps = W.epsilon_coset_representatives
    if len(reps) == 1:
        return Polynomial(S.shape, S.terms)
    acc: dict = {}
    for idx, c in enumerate(reps):
        cinv = inverse(c)
        images = linear_images(S.shape, {i: cinv for i in range(1, m + 1)})
        memo = memo_by_coset[idx] if memo_by_coset is not None else None
        _add_into(acc, S.substitute(images, memo=memo).terms)
    return Polynomial(S.shape, acc)


def reynolds(W: WeylGroup, f: Polynomial, method: str = "orbit") -> Polynomial:
    """``(1/|W|) sum_g g . f`` for ``f`` in root coordinates on ``V^m``."""
    if f.n != W.rank:
        raise ShapeMismatch(f"polynomial has {f.n} coordinates per copy, rank is {W.rank}")
    if method == "direct":
        acc: dict = {}
        for g in W.elements:
            _add_into(acc, W.act(g, f).terms)
        return Polynomial(f.shape, acc).scale(Fraction(1, W.order))
    if method != "orbit":
        raise ValueError(f"unknown method {method!r}")
    F = push_forward(W, f)
    return pull_back(W, _epsilon_group_sum(W, F)).scale(Fraction(1, W.order))


def reynolds_epsilon(W: WeylGroup, F: Polynomial) -> Polynomial:
    """Reynolds operator applied to an epsilon-coordinate polynomial, result in root coordinates."""
    return pull_back(W, _epsilon_group_sum(W, F)).scale(Fraction(1, W.order))


def is_invariant(W: WeylGroup, f: Polynomial, generators_only: bool = True) -> bool:
    """Invariance under the simple reflections (which generate W), or under every element."""
    gs = W.generators if generators_only else W.elements
    return all(W.act(g, f) == f for g in gs)


# -- Molien series -----------------------------------------------------------


def det_one_minus_tg(M) -> tuple:
    """Coefficients ``(1, c_1, ..., c_n)`` of ``det(1 - t M)`` by Faddeev-LeVerrier."""
    n = len(M)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(x) for x in row] for row in M]
    for k in range(1, n + 1):
        ck = -sum(Mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k < n:
            B = [[Mk[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
            Mk = [[sum(M[i][l] * B[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("non-integral characteristic polynomial")
        out.append(int(c))
    return tuple(out)


def _series_inverse_power(p: tuple, m: int, D: int) -> list[int]:
    """Coefficients of ``p(t)^{-m}`` up to ``t^D``; ``p(0) = 1``."""
    inv = [0] * (D + 1)
    inv[0] = 1
    for j in range(1, D + 1):
        s = 0
        for k in range(1, min(j, len(p) - 1) + 1):
            s += p[k] * inv[j - k]
        inv[j] = -s
    out = [1] + [0] * D
    for _ in range(m):
        out = [sum(out[i] * inv[j - i] for i in range(j + 1)) for j in range(D + 1)]
    return out


_MOLIEN_CACHE: dict = {}


def molien_series(W: WeylGroup, m: int, D: int) -> list[int]:
    """``dim (Sym^d (V^m)^*)^W`` for ``d = 0..D``."""
    key = (W.ctype, m)
    cached = _MOLIEN_CACHE.get(key)
    if cached is not None and len(cached) > D:
        return cached[: D + 1]
    classes = Counter(det_one_minus_tg(g) for g in W.elements)
    total = [Fraction(0)] * (D + 1)
    for p, cnt in classes.items():
        s = _series_inverse_power(p, m, D)
        for d in range(D + 1):
            total[d] += cnt * s[d]
    dims = []
    for d, x in enumerate(total):
        x /= W.order
        if x.denominator != 1 or x < 0:
            raise ArithmeticError(f"Molien coefficient at degree {d} is {x}")
        dims.append(int(x))
    _MOLIEN_CACHE[key] = dims
    return dims


def molien_dim(W: WeylGroup, m: int, d: int) -> int:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return molien_series(W, m, d)[d]


@dataclass
class MolienTable:
    ctype: CartanType
    m: int
    dims: dict[int, int]

    @property
    def rank(self) -> int:
        return self.ctype.rank

    def to_json(self) -> dict:
        return {"type": str(self.ctype), "rank": self.rank, "m": self.m,
                "dims": {str(d): v for d, v in sorted(self.dims.items())}}


def molien_table(W: WeylGroup, m: int, D: int) -> MolienTable:
    return MolienTable(W.ctype, m, dict(enumerate(molien_series(W, m, D))))


# -- invariant bases ---------------------------------------------------------


def _check_budget(count: int, budget: int) -> None:
    if count > budget:
        raise BudgetExceeded(f"{count} monomials exceeds budget {budget}")


def _orbit_representatives(W: WeylGroup, m: int, d: int) -> list[int]:
    """One epsilon monomial key per orbit of the signed-permutation subgroup (up to sign)."""
    ne = W.epsilon_dim
    ks = keyspace(m * ne)
    H = [(p, (1,) * ne) for p, _ in W.epsilon_subgroup]
    seen: set = set()
    reps = []
    for e in monomials_of_degree((m, ne), d):
        key = ks.pack(e)
        if key in seen:
            continue
        seen.update(_signed_perm_orbit_sum({key: 1}, m, ne, H))
        reps.append(key)
    return reps


def _averaged_orbits(ctype: CartanType, m: int, keys: list[int]) -> list[dict]:
    W = weyl_group(ctype)
    ne = W.epsilon_dim
    pull_memo: dict = {}
    coset_memos = [dict() for _ in W.epsilon_coset_representatives]
    out = []
    for key in keys:
        S = _epsilon_group_sum(W, Polynomial._raw((m, ne), {key: 1}), coset_memos)
        out.append(pull_back(W, S, memo=pull_memo).terms if S else {})
    return out


def invariant_basis(W: WeylGroup, m: int, d: int, budget: int = DEFAULT_MONOMIAL_BUDGET,
                    method: str = "orbit", threads: int = 1) -> GradedSubspaceBasis:
    """Echelon basis of the degree-``d`` invariants of the diagonal action on ``V^m``.

    With ``threads > 1`` the orbit averages are computed in a process pool;
    insertion order (and so the resulting basis) is the same as serially.
    """
    n = W.rank
    B = GradedSubspaceBasis((m, n), d)
    if method == "direct":
        _check_budget(comb(m * n + d - 1, d) * W.order, budget * 100)
        for e in monomials_of_degree((m, n), d):
            B.insert(reynolds(W, Polynomial.monomial((m, n), e), method="direct"))
        return B
    _check_budget(comb(m * W.epsilon_dim + d - 1, d), budget)
    reps = _orbit_representatives(W, m, d)
    if threads <= 1 or len(reps) < 2 * threads:
        images = _averaged_orbits(W.ctype, m, reps)
    else:
        chunk = -(-len(reps) // (4 * threads))
        batches = [reps[i:i + chunk] for i in range(0, len(reps), chunk)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            images = [t for res in pool.map(_averaged_orbits, [W.ctype] * len(batches), [m] * len(batches), batches)
                      for t in res]
    for terms in images:
        if terms:
            B.insert(Polynomial._raw((m, n), terms))
    return B


def invariant_slice_dim(W: WeylGroup, m: int, d: int) -> int:
    return invariant_basis(W, m, d).rank


# -- basic invariants ----------------------------------------------------------


@dataclass
class BasicInvariantSystem:
    ctype: CartanType
    polys: list[Polynomial]  # root coordinates, shape (1, n)
    degrees: list[int]
    epsilon_polys: list[Polynomial] = field(default_factory=list)

    @property
    def degree_product(self) -> int:
        return prod(self.degrees)


def _epsilon_var(ne: int, k: int) -> Polynomial:
    return Polynomial.variable((1, ne), 1, k + 1)


def power_sum(ne: int, p: int) -> Polynomial:
    return reduce(lambda a, b: a + b, (_epsilon_var(ne, k) ** p for k in range(ne)))


def elementary_symmetric(ne: int, r: int) -> Polynomial:
    from itertools import combinations

    acc = Polynomial.zero((1, ne))
    for idx in combinations(range(ne), r):
        acc = acc + reduce(lambda a, b: a * b, (_epsilon_var(ne, k) for k in idx))
    return acc


def _classical_epsilon(t: CartanType) -> list[Polynomial] | None:
    n = t.rank
    if t.family == "A":
        return [elementary_symmetric(n + 1, r) for r in range(2, n + 2)]
    if t.family in "BC":
        return [power_sum(n, 2 * i) for i in range(1, n + 1)]
    if t.family == "D":
        fn = reduce(lambda a, b: a * b, (_epsilon_var(n, k) for k in range(n)))
        return [power_sum(n, 2 * i) for i in range(1, n)] + [fn]
    return None


class SearchFailure(RuntimeError):
    pass


def search_basic_invariants(W: WeylGroup, max_degree: int = 30) -> list[tuple[int, Polynomial, Polynomial]]:
    """Find a basic system by Reynolds averaging of epsilon monomials, degree by degree.

    In each degree the invariants not generated by those already found are
    filled up to the Molien dimension.  Returns ``(degree, root poly, epsilon
    monomial)`` triples.
    """
    n, ne = W.rank, W.epsilon_dim
    found: list[tuple[int, Polynomial, Polynomial]] = []
    for d in range(1, max_degree + 1):
        if len(found) == n:
            break
        target = molien_dim(W, 1, d)
        B = GradedSubspaceBasis((1, n), d)
        degs = [fd for fd, _, _ in found]
        for expo in _exponent_vectors(degs, d):
            B.insert(reduce(lambda a, b: a * b, (f ** a for (_, f, _), a in zip(found, expo) if a),
                            Polynomial.constant((1, n), 1)))
        if B.rank == target:
            continue
        for e in monomials_of_degree((1, ne), d):
            mono = Polynomial.monomial((1, ne), e)
            R = reynolds_epsilon(W, mono)
            if R and B.insert(R):
                found.append((d, Polynomial((1, n), primitive_part(R.terms)), mono))
                if B.rank == target:
                    break
        if B.rank != target:
            raise SearchFailure(f"degree {d}: reached rank {B.rank}, Molien says {target}")
    if len(found) != n or prod(d for d, _, _ in found) != W.order:
        raise SearchFailure(f"degrees {[d for d, _, _ in found]} do not form a basic system for {W.ctype}")
    return found


def _exponent_vectors(degs: list[int], d: int):
    """All ``a`` with ``sum a_i degs_i = d``."""
    if not degs:
        if d == 0:
            yield ()
        return
    first, rest = degs[0], degs[1:]
    for a in range(d // first, -1, -1):
        for tail in _exponent_vectors(rest, d - a * first):
            yield (a,) + tail


_BASIC_CACHE: dict = {}


def basic_invariants(t) -> BasicInvariantSystem:
    """A system of basic invariants for ``W(t)`` in root coordinates."""
    W = weyl_group(t)
    t = W.ctype
    if t in _BASIC_CACHE:
        return _BASIC_CACHE[t]
    eps = _classical_epsilon(t)
    if eps is not None:
        polys = [pull_back(W, F) for F in eps]
        system = BasicInvariantSystem(t, polys, [F.degree for F in eps], eps)
    else:
        found = search_basic_invariants(W)
        system = BasicInvariantSystem(t, [f for _, f, _ in found], [d for d, _, _ in found],
                                      [mono for _, _, mono in found])
    _BASIC_CACHE[t] = system
    return system


def jacobian_certificate(system: BasicInvariantSystem, tries: int = 20, seed: int = 0) -> tuple[list[int], int]:
    """A point where the Jacobian determinant is nonzero, and its value there."""
    rng = random.Random(seed)
    n = len(system.polys)
    for _ in range(tries):
        pt = [rng.randint(-9, 9) for _ in range(n)]
        v = jacobian_determinant_at(system.polys, pt)
        if v != 0:
            return pt, v
    raise ArithmeticError("Jacobian vanished at every sampled point")
