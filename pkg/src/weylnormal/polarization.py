"""Polarization of invariants and generating sets for C[V^m]^W."""

from __future__ import annotations

from dataclasses import dataclass, field

from .echelon import GradedSubspaceBasis
from .errors import ShapeMismatch
from .invariants import basic_invariants
from .poly import Polynomial, keyspace
from .weyl import CartanType, _as_type


class UnsupportedType(ValueError):
    pass


def compositions(d: int, m: int):
    """All ``alpha`` in Z_{>=0}^m with ``|alpha| = d``, lexicographically decreasing."""
    if m == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in compositions(d - a, m - 1):
            yield (a,) + rest


@dataclass
class PolarizationFamily:
    source: Polynomial
    m: int
    members: dict  # alpha -> Polynomial

    def __len__(self) -> int:
        return len(self.members)

    def nonzero(self) -> dict:
        return {a: p for a, p in self.members.items() if p}


def polarize_all(f: Polynomial, m: int) -> PolarizationFamily:
    """Coefficients of ``t^alpha`` in ``f(sum_i t_i v_i)``.

    For a source on one copy, ``alpha`` runs over all of ``Z_{>=0}^m`` with
    ``|alpha| = deg f`` (zero members included).  A source on ``m0 > 1``
    copies substitutes ``v_j -> sum_i t_{j,i} v_i`` for each source copy and
    keys members by the ``m0 x m`` exponent matrix of the ``t``'s; only
    nonzero members are listed then.
    """
    if not f.is_homogeneous():
        raise ValueError("polarization needs a homogeneous polynomial")
    m0, n = f.shape
    d = max(f.degree, 0)
    nt = m0 * m
    big = keyspace(nt + m * n)
    tgt = keyspace(m * n)
    images = []
    for j in range(m0):
        for k in range(n):
            images.append({big.units[j * m + i] + big.units[nt + i * n + k] - (1 << big.deg_shift): 1
                           for i in range(m)})
    from .poly import _substitute

    expanded = _substitute(f.terms, f.keyspace, images)
    buckets: dict = {}
    for key, c in expanded.items():
        e = big.unpack(key)
        t_part, x_part = e[:nt], e[nt:]
        alpha = t_part if m0 == 1 else tuple(t_part[j * m:(j + 1) * m] for j in range(m0))
        buckets.setdefault(alpha, {})[tgt.pack(x_part)] = c
    members = {a: Polynomial((m, n), terms) for a, terms in buckets.items()}
    if m0 == 1:
        members = {a: members.get(a, Polynomial.zero((m, n))) for a in compositions(d, m)}
    return PolarizationFamily(f, m, members)


def apply_Dij(i: int, j: int, f: Polynomial) -> Polynomial:
    """Polarization operator ``D_ij = sum_k x_{i,k} d/dx_{j,k}`` (copies 1-based)."""
    m, n = f.shape
    if not (1 <= i <= m and 1 <= j <= m):
        raise ShapeMismatch(f"copies ({i}, {j}) out of range for m={m}")
    ks = f.keyspace
    out: dict = {}
    for k in range(n):
        vj = (j - 1) * n + k
        vi = (i - 1) * n + k
        s, uj, ui = ks.shifts[vj], ks.units[vj], ks.units[vi]
        for key, c in f.terms.items():
            e = (key >> s) & 0xFFFF
            if e:
                nk = key - uj + ui
                v = out.get(nk, 0) + c * e
                if v:
                    out[nk] = v
                else:
                    out.pop(nk, None)
    return Polynomial(f.shape, out)


def apply_Pr(r: int, f: Polynomial) -> Polynomial:
    """``P_r = sum_k x_{2,k}^r d/dx_{1,k}`` for odd ``r``, in the coordinates of ``f``.

    Raises degree by ``r - 1``.  See :func:`apply_Pr_root` for root coordinates.
    """
    if r < 1 or r % 2 == 0:
        raise ValueError(f"P_r needs odd r >= 1, got {r}")
    m, n = f.shape
    if m < 2:
        raise ShapeMismatch("P_r acts on polynomials in at least two vector copies")
    ks = f.keyspace
    out: dict = {}
    for k in range(n):
        v1, v2 = k, n + k
        s1, u1, u2 = ks.shifts[v1], ks.units[v1], ks.units[v2]
        for key, c in f.terms.items():
            e = (key >> s1) & 0xFFFF
            if e:
                nk = key - u1 + r * u2
                v = out.get(nk, 0) + c * e
                if v:
                    out[nk] = v
                else:
                    out.pop(nk, None)
    return Polynomial(f.shape, out)


def apply_Pr_root(t, r: int, f: Polynomial) -> Polynomial:
    """``P_r`` for a root-coordinate polynomial: ``P_r`` is defined in epsilon coordinates.

    Only for B, C and D, whose epsilon realization is square (for ``r = 1``
    the operator is linear and the coordinates do not matter).
    """
    from .invariants import pull_back, push_forward
    from .weyl import weyl_group

    W = weyl_group(t)
    if W.epsilon_dim != W.rank:
        raise UnsupportedType(f"P_r needs a square epsilon realization, not {W.ctype}")
    return pull_back(W, apply_Pr(r, push_forward(W, f)))


def admissible_words(n: int) -> list[tuple[int, ...]]:
    """Multisets ``(r_1 <= ... <= r_l)``, ``l >= 1``, of odd ``r_i`` with ``sum r_i <= n - l``.

    The ``P_r`` commute, so order inside a word does not matter.
    """
    out = []

    def grow(word, total, lo):
        l = len(word)
        if l and total <= n - l:
            out.append(tuple(word))
        r = lo
        while total + r <= n - (l + 1):
            grow(word + [r], total + r, r)
            r += 2

    grow([], 0, 1)
    return sorted(out, key=lambda w: (len(w), w))


@dataclass
class Generator:
    poly: Polynomial
    label: str

    @property
    def degree(self) -> int:
        return self.poly.degree


@dataclass
class GeneratorSet:
    ctype: CartanType
    m: int
    generators: list[Generator]
    raw_count: int = 0  # before pruning zeros and linear dependents
    words: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.ctype.rank

    def polys(self) -> list[Polynomial]:
        return [g.poly for g in self.generators]

    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]


def _prune(cands: list[Generator], shape) -> list[Generator]:
    bases: dict[int, GradedSubspaceBasis] = {}
    kept = []
    for g in cands:
        if not g.poly:
            continue
        d = g.poly.degree
        B = bases.setdefault(d, GradedSubspaceBasis(shape, d))
        if B.insert(g.poly):
            kept.append(g)
    return kept


def _fmt_alpha(a) -> str:
    if a and isinstance(a[0], tuple):
        return "(" + ";".join(",".join(map(str, r)) for r in a) + ")"
    return "(" + ",".join(map(str, a)) + ")"


def generators_Vm(t, m: int, prune: bool = True) -> GeneratorSet:
    """Generators of ``C[V^m]^W`` assembled from polarizations (and P-words for type D)."""
    t = _as_type(t)
    if t.family == "F":
        raise UnsupportedType("no generator description for F4 on V^m; its normality argument goes via solvability")
    if m < 1:
        raise ValueError("m must be positive")
    basic = basic_invariants(t)
    n = t.rank
    cands: list[Generator] = []
    words: list[tuple[int, ...]] = []
    if t.family != "D" or m == 1:
        for idx, f in enumerate(basic.polys, 1):
            for a, p in polarize_all(f, m).members.items():
                cands.append(Generator(p, f"f{idx}{_fmt_alpha(a)}" if m > 1 else f"f{idx}"))
    else:
        two: list[Generator] = []
        for idx, f in enumerate(basic.polys, 1):
            for a, p in polarize_all(f, 2).members.items():
                two.append(Generator(p, f"f{idx}{_fmt_alpha(a)}"))
        from .invariants import pull_back
        from .weyl import weyl_group

        # P_r lives in epsilon coordinates, where W(D_n) acts by signed permutations
        W = weyl_group(t)
        fn = basic.epsilon_polys[-1].reshape_copies((2, n))
        words = admissible_words(n)
        for w in words:
            p = fn
            for r in w:
                p = apply_Pr(r, p)
            two.append(Generator(pull_back(W, p), "".join(f"P{r}" for r in w) + f"(f{n})"))
        if m == 2:
            cands = two
        else:
            for g in two:
                for a, p in polarize_all(g.poly, m).members.items():
                    cands.append(Generator(p, f"{g.label}{_fmt_alpha(a)}"))
    raw = len(cands)
    gens = _prune(cands, (m, n)) if prune else cands
    return GeneratorSet(t, m, gens, raw, words)
