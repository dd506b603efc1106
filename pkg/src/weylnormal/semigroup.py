"""The degree semigroup M_d = {m : sum m_i d_i = 0 mod N}, N = prod d_i, and its slice S_d.

``decompose`` writes a member of M_d as a sum of elements of S_d (vectors with
``sum m_i d_i = N`` exactly).  The search is depth-first over S_d in its fixed
enumeration order with backtracking, memoized on the remainder; parts are
reported in decreasing lexicographic order.
``bfs_decomposable`` is an independent oracle that grows the reachable set
from 0 by adding S_d elements inside a box.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from math import prod
import time

import numpy as np

from .errors import LemmaViolation, NotMember


@dataclass(frozen=True)
class DegreeVector:
    d: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        object.__setattr__(self, "d", d)
        if not d:
            raise ValueError("degree vector must be nonempty")
        if any(x < 1 for x in d):
            raise ValueError(f"degrees must be positive, got {d}")

    @property
    def N(self) -> int:
        return prod(self.d)

    @property
    def r(self) -> int:
        return len(self.d)

    def weight(self, m) -> int:
        return sum(a * b for a, b in zip(m, self.d))


def _dv(d) -> DegreeVector:
    return d if isinstance(d, DegreeVector) else DegreeVector(tuple(d))


@dataclass
class Decomposition:
    target: tuple[int, ...]
    parts: list[tuple[int, ...]]

    def check(self, d) -> bool:
        d = _dv(d)
        total = tuple(sum(col) for col in zip(*self.parts)) if self.parts else (0,) * d.r
        return total == tuple(self.target) and all(d.weight(p) == d.N for p in self.parts)

    def to_json(self) -> dict:
        return {"target": list(self.target), "parts": [list(p) for p in self.parts]}


def enumerate_S(d) -> list[tuple[int, ...]]:
    """All nonnegative solutions of ``sum m_i d_i = N``, lexicographically decreasing."""
    d = _dv(d)
    out = []

    def rec(i, rest, prefix):
        if i == d.r - 1:
            if rest % d.d[i] == 0:
                out.append(prefix + (rest // d.d[i],))
            return
        for a in range(rest // d.d[i], -1, -1):
            rec(i + 1, rest - a * d.d[i], prefix + (a,))

    rec(0, d.N, ())
    return out


def is_member(m, d) -> bool:
    d = _dv(d)
    if len(m) != d.r:
        raise ValueError("length mismatch")
    if any(x < 0 for x in m):
        raise ValueError(f"negative entries in {tuple(m)}")
    return d.weight(m) % d.N == 0


class Decomposer:
    """Reusable DFS decomposer for one degree vector; remainders are memoized."""

    def __init__(self, d):
        self.d = _dv(d)
        self.S = enumerate_S(self.d)
        self._memo: dict = {(0,) * self.d.r: ()}

    def _search(self, m: tuple):
        if m in self._memo:
            return self._memo[m]
        found = None
        for s in self.S:
            if all(a >= b for a, b in zip(m, s)):
                tail = self._search(tuple(a - b for a, b in zip(m, s)))
                if tail is not None:
                    found = (s,) + tail
                    break
        self._memo[m] = found
        return found

    def decompose(self, m) -> Decomposition:
        m = tuple(int(x) for x in m)
        if len(m) != self.d.r:
            raise ValueError("length mismatch")
        if not is_member(m, self.d):
            raise NotMember(f"{m}: weight {self.d.weight(m)} is not divisible by N={self.d.N}")
        parts = self._search(m)
        if parts is None:
            raise LemmaViolation(f"{m} is in M_d but has no decomposition over S_d for d={self.d.d}")
        return Decomposition(m, sorted(parts, reverse=True))


def decompose(m, d) -> Decomposition:
    """Write ``m`` in M_d as a sum of S_d elements (parts in nonincreasing S_d order)."""
    return Decomposer(d).decompose(m)


def first_part_below(m, d) -> tuple[int, ...]:
    """An ``s`` in S_d with ``s <= m`` componentwise, for a nonzero member ``m``.

    This is the step that splits off one degree-N factor in the monomial
    factorization argument.
    """
    dec = decompose(m, d)
    if not dec.parts:
        raise ValueError("zero vector has no parts")
    return dec.parts[0]


def bfs_decomposable(d, bound: int) -> np.ndarray:
    """Boolean array over the box ``[0, bound]^r``: reachable from 0 by adding S_d elements."""
    d = _dv(d)
    S = np.array(enumerate_S(d), dtype=np.int64)
    shape = (bound + 1,) * d.r
    reach = np.zeros(shape, dtype=bool)
    frontier = np.zeros((1, d.r), dtype=np.int64)
    reach[(0,) * d.r] = True
    while len(frontier):
        cand = (frontier[:, None, :] + S[None, :, :]).reshape(-1, d.r)
        cand = cand[(cand <= bound).all(axis=1)]
        if not len(cand):
            break
        cand = np.unique(cand, axis=0)
        idx = tuple(cand.T)
        new = ~reach[idx]
        cand = cand[new]
        reach[tuple(cand.T)] = True
        frontier = cand
    return reach


def member_mask(d, bound: int) -> np.ndarray:
    d = _dv(d)
    grids = np.indices((bound + 1,) * d.r)
    w = sum(g * x for g, x in zip(grids, d.d))
    return w % d.N == 0


@dataclass
class GenerationReport:
    d: tuple[int, ...]
    N: int
    bound: int
    members_checked: int
    s_size: int
    passed: bool
    bfs_agrees: bool | None = None
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {"d": list(self.d), "N": self.N, "bound": self.bound, "S_size": self.s_size,
                "members_checked": self.members_checked, "pass": self.passed,
                "bfs_agrees": self.bfs_agrees, "elapsed_ms": round(self.elapsed_ms, 3)}


def verify_generation(d, bound: int | None = None, cross_check: bool = False) -> GenerationReport:
    """Decompose every member of M_d in ``[0, bound]^r``; optionally compare with the BFS oracle."""
    d = _dv(d)
    if bound is None:
        bound = 2 * d.N
    if bound < d.N:
        raise ValueError(f"bound {bound} must be at least N={d.N}")
    t0 = time.perf_counter()
    dec = Decomposer(d)
    checked = 0
    for m in iproduct(range(bound + 1), repeat=d.r):
        if d.weight(m) % d.N:
            continue
        res = dec.decompose(m)  # raises LemmaViolation on failure
        if not res.check(d):
            raise LemmaViolation(f"invalid decomposition certificate for {m}")
        checked += 1
    agrees = None
    if cross_check:
        reach = bfs_decomposable(d, bound)
        agrees = bool(np.array_equal(reach, member_mask(d, bound))) and int(reach.sum()) == checked
    return GenerationReport(d.d, d.N, bound, checked, len(dec.S), True, agrees,
                            (time.perf_counter() - t0) * 1000)
