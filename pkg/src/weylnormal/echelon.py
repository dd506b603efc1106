"""Echelonized spans of homogeneous polynomials of one degree.

Rows are kept as primitive integer vectors (content 1, positive leading
coefficient), sorted by strictly decreasing leading monomial.  Reduction is
fraction-free: ``p <- a*p - c*row``, followed by removing the content of ``p``.
Rank is exact over Q.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from .errors import DegreeMismatch, ShapeMismatch
from .poly import Polynomial, keyspace


def primitive_part(terms: dict) -> dict:
    """Scale a {key: rational} dict to a primitive integer vector with positive leading entry."""
    if not terms:
        return {}
    den = 1
    for c in terms.values():
        if type(c) is Fraction:
            den = lcm(den, c.denominator)
    if den != 1:
        ints = {k: int(c * den) for k, c in terms.items()}
    else:
        ints = dict(terms)
    g = 0
    for c in ints.values():
        g = gcd(g, c)
        if g == 1:
            break
    if ints[max(ints)] < 0:
        g = -g
    if g != 1:
        ints = {k: c // g for k, c in ints.items()}
    return ints


class GradedSubspaceBasis:
    """Echelon basis of a subspace of the degree-``degree`` slice on ``shape``."""

    def __init__(self, shape, degree: int):
        self.shape = tuple(shape)
        self.degree = degree
        self._deg_shift = keyspace(self.shape[0] * self.shape[1]).deg_shift
        self._rows: list[dict] = []
        self._neg_leads: list[int] = []  # ascending, i.e. leads descending
        self._lead_set: set[int] = set()

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def _check(self, p: Polynomial) -> None:
        if p.shape != self.shape:
            raise ShapeMismatch(f"{p.shape} vs basis shape {self.shape}")
        s = self._deg_shift
        for k in p.terms:
            if k >> s != self.degree:
                raise DegreeMismatch(f"term of degree {k >> s} in a degree-{self.degree} basis")

    def _reduce(self, terms: dict) -> dict:
        p = primitive_part(terms)
        if not p:
            return p
        top = max(p)
        # rows with lead above the current top cannot hit p
        start = bisect_left(self._neg_leads, -top)
        for idx in range(start, len(self._rows)):
            lead = -self._neg_leads[idx]
            c = p.get(lead)
            if not c:
                continue
            row = self._rows[idx]
            a = row[lead]
            g = gcd(a, c)
            a //= g
            c //= g
            if a != 1:
                p = {k: v * a for k, v in p.items()}
            for k, v in row.items():
                w = p.get(k, 0) - c * v
                if w:
                    p[k] = w
                else:
                    p.pop(k, None)
            if not p:
                return p
            p = primitive_part(p)
        return p

    def reduce(self, p: Polynomial) -> Polynomial:
        """Normal form of ``p`` modulo the span, up to a nonzero scalar."""
        self._check(p)
        return Polynomial._raw(self.shape, self._reduce(p.terms))

    def contains(self, p: Polynomial) -> bool:
        self._check(p)
        if p.terms and max(p.terms) not in self._lead_set:
            return False
        return not self._reduce(p.terms)

    def insert(self, p: Polynomial) -> bool:
        """Add ``p`` to the span; True iff the rank grew."""
        self._check(p)
        if not p.terms:
            return False
        if max(p.terms) not in self._lead_set:
            # every nonzero element of the span has a pivot as leading monomial
            self._add_row(primitive_part(p.terms))
            return True
        r = self._reduce(p.terms)
        if not r:
            return False
        self._add_row(r)
        return True

    def _add_row(self, r: dict) -> None:
        lead = max(r)
        pos = bisect_left(self._neg_leads, -lead)
        self._neg_leads.insert(pos, -lead)
        self._rows.insert(pos, r)
        self._lead_set.add(lead)

    def extend(self, polys: Iterable[Polynomial], stop_at: int | None = None) -> int:
        """Insert many; stop early once ``rank == stop_at``.  Returns the rank."""
        for p in polys:
            if stop_at is not None and self.rank >= stop_at:
                break
            self.insert(p)
        return self.rank

    def rows(self) -> list[Polynomial]:
        return [Polynomial._raw(self.shape, dict(r)) for r in self._rows]

    def leading_monomials(self) -> list[tuple[int, ...]]:
        ks = keyspace(self.shape[0] * self.shape[1])
        return [ks.unpack(-x) for x in self._neg_leads]

    def copy(self) -> "GradedSubspaceBasis":
        b = GradedSubspaceBasis(self.shape, self.degree)
        b._rows = [dict(r) for r in self._rows]
        b._neg_leads = list(self._neg_leads)
        b._lead_set = set(self._lead_set)
        return b

    def __repr__(self) -> str:
        return f"GradedSubspaceBasis(shape={self.shape}, degree={self.degree}, rank={self.rank})"


def echelon_insert(B: GradedSubspaceBasis, p: Polynomial) -> str:
    """Functional spelling of :meth:`GradedSubspaceBasis.insert`."""
    return "inserted" if B.insert(p) else "reduced-to-zero"


def span_rank(polys: Iterable[Polynomial], shape, degree: int) -> int:
    B = GradedSubspaceBasis(shape, degree)
    return B.extend(polys)
