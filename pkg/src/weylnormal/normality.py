"""Degree-one generation of R = sum_q (Sym^{q|W|}(V^m)^*)^W and the type-D side checks.

Target dimensions come from the Molien series; spans are built from actual
products of invariants.  A level passes iff the two numbers agree.  Since the
product span always sits inside the invariant slice, a span larger than the
Molien number is an arithmetic bug and raises.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .echelon import GradedSubspaceBasis
from .invariants import invariant_basis, is_invariant, molien_series
from .poly import Polynomial, _mul, format_poly
from .polarization import generators_Vm
from .linalg import matmul
from .weyl import CartanType, act_matrix, closure, sigma_root_matrix, weyl_group


@dataclass
class LevelRecord:
    q: int
    degree: int
    target_dim: int
    span_dim: int
    passed: bool
    products_tried: int = 0

    def to_json(self) -> dict:
        return {"q": self.q, "degree": self.degree, "target_dim": self.target_dim,
                "span_dim": self.span_dim, "pass": self.passed}


@dataclass
class NormalityReport:
    ctype: CartanType
    m: int
    q_max: int
    order: int
    levels: list[LevelRecord]
    elapsed_ms: float
    counterexample: dict | None = None

    @property
    def rank(self) -> int:
        return self.ctype.rank

    @property
    def passed(self) -> bool:
        return all(lv.passed for lv in self.levels)

    def to_json(self) -> dict:
        out = {"type": str(self.ctype), "rank": self.rank, "m": self.m, "qmax": self.q_max,
               "levels": [lv.to_json() for lv in self.levels], "pass": self.passed,
               "elapsed_ms": round(self.elapsed_ms, 3)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


class SoundnessViolation(ArithmeticError):
    """A product span exceeded the invariant dimension: impossible unless arithmetic is broken."""


def _products(pairs):
    return [_mul(a, b) for a, b in pairs]


def _product_stream(B1_rows, prev_rows, same: bool, threads: int, chunk: int = 64):
    """Yield product term dicts ``b * r``; for ``same`` only unordered pairs."""
    if same:
        pairs = [(B1_rows[i], B1_rows[j]) for i, j in combinations_with_replacement(range(len(B1_rows)), 2)]
    else:
        pairs = [(b, r) for b in B1_rows for r in prev_rows]
    if threads <= 1:
        for a, b in pairs:
            yield _mul(a, b)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        batches = [pairs[i:i + chunk] for i in range(0, len(pairs), chunk)]
        for res in pool.map(_products, batches):
            yield from res


def check_first_degree_generation(t, m: int, q_max: int, threads: int = 1) -> NormalityReport:
    """Compare ``dim span(R_1^q)`` with the Molien dimension of ``R_q`` for ``q = 1..q_max``.

    ``span_1`` is the whole invariant slice of degree ``|W|``; ``span_q`` is
    spanned by products ``b * r`` with ``b`` a basis row of ``span_1`` and
    ``r`` a basis row of ``span_{q-1}``.  Insertion stops once the target
    rank is hit.
    """
    t0 = time.perf_counter()
    W = weyl_group(t)
    shape = (m, W.rank)
    order = W.order
    molien = molien_series(W, m, q_max * order)
    B1 = invariant_basis(W, m, order, threads=threads)
    levels = [LevelRecord(1, order, molien[order], B1.rank, B1.rank == molien[order])]
    counterexample = None
    if B1.rank > molien[order]:
        raise SoundnessViolation(f"degree {order}: span {B1.rank} > Molien {molien[order]}")
    b_rows = [r.terms for r in B1.rows()]
    prev = B1
    for q in range(2, q_max + 1):
        d = q * order
        target = molien[d]
        span = GradedSubspaceBasis(shape, d)
        tried = 0
        prev_rows = [r.terms for r in prev.rows()]
        for terms in _product_stream(b_rows, prev_rows, same=(q == 2), threads=threads):
            if span.rank >= target:
                break
            tried += 1
            span.insert(Polynomial._raw(shape, terms))
        if span.rank > target:
            raise SoundnessViolation(f"degree {d}: span {span.rank} > Molien {target}")
        ok = span.rank == target
        levels.append(LevelRecord(q, d, target, span.rank, ok, tried))
        if not ok and counterexample is None:
            counterexample = _witness(W, m, d, span)
        prev = span
    return NormalityReport(W.ctype, m, q_max, order, levels, (time.perf_counter() - t0) * 1000, counterexample)


def _witness(W, m: int, d: int, span: GradedSubspaceBasis) -> dict:
    full = invariant_basis(W, m, d)
    for row in full.rows():
        if not span.contains(row):
            return {"degree": d, "invariant_outside_span": format_poly(row)}
    return {"degree": d, "invariant_outside_span": None}


# -- subalgebra generated by a generator list -----------------------------------


@dataclass
class PolarizationGenerationReport:
    ctype: CartanType
    m: int
    d_max: int
    generator_degrees: list[int]
    dims: list[tuple[int, int, int]]  # (degree, subalgebra dim, Molien dim)
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return all(a == b for _, a, b in self.dims)

    def to_json(self) -> dict:
        return {"type": str(self.ctype), "m": self.m, "d_max": self.d_max,
                "generator_degrees": self.generator_degrees,
                "levels": [{"degree": d, "span_dim": a, "target_dim": b, "pass": a == b} for d, a, b in self.dims],
                "pass": self.passed, "elapsed_ms": round(self.elapsed_ms, 3)}


def subalgebra_dims(gens: list[Polynomial], shape, d_max: int, targets: list[int] | None = None) -> dict[int, GradedSubspaceBasis]:
    """Graded pieces (degrees ``0..d_max``) of the algebra generated by homogeneous ``gens``."""
    by_degree: dict[int, list[Polynomial]] = {}
    for g in gens:
        if g and g.degree <= d_max:
            by_degree.setdefault(g.degree, []).append(g)
    pieces: dict[int, GradedSubspaceBasis] = {}
    one = GradedSubspaceBasis(shape, 0)
    one.insert(Polynomial.constant(shape, 1))
    pieces[0] = one
    for d in range(1, d_max + 1):
        B = GradedSubspaceBasis(shape, d)
        stop = targets[d] if targets is not None else None
        for e, gs in sorted(by_degree.items()):
            if e > d:
                break
            lower = pieces[d - e].rows()
            for g in gs:
                for r in lower:
                    if stop is not None and B.rank >= stop:
                        break
                    B.insert(g * r)
        pieces[d] = B
    return pieces


def check_polarization_generation(t, m: int, d_max: int) -> PolarizationGenerationReport:
    """Does the algebra generated by ``generators_Vm(t, m)`` fill every invariant degree <= ``d_max``?"""
    t0 = time.perf_counter()
    W = weyl_group(t)
    G = generators_Vm(t, m)
    targets = molien_series(W, m, d_max)
    pieces = subalgebra_dims(G.polys(), (m, W.rank), d_max, targets)
    dims = []
    for d in range(d_max + 1):
        if pieces[d].rank > targets[d]:
            raise SoundnessViolation(f"degree {d}: subalgebra {pieces[d].rank} > Molien {targets[d]}")
        dims.append((d, pieces[d].rank, targets[d]))
    return PolarizationGenerationReport(W.ctype, m, d_max, sorted(G.degrees()), dims,
                                        (time.perf_counter() - t0) * 1000)


# -- type D checks -------------------------------------------------------------


@dataclass
class SigmaReport:
    n: int
    m: int
    odd_generators: list[str]
    sigma_antiinvariant: bool
    symmetric_part_zero: bool
    products_checked: int
    products_bn_invariant: bool
    bn_order_check: bool
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return self.sigma_antiinvariant and self.symmetric_part_zero and self.products_bn_invariant and self.bn_order_check

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


def bn_inside_dn_coordinates(n: int) -> list:
    """W(B_n) realized in D_n root coordinates: closure of W(D_n) generators and sigma."""
    from .weyl import simple_reflections

    gens = list(simple_reflections(CartanType("D", n))) + [sigma_root_matrix(n)]
    return closure(gens, mul=matmul)


def check_sigma_antiinvariance(n: int, m: int) -> SigmaReport:
    """Odd-degree W(D_n) generators satisfy ``sigma f = -f``; products of two are W(B_n)-invariant."""
    if n % 2 == 0:
        raise ValueError("the sign-flip argument concerns odd n")
    t0 = time.perf_counter()
    Dn = weyl_group(CartanType("D", n))
    G = generators_Vm(Dn.ctype, m, prune=False)
    odd = [g for g in G.generators if g.poly and g.degree % 2 == 1]
    sigma = sigma_root_matrix(n)
    anti = True
    sym_zero = True
    for g in odd:
        sf = act_matrix(sigma, g.poly)
        anti &= sf == -g.poly
        sym_zero &= (g.poly + sf).scale(Fraction(1, 2)).is_zero()
    Bn = bn_inside_dn_coordinates(n)
    # W(B_n) is generated by W(D_n) and sigma; invariance under those suffices
    bn_gens = list(Dn.generators) + [sigma]
    prods_ok = True
    count = 0
    for i in range(len(odd)):
        for j in range(i, len(odd)):
            p = odd[i].poly * odd[j].poly
            count += 1
            prods_ok &= all(act_matrix(g, p) == p for g in bn_gens)
    order_ok = len(Bn) == 2 * Dn.order == weyl_group(CartanType("B", n)).order
    return SigmaReport(n, m, [g.label for g in odd], anti, sym_zero, count, prods_ok, order_ok,
                       (time.perf_counter() - t0) * 1000)


@dataclass
class EvenDegreeReport:
    n: int
    m: int
    generators: list[tuple[str, int]]
    degrees_ok: bool
    all_invariant: bool

    @property
    def passed(self) -> bool:
        return self.degrees_ok and self.all_invariant

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "generators": [{"label": l, "degree": d} for l, d in self.generators],
                "degrees_ok": self.degrees_ok, "all_invariant": self.all_invariant, "pass": self.passed}


def check_dn_even_degrees(n: int, m: int) -> EvenDegreeReport:
    """For even ``n`` every generator has even degree; P-words have degree <= 2n - 2.

    Each generator is also checked to be W(D_n)-invariant.
    """
    if n % 2:
        raise ValueError("the even-degree statement concerns even n")
    W = weyl_group(CartanType("D", n))
    G = generators_Vm(W.ctype, m, prune=False)
    basic_degrees = {2 * i for i in range(1, n)} | {n}
    ok = True
    for g in G.generators:
        if not g.poly:
            continue
        is_word = g.label.startswith("P")
        if g.degree % 2:
            ok = False
        if is_word and g.degree > 2 * n - 2:
            ok = False
        if not is_word and g.degree not in basic_degrees:
            ok = False
    inv = all(is_invariant(W, g.poly) for g in G.generators)
    return EvenDegreeReport(n, m, [(g.label, g.degree) for g in G.generators if g.poly], ok, inv)
