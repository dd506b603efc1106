import random
from functools import reduce

import pytest

import weylnormal.normality as normality
from weylnormal.invariants import basic_invariants, is_invariant
from weylnormal.normality import (SoundnessViolation, check_dn_even_degrees, check_first_degree_generation,
                                  check_polarization_generation, check_sigma_antiinvariance, subalgebra_dims)
from weylnormal.polarization import generators_Vm, polarize_all
from weylnormal.poly import Polynomial, parse_poly
from weylnormal.semigroup import decompose, is_member
from weylnormal.weyl import act_matrix, sigma_root_matrix, weyl_group


def test_a1_m1():
    r = check_first_degree_generation("A1", 1, 3)
    assert r.passed
    assert [(lv.degree, lv.target_dim, lv.span_dim) for lv in r.levels] == [(2, 1, 1), (4, 1, 1), (6, 1, 1)]


def test_a1_m2():
    r = check_first_degree_generation("A1", 2, 2)
    assert r.passed
    assert [lv.span_dim for lv in r.levels] == [3, 5]


def test_b2_m1():
    r = check_first_degree_generation("B2", 1, 2)
    assert r.passed and r.levels[0].span_dim == 3


def test_report_schema():
    js = check_first_degree_generation("A2", 1, 2).to_json()
    assert set(js) == {"type", "rank", "m", "qmax", "levels", "pass", "elapsed_ms"}
    assert js["type"] == "A2" and js["rank"] == 2 and js["pass"] is True
    assert set(js["levels"][0]) == {"q", "degree", "target_dim", "span_dim", "pass"}


def test_threads_give_same_report():
    a = check_first_degree_generation("A2", 2, 2).to_json()
    b = check_first_degree_generation("A2", 2, 2, threads=2).to_json()
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_failure_produces_witness(monkeypatch):
    # cripple R_1 to a single row: R_2 then misses invariants and a witness is reported
    real = normality.invariant_basis

    def crippled(W, m, d, **kw):
        B = real(W, m, d, **kw)
        if d == W.order:
            from weylnormal.echelon import GradedSubspaceBasis
            C = GradedSubspaceBasis(B.shape, d)
            C.insert(B.rows()[0])
            return C
        return B

    monkeypatch.setattr(normality, "invariant_basis", crippled)
    r = check_first_degree_generation("A1", 2, 2)
    assert not r.passed
    assert r.counterexample["degree"] == 4
    w = parse_poly(r.counterexample["invariant_outside_span"], shape=(2, 1))
    assert is_invariant(weyl_group("A1"), w)
    assert "counterexample" in r.to_json()


def test_soundness_violation(monkeypatch):
    real = normality.molien_series

    def shrunk(W, m, D):
        return [max(0, x - 1) for x in real(W, m, D)]

    monkeypatch.setattr(normality, "molien_series", shrunk)
    with pytest.raises(SoundnessViolation):
        check_first_degree_generation("B2", 1, 2)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "D3", "C3"])
def test_polarization_generation_m1(name):
    dmax = max(basic_invariants(name).degrees)
    assert check_polarization_generation(name, 1, dmax).passed


def test_polarization_generation_a1_m3():
    assert check_polarization_generation("A1", 3, 6).passed


def test_subalgebra_dims_free_algebra():
    # x and y generate all of C[x, y]
    shape = (1, 2)
    gens = [Polynomial.variable(shape, 1, 1), Polynomial.variable(shape, 1, 2)]
    pieces = subalgebra_dims(gens, shape, 4)
    assert [pieces[d].rank for d in range(5)] == [1, 2, 3, 4, 5]


def test_sigma_examples():
    n = 3
    sigma = sigma_root_matrix(n)
    f1, f2, f3 = basic_invariants("D3").polys
    assert act_matrix(sigma, f3) == -f3
    assert act_matrix(sigma, f1) == f1
    p1 = generators_Vm("D3", 2, prune=False)
    word = next(g.poly for g in p1.generators if g.label == "P1(f3)")
    assert act_matrix(sigma, word) == -word


@pytest.mark.parametrize("m", [1, 2])
def test_sigma_report(m):
    r = check_sigma_antiinvariance(3, m)
    assert r.passed
    assert len(r.odd_generators) == (1 if m == 1 else 5)


def test_sigma_rejects_even_n():
    with pytest.raises(ValueError):
        check_sigma_antiinvariance(4, 1)


def test_dn_even():
    r = check_dn_even_degrees(4, 2)
    assert r.passed
    degs = {d for _, d in r.generators}
    assert degs <= {2, 4, 6}
    with pytest.raises(ValueError):
        check_dn_even_degrees(3, 2)


def _greedy_sub_exponents(exps, groups, s):
    # pick m'_ij <= m_ij with sum_j m'_ij = s_i for each basic invariant i
    sub = dict.fromkeys(exps, 0)
    for i, need in enumerate(s):
        for key in groups[i]:
            take = min(need, exps[key])
            sub[key] = take
            need -= take
        assert need == 0
    return sub


@pytest.mark.parametrize("seed", range(6))
def test_b2_monomial_factorization(seed):
    # an invariant monomial prod f_ij^{m_ij} of degree q|W| splits off a degree-|W| invariant factor
    rng = random.Random(seed)
    W = weyl_group("B2")
    basic = basic_invariants("B2")
    d = basic.degrees
    fam = [polarize_all(f, 2).nonzero() for f in basic.polys]
    keys = [(i, a) for i, members in enumerate(fam) for a in members]
    groups = [[k for k in keys if k[0] == i] for i in range(len(d))]
    q = rng.choice([2, 3])
    while True:
        exps = {k: 0 for k in keys}
        total = 0
        while total < q * W.order:
            k = rng.choice(keys)
            exps[k] += 1
            total += d[k[0]]
        if total == q * W.order:
            break
    msum = tuple(sum(exps[k] for k in groups[i]) for i in range(len(d)))
    assert is_member(msum, d)
    s = decompose(msum, d).parts[0]
    sub = _greedy_sub_exponents(exps, groups, s)

    def mono(e):
        one = Polynomial.constant((2, 2), 1)
        return reduce(lambda acc, k: acc * fam[k[0]][k[1]] ** e[k], [k for k in keys if e[k]], one)

    g = mono(sub)
    h = mono({k: exps[k] - sub[k] for k in keys})
    assert g.degree == W.order
    assert is_invariant(W, g) and is_invariant(W, h)
    assert g * h == mono(exps)
