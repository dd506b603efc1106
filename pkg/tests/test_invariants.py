from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylnormal.errors import BudgetExceeded
from weylnormal.invariants import (basic_invariants, det_one_minus_tg, invariant_basis, is_invariant,
                                   jacobian_certificate, molien_dim, molien_series, molien_table,
                                   pull_back, push_forward, reynolds, reynolds_epsilon)
from weylnormal.poly import Polynomial, jacobian_determinant_at, parse_poly
from weylnormal.weyl import weyl_group

ALL = ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D3", "D4", "G2"]
DEGREES = {"A1": [2], "A2": [2, 3], "A3": [2, 3, 4], "A4": [2, 3, 4, 5], "B2": [2, 4], "B3": [2, 4, 6],
           "C2": [2, 4], "C3": [2, 4, 6], "D3": [2, 4, 3], "D4": [2, 4, 6, 4], "G2": [2, 6]}


def eps(text, ne):
    return parse_poly(text, shape=(1, ne))


# -- basic invariants ------------------------------------------------------


@pytest.mark.parametrize("name", ALL)
def test_basic_degrees_and_product(name):
    system = basic_invariants(name)
    assert system.degrees == DEGREES[name]
    assert system.degree_product == weyl_group(name).order


@pytest.mark.parametrize("name", ALL)
def test_basic_invariance_all_elements(name):
    W = weyl_group(name)
    for f in basic_invariants(name).polys:
        assert is_invariant(W, f, generators_only=False)


@pytest.mark.parametrize("name", ALL)
def test_jacobian_nonzero(name):
    system = basic_invariants(name)
    pt, v = jacobian_certificate(system)
    assert v != 0 and jacobian_determinant_at(system.polys, pt) == v


def test_d3_and_b2_epsilon_forms():
    d3 = basic_invariants("D3").epsilon_polys
    assert d3 == [eps("x1_1^2+x1_2^2+x1_3^2", 3), eps("x1_1^4+x1_2^4+x1_3^4", 3), eps("x1_1*x1_2*x1_3", 3)]
    b2 = basic_invariants("B2").epsilon_polys
    assert b2 == [eps("x1_1^2+x1_2^2", 2), eps("x1_1^4+x1_2^4", 2)]


def test_basic_invariants_are_pullbacks():
    W = weyl_group("B2")
    system = basic_invariants("B2")
    for F, f in zip(system.epsilon_polys, system.polys):
        assert pull_back(W, F) == f


def test_jacobian_of_dependent_system_vanishes():
    f = basic_invariants("B2").polys[0]
    assert jacobian_determinant_at([f, f * f], [3, 5]) == 0


# -- Reynolds ---------------------------------------------------------------


def test_reynolds_examples():
    W = weyl_group("A1")
    assert reynolds(W, parse_poly("x1_1")).is_zero()
    assert reynolds(W, parse_poly("x1_1^2")) == parse_poly("x1_1^2")


def test_b2_epsilon_reynolds():
    W = weyl_group("B2")
    got = reynolds_epsilon(W, eps("x1_1^4", 2))
    assert got == pull_back(W, eps("1/2*x1_1^4 + 1/2*x1_2^4", 2))
    # brute-force oracle: average over all 8 signed permutations in epsilon space
    from itertools import permutations, product
    acc = Polynomial.zero((1, 2))
    F = eps("x1_1^4", 2)
    for perm in permutations(range(2)):
        for signs in product((1, -1), repeat=2):
            M = [[signs[i] if perm[i] == j else 0 for j in range(2)] for i in range(2)]
            acc = acc + F.act_linear(M)
    assert acc.scale(Fraction(1, 8)) == eps("1/2*x1_1^4 + 1/2*x1_2^4", 2)


def test_push_pull_roundtrip():
    for name in ("A2", "G2", "B3", "F4"):
        W = weyl_group(name)
        f = Polynomial.variable((2, W.rank), 2, 1) ** 2 + Polynomial.variable((2, W.rank), 1, W.rank)
        assert pull_back(W, push_forward(W, f)) == f


def _random_poly(W, m, data, deg=6):
    # total degree <= deg keeps the direct route (full expansion per element) cheap
    N = m * W.rank

    def vec(choices):
        e = [0] * N
        for c in choices:
            e[c] += 1
        return e

    mono = st.lists(st.integers(0, N - 1), max_size=deg).map(vec)
    exps = data.draw(st.lists(mono, min_size=1, max_size=3))
    coeffs = data.draw(st.lists(st.integers(-4, 4), min_size=len(exps), max_size=len(exps)))
    return Polynomial.from_exponents((m, W.rank), list(zip(exps, coeffs)))


@settings(max_examples=25)
@given(st.sampled_from(["A1", "A2", "B2", "C2", "G2", "D3", "A3"]), st.integers(1, 2), st.data())
def test_reynolds_projection_properties(name, m, data):
    W = weyl_group(name)
    f = _random_poly(W, m, data)
    r = reynolds(W, f)
    assert r == reynolds(W, f, method="direct")
    assert reynolds(W, r) == r
    assert is_invariant(W, r, generators_only=False)
    assert (reynolds(W, f) == f) == is_invariant(W, f)


def test_f4_orbit_matches_direct():
    W = weyl_group("F4")
    f = parse_poly("x1_1^2*x1_3 + x1_4^2", shape=(1, 4))
    assert reynolds(W, f) == reynolds(W, f, method="direct")


# -- Molien -----------------------------------------------------------------


def test_molien_examples():
    A1 = weyl_group("A1")
    assert [molien_dim(A1, 1, d) for d in range(8)] == [1, 0, 1, 0, 1, 0, 1, 0]
    assert molien_dim(A1, 2, 2) == 3
    assert molien_dim(weyl_group("G2"), 1, 6) == 2
    assert molien_table(A1, 2, 4).to_json()["dims"] == {"0": 1, "1": 0, "2": 3, "3": 0, "4": 5}


def test_det_one_minus_tg():
    assert det_one_minus_tg(((-1,),)) == (1, 1)
    assert det_one_minus_tg(((1, 0), (0, 1))) == (1, -2, 1)


def _chevalley_series(degrees, D):
    series = [1] + [0] * D
    for d in degrees:
        for k in range(d, D + 1):
            series[k] += series[k - d]
    return series


@pytest.mark.parametrize("name", ALL + ["F4"])
def test_molien_m1_is_chevalley(name):
    W = weyl_group(name)
    D = 16
    assert molien_series(W, 1, D) == _chevalley_series(basic_invariants(name).degrees, D)


@pytest.mark.parametrize("name,m,d", [("A1", 2, 6), ("A2", 2, 5), ("B2", 2, 6), ("G2", 2, 6), ("D3", 2, 4),
                                      ("C2", 1, 8), ("A3", 2, 4)])
def test_rank_matches_molien_direct_route(name, m, d):
    W = weyl_group(name)
    B = invariant_basis(W, m, d, method="direct")
    assert B.rank == molien_dim(W, m, d)
    assert invariant_basis(W, m, d).rank == B.rank


def test_invariant_basis_examples():
    A1 = weyl_group("A1")
    B = invariant_basis(A1, 1, 2)
    assert B.rank == 1 and B.rows() == [parse_poly("x1_1^2")]
    assert invariant_basis(A1, 2, 2).rank == 3
    B2 = weyl_group("B2")
    basis = invariant_basis(B2, 1, 8)
    assert basis.rank == 3
    f1, f2 = basic_invariants("B2").polys
    for p in (f1 ** 4, f1 ** 2 * f2, f2 ** 2):
        assert basis.contains(p)


def test_invariant_basis_threads_identical():
    W = weyl_group("D3")
    a = invariant_basis(W, 2, 6)
    b = invariant_basis(W, 2, 6, threads=2)
    assert [r.terms for r in a.rows()] == [r.terms for r in b.rows()]


def test_invariant_basis_budget():
    with pytest.raises(BudgetExceeded):
        invariant_basis(weyl_group("B3"), 3, 12, budget=100)


def test_invariant_basis_rows_are_invariant():
    W = weyl_group("G2")
    for row in invariant_basis(W, 2, 6).rows():
        assert is_invariant(W, row)
