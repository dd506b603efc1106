import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylnormal.errors import ShapeMismatch
from weylnormal.invariants import basic_invariants, is_invariant
from weylnormal.polarization import (UnsupportedType, admissible_words, apply_Dij, apply_Pr, apply_Pr_root,
                                     compositions, generators_Vm, polarize_all)
from weylnormal.poly import Polynomial, parse_poly
from weylnormal.weyl import weyl_group

from conftest import homogeneous_polynomials


def P(text, shape):
    return parse_poly(text, shape=shape)


def test_square_polarization():
    fam = polarize_all(parse_poly("x1_1^2"), 2)
    assert fam.members == {(2, 0): P("x1_1^2", (2, 1)), (1, 1): P("2*x1_1*x2_1", (2, 1)),
                           (0, 2): P("x2_1^2", (2, 1))}


def test_bilinear_component():
    fam = polarize_all(parse_poly("x1_1*x1_2"), 2)
    assert fam.members[(1, 1)] == P("x1_1*x2_2 + x1_2*x2_1", (2, 2))


def test_m1_is_identity():
    f = parse_poly("x1_1^3 - 2*x1_1*x1_2^2")
    fam = polarize_all(f, 1)
    assert fam.members == {(3,): f}


def test_zero_members_kept_for_one_copy():
    fam = polarize_all(parse_poly("x1_1*x1_2"), 3)
    assert len(fam) == 6  # compositions of 2 into 3 parts
    assert fam.members[(2, 0, 0)] == P("x1_1*x1_2", (3, 2))


def test_compositions():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert len(list(compositions(4, 3))) == 15


def test_nonhomogeneous_rejected():
    with pytest.raises(ValueError):
        polarize_all(parse_poly("x1_1^2 + x1_1"), 2)


def test_dij_example():
    assert apply_Dij(2, 1, P("x1_1^2", (2, 1))) == P("2*x2_1*x1_1", (2, 1))
    with pytest.raises(ShapeMismatch):
        apply_Dij(2, 1, parse_poly("x1_1^2"))


def test_pr_examples():
    f = P("x1_1*x1_2*x1_3", (2, 3))
    assert apply_Pr(1, f) == P("x2_1*x1_2*x1_3 + x1_1*x2_2*x1_3 + x1_1*x1_2*x2_3", (2, 3))
    assert apply_Pr(1, f).degree == 3
    assert apply_Pr(3, P("x1_1*x1_2", (2, 2))) == P("x2_1^3*x1_2 + x1_1*x2_2^3", (2, 2))
    with pytest.raises(ValueError):
        apply_Pr(2, f)
    with pytest.raises(ShapeMismatch):
        apply_Pr(1, parse_poly("x1_1"))


@pytest.mark.parametrize("n,r", [(3, 1), (4, 3), (5, 3), (5, 1)])
def test_pr_degree(n, r):
    fn = basic_invariants(f"D{n}").epsilon_polys[-1].reshape_copies((2, n))
    assert apply_Pr(r, fn).degree == n + r - 1


def test_admissible_words():
    assert admissible_words(3) == [(1,)]
    assert admissible_words(4) == [(1,), (3,), (1, 1)]
    assert admissible_words(5) == [(1,), (3,), (1, 1)]
    for n in range(2, 9):
        for w in admissible_words(n):
            assert all(r % 2 == 1 for r in w) and sum(w) <= n - len(w)


def test_generators_a2_m1_are_basic():
    G = generators_Vm("A2", 1)
    assert G.polys() == basic_invariants("A2").polys


def test_generators_b2_m2_count():
    G = generators_Vm("B2", 2, prune=False)
    assert G.raw_count == 8
    assert sorted(G.degrees()) == [2, 2, 2, 4, 4, 4, 4, 4]


def test_generators_d3_m2_words():
    G = generators_Vm("D3", 2, prune=False)
    assert G.words == [(1,)]
    labels = [g.label for g in G.generators]
    assert "P1(f3)" in labels
    assert sum(l.startswith("f") for l in labels) == 3 + 5 + 4


def test_f4_unsupported():
    with pytest.raises(UnsupportedType):
        generators_Vm("F4", 2)


@pytest.mark.parametrize("name,m", [("A2", 2), ("B2", 2), ("G2", 2), ("B3", 2), ("D3", 2), ("D4", 2), ("C3", 2),
                                    ("A1", 3), ("D3", 3)])
def test_generators_are_invariant(name, m):
    W = weyl_group(name)
    for g in generators_Vm(name, m).generators:
        assert is_invariant(W, g.poly, generators_only=(W.order > 48)), g.label


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "C2", "C3", "D3", "G2"])
def test_polarizations_invariant_all_elements(name):
    W = weyl_group(name)
    for f in basic_invariants(name).polys:
        for a, p in polarize_all(f, 2).members.items():
            assert is_invariant(W, p, generators_only=False), (name, a)


@given(homogeneous_polynomials((1, 3), 3), st.integers(1, 3))
def test_sum_identity(f, m):
    # sum of all members with every copy set equal to y is f(m y) = m^d f(y)
    fam = polarize_all(f, m)
    total = Polynomial.zero((m, 3))
    for p in fam.members.values():
        total = total + p
    collapse = [Polynomial.variable((1, 3), 1, k + 1) for _ in range(m) for k in range(3)]
    assert total.substitute(collapse, shape=(1, 3)) == f.scale(m ** f.degree)


@given(homogeneous_polynomials((1, 2), 4), st.integers(2, 3))
def test_multidegree_is_alpha(f, m):
    for a, p in polarize_all(f, m).members.items():
        if p:
            assert p.multidegrees() == {a}


@given(homogeneous_polynomials((1, 2), 3))
def test_dij_route_agrees(f):
    # iterating D_21 on f (placed in copy 1) gives k! times the (d-k, k) member
    from math import factorial
    d = f.degree
    fam = polarize_all(f, 2)
    g = f.reshape_copies((2, 2))
    for k in range(d + 1):
        assert g == fam.members[(d - k, k)].scale(factorial(k))
        g = apply_Dij(2, 1, g)


@given(homogeneous_polynomials((2, 3), 3))
def test_pr_operators_commute(f):
    assert apply_Pr(1, apply_Pr(3, f)) == apply_Pr(3, apply_Pr(1, f))
    assert apply_Pr(5, apply_Pr(3, f)) == apply_Pr(3, apply_Pr(5, f))


@settings(max_examples=30)
@given(st.sampled_from(["A2", "B2", "G2", "D3", "B3", "C3", "A3"]), st.data())
def test_dij_commutes_with_action(name, data):
    W = weyl_group(name)
    g = data.draw(st.sampled_from(W.elements))
    f = data.draw(homogeneous_polynomials((2, W.rank), 3))
    i, j = data.draw(st.sampled_from([(1, 2), (2, 1), (1, 1)]))
    assert W.act(g, apply_Dij(i, j, f)) == apply_Dij(i, j, W.act(g, f))


@settings(max_examples=30)
@given(st.sampled_from(["B2", "C2", "D3", "B3", "C3"]), st.sampled_from([1, 3]), st.data())
def test_pr_commutes_with_action(name, r, data):
    W = weyl_group(name)
    g = data.draw(st.sampled_from(W.elements))
    f = data.draw(homogeneous_polynomials((2, W.rank), 3))
    assert W.act(g, apply_Pr_root(name, r, f)) == apply_Pr_root(name, r, W.act(g, f))


def test_pr_root_rejects_hyperplane_types():
    with pytest.raises(UnsupportedType):
        apply_Pr_root("A2", 3, P("x1_1*x2_2", (2, 2)))


def test_pr_in_root_coordinates_is_not_equivariant():
    # P_3 is tied to epsilon coordinates; applying it blindly to root coordinates breaks invariance
    f4 = basic_invariants("D4").polys[-1].reshape_copies((2, 4))
    W = weyl_group("D4")
    assert not is_invariant(W, apply_Pr(3, f4))
    assert is_invariant(W, apply_Pr_root("D4", 3, f4))
