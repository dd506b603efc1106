import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from weylnormal.errors import NotMember
from weylnormal.semigroup import (Decomposer, DegreeVector, bfs_decomposable, decompose, enumerate_S,
                                  first_part_below, is_member, member_mask, verify_generation)


def test_enumerate_examples():
    assert enumerate_S((2, 3)) == [(3, 0), (0, 2)]
    assert enumerate_S((1,)) == [(1,)]
    assert enumerate_S((2, 2)) == [(2, 0), (1, 1), (0, 2)]


def test_membership_examples():
    assert is_member((3, 4), (2, 3))
    assert not is_member((1, 0), (2, 3))
    assert is_member((0, 0, 0), (2, 3, 4))
    with pytest.raises(ValueError):
        is_member((1,), (2, 3))
    with pytest.raises(ValueError):
        is_member((-1, 0), (2, 3))


def test_decompose_examples():
    assert decompose((3, 4), (2, 3)).parts == [(3, 0), (0, 2), (0, 2)]
    assert decompose((0, 0), (2, 3)).parts == []
    with pytest.raises(NotMember):
        decompose((2, 0, 1), (2, 3, 2))


def test_decomposition_json():
    assert decompose((3, 4), (2, 3)).to_json() == {"target": [3, 4], "parts": [[3, 0], [0, 2], [0, 2]]}


@pytest.mark.parametrize("d,bound", [((2, 3), 12), ((1, 1), 5), ((5,), 20)])
def test_verify_examples(d, bound):
    rep = verify_generation(d, bound, cross_check=True)
    assert rep.passed and rep.bfs_agrees


def test_five_is_all_multiples():
    assert enumerate_S((5,)) == [(1,)]
    assert decompose((7,), (5,)).parts == [(1,)] * 7


def test_bad_degree_vectors():
    with pytest.raises(ValueError):
        DegreeVector((0, 2))
    with pytest.raises(ValueError):
        DegreeVector(())
    with pytest.raises(ValueError):
        verify_generation((2, 3), bound=3)


def _brute_force_decomposable(m, S):
    # independent oracle: dynamic programming over the box below m
    m = tuple(m)
    shape = tuple(x + 1 for x in m)
    ok = np.zeros(shape, dtype=bool)
    ok[(0,) * len(m)] = True
    for idx in np.ndindex(*shape):
        if ok[idx]:
            continue
        for s in S:
            prev = tuple(a - b for a, b in zip(idx, s))
            if min(prev) >= 0 and ok[prev]:
                ok[idx] = True
                break
    return bool(ok[m])


degree_vectors = st.lists(st.integers(1, 4), min_size=1, max_size=3).map(tuple)


@given(degree_vectors, st.data())
def test_decomposition_sound(d, data):
    dv = DegreeVector(d)
    m = tuple(data.draw(st.lists(st.integers(0, 2 * dv.N), min_size=dv.r, max_size=dv.r)))
    if not is_member(m, d):
        with pytest.raises(NotMember):
            decompose(m, d)
        return
    dec = decompose(m, d)
    assert dec.check(d)
    assert all(p in enumerate_S(d) for p in dec.parts)
    assert dec.parts == sorted(dec.parts, reverse=True)
    assert _brute_force_decomposable(m, enumerate_S(d))


@given(degree_vectors, st.data())
def test_first_part_below(d, data):
    dv = DegreeVector(d)
    m = tuple(data.draw(st.lists(st.integers(0, 2 * dv.N), min_size=dv.r, max_size=dv.r)))
    assume(is_member(m, d) and dv.weight(m) >= 2 * dv.N)
    s = first_part_below(m, d)
    assert dv.weight(s) == dv.N
    assert all(a <= b for a, b in zip(s, m))
    # the remainder is again a member: the factorization step can be repeated
    assert is_member(tuple(b - a for a, b in zip(s, m)), d)


def test_strict_reading_is_too_strong():
    # a member with a zero entry admits no part that is strictly smaller in every coordinate
    d = (2, 3)
    m = (6, 0)
    s = first_part_below(m, d)
    assert s == (3, 0)
    assert not any(all(a < b for a, b in zip(p, m)) for p in enumerate_S(d))


def test_decomposer_reuse():
    dec = Decomposer((2, 3, 4))
    for m in [(6, 0, 0), (12, 0, 3), (0, 8, 6)]:
        if is_member(m, (2, 3, 4)):
            assert dec.decompose(m).check((2, 3, 4))


@pytest.mark.parametrize("d", [(2, 3), (2, 2, 3), (3, 4), (1, 2, 4), (4, 4, 3)])
def test_bfs_equals_membership(d):
    N = DegreeVector(d).N
    assert np.array_equal(bfs_decomposable(d, 2 * N), member_mask(d, 2 * N))
