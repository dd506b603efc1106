from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from weylnormal.poly import Polynomial

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

coefficients = st.one_of(
    st.integers(-6, 6),
    st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4)),
)


def exponent_vectors(nvars: int, max_deg: int = 3):
    return st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).map(tuple)


def polynomials(shape, max_deg: int = 3, max_terms: int = 5):
    m, n = shape
    return st.dictionaries(exponent_vectors(m * n, max_deg), coefficients, max_size=max_terms).map(
        lambda d: Polynomial.from_exponents(shape, d))


def homogeneous_polynomials(shape, degree: int, max_terms: int = 4):
    m, n = shape
    N = m * n

    def vec(choices):
        e = [0] * N
        for c in choices:
            e[c] += 1
        return tuple(e)

    mono = st.lists(st.integers(0, N - 1), min_size=degree, max_size=degree).map(vec)
    return st.dictionaries(mono, st.integers(1, 5) | st.integers(-5, -1), min_size=1, max_size=max_terms).map(
        lambda d: Polynomial.from_exponents(shape, d))
