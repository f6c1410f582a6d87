from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from polyspecies.psring import PsPolynomial, exponents, monomial, power_sum, prime, weight


def P(terms, truncation=8):
    return PsPolynomial({monomial(e): c for e, c in terms.items()}, truncation)


def p(i, t=8):
    return power_sum(i, t)


def test_primes_and_encoding():
    assert [prime(i) for i in range(1, 8)] == [2, 3, 5, 7, 11, 13, 17]
    assert prime(40) == 173
    m = monomial({1: 2, 3: 1})
    assert m == 2 ** 2 * 5
    assert exponents(m) == ((1, 2), (3, 1))
    assert monomial({}) == 1


def test_weight():
    assert weight({}) == 0
    assert weight({1: 3}) == 3
    assert weight({1: 1, 2: 1}) == 3
    assert weight(monomial({2: 2, 5: 1})) == 9


def test_add():
    assert p(1) + p(1) == 2 * p(1)
    assert (p(1) ** 2 - p(2)) + p(2) == p(1) ** 2
    half_cube = P({((1, 3),): Fraction(1, 2)})
    assert half_cube + half_cube == p(1) ** 3


def test_mul():
    assert p(1) * p(1) == p(1) ** 2
    assert (p(1, 2) ** 2) * p(1, 2) == PsPolynomial({}, 2)
    e2 = (p(1) ** 2 + p(2)) / 2
    assert e2 * p(1) == (p(1) ** 3 + p(1) * p(2)) / 2


def test_stretch():
    assert p(1).stretch(2) == p(2)
    assert (p(1) * p(2)).stretch(2) == p(2) * p(4)
    q = (p(1) ** 2 + 3 * p(3)) / 7
    assert q.stretch(1) == q


def test_truncation_discards_heavy_terms():
    q = p(1, 3) * p(2, 3)
    assert q.coefficient({1: 1, 2: 1}) == 1
    assert not (q * p(1, 3))


def test_coefficients_are_exact_rationals():
    q = p(1) / 3
    c = q.coefficient({1: 1})
    assert c == mpq(1, 3)
    assert isinstance(c, type(mpq()))


def test_rejects_floats():
    with pytest.raises(TypeError):
        PsPolynomial({2: 0.5}, 3)


monomials = st.dictionaries(st.integers(1, 4), st.integers(1, 3), max_size=3)
polys = st.dictionaries(monomials.map(lambda d: monomial(d)), st.fractions(max_denominator=5), max_size=5) \
    .map(lambda t: PsPolynomial(t, 8))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == PsPolynomial({}, 8)


@given(polys, polys, st.integers(1, 3))
def test_stretch_is_a_ring_map(a, b, k):
    a, b = a.with_truncation(8 * k), b.with_truncation(8 * k)
    assert (a * b).stretch(k) == a.stretch(k) * b.stretch(k)
    assert (a + b).stretch(k) == a.stretch(k) + b.stretch(k)
