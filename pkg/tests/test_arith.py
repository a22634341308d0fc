import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from senary.arith import (
    PrimeTable,
    Rational,
    factorize,
    gcd_many,
    integer_cube_root,
    moebius,
    primes_up_to,
)


def test_primes_up_to_examples():
    assert primes_up_to(10).primes == (2, 3, 5, 7)
    assert primes_up_to(2).primes == (2,)
    assert primes_up_to(30).primes == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def test_primes_up_to_rejects_tiny_limit():
    with pytest.raises(ValueError):
        primes_up_to(1)


def test_prime_table_must_be_ascending():
    with pytest.raises(ValueError):
        PrimeTable(10, (3, 2))


def test_gcd_many_examples():
    assert gcd_many([4, 6]) == 2
    assert gcd_many([0, 0, 0]) == 0
    assert gcd_many([-3, 7]) == 1
    with pytest.raises(ValueError):
        gcd_many([])


def test_moebius_examples():
    assert moebius(1) == 1
    assert moebius(4) == 0
    assert moebius(6) == 1
    with pytest.raises(ValueError):
        moebius(0)


@given(st.integers(1, 2000), st.integers(1, 2000))
def test_moebius_multiplicative_on_coprime_arguments(m, n):
    if math.gcd(m, n) == 1:
        assert moebius(m * n) == moebius(m) * moebius(n)


def test_moebius_divisor_sums_vanish():
    # sum_{d | n} mu(d) == [n == 1] for all n <= 10^4, accumulated by sieving
    N = 10_000
    acc = [0] * (N + 1)
    for d in range(1, N + 1):
        mu = moebius(d)
        if mu:
            for n in range(d, N + 1, d):
                acc[n] += mu
    assert acc[1] == 1
    assert all(acc[n] == 0 for n in range(2, N + 1))


@given(
    st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**4),
    st.fractions(min_value=-(10**6), max_value=10**6, max_denominator=10**4),
)
def test_rational_arithmetic_is_exact(a, b):
    assert (a + b) - b == a
    c = a + b
    assert c.denominator > 0
    assert math.gcd(abs(c.numerator), c.denominator) == 1


def test_rational_is_fraction():
    assert Rational is Fraction
    assert Rational(6, -4) == Fraction(-3, 2)
    assert Rational(6, -4).denominator == 2


def test_factorize():
    assert factorize(1) == []
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]


@given(st.integers(0, 10**12))
def test_integer_cube_root_is_exact(n):
    r = integer_cube_root(n)
    assert r**3 <= n < (r + 1) ** 3


def test_integer_cube_root_at_cube_boundaries():
    for m in (1, 2, 3, 10, 99, 1000):
        assert integer_cube_root(m**3 - 1) == m - 1
        assert integer_cube_root(m**3) == m
        assert integer_cube_root(m**3 + 1) == m
