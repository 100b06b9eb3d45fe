from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lincert.errors import DivisionByZero, Exhausted, NotPrime, SecurityLevelTooLow
from lincert.field import (
    DEFAULT_PRIME,
    NONZERO,
    WHOLE,
    PrimeField,
    SampleSet,
    SeededRandom,
    fp_arith,
    is_prime,
    primes_between,
    random_prime,
    rational_arith,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]


def test_is_prime_matches_sieve():
    assert [n for n in range(100) if is_prime(n)] == SMALL_PRIMES
    assert primes_between(0, 100) == SMALL_PRIMES


def test_is_prime_known_values():
    assert is_prime(DEFAULT_PRIME)
    assert is_prime((1 << 61) - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime((1 << 31) - 3)


def test_field_rejects_composite():
    with pytest.raises(NotPrime):
        PrimeField(91)


@given(st.integers(0, 100), st.integers(1, 100))
def test_field_division_inverts_multiplication(a, b):
    F = PrimeField(101)
    assert F.mul(F.div(a, b), b) == a % 101


def test_division_by_zero():
    F = PrimeField(101)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(DivisionByZero):
        F(5) / F(0)


@given(st.integers(), st.integers())
def test_field_elements_follow_integers(a, b):
    F = PrimeField(DEFAULT_PRIME)
    x, y = F(a), F(b)
    assert int(x + y) == (a + b) % DEFAULT_PRIME
    assert int(x - y) == (a - b) % DEFAULT_PRIME
    assert int(x * y) == (a * b) % DEFAULT_PRIME
    assert int(fp_arith(x, None, "neg")) == -a % DEFAULT_PRIME


def test_rational_arith_is_exact():
    assert rational_arith(Fraction(1, 3), Fraction(1, 6), "add") == Fraction(1, 2)
    assert rational_arith(Fraction(2, 3), Fraction(4, 9), "div") == Fraction(3, 2)
    with pytest.raises(DivisionByZero):
        rational_arith(Fraction(1), Fraction(0), "div")


def test_sample_sets():
    rng = SeededRandom(1)
    assert WHOLE.size(101) == 101 and NONZERO.size(101) == 100
    assert all(NONZERO.sample(7, rng) != 0 for _ in range(200))
    r = SampleSet("range", 10, 20)
    assert all(10 <= r.sample(101, rng) < 20 for _ in range(200))
    with pytest.raises(SecurityLevelTooLow):
        SampleSet("range", 3, 4).require(101)


def test_seeded_random_is_reproducible():
    a, b = SeededRandom("x"), SeededRandom("x")
    assert [a.randbelow(1000) for _ in range(20)] == [b.randbelow(1000) for _ in range(20)]


def test_random_prime():
    rng = SeededRandom(3)
    q = random_prime(16, rng=rng)
    assert is_prime(q) and q.bit_length() == 16
    assert random_prime(16, excluded={q}, rng=SeededRandom(3)) != q
    with pytest.raises(Exhausted):
        random_prime(8, excluded=set(primes_between(128, 256)), rng=rng, max_draws=50)
    with pytest.raises(ValueError):
        random_prime(4)
