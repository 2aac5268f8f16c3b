import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expsum.cyclovalue import ONE, ZERO, SymbolicValue, approx, mul, scale, to_complex
from expsum.gauss import eps_of, gauss_g1, gauss_pow2, gauss_sum

from conftest import is_prime


def direct_gauss(a: int, b: int) -> complex:
    return sum(cmath.exp(2j * math.pi * (a * x * x % b) / b) for x in range(b))


def test_eps_examples():
    assert eps_of(1) == ONE
    assert to_complex(eps_of(3)) == 1j
    assert eps_of(5) == ONE
    assert to_complex(eps_of(-1)) == 1j
    with pytest.raises(ValueError):
        eps_of(4)


def test_g1_examples():
    assert gauss_g1(5) == SymbolicValue.make(1, 5)
    assert gauss_g1(2) == ZERO
    assert gauss_g1(4) == SymbolicValue.make(2, 2, Fraction(1, 8))
    assert abs(to_complex(gauss_g1(4)) - 2 * (1 + 1j)) < 1e-12
    assert gauss_g1(1) == ONE
    with pytest.raises(ValueError):
        gauss_g1(0)


def test_gauss_sum_examples():
    assert gauss_sum(7, 1) == ONE
    assert gauss_sum(1, 3) == SymbolicValue.make(1, 3, Fraction(1, 4))
    assert gauss_sum(2, 5) == SymbolicValue.make(-1, 5)
    # brute force: sum_{x<8} exp(2 pi i 3 x^2 / 8) = 4 exp(2 pi i 3/8)
    assert gauss_sum(3, 8) == SymbolicValue.make(4, 1, Fraction(3, 8))
    assert abs(to_complex(gauss_sum(3, 8)) - direct_gauss(3, 8)) < 1e-12
    assert gauss_sum(-1, 5) == gauss_sum(4, 5)
    for a, b in ((2, 4), (0, 3)):
        with pytest.raises(ValueError):
            gauss_sum(a, b)
    with pytest.raises(ValueError):
        gauss_sum(1, 0)


def test_pow2_sign_convention_exhaustive():
    for r in range(1, 11):
        q = 1 << r
        for a in range(1, q, 2):
            assert abs(to_complex(gauss_pow2(a, r)) - direct_gauss(a, q)) < 1e-8, (a, r)


def test_table_small_moduli():
    for b in range(1, 129):
        for a in range(1, max(b, 2)):
            if math.gcd(a, b) == 1:
                assert abs(approx(gauss_sum(a, b)).value - direct_gauss(a, b)) <= 1e-8, (a, b)


def test_magnitude_law():
    for b in range(1, 200):
        expected = b if b % 2 else (2 * b if b % 4 == 0 else 0)
        for a in range(1, b):
            if math.gcd(a, b) == 1:
                assert abs(abs(to_complex(gauss_sum(a, b))) ** 2 - expected) < 1e-8


def test_multiplicativity():
    for b in range(1, 101):
        for c in range(1, 101):
            if math.gcd(b, c) != 1 or b * c == 1:
                continue
            for a in (1, 3, 7):
                if math.gcd(a, b * c) != 1:
                    continue
                split = mul(gauss_sum(a * b % c, c), gauss_sum(a * c % b, b))
                assert gauss_sum(a, b * c) == split, (a, b, c)


def test_prime_power_recurrence():
    for p in (3, 5, 7, 11, 13):
        for r in (2, 3, 4):
            for a in range(1, 2 * p):
                if a % p:
                    assert gauss_sum(a, p**r) == scale(gauss_sum(a, p ** (r - 2)), p)


def test_sign_theorem_for_primes():
    for p in range(3, 500):
        if is_prime(p):
            expected = SymbolicValue.make(1, p, Fraction(0 if p % 4 == 1 else 1, 4))
            assert gauss_sum(1, p) == expected


@given(st.integers(-10**40, 10**40), st.integers(1, 10**40))
def test_large_arguments_have_the_right_magnitude(a, b):
    if math.gcd(a, b) != 1:
        return
    v = gauss_sum(a, b)
    if b % 4 == 2:
        assert v == ZERO
    else:
        expected = 0.5 * math.log10(b if b % 2 else 2 * b)
        assert abs(approx(v).log10_mag - expected) < 1e-9
