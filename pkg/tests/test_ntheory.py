import math
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expsum.ntheory import (
    NotInvertibleError,
    ceil_log2,
    coprime_split,
    ext_gcd,
    is_prime_power,
    jacobi,
    mod_inverse,
    pow_mod,
    squarefree_reduce,
)

from conftest import is_prime


def test_ext_gcd_examples():
    assert ext_gcd(3, 5) == (1, 2, -1)
    g, s, t = ext_gcd(7, 7)
    assert g == 7 and 7 * s + 7 * t == 7
    assert ext_gcd(1, 12345) == (1, 1, 0)
    with pytest.raises(ValueError):
        ext_gcd(0, 0)


@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_bezout_identity(a, b):
    if a == 0 and b == 0:
        return
    g, s, t = ext_gcd(a, b)
    assert g == math.gcd(a, b) and g > 0
    assert s * a + t * b == g


def test_mod_inverse_examples():
    assert mod_inverse(1, 17) == 1
    assert mod_inverse(2, 9) == 5
    with pytest.raises(NotInvertibleError):
        mod_inverse(3, 9)


@given(st.integers(2, 10**20), st.integers(-10**20, 10**20))
def test_mod_inverse_property(N, a):
    if math.gcd(a, N) != 1:
        with pytest.raises(NotInvertibleError):
            mod_inverse(a, N)
    else:
        r = mod_inverse(a, N)
        assert 0 <= r < N and a * r % N == 1 % N


def test_pow_mod_examples():
    assert pow_mod(2, 10, 1000) == 24
    assert pow_mod(12, 0, 7) == 1
    assert pow_mod(0, 5, 7) == 0
    assert pow_mod(5, 0, 1) == 0


def test_ceil_log2():
    assert [ceil_log2(N) for N in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]


def test_coprime_split_examples():
    assert coprime_split(12, 3).factors == (3, 4)
    r = coprime_split(12, 5)
    assert not r and r.kind == "coprime"
    r = coprime_split(8, 2)
    assert not r and r.kind == "all-factors"
    with pytest.raises(ValueError):
        coprime_split(1, 3)


@given(st.integers(2, 10**6), st.integers(0, 10**7))
def test_coprime_split_property(N, c):
    r = coprime_split(N, c)
    g = math.gcd(N, c)
    if r:
        N1, N2 = r.factors
        assert N1 * N2 == N and math.gcd(N1, N2) == 1 and N1 > 1 and N2 > 1
        for p in range(2, math.isqrt(N) + 1):
            if g % p == 0 and is_prime(p):
                assert N1 % p == 0
                assert N2 % p != 0
    elif r.kind == "coprime":
        assert g == 1
    else:
        # c carries every prime of N
        assert all(c % p == 0 for p in range(2, N + 1) if N % p == 0 and is_prime(p))


def test_jacobi_examples():
    assert jacobi(7, 1) == 1
    assert jacobi(0, 1) == 1
    assert jacobi(2, 5) == -1
    assert jacobi(6, 9) == 0
    assert jacobi(-1, 7) == -1
    for bad in (0, -3, 4):
        with pytest.raises(ValueError):
            jacobi(1, bad)


@lru_cache(maxsize=None)
def _residues(p: int) -> frozenset:
    return frozenset(x * x % p for x in range(1, p))


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if a in _residues(p) else -1


def _jacobi_by_factoring(a: int, b: int) -> int:
    result, d, rest = 1, 3, b
    while rest > 1:
        if d * d > rest:
            d = rest
        while rest % d == 0:
            result *= _legendre(a, d)
            rest //= d
        d += 2
    return result


def test_jacobi_exhaustive_small():
    for b in range(1, 400, 2):
        for a in range(b):
            assert jacobi(a, b) == _jacobi_by_factoring(a, b), (a, b)


@given(st.integers(0, 5000).map(lambda k: 2 * k + 1), st.integers(-10**6, 10**6))
def test_jacobi_against_legendre_products(b, a):
    assert jacobi(a, b) == _jacobi_by_factoring(a, b)


def test_squarefree_reduce_examples():
    assert squarefree_reduce(1, 10) == (1, 1)
    assert squarefree_reduce(12, 10**3) == (2, 3)
    p = 1009
    assert squarefree_reduce(p * p, 10**3) == (p, 1)
    with pytest.raises(ValueError):
        squarefree_reduce(0)


@given(st.integers(1, 10**12))
def test_squarefree_reduce_property(R):
    s, rest = squarefree_reduce(R, 10**4)
    assert s * s * rest == R
    assert math.isqrt(rest) ** 2 != rest or rest == 1
    for p in range(2, 200):
        assert rest % (p * p) != 0


def test_squarefree_reduce_partial_for_large_radicands():
    # two primes above the effort bound: the product is left alone
    p, q = 1000003, 1000033
    assert squarefree_reduce(p * q, 1000) == (1, p * q)
    assert squarefree_reduce(4 * p * p * q, 1000) == (2, p * p * q)


def test_is_prime_power():
    assert is_prime_power(8) == (2, 3)
    assert is_prime_power(27) == (3, 3)
    assert is_prime_power(7) == (7, 1)
    assert is_prime_power(12) is None
    assert is_prime_power(1) is None
