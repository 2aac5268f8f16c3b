"""Integer primitives: Bezout coefficients, inverses, Jacobi symbols,
coprime splitting of an unfactored modulus, and square-part extraction.

Everything here works on plain Python ints, so sizes are unbounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_EFFORT_BOUND = 10**6


class NotInvertibleError(ValueError):
    """Raised when an element has no inverse modulo N."""


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) > 0`` and ``s*a + t*b = g``."""
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inverse(a: int, N: int) -> int:
    if N < 1:
        raise ValueError(f"modulus must be positive, got {N}")
    g, s, _ = ext_gcd(a % N, N)
    if g != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {N} (gcd {g})")
    return s % N


def pow_mod(c: int, e: int, N: int) -> int:
    """``c**e mod N`` by square-and-multiply (the builtin three-argument pow)."""
    if N < 1:
        raise ValueError(f"modulus must be positive, got {N}")
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(c, e, N)


def ceil_log2(N: int) -> int:
    return (N - 1).bit_length()


@dataclass(frozen=True)
class CoprimeSplit:
    """Outcome of :func:`coprime_split`.

    ``kind`` is ``"split"`` (and ``factors`` holds ``(N1, N2)``), ``"coprime"``
    when gcd(N, c) = 1, or ``"all-factors"`` when c is divisible by every
    prime of N.
    """

    kind: str
    factors: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.factors is not None


def coprime_split(N: int, c: int) -> CoprimeSplit:
    """Try to split N into coprime factors using the primes it shares with c.

    ``g = gcd(N, c^ceil(log2 N) mod N)`` collects the full prime powers of N
    for every prime that divides c, since no prime occurs in N to a power
    above ``ceil(log2 N)``.
    """
    if N < 2:
        raise ValueError(f"coprime_split needs N >= 2, got {N}")
    g = math.gcd(N, pow_mod(c, ceil_log2(N), N))
    if g == 1:
        return CoprimeSplit("coprime")
    if g == N:
        return CoprimeSplit("all-factors")
    other = N // g
    assert math.gcd(g, other) == 1, (N, c, g)
    return CoprimeSplit("split", (g, other))


def jacobi(a: int, b: int) -> int:
    """Jacobi symbol (a/b) for odd positive b; jacobi(a, 1) = 1."""
    if b <= 0 or b % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {b}")
    a %= b
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


@lru_cache(maxsize=8)
def _primes_below(bound: int) -> tuple[int, ...]:
    if bound <= 2:
        return ()
    sieve = np.ones(bound, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(bound - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


@lru_cache(maxsize=4096)
def squarefree_reduce(R: int, effort_bound: int = DEFAULT_EFFORT_BOUND) -> tuple[int, int]:
    """Write ``R = s**2 * R'`` pulling out every square we can find cheaply.

    Primes below ``effort_bound`` are removed by trial division; whatever is
    left over is tested for being a perfect square.  The result is fully
    squarefree whenever ``R < effort_bound**3``.
    """
    if R < 1:
        raise ValueError(f"radicand must be positive, got {R}")
    s = 1
    kept = 1
    rest = R
    for p in _primes_below(effort_bound):
        if p * p > rest:
            break
        if rest % p:
            continue
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            kept *= p
    # rest is now 1, a prime, or has only prime factors >= effort_bound
    r = math.isqrt(rest)
    if r * r == rest:
        s *= r
        rest = 1
    return s, kept * rest


def is_prime_power(q: int) -> tuple[int, int] | None:
    """``(p, t)`` with ``q = p**t`` if q is a prime power, found by trial division."""
    if q < 2:
        return None
    p = next((d for d in range(2, math.isqrt(q) + 1) if q % d == 0), q)
    t = 0
    while q % p == 0:
        q //= p
        t += 1
    return (p, t) if q == 1 else None
