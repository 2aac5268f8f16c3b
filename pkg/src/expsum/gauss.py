"""Closed-form quadratic Gauss sums ``G(a, b) = sum_{x mod b} exp(2*pi*i*a*x^2/b)``.

No factorization of ``b`` is needed.  Strip the powers of two from ``b`` and
use multiplicativity ``G(a, bc) = G(ab, c) * G(ac, b)`` for coprime ``b, c``:

* odd part:  ``G(a, b) = (a/b) * G(1, b)`` with the Jacobi symbol;
* 2-part:    ``G(a, 2^r) = (-2^r / a) * eps(a) * G(1, 2^r)`` for odd ``a``,
  ``r >= 2``; ``G(a, 2) = 0``.

Sign convention for the 2-part: the Jacobi symbol is taken of ``-2^r`` (minus
sign included) over the odd representative ``a`` in ``[1, 2^r)``.  This was
checked against direct summation for every odd ``a < 2^r``, ``r <= 10``.
Equivalently ``(2^r/a) * (1 + i^a) * sqrt(2^r)``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclovalue import ONE, ZERO, SymbolicValue, mul, root_of_unity, scale
from .ntheory import jacobi

_I = root_of_unity(1, 4)


def eps_of(a: int) -> SymbolicValue:
    """1 if a = 1 (mod 4), i if a = 3 (mod 4)."""
    if a % 2 == 0:
        raise ValueError(f"eps_of needs an odd argument, got {a}")
    return ONE if a % 4 == 1 else _I


def gauss_g1(b: int) -> SymbolicValue:
    """G(1, b), including Gauss's sign: always the positive root."""
    if b <= 0:
        raise ValueError(f"G(1, b) needs b >= 1, got {b}")
    r = b % 4
    if r == 0:
        # (1+i) sqrt(b) = sqrt(2b) * e^{2 pi i / 8}
        return SymbolicValue.make(1, 2 * b, Fraction(1, 8))
    if r == 1:
        return SymbolicValue.make(1, b)
    if r == 2:
        return ZERO
    return SymbolicValue.make(1, b, Fraction(1, 4))


def _sign(s: int, v: SymbolicValue) -> SymbolicValue:
    return v if s == 1 else scale(v, -1)


def gauss_pow2(a: int, r: int) -> SymbolicValue:
    """G(a, 2^r) for odd a."""
    if a % 2 == 0:
        raise ValueError(f"G(a, 2^r) needs odd a, got {a}")
    if r == 0:
        return ONE
    if r == 1:
        return ZERO
    q = 1 << r
    a %= q
    return _sign(jacobi(-q, a), mul(eps_of(a), gauss_g1(q)))


def gauss_sum(a: int, b: int) -> SymbolicValue:
    if b <= 0:
        raise ValueError(f"Gauss sum modulus must be positive, got {b}")
    if b == 1:
        return ONE
    if math.gcd(a, b) != 1:
        raise ValueError(f"G(a, b) needs gcd(a, b) = 1, got a={a}, b={b}")
    a %= b
    r = (b & -b).bit_length() - 1
    odd = b >> r
    two_power = 1 << r
    value = ONE
    if odd > 1:
        value = _sign(jacobi(a * two_power, odd), gauss_g1(odd))
    if r:
        value = mul(value, gauss_pow2(a * odd % two_power, r))
    return value
