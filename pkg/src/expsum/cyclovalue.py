"""Exact values of the form ``coeff * sqrt(radicand) * exp(2*pi*i*phase)``.

Every value produced by the Gauss-sum formulas and by the exponential-sum
solver is a product of integers, dyadic rationals, roots of unity and Gauss
sums, so a single such term (or zero) is closed under everything we need:
multiplication and nonnegative rational scaling.  There is no addition.

Canonical form:

* ``coeff`` is a positive :class:`~fractions.Fraction` (zero is the separate
  value with ``coeff == 0``, ``radicand == 1``, ``phase == 0``);
* ``phase`` lies in ``[0, 1)``;
* ``radicand`` has been through :func:`~expsum.ntheory.squarefree_reduce`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .ntheory import DEFAULT_EFFORT_BOUND, squarefree_reduce

# magnitudes above this are reported only in log form
_FLOAT_LOG10_LIMIT = 300.0


class Approx(NamedTuple):
    log10_mag: float
    phase_turns: float
    value: complex | None


@dataclass(frozen=True)
class SymbolicValue:
    coeff: Fraction
    radicand: int = 1
    phase: Fraction = Fraction(0)

    @classmethod
    def make(cls, coeff, radicand: int = 1, phase=0) -> SymbolicValue:
        """Build a canonical value from arbitrary (unreduced) components."""
        coeff = Fraction(coeff)
        phase = Fraction(phase)
        if coeff < 0:
            coeff = -coeff
            phase += Fraction(1, 2)
        if coeff == 0:
            return ZERO
        if radicand < 1:
            raise ValueError(f"radicand must be positive, got {radicand}")
        s, radicand = squarefree_reduce(radicand, DEFAULT_EFFORT_BOUND)
        return cls(coeff * s, radicand, phase % 1)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def kind(self) -> str:
        return "zero" if self.is_zero else "term"

    @property
    def coeff_num(self) -> int:
        return self.coeff.numerator

    @property
    def coeff_den(self) -> int:
        return self.coeff.denominator

    @property
    def phase_num(self) -> int:
        return self.phase.numerator

    @property
    def phase_den(self) -> int:
        return self.phase.denominator

    def canonical(self) -> SymbolicValue:
        return ZERO if self.is_zero else SymbolicValue.make(self.coeff, self.radicand, self.phase)

    def __mul__(self, other: SymbolicValue) -> SymbolicValue:
        return mul(self, other)

    def __str__(self) -> str:
        return format_value(self)

    def approx(self) -> Approx:
        return approx(self)

    def to_json(self) -> dict:
        return to_json(self)


ZERO = SymbolicValue(Fraction(0), 1, Fraction(0))
ONE = SymbolicValue(Fraction(1), 1, Fraction(0))


def zero() -> SymbolicValue:
    return ZERO


def one() -> SymbolicValue:
    return ONE


def integer(k: int) -> SymbolicValue:
    return SymbolicValue.make(k)


def root_of_unity(k: int, M: int) -> SymbolicValue:
    """``exp(2*pi*i*k/M)``."""
    if M < 1:
        raise ValueError(f"root order must be positive, got {M}")
    return SymbolicValue(Fraction(1), 1, Fraction(k % M, M))


def mul(u: SymbolicValue, v: SymbolicValue) -> SymbolicValue:
    if u.is_zero or v.is_zero:
        return ZERO
    g = math.gcd(u.radicand, v.radicand)
    rad = (u.radicand // g) * (v.radicand // g)
    s, rad = squarefree_reduce(rad, DEFAULT_EFFORT_BOUND) if rad > 1 else (1, 1)
    return SymbolicValue(u.coeff * v.coeff * g * s, rad, (u.phase + v.phase) % 1)


def scale(v: SymbolicValue, num: int, den: int = 1) -> SymbolicValue:
    """Multiply by the rational ``num/den``; a negative factor shifts the phase by 1/2."""
    if den == 0:
        raise ValueError("scale factor has zero denominator")
    if v.is_zero or num == 0:
        return ZERO
    factor = Fraction(num, den)
    phase = v.phase
    if factor < 0:
        factor = -factor
        phase = (phase + Fraction(1, 2)) % 1
    return SymbolicValue(v.coeff * factor, v.radicand, phase)


def product(values) -> SymbolicValue:
    out = ONE
    for v in values:
        out = mul(out, v)
    return out


def _log10(x: int | Fraction) -> float:
    x = Fraction(x)
    return math.log10(x.numerator) - math.log10(x.denominator)


def approx(v: SymbolicValue) -> Approx:
    """Magnitude (log10), phase in turns, and a complex value when it fits a double."""
    if v.is_zero:
        return Approx(-math.inf, 0.0, 0j)
    log_mag = _log10(v.coeff) + 0.5 * math.log10(v.radicand)
    turns = float(v.phase)
    value = None
    if abs(log_mag) < _FLOAT_LOG10_LIMIT:
        if v.radicand < 2**1000 and abs(_log10(v.coeff)) < _FLOAT_LOG10_LIMIT:
            mag = float(v.coeff) * math.sqrt(v.radicand)
        else:
            mag = 10.0**log_mag
        value = mag * _unit(v.phase)
    return Approx(log_mag, turns, value)


def _unit(phase: Fraction) -> complex:
    # exact values on the axes keep oracle comparisons clean
    quarter = phase * 4
    if quarter.denominator == 1:
        return (1, 1j, -1, -1j)[int(quarter)]
    return cmath.exp(2j * math.pi * float(phase))


def to_complex(v: SymbolicValue) -> complex:
    value = approx(v).value
    if value is None:
        raise OverflowError("value magnitude exceeds the double-precision range")
    return value


def equals(u: SymbolicValue, v: SymbolicValue, tol: float = 1e-9) -> str | None:
    """Compare two values.

    Returns ``"structural"`` for identical canonical forms, ``"numerical"`` when
    the radicands are past the squarefree guarantee and the approximations
    agree to relative tolerance ``tol``, and ``None`` otherwise.
    """
    cu, cv = u.canonical(), v.canonical()
    if cu == cv:
        return "structural"
    limit = DEFAULT_EFFORT_BOUND**3
    if cu.radicand < limit and cv.radicand < limit:
        return None
    au, av = approx(cu), approx(cv)
    if abs(au.log10_mag - av.log10_mag) > tol:
        return None
    dphase = (au.phase_turns - av.phase_turns) % 1.0
    if min(dphase, 1.0 - dphase) > tol:
        return None
    return "numerical"


def format_value(v: SymbolicValue) -> str:
    if v.is_zero:
        return "0"
    parts = []
    if v.coeff != 1 or v.radicand == 1:
        parts.append(str(v.coeff))
    if v.radicand != 1:
        parts.append(f"sqrt({v.radicand})")
    if v.phase:
        parts.append(f"exp(2*pi*i*{v.phase})")
    return " * ".join(parts)


def to_json(v: SymbolicValue) -> dict:
    if v.is_zero:
        return {"kind": "zero"}
    a = approx(v)
    out = {
        "kind": "term",
        "coeff": f"{v.coeff.numerator}/{v.coeff.denominator}",
        "radicand": str(v.radicand),
        "phase": f"{v.phase.numerator}/{v.phase.denominator}",
        "approx": {"log10_mag": a.log10_mag, "phase_turns": a.phase_turns, "re": None, "im": None},
    }
    if a.value is not None:
        out["approx"]["re"] = a.value.real
        out["approx"]["im"] = a.value.imag
    return out


def from_json(data: dict) -> SymbolicValue:
    if data["kind"] == "zero":
        return ZERO
    num, den = (int(x) for x in data["coeff"].split("/"))
    pnum, pden = (int(x) for x in data["phase"].split("/"))
    return SymbolicValue.make(Fraction(num, den), int(data["radicand"]), Fraction(pnum, pden))
