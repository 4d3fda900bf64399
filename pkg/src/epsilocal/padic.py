"""Exact truncated arithmetic in Q_p with explicit precision tracking.

A nonzero element is stored as p**v * unit, where the unit digits are
known modulo p**prec (prec = number of significant base-p digits).
"Zero to precision" is a distinct marker: the element is congruent to 0
modulo p**v but nothing below that level is known.  Arithmetic never
reports more precision than the operands justify; operations that would
have to guess missing digits raise PrecisionError instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, PrecisionError

INF = math.inf


@dataclass(frozen=True)
class PrecisionBudget:
    """How many significant base-p digits a computation needs, and why."""

    required_digits: int
    reason: str = ""

    def __post_init__(self):
        if self.required_digits < 1:
            raise InputError("precision budget must request at least one digit")


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicNumber:
    """Element of Q_p known to finite precision.

    Invariants: for a nonzero element, unit is in [1, p**prec) and coprime
    to p.  For the zero-to-precision marker, unit == 0, prec == 0 and v is
    the absolute level below which the element vanishes (x = 0 mod p**v).
    """

    p: int
    v: int
    unit: int
    prec: int

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def valuation(self):
        """Exact valuation, or +inf for the zero-to-precision marker."""
        return INF if self.is_zero else self.v

    @property
    def abs_precision(self) -> int:
        """The element is known modulo p**abs_precision."""
        return self.v if self.is_zero else self.v + self.prec

    @classmethod
    def zero(cls, p: int, level: int) -> "PadicNumber":
        return cls(p, level, 0, 0)

    @classmethod
    def from_rational(cls, num, den, p: int, digits: int) -> "PadicNumber":
        """p-adic expansion of num/den to the given number of digits."""
        if isinstance(num, Fraction) or isinstance(den, Fraction):
            q = Fraction(num) / Fraction(den)
            num, den = q.numerator, q.denominator
        if den == 0:
            raise InputError("zero denominator")
        if digits < 1:
            raise InputError("need at least one digit of precision")
        if num == 0:
            return cls.zero(p, digits)
        vn, vd = _vp(num, p), _vp(den, p)
        v = vn - vd
        un = num // p**vn
        ud = den // p**vd
        m = p**digits
        unit = un * pow(ud, -1, m) % m
        return cls(p, v, unit, digits)

    @classmethod
    def from_int(cls, n: int, p: int, digits: int) -> "PadicNumber":
        return cls.from_rational(n, 1, p, digits)

    def _check_same_prime(self, other: "PadicNumber"):
        if self.p != other.p:
            raise InputError("mixed primes in p-adic arithmetic")

    def add(self, other: "PadicNumber") -> "PadicNumber":
        self._check_same_prime(other)
        p = self.p
        level = min(self.abs_precision, other.abs_precision)
        if self.is_zero and other.is_zero:
            return PadicNumber.zero(p, level)
        if self.is_zero or other.is_zero:
            x = other if self.is_zero else self
            if x.v >= level:
                return PadicNumber.zero(p, level)
            return PadicNumber(p, x.v, x.unit % p ** (level - x.v), level - x.v)
        shift = min(self.v, other.v)
        modulus = p ** (level - shift)
        total = (self.unit * p ** (self.v - shift) + other.unit * p ** (other.v - shift)) % modulus
        if total == 0:
            return PadicNumber.zero(p, level)
        w = _vp(total, p)
        return PadicNumber(p, shift + w, (total // p**w) % p ** (level - shift - w), level - shift - w)

    def neg(self) -> "PadicNumber":
        if self.is_zero:
            return self
        m = self.p**self.prec
        return PadicNumber(self.p, self.v, (m - self.unit) % m, self.prec)

    def sub(self, other: "PadicNumber") -> "PadicNumber":
        return self.add(other.neg())

    def mul(self, other: "PadicNumber") -> "PadicNumber":
        self._check_same_prime(other)
        p = self.p
        if self.is_zero and other.is_zero:
            return PadicNumber.zero(p, self.v + other.v)
        if self.is_zero or other.is_zero:
            z, x = (self, other) if self.is_zero else (other, self)
            return PadicNumber.zero(p, z.v + x.v)
        prec = min(self.prec, other.prec)
        return PadicNumber(p, self.v + other.v, self.unit * other.unit % p**prec, prec)

    def inv(self) -> "PadicNumber":
        if self.is_zero:
            raise PrecisionError(
                f"cannot invert an element that is zero to precision p**{self.v}; "
                "raise the precision budget",
                required=self.v + 1,
                available=self.v,
            )
        m = self.p**self.prec
        return PadicNumber(self.p, -self.v, pow(self.unit, -1, m), self.prec)

    def scale_by_rational(self, q: Fraction) -> "PadicNumber":
        if q == 0:
            return PadicNumber.zero(self.p, self.abs_precision)
        digits = max(self.prec, 1)
        return self.mul(PadicNumber.from_rational(q.numerator, q.denominator, self.p, digits))

    def fractional_angle(self) -> Fraction:
        """Image in Q_p/Z_p as a rational in [0, 1) with p-power denominator.

        All digits at negative positions must be known; the standard
        additive character of conductor 0 is then x -> e^{2 pi i angle}.
        """
        if self.is_zero:
            if self.v < 0:
                raise PrecisionError(
                    "zero-to-precision marker does not determine the image in Q_p/Z_p",
                    required=0,
                    available=self.v,
                )
            return Fraction(0)
        if self.v >= 0:
            return Fraction(0)
        if self.abs_precision < 0:
            raise PrecisionError(
                f"need digits down to p**0 but element only known mod p**{self.abs_precision}",
                required=-self.v,
                available=self.prec,
            )
        den = self.p**-self.v
        return Fraction(self.unit % den, den)

    def integer_residue(self, exponent: int) -> int:
        """Value mod p**exponent as an integer in [0, p**exponent).

        Requires the element to be integral and known to that depth.
        """
        if exponent <= 0:
            return 0
        if self.is_zero:
            if self.v < exponent:
                raise PrecisionError(
                    f"zero to precision p**{self.v} is not determined mod p**{exponent}",
                    required=exponent,
                    available=self.v,
                )
            return 0
        if self.v < 0:
            raise InputError("element is not integral")
        if self.v >= exponent:
            return 0
        if self.abs_precision < exponent:
            raise PrecisionError(
                f"element known mod p**{self.abs_precision}, need mod p**{exponent}",
                required=exponent,
                available=self.abs_precision,
            )
        return self.unit * self.p**self.v % self.p**exponent

    def __repr__(self):
        if self.is_zero:
            return f"O({self.p}^{self.v})"
        return f"{self.p}^{self.v}*{self.unit} + O({self.p}^{self.abs_precision})"
