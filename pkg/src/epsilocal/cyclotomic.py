"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Values of characters and character sums live here.  Elements are kept in
canonical reduced form on the power basis zeta^0 .. zeta^(phi(n)-1), so
equality is decidable coefficient-wise.  The float embedding is a sanity
channel only; no decision is ever taken on floats.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import InputError, InternalInvariantError


@dataclass(frozen=True)
class Angle:
    """A rational angle k/n in Q/Z, encoding the root of unity e^{2 pi i k/n}."""

    num: int
    den: int

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Angle":
        q = Fraction(q) % 1
        return cls(q.numerator, q.denominator)

    @classmethod
    def zero(cls) -> "Angle":
        return cls(0, 1)

    @property
    def frac(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def order(self) -> int:
        """Multiplicative order of the encoded root of unity."""
        return self.den

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other: "Angle") -> "Angle":
        return Angle.from_fraction(self.frac + other.frac)

    def __neg__(self) -> "Angle":
        return Angle.from_fraction(-self.frac)

    def __sub__(self, other: "Angle") -> "Angle":
        return Angle.from_fraction(self.frac - other.frac)

    def scale(self, k: int) -> "Angle":
        return Angle.from_fraction(self.frac * k)

    def half(self) -> "Angle":
        """One of the two solutions of 2*x = self; the other is this + 1/2."""
        return Angle.from_fraction(self.frac / 2)

    def __str__(self):
        return f"{self.num}/{self.den}"


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (den monic up to sign)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q, r = divmod(c, lead)
        if r:
            raise InternalInvariantError("non-exact cyclotomic polynomial division")
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    if any(num[: len(den) - 1]):
        raise InternalInvariantError("nonzero remainder in cyclotomic polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise InputError("conductor must be positive")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            phi_d = cyclotomic_polynomial(d)
            new = [0] * (len(den) + len(phi_d) - 1)
            for i, a in enumerate(den):
                if a:
                    for j, b in enumerate(phi_d):
                        new[i + j] += a * b
            den = new
    return tuple(_poly_div_exact(num, den))


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """x^k mod Phi_n for phi(n) <= k < n, as integer coefficient rows."""
    phi = _phi(n)
    poly = cyclotomic_polynomial(n)
    # x^phi = -(poly[0] + ... + poly[phi-1] x^(phi-1))
    rows = []
    cur = [-c for c in poly[:phi]]
    rows.append(tuple(cur))
    for _ in range(phi + 1, n):
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            for i in range(phi):
                nxt[i] -= top * poly[i]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


class CycNumber:
    """Element of Q(zeta_n) in canonical reduced coordinates."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != _phi(n):
            raise InputError(f"expected {_phi(n)} coordinates for conductor {n}")
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------

    @classmethod
    def from_monomials(cls, n: int, monomials: dict[int, Fraction]) -> "CycNumber":
        phi = _phi(n)
        acc = [Fraction(0)] * phi
        rows = None
        for e, c in monomials.items():
            if not c:
                continue
            e %= n
            if e < phi:
                acc[e] += c
            else:
                if rows is None:
                    rows = _reduction_rows(n)
                for i, r in enumerate(rows[e - phi]):
                    if r:
                        acc[i] += c * r
        return cls(n, acc)

    @classmethod
    def from_rational(cls, q, n: int = 1) -> "CycNumber":
        return cls.from_monomials(n, {0: Fraction(q)})

    @classmethod
    def zero(cls, n: int = 1) -> "CycNumber":
        return cls(n, [Fraction(0)] * _phi(n))

    @classmethod
    def one(cls, n: int = 1) -> "CycNumber":
        return cls.from_rational(1, n)

    # -- structure ----------------------------------------------------

    def lift(self, m: int) -> "CycNumber":
        """Rewrite in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise InputError(f"cannot lift conductor {self.n} into {m}")
        step = m // self.n
        return CycNumber.from_monomials(m, {i * step: c for i, c in enumerate(self.coeffs) if c})

    def _pair(self, other: "CycNumber"):
        if self.n == other.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.lift(m), other.lift(m)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InputError("value is not rational")
        return self.coeffs[0]

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "CycNumber") -> "CycNumber":
        a, b = self._pair(other)
        return CycNumber(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.n, [-c for c in self.coeffs])

    def __sub__(self, other: "CycNumber") -> "CycNumber":
        return self + (-other)

    def __mul__(self, other: "CycNumber") -> "CycNumber":
        a, b = self._pair(other)
        acc: dict[int, Fraction] = {}
        bc = b.coeffs
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(bc):
                if not y:
                    continue
                k = i + j
                if k in acc:
                    acc[k] += x * y
                else:
                    acc[k] = x * y
        return CycNumber.from_monomials(a.n, acc)

    def scale(self, q) -> "CycNumber":
        q = Fraction(q)
        return CycNumber(self.n, [c * q for c in self.coeffs])

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            raise InputError("negative powers are not supported; use conj for roots of unity")
        result = CycNumber.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycNumber":
        """Complex conjugation zeta -> zeta^(-1)."""
        return CycNumber.from_monomials(
            self.n, {(self.n - i) % self.n: c for i, c in enumerate(self.coeffs) if c}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycNumber):
            if isinstance(other, (int, Fraction)):
                return self.is_rational() and self.coeffs[0] == other
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    # -- diagnostics and output ----------------------------------------

    def classify_root_of_unity(self):
        """The Angle of this value if it is exactly a root of unity, else None.

        Roots of unity in Q(zeta_n) have order dividing lcm(2, n); orders
        are scanned small-first so +-1 and eighth roots return quickly.
        """
        m = self.n if self.n % 2 == 0 else 2 * self.n
        divisors = sorted(d for d in range(1, m + 1) if m % d == 0)
        for d in divisors:
            for k in range(d):
                if d > 1 and gcd(k, d) != 1:
                    continue
                cand = Angle.from_fraction(Fraction(k, d))
                if self == embed_angle(cand, m):
                    return cand
        return None

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        total = 0j
        power = 1 + 0j
        for c in self.coeffs:
            if c:
                total += float(c) * power
            power *= z
        return total

    def to_json(self) -> dict:
        approx = self.to_complex()
        return {
            "n": self.n,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
            "approx": [round(approx.real, 12), round(approx.imag, 12)],
        }

    def __repr__(self):
        return f"CycNumber(n={self.n}, {self.to_complex():.6f})"


def embed_angle(angle: Angle, n: int) -> CycNumber:
    """The root of unity e^{2 pi i angle} as an element of Q(zeta_n)."""
    if n % angle.den:
        raise InputError(f"a root of unity of order {angle.den} does not lie in Q(zeta_{n})")
    return CycNumber.from_monomials(n, {angle.num * (n // angle.den): Fraction(1)})


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _prime_power(q: int):
    if q < 2:
        raise InputError("q must be a prime power >= 2")
    for p in range(2, q + 1):
        if p * p > q and q > 1:
            return q, 1
        if q % p == 0:
            s = 0
            m = q
            while m % p == 0:
                m //= p
                s += 1
            if m != 1:
                raise InputError(f"{q} is not a prime power")
            return p, s
    raise InputError(f"{q} is not a prime power")


@lru_cache(maxsize=None)
def sqrt_q(q: int) -> CycNumber:
    """Exact square root of a prime power, positive under zeta_n -> e^{2 pi i/n}.

    For p = 2 this is zeta_8 + zeta_8^(-1); for odd p the quadratic Gauss
    sum sum_x (x|p) zeta_p^x, corrected by -i when p = 3 mod 4.
    """
    p, s = _prime_power(q)
    if s % 2 == 0:
        return CycNumber.from_rational(p ** (s // 2))
    if p == 2:
        root2 = CycNumber.from_monomials(8, {1: Fraction(1), 7: Fraction(1)})
        base = root2
    else:
        g = CycNumber.from_monomials(p, {x: Fraction(legendre(x, p)) for x in range(1, p)})
        if p % 4 == 1:
            base = g
        else:
            # g = i*sqrt(p); multiply by -i = zeta_4^(-1)
            m = 4 * p
            base = g.lift(m) * embed_angle(Angle(3, 4), m)
    result = base.scale(p ** (s // 2))
    if not (result * result == q):
        raise InternalInvariantError(f"sqrt_q({q}) failed its defining identity")
    return result
