"""Quadratic extensions K/F of F = Q_p: elements, invariants, norm groups.

A Tower is built from a monic defining polynomial x^2 + a1*x + a0 that is
either Eisenstein (totally ramified mode) or a unit polynomial irreducible
mod p (unramified mode).  In both modes O_K = O_F[theta], so the different
exponent is v_K of the derivative at theta and the unique ramification
break follows by the brute-force Galois-action scan.

The ramified constructor always takes pi_K = theta and pi_F = N(pi_K);
when a1 = 0 this gives pi_F = -pi_K^2, the shape the sign laws need, and
the tower records that fact in trace_zero_uniformizer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError, InternalInvariantError, PrecisionError
from .groups import subgroup_closure
from .padic import INF, PadicNumber, PrecisionBudget

DEFAULT_DIGITS = 32


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _vp_fraction(q: Fraction, p: int) -> int:
    if q == 0:
        raise InputError("valuation of zero")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _fraction_mod(q: Fraction, p: int, exponent: int) -> int:
    """A p-integral rational as an integer mod p**exponent."""
    if exponent <= 0:
        return 0
    m = p**exponent
    if q.denominator % p == 0:
        raise InputError("rational is not p-integral")
    return q.numerator * pow(q.denominator, -1, m) % m


def _coeff_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QpField:
    """The base field Q_p with a chosen uniformizer.

    Standalone instances use p itself; instances attached to a ramified
    tower use pi_F = N(pi_K) so that value-group decompositions agree with
    the tower's conventions.
    """

    is_base = True

    def __init__(self, p: int, uniformizer=None, label: str | None = None):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.q = p
        self.uniformizer = Fraction(uniformizer if uniformizer is not None else p)
        if _vp_fraction(self.uniformizer, p) != 1:
            raise InputError("uniformizer of Q_p must have valuation 1")
        self.label = label or f"Q{p}"
        self.residue_degree = 1

    # residue classes of units mod U^m are integers mod p**m

    def res_identity(self, m: int):
        return 1 % self.p**m if m >= 1 else 0

    def res_mul(self, m: int, a: int, b: int) -> int:
        return a * b % self.p**m

    def res_inv(self, m: int, a: int) -> int:
        return pow(a, -1, self.p**m)

    def unit_reps(self, m: int):
        pm = self.p**m
        return tuple(u for u in range(1, pm) if u % self.p)

    def unit_gen_candidates(self, m: int):
        p, pm = self.p, self.p**m
        gens = []
        if p == 2:
            gens.append(pm - 1)  # -1
        else:
            g = _primitive_root(p)
            gens.append(g % pm)
        for j in range(1, m):
            gens.append((1 + p**j) % pm)
        return [g for g in gens if g != 1 % pm]

    def level_unit_generators(self, j: int, m: int):
        """Generators of U^j/U^(j+1) as classes mod U^m (1 <= j < m)."""
        return [(1 + self.p**j) % self.p**m]

    def decompose(self, x: PadicNumber, m: int):
        """x in F^x as (valuation, unit class mod U^m)."""
        v = x.valuation
        if v is INF or v == INF:
            raise PrecisionError("cannot decompose an element that is zero to precision")
        unit = x.mul(self.element(self.uniformizer**-v, digits=max(x.prec, m + 2)))
        return int(v), unit.integer_residue(m)

    def element(self, q, digits: int = DEFAULT_DIGITS) -> PadicNumber:
        q = Fraction(q)
        return PadicNumber.from_rational(q.numerator, q.denominator, self.p, digits)

    def lift_unit(self, key: int, digits: int = DEFAULT_DIGITS) -> PadicNumber:
        return self.element(key, digits)

    def __repr__(self):
        return f"QpField(p={self.p}, pi={self.uniformizer})"


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    order = p - 1
    factors = set()
    m = order
    f = 2
    while f * f <= m:
        while m % f == 0:
            factors.add(f)
            m //= f
        f += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, order // f, p) != 1 for f in factors):
            return g
    raise InternalInvariantError(f"no primitive root mod {p}")


@dataclass(frozen=True)
class ExtElement:
    """x0 + x1*theta with p-adic coordinates, living in a fixed Tower."""

    tower: "Tower"
    x0: PadicNumber
    x1: PadicNumber

    def add(self, other: "ExtElement") -> "ExtElement":
        return ExtElement(self.tower, self.x0.add(other.x0), self.x1.add(other.x1))

    def neg(self) -> "ExtElement":
        return ExtElement(self.tower, self.x0.neg(), self.x1.neg())

    def sub(self, other: "ExtElement") -> "ExtElement":
        return self.add(other.neg())

    def mul(self, other: "ExtElement") -> "ExtElement":
        T = self.tower
        a0, a1 = T.a0, T.a1
        x0, x1, y0, y1 = self.x0, self.x1, other.x0, other.x1
        cross = x1.mul(y1)
        c0 = x0.mul(y0).sub(cross.scale_by_rational(a0))
        c1 = x0.mul(y1).add(x1.mul(y0)).sub(cross.scale_by_rational(a1))
        return ExtElement(T, c0, c1)

    def sigma(self) -> "ExtElement":
        """The nontrivial automorphism: theta -> -a1 - theta."""
        return ExtElement(
            self.tower, self.x0.sub(self.x1.scale_by_rational(self.tower.a1)), self.x1.neg()
        )

    def norm(self) -> PadicNumber:
        x0, x1 = self.x0, self.x1
        a0, a1 = self.tower.a0, self.tower.a1
        return x0.mul(x0).sub(x0.mul(x1).scale_by_rational(a1)).add(
            x1.mul(x1).scale_by_rational(a0)
        )

    def trace(self) -> PadicNumber:
        return self.x0.scale_by_rational(Fraction(2)).sub(self.x1.scale_by_rational(self.tower.a1))

    def inv(self) -> "ExtElement":
        n = self.norm().inv()
        s = self.sigma()
        return ExtElement(
            self.tower,
            s.x0.mul(n),
            s.x1.mul(n),
        )

    def scale(self, q) -> "ExtElement":
        q = Fraction(q)
        return ExtElement(self.tower, self.x0.scale_by_rational(q), self.x1.scale_by_rational(q))

    @property
    def valuation(self):
        """v_K, or +inf when the element is zero to precision."""
        T = self.tower
        if T.e == 2:
            cand0 = None if self.x0.is_zero else 2 * self.x0.v
            bound0 = 2 * self.x0.v if self.x0.is_zero else None
            cand1 = None if self.x1.is_zero else 2 * self.x1.v + 1
            bound1 = 2 * self.x1.v + 1 if self.x1.is_zero else None
        else:
            cand0 = None if self.x0.is_zero else self.x0.v
            bound0 = self.x0.v if self.x0.is_zero else None
            cand1 = None if self.x1.is_zero else self.x1.v
            bound1 = self.x1.v if self.x1.is_zero else None
        if cand0 is None and cand1 is None:
            return INF
        if cand0 is None or cand1 is None:
            cand = cand1 if cand0 is None else cand0
            bound = bound0 if cand0 is None else bound1
            if cand < bound:
                return cand
            raise PrecisionError(
                f"valuation ambiguous: candidate {cand} not below zero-precision bound {bound}"
            )
        if T.e == 2 or cand0 != cand1:
            return min(cand0, cand1)
        return cand0  # unramified, equal coordinate valuations: reduction cannot cancel

    def __repr__(self):
        return f"({self.x0}) + ({self.x1})*th"


class Tower:
    """A quadratic extension of Q_p with cached invariants."""

    is_base = False

    def __init__(self, p: int, a1, a0, digits: int = DEFAULT_DIGITS):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.a1 = Fraction(a1)
        self.a0 = Fraction(a0)
        if self.a0 == 0:
            raise InputError("x^2 + a1*x + a0 must be irreducible; a0 = 0 is not")
        for c in (self.a1, self.a0):
            if c != 0 and c.denominator % p == 0:
                raise InputError("defining coefficients must be p-integral")
        v0 = _vp_fraction(self.a0, p)
        v1 = _vp_fraction(self.a1, p) if self.a1 else math.inf
        if v0 == 1 and v1 >= 1:
            self.kind = "ramified"
            self.e, self.f = 2, 1
        elif v0 == 0 and v1 >= 0 and self._unit_poly_irreducible():
            self.kind = "unramified"
            self.e, self.f = 1, 2
        else:
            raise InputError(
                "polynomial is neither Eisenstein nor a unit polynomial irreducible mod p"
            )
        self.q = p**self.f
        self.digits = digits
        self.base = QpField(p, self.pi_F_fraction(), label=f"Q{p}")
        self._uq_cache: dict = {}

        d = self.different_exponent()
        t = self.ramification_break()
        if t != d - 1:
            raise InternalInvariantError(
                f"ramification break {t} does not match different exponent {d} - 1"
            )
        self.d = d
        self.t = t
        self.trace_zero_uniformizer = self.kind == "ramified" and self.a1 == 0
        if self.kind == "unramified":
            self.classification = "unramified"
        else:
            self.classification = "wild" if p == 2 else "tame"
        self.label = f"Q{p}[x]/({self._poly_str()})"

    # -- construction helpers ------------------------------------------

    def _unit_poly_irreducible(self) -> bool:
        p = self.p
        if p == 2:
            return _fraction_mod(self.a1, 2, 1) == 1 and _fraction_mod(self.a0, 2, 1) == 1
        disc = self.a1 * self.a1 - 4 * self.a0
        if disc == 0:
            return False
        if _vp_fraction(disc, p) != 0:
            return False
        from .cyclotomic import legendre

        return legendre(_fraction_mod(disc, p, 1), p) == -1

    def _poly_str(self) -> str:
        terms = ["x^2"]
        if self.a1:
            terms.append(f"{'+' if self.a1 > 0 else '-'}{_coeff_str(abs(self.a1))}x")
        terms.append(f"{'+' if self.a0 > 0 else '-'}{_coeff_str(abs(self.a0))}")
        return "".join(terms)

    # -- invariants -----------------------------------------------------

    def pi_F_fraction(self) -> Fraction:
        """The chosen uniformizer of F: N(pi_K) when ramified, p when unramified."""
        return self.a0 if self.kind == "ramified" else Fraction(self.p)

    def different_exponent(self) -> int:
        """v_K of the derivative of the defining polynomial at theta."""
        fprime = self.element_from_coords(self.a1, 2)
        return int(fprime.valuation)

    def ramification_break(self) -> int:
        """Brute-force scan of v_K(sigma(theta) - theta) - 1.

        Since O_K = O_F[theta], the Galois-action bound on theta controls
        all of O_K, so the unique break is this valuation minus one.
        """
        theta = self.theta()
        return int(theta.sigma().sub(theta).valuation) - 1

    def discriminant_valuation(self) -> int:
        """v_F(a1^2 - 4 a0); equals the different exponent (independent route)."""
        return _vp_fraction(self.a1 * self.a1 - 4 * self.a0, self.p)

    # -- elements ---------------------------------------------------------

    def element_from_coords(self, c0, c1, digits: int | None = None) -> ExtElement:
        digits = digits or self.digits
        c0, c1 = Fraction(c0), Fraction(c1)
        return ExtElement(
            self,
            PadicNumber.from_rational(c0.numerator, c0.denominator, self.p, digits),
            PadicNumber.from_rational(c1.numerator, c1.denominator, self.p, digits),
        )

    def from_base(self, q, digits: int | None = None) -> ExtElement:
        return self.element_from_coords(Fraction(q), 0, digits)

    def theta(self, digits: int | None = None) -> ExtElement:
        return self.element_from_coords(0, 1, digits)

    def zero(self, digits: int | None = None) -> ExtElement:
        return self.element_from_coords(0, 0, digits)

    def one(self, digits: int | None = None) -> ExtElement:
        return self.element_from_coords(1, 0, digits)

    @lru_cache(maxsize=None)
    def _pi_power_coords(self, k: int) -> tuple[Fraction, Fraction]:
        """Exact coordinates of pi_K**k."""
        if self.kind == "unramified":
            return (Fraction(self.p) ** k, Fraction(0))
        if k == 0:
            return (Fraction(1), Fraction(0))
        if k > 0:
            b0, b1 = self._pi_power_coords(k - 1)
            # (b0 + b1 th) * th = -a0 b1 + (b0 - a1 b1) th
            return (-self.a0 * b1, b0 - self.a1 * b1)
        b0, b1 = self._pi_power_coords(k + 1)
        # inverse of theta: (-a1 - th)/a0
        i0, i1 = -self.a1 / self.a0, Fraction(-1) / self.a0
        return (b0 * i0 - self.a0 * b1 * i1, b0 * i1 + b1 * i0 - self.a1 * b1 * i1)

    def pi_power(self, k: int, digits: int | None = None) -> ExtElement:
        c0, c1 = self._pi_power_coords(k)
        return self.element_from_coords(c0, c1, digits)

    def trace_zero_generator(self) -> tuple[Fraction, Fraction, int]:
        """Coordinates of delta spanning the trace-zero line, with v_K(delta).

        delta = theta + a1/2; every trace-zero element is an F-multiple, so
        v_K on the line is v_K(delta) mod 2 -- the parity that decides which
        additive-character conductors are reachable with trace-zero twists.
        """
        c0, c1 = self.a1 / 2, Fraction(1)
        delta = self.element_from_coords(c0, c1)
        return c0, c1, int(delta.valuation)

    # -- residue rings O_K / P_K^m ---------------------------------------

    def residue_exponents(self, m: int) -> tuple[int, int]:
        if self.kind == "ramified":
            return ((m + 1) // 2, m // 2)
        return (m, m)

    def res_identity(self, m: int):
        e0, e1 = self.residue_exponents(m)
        return (1 % self.p**e0, 0)

    def _a_ints(self, exponent: int) -> tuple[int, int]:
        return (
            _fraction_mod(self.a1, self.p, exponent),
            _fraction_mod(self.a0, self.p, exponent),
        )

    def res_mul(self, m: int, x, y):
        e0, e1 = self.residue_exponents(m)
        p = self.p
        m0, m1 = p**e0, p**e1
        A1, A0 = self._a_ints(e0)
        cross = x[1] * y[1]
        c0 = (x[0] * y[0] - A0 * cross) % m0
        c1 = ((x[0] * y[1] + x[1] * y[0] - A1 * cross) % m1) if e1 else 0
        return (c0, c1)

    def res_sigma(self, m: int, x):
        e0, e1 = self.residue_exponents(m)
        A1, _ = self._a_ints(e0)
        return ((x[0] - A1 * x[1]) % self.p**e0, (-x[1]) % self.p**e1 if e1 else 0)

    def res_norm_fraction(self, x) -> Fraction:
        """Exact norm of the integer lift x0 + x1*theta."""
        return Fraction(x[0]) ** 2 - self.a1 * x[0] * x[1] + self.a0 * Fraction(x[1]) ** 2

    def res_inv(self, m: int, x):
        e0, e1 = self.residue_exponents(m)
        n = self.res_norm_fraction(x)
        if _vp_fraction(n, self.p) != 0:
            raise InputError("residue class is not a unit")
        s = self.res_sigma(m, x)
        ninv0 = _fraction_mod(1 / n, self.p, e0)
        c0 = s[0] * ninv0 % self.p**e0
        c1 = (s[1] * _fraction_mod(1 / n, self.p, e1) % self.p**e1) if e1 else 0
        return (c0, c1)

    def unit_reps(self, m: int):
        e0, e1 = self.residue_exponents(m)
        p = self.p
        reps = []
        if self.kind == "ramified":
            for i0 in range(1, p**e0):
                if i0 % p == 0:
                    continue
                for i1 in range(p**e1):
                    reps.append((i0, i1))
        else:
            for i0 in range(p**e0):
                for i1 in range(p**e1):
                    if i0 % p or i1 % p:
                        reps.append((i0, i1))
        return tuple(reps)

    def unit_gen_candidates(self, m: int):
        p = self.p
        gens = []
        if self.q > 2:
            gens.append(self._teichmueller_generator(m))
        for j in range(1, m):
            gens.extend(self.level_unit_generators(j, m))
        identity = self.res_identity(m)
        return [g for g in gens if g != identity]

    def level_unit_generators(self, j: int, m: int):
        """Classes of 1 + pi^j * rho for rho running over a residue basis."""
        out = []
        for rho in self._residue_basis():
            elem = self.one().add(self.pi_power(j).mul(self.element_from_coords(*rho)))
            out.append(self.residue_class(elem, m))
        return out

    def _residue_basis(self):
        if self.kind == "ramified":
            return [(Fraction(1), Fraction(0))]
        return [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]

    def _teichmueller_generator(self, m: int):
        """Lift of a generator of the residue field's multiplicative group."""
        p = self.p
        if self.kind == "ramified":
            g = _primitive_root(p)
            e0, e1 = self.residue_exponents(m)
            return (g % p**e0, 0)
        for i0 in range(p):
            for i1 in range(p):
                if i0 == 0 and i1 == 0:
                    continue
                cand = (i0, i1)
                order = 1
                acc = cand
                while acc != (1, 0):
                    acc = self.res_mul(1, acc, cand)
                    order += 1
                    if order > self.q:
                        raise InternalInvariantError("residue order search ran away")
                if order == self.q - 1:
                    e0, e1 = self.residue_exponents(m)
                    return (i0 % p**e0, i1 % p**e1)
        raise InternalInvariantError("no residue field generator found")

    def residue_class(self, x: ExtElement, m: int):
        """Class of an integral element in O_K/P_K^m as a canonical pair."""
        e0, e1 = self.residue_exponents(m)
        return (x.x0.integer_residue(e0), x.x1.integer_residue(e1) if e1 else 0)

    def decompose(self, x: ExtElement, m: int):
        """x in K^x as (v_K(x), unit class mod U_K^m)."""
        v = x.valuation
        if v == INF:
            raise PrecisionError("cannot decompose an element that is zero to precision")
        v = int(v)
        unit = x.mul(self.pi_power(-v, digits=max(m + 4, x.x0.prec)))
        return v, self.residue_class(unit, m)

    def lift_unit(self, key, digits: int | None = None) -> ExtElement:
        """Integer-coordinate lift of a residue unit class."""
        return self.element_from_coords(key[0], key[1], digits)

    def embed_base_unit(self, key: int, m: int):
        """Class in O_K/P_K^m of a unit of O_F given mod p**ceil(m/e)."""
        e0, e1 = self.residue_exponents(m)
        return (key % self.p**e0, 0)

    # -- descriptors ------------------------------------------------------

    def descriptor(self) -> dict:
        return {
            "p": self.p,
            "poly": [_coeff_str(self.a1), _coeff_str(self.a0)],
            "class": self.classification,
            "e": self.e,
            "f": self.f,
            "d": self.d,
            "t": self.t,
            "label": self.label,
        }

    def __repr__(self):
        return f"Tower({self.label}, e={self.e}, f={self.f}, d={self.d}, t={self.t})"


def make_tower(p: int, coeffs, digits: int = DEFAULT_DIGITS) -> Tower:
    """Build a quadratic tower from (a1, a0)."""
    a1, a0 = coeffs
    return Tower(p, a1, a0, digits=digits)


@dataclass(frozen=True)
class NormGroup:
    """Image of the norm map in F^x / (U_F^level, pi_F^2)."""

    level: int
    p: int
    elements: frozenset  # pairs (value mod 2, unit class mod p**level)
    ambient_order: int

    @property
    def index(self) -> int:
        return self.ambient_order // len(self.elements)

    def contains_pair(self, vmod2: int, unit_key: int) -> bool:
        return (vmod2 % 2, unit_key) in self.elements


def norm_group(T: Tower, n: int) -> NormGroup:
    """Norms of K^x in the finite quotient, computed from unit generators.

    The image is a subgroup, so closing the norms of generators of
    U_K/U_K^(2n) together with the class of N(pi_K) is exhaustive; class
    field theory demands index exactly 2 and a violation is a bug.
    """
    if n < 1:
        raise InputError("norm group level must be >= 1")
    p = T.p
    pn = p**n
    gens = []
    pi_F = T.pi_F_fraction()
    if T.kind == "ramified":
        gens.append((1, 1 % pn))  # N(pi_K) = pi_F exactly
    else:
        gens.append((0, 1 % pn))  # N(pi_K) = pi_F^2
    for g in T.unit_gen_candidates(2 * n):
        nf = T.res_norm_fraction(g)
        v = _vp_fraction(nf, p)
        if v != 0:
            raise InternalInvariantError("norm of a unit is not a unit")
        gens.append((0, _fraction_mod(nf, p, n)))

    def mul(x, y):
        return ((x[0] + y[0]) % 2, x[1] * y[1] % pn)

    elements = subgroup_closure((0, 1 % pn), gens, mul)
    phi = pn - pn // p
    ng = NormGroup(level=n, p=p, elements=elements, ambient_order=2 * phi)
    if ng.index != 2:
        raise InternalInvariantError(
            f"norm group of {T.label} has index {ng.index} at level {n}; expected 2"
        )
    return ng


def norm_group_contains(T: Tower, ng: NormGroup, value) -> bool:
    """Membership of an exact rational (element of F^x) in the norm group."""
    value = Fraction(value)
    v = _vp_fraction(value, T.p)
    unit = value / T.pi_F_fraction() ** v
    return ng.contains_pair(v % 2, _fraction_mod(unit, T.p, ng.level))


def omega_character(T: Tower, level: int | None = None):
    """The quadratic character of F^x cut out by the norm group.

    Returned as a multiplicative character on the base field at the given
    unit level (default t + 2, enough to expose the conductor).
    """
    from .characters import MultChar, unit_quotient

    if level is None:
        level = max(T.t + 2, 1)
    uq = unit_quotient(T.base, level)
    if T.kind == "ramified":
        ng = norm_group(T, level)
        exps = []
        for h, order in zip(uq.structure.basis, uq.structure.orders):
            if ng.contains_pair(0, h):
                exps.append(0)
            else:
                if order % 2:
                    raise InternalInvariantError("norm-nontrivial basis element of odd order")
                exps.append(order // 2)
        pi_value_num = 0
    else:
        exps = [0] * len(uq.structure.basis)
        pi_value_num = 1
    from .cyclotomic import Angle

    return MultChar(
        ctx=T.base,
        level=level,
        pi_value=Angle(pi_value_num, 2) if pi_value_num else Angle.zero(),
        exps=tuple(exps),
    )


def quadratic_catalog(p: int) -> list[Tower]:
    """One tower per isomorphism class of quadratic extension of Q_p."""
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    if p == 2:
        coeffs = [
            (1, 1),        # unramified
            (-2, 2),       # theta = 1+i
            (-2, 6),       # theta = 1+sqrt(-5)
            (0, -2),       # sqrt(2)
            (0, 2),        # sqrt(-2)
            (0, -10),      # sqrt(10)
            (0, 10),       # sqrt(-10)
        ]
    else:
        u = _least_nonresidue(p)
        coeffs = [(0, -u), (0, -p), (0, -u * p)]
    return [make_tower(p, c) for c in coeffs]


def _least_nonresidue(p: int) -> int:
    from .cyclotomic import legendre

    for u in range(2, p):
        if legendre(u, p) == -1:
            return u
    raise InternalInvariantError(f"no quadratic nonresidue mod {p}")


def catalog_fingerprints(towers: list[Tower], level: int = 3) -> list[tuple]:
    """(t, norm-group) fingerprints in standard coordinates of Q_p^x.

    The norm subgroup is expressed against the standard uniformizer p (not
    the tower's pi_F) so fingerprints of different towers are comparable;
    they are pairwise distinct iff the isomorphism classes are.
    """
    prints = []
    for T in towers:
        if T.kind != "ramified":
            prints.append((T.t, "unramified"))
            continue
        p, pn = T.p, T.p**level

        def mul(x, y):
            return ((x[0] + y[0]) % 2, x[1] * y[1] % pn)

        u0 = T.pi_F_fraction() / p
        gens = [(1, _fraction_mod(u0, p, level))]
        for g in T.unit_gen_candidates(2 * level):
            gens.append((0, _fraction_mod(T.res_norm_fraction(g), p, level)))
        prints.append((T.t, tuple(sorted(subgroup_closure((0, 1 % pn), gens, mul)))))
    return prints
