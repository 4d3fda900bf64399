"""Finite character theory of K^x and of the additive group of K.

Unit groups U/U^m are resolved into independent cyclic factors by
exhaustive discrete log (the quotients are tiny), multiplicative
characters are stored as exponent vectors against that basis plus a value
at the uniformizer, and additive characters are twists c*(psi_F o Tr) of
the standard base character.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import Angle
from .errors import InputError, InternalInvariantError
from .groups import GroupStructure, abelian_structure
from .padic import INF, PadicNumber
from .tower import ExtElement, QpField, Tower, omega_character

_UQ_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


@dataclass(frozen=True)
class UnitQuotient:
    """U/U^m for the base field or a tower, with its cyclic decomposition."""

    ctx: object
    m: int
    structure: GroupStructure

    @property
    def order(self) -> int:
        return self.structure.order


def unit_quotient(ctx, m: int) -> UnitQuotient:
    """Cached structure of U/U^m; |U/U^m| = (q-1) q^(m-1) is asserted."""
    if m < 1:
        raise InputError("unit quotient level must be >= 1")
    per = _UQ_CACHE.setdefault(ctx, {})
    if m not in per:
        expected = (ctx.q - 1) * ctx.q ** (m - 1)
        structure = abelian_structure(
            ctx.res_identity(m),
            ctx.unit_gen_candidates(m),
            lambda x, y: ctx.res_mul(m, x, y),
            lambda x: ctx.res_inv(m, x),
            expected_order=expected,
        )
        per[m] = UnitQuotient(ctx, m, structure)
    return per[m]


def _level0_generators(ctx, m: int):
    if ctx.q == 2:
        return []
    if isinstance(ctx, QpField):
        from .tower import _primitive_root

        return [_primitive_root(ctx.p) % ctx.p**m]
    return [ctx._teichmueller_generator(m)]


def project_unit_key(ctx, key, m_from: int, m_to: int):
    """Reduce a unit class mod U^m_from to its class mod U^m_to."""
    if m_to > m_from:
        raise InputError("cannot project to a deeper level")
    if isinstance(ctx, QpField):
        return key % ctx.p**m_to
    e0, e1 = ctx.residue_exponents(m_to)
    return (key[0] % ctx.p**e0, key[1] % ctx.p**e1 if e1 else 0)


@dataclass(frozen=True)
class MultChar:
    """Multiplicative character of K^x (or F^x) defined modulo U^level."""

    ctx: object
    level: int
    pi_value: Angle
    exps: tuple

    def __post_init__(self):
        uq = unit_quotient(self.ctx, self.level)
        if len(self.exps) != len(uq.structure.orders):
            raise InputError("exponent vector does not match the unit basis")
        for e, d in zip(self.exps, uq.structure.orders):
            if not 0 <= e < d:
                raise InputError("exponent out of range for its cyclic factor")

    @property
    def uq(self) -> UnitQuotient:
        return unit_quotient(self.ctx, self.level)

    def value_on_unit_key(self, key) -> Angle:
        vec = self.uq.structure.dlog[key]
        total = Fraction(0)
        for e, d, a in zip(self.exps, self.uq.structure.orders, vec):
            if e and a:
                total += Fraction(e * a, d)
        return Angle.from_fraction(total)

    def eval(self, x) -> Angle:
        """chi(x) as an exact angle in Q/Z."""
        v, key = self.ctx.decompose(x, self.level)
        return self.pi_value.scale(v) + self.value_on_unit_key(key)

    def inverse(self) -> "MultChar":
        orders = self.uq.structure.orders
        return MultChar(
            self.ctx,
            self.level,
            -self.pi_value,
            tuple((d - e) % d for e, d in zip(self.exps, orders)),
        )

    @property
    def conductor(self) -> int:
        """Smallest a with trivial restriction to U^a, by a level scan."""
        deepest = -1
        for g in _level0_generators(self.ctx, self.level):
            if not self.value_on_unit_key(g).is_zero:
                deepest = max(deepest, 0)
        for j in range(1, self.level):
            for g in self.ctx.level_unit_generators(j, self.level):
                if not self.value_on_unit_key(g).is_zero:
                    deepest = max(deepest, j)
        return deepest + 1

    def is_unit_trivial(self) -> bool:
        return all(e == 0 for e in self.exps)

    def lift_to(self, level: int) -> "MultChar":
        if level == self.level:
            return self
        if level < self.level:
            raise InputError("can only lift to a deeper level")
        uq2 = unit_quotient(self.ctx, level)
        exps2 = []
        for h, d in zip(uq2.structure.basis, uq2.structure.orders):
            val = self.value_on_unit_key(project_unit_key(self.ctx, h, level, self.level))
            scaled = val.frac * d
            if scaled.denominator != 1:
                raise InternalInvariantError("character does not extend to the deeper level")
            exps2.append(int(scaled) % d)
        return MultChar(self.ctx, level, self.pi_value, tuple(exps2))

    def twist(self, other: "MultChar") -> "MultChar":
        """Pointwise product of two characters on the same field."""
        if self.ctx is not other.ctx:
            raise InputError("characters live on different fields")
        m = max(self.level, other.level)
        a, b = self.lift_to(m), other.lift_to(m)
        orders = a.uq.structure.orders
        return MultChar(
            self.ctx,
            m,
            a.pi_value + b.pi_value,
            tuple((x + y) % d for x, y, d in zip(a.exps, b.exps, orders)),
        )

    def restrict_to_F(self) -> "MultChar":
        """The induced character of F^x, at level ceil(level/e)."""
        T = self.ctx
        if not isinstance(T, Tower):
            raise InputError("restriction applies to characters of an extension")
        lvl = restriction_level(T, self.level)
        base_uq = unit_quotient(T.base, lvl)
        exps = []
        for h, d in zip(base_uq.structure.basis, base_uq.structure.orders):
            emb = T.embed_base_unit(h, self.level)
            val = self.value_on_unit_key(emb)
            scaled = val.frac * d
            if scaled.denominator != 1:
                raise InternalInvariantError("restriction is not defined at this level")
            exps.append(int(scaled) % d)
        pi_elem = T.from_base(T.pi_F_fraction())
        return MultChar(T.base, lvl, self.eval(pi_elem), tuple(exps))

    def descriptor(self) -> dict:
        return {
            "level": self.level,
            "pi_value": str(self.pi_value),
            "unit_exponents": list(self.exps),
            "conductor": self.conductor,
        }

    def sort_key(self):
        return (self.conductor, self.exps, self.pi_value.frac)


def restriction_level(T: Tower, m: int) -> int:
    """Level of F^x seen inside K^x/U_K^m: U_K^m meets F^x in U_F^ceil(m/2)
    for ramified towers and U_F^m for unramified ones."""
    return (m + 1) // 2 if T.kind == "ramified" else m


def conductor_mult(chi: MultChar) -> int:
    return chi.conductor


def eval_mult(chi: MultChar, x) -> Angle:
    return chi.eval(x)


@dataclass(frozen=True)
class AddChar:
    """Additive character psi = c * (psi_F o Tr) of K.

    psi_F is the standard character of conductor base_conductor (angle
    p**base_conductor * x in Q_p/Z_p); the conductor of psi follows the
    exact shift law n(psi) = 2 n(psi_F) + v_K(c) + d.
    """

    tower: Tower
    c: ExtElement
    base_conductor: int
    conductor: int = field(init=False)
    trivial_on_F: bool = field(init=False)

    def __post_init__(self):
        v = self.c.valuation
        if v == INF:
            raise InputError("twist element c must be nonzero")
        # n(psi) = e * n(psi_F) + v_K(c) + d; the factor is 2 in the ramified case
        object.__setattr__(
            self,
            "conductor",
            self.tower.e * self.base_conductor + int(v) + self.tower.d,
        )
        object.__setattr__(self, "trivial_on_F", self.c.trace().is_zero)

    def eval(self, x: ExtElement) -> Angle:
        y = self.c.mul(x).trace()
        if self.base_conductor:
            y = y.scale_by_rational(Fraction(self.tower.p) ** self.base_conductor)
        return Angle.from_fraction(y.fractional_angle())

    def descriptor(self) -> dict:
        c0 = self.c.x0
        c1 = self.c.x1
        return {
            "n_psi": self.conductor,
            "base_conductor": self.base_conductor,
            "c": str(self.c),
            "trace_zero": self.trivial_on_F,
        }


def make_additive(T: Tower, c: ExtElement, base_conductor: int = 0) -> AddChar:
    return AddChar(T, c, base_conductor)


def eval_add(psi: AddChar, x: ExtElement) -> Angle:
    return psi.eval(x)


def canonical_additive_c(
    T: Tower, n_psi: int, base_conductor: int = 0, trace_zero: bool = True, digits=None
):
    """Minimal-shape twist element achieving conductor n_psi, or None.

    With trace_zero the element is a pi_F-power multiple of the trace-zero
    line generator; a parity mismatch between the target valuation and the
    line's valuation parity means no trace-zero twist exists (the reported
    vacuity witness for the sign-law hypotheses).
    """
    target_v = n_psi - T.e * base_conductor - T.d
    if not trace_zero:
        return T.pi_power(target_v, digits)
    c0, c1, vdelta = T.trace_zero_generator()
    if T.kind == "ramified":
        # F-scaling moves v_K by even steps only, so the line has one parity
        if (target_v - vdelta) % 2:
            return None
        k = (target_v - vdelta) // 2
    else:
        k = target_v - vdelta
    s = T.pi_F_fraction() ** k
    return T.element_from_coords(c0 * s, c1 * s, digits)


def trace_zero_parity_analysis(T: Tower, base_conductor: int = 0) -> str:
    """Human-readable witness of which n(psi) are reachable with Tr(c) = 0."""
    _, _, vdelta = T.trace_zero_generator()
    if T.kind != "ramified":
        return f"unramified {T.label}: trace-zero twists realize every conductor"
    parity = (2 * base_conductor + vdelta + T.d) % 2
    return (
        f"trace-zero line of {T.label} has v_K = {vdelta} mod 2, different exponent "
        f"{T.d}, so trace-zero twists give n(psi) = {parity} mod 2 only"
    )


def enumerate_symplectic(T: Tower, max_level: int) -> list[MultChar]:
    """All characters of K^x/U_K^max_level restricting to omega on F^x.

    The value at pi_K is pinned up to the unramified quadratic twist by
    chi(pi_K)^2 = chi(pi_K^2); both square roots are emitted.  Output is
    canonically sorted by (conductor, exponents, uniformizer angle).
    """
    if max_level < 1:
        raise InputError("max_level must be >= 1")
    uq = unit_quotient(T, max_level)
    lvl = restriction_level(T, max_level)
    omega = omega_character(T, lvl)
    base_uq = unit_quotient(T.base, lvl)
    targets = []
    for h in base_uq.structure.basis:
        emb = T.embed_base_unit(h, max_level)
        targets.append((emb, omega.value_on_unit_key(h)))

    orders = uq.structure.orders
    out = []
    if T.kind == "ramified":
        w_elem = T.pi_power(2).scale(1 / T.pi_F_fraction())
        _, w_key = T.decompose(w_elem, max_level)
    for exps in itertools.product(*[range(d) for d in orders]):
        cand = MultChar(T, max_level, Angle.zero(), tuple(exps))
        if any(cand.value_on_unit_key(emb) != tgt for emb, tgt in targets):
            continue
        if T.kind == "ramified":
            root = cand.value_on_unit_key(w_key).half()
            for branch in (root, root + Angle(1, 2)):
                out.append(MultChar(T, max_level, branch, tuple(exps)))
        else:
            out.append(MultChar(T, max_level, Angle(1, 2), tuple(exps)))
    out.sort(key=MultChar.sort_key)
    return out


def restrict_to_F(chi: MultChar) -> MultChar:
    return chi.restrict_to_F()


def twist(chi: MultChar, eta: MultChar) -> MultChar:
    return chi.twist(eta)


def is_symplectic(chi: MultChar) -> bool:
    """Definitional check: does chi restrict to omega on F^x?"""
    T = chi.ctx
    restriction = chi.restrict_to_F()
    om = omega_character(T, restriction.level)
    return (
        restriction.pi_value == om.pi_value
        and restriction.exps == om.exps
    )
