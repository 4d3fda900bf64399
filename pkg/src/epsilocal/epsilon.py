"""The local-constant engine: Gauss sums, gauge elements, shortcut formulas.

epsilon_naive evaluates the defining unit-group sum exactly in a cyclotomic
field.  epsilon_lamprecht collapses the sum onto U^m/U^(a-m) once a gauge
element c (v_K(c) = a(chi) + n(psi), chi(1+y) = psi(y/c) to the required
depth) is known; the even/odd conductor shortcuts are its m = a/2 and
m = (a-1)/2 special cases.  All routes must agree exactly; the modulus law
S * conj(S) = q^a is asserted on every computed sum.

Convention: the s-parameter is fixed at the symmetric point once and for
all, so values are plain complex numbers of modulus one.
"""

from __future__ import annotations

import dataclasses
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .characters import AddChar, MultChar, unit_quotient
from .cyclotomic import Angle, CycNumber, embed_angle, sqrt_q
from .errors import InputError, InternalInvariantError
from .padic import PrecisionBudget
from .tower import ExtElement, Tower


@dataclass(frozen=True)
class GaugeElement:
    """c with v_K(c) = a(chi) + n(psi) solving chi(1+y) = psi(y/c) at depth a-m."""

    c: ExtElement
    valuation: int
    level: int
    unit_key: tuple

    def __str__(self):
        return f"pi^{self.valuation} * {self.unit_key}"


@dataclass(frozen=True)
class EpsilonValue:
    """An exactly computed local constant together with its provenance."""

    value: CycNumber
    classification: str
    class_angle: Angle | None
    sum_s: CycNumber
    a_chi: int
    n_psi: int
    formula: str
    gauge_str: str | None

    def to_json(self, char_descriptor=None, psi_descriptor=None) -> dict:
        out = {
            "formula": self.formula,
            "gauge_c": self.gauge_str,
            "value": self.value.to_json(),
            "class": self.classification,
            "class_angle": str(self.class_angle) if self.class_angle else None,
            "a_chi": self.a_chi,
            "n_psi": self.n_psi,
        }
        if char_descriptor is not None:
            out["char"] = char_descriptor
        if psi_descriptor is not None:
            out["psi"] = psi_descriptor
        return out


def classify_value(value: CycNumber) -> tuple[str, Angle | None]:
    angle = value.classify_root_of_unity()
    if angle is None:
        return "other", None
    if angle.den == 1:
        return "plus_one", angle
    if angle.den == 2:
        return "minus_one", angle
    if angle.den in (4, 8):
        return "eighth_root", angle
    return "other", angle


def computation_budget(chi: MultChar, psi: AddChar) -> PrecisionBudget:
    a = chi.conductor
    n = psi.conductor
    d = psi.tower.d
    return PrecisionBudget(
        a + abs(n) + d + 4, reason=f"epsilon sum with a(chi)={a}, n(psi)={n}, d={d}"
    )


def computation_conductor(chi: MultChar, psi: AddChar) -> int:
    """The single cyclotomic conductor shared by every value in one epsilon run.

    lcm of 8, the orders of the character's values, and p to the largest
    exponent an additive-character angle can carry (ceil(a/2), from the
    trace image of the summands); the exact square root of q joins in when
    the normalization needs it.
    """
    T = psi.tower
    a = chi.conductor
    n = 8
    orders = [chi.pi_value.order]
    for e, d in zip(chi.exps, chi.uq.structure.orders):
        orders.append(d // gcd(e, d) if e else 1)
    for o in orders:
        n = n * o // gcd(n, o)
    # additive angles have p-power denominators bounded by ceil(a/e): the
    # trace divides valuations by e before they reach Q_p/Z_p
    pd = T.p ** ((a + T.e - 1) // T.e)
    n = n * pd // gcd(n, pd)
    if a % 2 and T.f == 1:
        sq = sqrt_q(T.q).n
        n = n * sq // gcd(n, sq)
    return n


def _angle_exponent(angle: Angle, n_cyc: int) -> int:
    if n_cyc % angle.den:
        raise InternalInvariantError(
            f"angle of order {angle.den} escapes the computation conductor {n_cyc}"
        )
    return angle.num * (n_cyc // angle.den) % n_cyc


def _sum_angles(angle_counter: Counter, n_cyc: int) -> CycNumber:
    return CycNumber.from_monomials(
        n_cyc, {e: Fraction(c) for e, c in sorted(angle_counter.items())}
    )


def _q_neg_half_power(q: int, a: int, n_cyc: int) -> CycNumber:
    """q^(-a/2) as an exact cyclotomic number."""
    if a % 2 == 0:
        return CycNumber.from_rational(Fraction(1, q ** (a // 2)), n_cyc)
    return sqrt_q(q).lift(n_cyc).scale(Fraction(1, q ** ((a + 1) // 2)))


def _check_modulus(S: CycNumber, q: int, a: int, what: str):
    if not (S * S.conj() == q**a):
        raise InternalInvariantError(f"|S|^2 != q^a for {what}; the sum is not primitive")


def _finalize(chi, psi, S_full, chi_c_angle, n_cyc, formula, gauge_str) -> EpsilonValue:
    T = psi.tower
    a = chi.conductor
    _check_modulus(S_full, T.q, a, formula)
    value = embed_angle(chi_c_angle, n_cyc) * S_full * _q_neg_half_power(T.q, a, n_cyc)
    if not (value * value.conj() == 1):
        raise InternalInvariantError("epsilon value does not have modulus one")
    cls, angle = classify_value(value)
    return EpsilonValue(
        value=value,
        classification=cls,
        class_angle=angle,
        sum_s=S_full,
        a_chi=a,
        n_psi=psi.conductor,
        formula=formula,
        gauge_str=gauge_str,
    )


def _require_tower_pair(chi: MultChar, psi: AddChar) -> Tower:
    T = psi.tower
    if chi.ctx is not T:
        raise InputError("character and additive character live on different fields")
    return T


def epsilon_naive(chi: MultChar, psi: AddChar) -> EpsilonValue:
    """The defining sum over U/U^a with c = pi^(a + n).

    Rejects unramified chi: the unit-group integral formula needs a >= 1.
    """
    T = _require_tower_pair(chi, psi)
    a = chi.conductor
    if a < 1:
        raise InputError("epsilon_naive requires a ramified character (a(chi) >= 1)")
    n = psi.conductor
    digits = computation_budget(chi, psi).required_digits
    n_cyc = computation_conductor(chi, psi)
    c = T.pi_power(a + n, digits)
    c_inv = T.pi_power(-(a + n), digits)
    uq = unit_quotient(T, a)
    terms: Counter = Counter()
    for key in uq.structure.reps:
        x = T.lift_unit(key, digits)
        angle = -chi.eval(x) + psi.eval(x.mul(c_inv))
        terms[_angle_exponent(angle, n_cyc)] += 1
    S = _sum_angles(terms, n_cyc)
    return _finalize(chi, psi, S, chi.eval(c), n_cyc, "naive", None)


def _gauge_test_points(T: Tower, a: int, m: int, digits: int):
    """Additive generators of P^(a-m)/P^a; checking the gauge there suffices."""
    points = []
    for j in range(a - m, a):
        for rho in T._residue_basis():
            points.append(T.pi_power(j, digits).mul(T.element_from_coords(*rho, digits=digits)))
    return points


def _gauge_holds(chi: MultChar, psi: AddChar, c_inv: ExtElement, points) -> bool:
    one = psi.tower.one()
    for y in points:
        if chi.eval(one.add(y)) != psi.eval(c_inv.mul(y)):
            return False
    return True


def solve_gauge(chi: MultChar, psi: AddChar, m: int) -> GaugeElement:
    """Exhaustive search for a gauge element at level m (2m <= a).

    The unit part is determined modulo U^m, so the transversal of U/U^m is
    scanned in lexicographic order and the least solution is returned.
    Existence is guaranteed; exhaustion without a solution is a bug.
    """
    T = _require_tower_pair(chi, psi)
    a = chi.conductor
    if a < 1:
        raise InputError("gauge search requires a ramified character")
    if m < 0 or 2 * m > a:
        raise InputError(f"gauge level must satisfy 0 <= 2m <= a(chi) = {a}")
    n = psi.conductor
    digits = computation_budget(chi, psi).required_digits
    v_c = a + n
    pi_vc = T.pi_power(v_c, digits)
    pi_vc_inv = T.pi_power(-v_c, digits)
    if m == 0:
        identity = T.res_identity(1)
        return GaugeElement(c=pi_vc, valuation=v_c, level=0, unit_key=identity)
    points = _gauge_test_points(T, a, m, digits)
    for key in unit_quotient(T, m).structure.reps:
        u = T.lift_unit(key, digits)
        c_inv = u.inv().mul(pi_vc_inv)
        if _gauge_holds(chi, psi, c_inv, points):
            return GaugeElement(c=pi_vc.mul(u), valuation=v_c, level=m, unit_key=key)
    raise InternalInvariantError(
        f"no gauge element exists at level {m} for a={a}, n={n}; "
        "local additive duality guarantees one"
    )


def verify_gauge(chi: MultChar, psi: AddChar, gauge: GaugeElement, m: int) -> bool:
    T = _require_tower_pair(chi, psi)
    digits = computation_budget(chi, psi).required_digits
    points = _gauge_test_points(T, chi.conductor, m, digits)
    return _gauge_holds(chi, psi, gauge.c.inv(), points)


def _additive_reps(T: Tower, lo: int, hi: int):
    """Exact coordinate representatives of P^lo / P^hi (including zero)."""
    p = T.p
    if T.kind == "ramified":
        v0, v1 = (lo + 1) // 2, lo // 2
        e0, e1 = (hi + 1) // 2, hi // 2
        return [
            (Fraction(p**v0 * k0), Fraction(p**v1 * k1))
            for k0 in range(p ** (e0 - v0))
            for k1 in range(p ** (e1 - v1))
        ]
    return [
        (Fraction(p**lo * k0), Fraction(p**lo * k1))
        for k0 in range(p ** (hi - lo))
        for k1 in range(p ** (hi - lo))
    ]


def epsilon_lamprecht(
    chi: MultChar, psi: AddChar, m: int, gauge: GaugeElement | None = None
) -> EpsilonValue:
    """The collapsed formula at gauge level m; m = 0 is the defining sum.

    The stored sum is lifted back to full size (q^m times the partial sum)
    so the modulus law and the serialized value are route-independent.
    """
    T = _require_tower_pair(chi, psi)
    a = chi.conductor
    if a < 1:
        raise InputError("epsilon_lamprecht requires a ramified character")
    if m < 0 or 2 * m > a:
        raise InputError(f"gauge level must satisfy 0 <= 2m <= a(chi) = {a}")
    if gauge is None:
        gauge = solve_gauge(chi, psi, m)
    elif m > 0 and not verify_gauge(chi, psi, gauge, m):
        raise InputError("supplied element does not satisfy the gauge condition")
    digits = computation_budget(chi, psi).required_digits
    n_cyc = computation_conductor(chi, psi)
    c_inv = gauge.c.inv()
    terms: Counter = Counter()
    if m == 0:
        for key in unit_quotient(T, a).structure.reps:
            x = T.lift_unit(key, digits)
            angle = -chi.eval(x) + psi.eval(c_inv.mul(x))
            terms[_angle_exponent(angle, n_cyc)] += 1
        S_full = _sum_angles(terms, n_cyc)
    else:
        one = T.one(digits)
        for z0, z1 in _additive_reps(T, m, a - m):
            x = one.add(T.element_from_coords(z0, z1, digits=digits))
            angle = -chi.eval(x) + psi.eval(c_inv.mul(x))
            terms[_angle_exponent(angle, n_cyc)] += 1
        S_full = _sum_angles(terms, n_cyc).scale(T.q**m)
    gauge_str = str(gauge)
    return _finalize(chi, psi, S_full, chi.eval(gauge.c), n_cyc, f"lamprecht(m={m})", gauge_str)


def epsilon_even(chi: MultChar, psi: AddChar, gauge: GaugeElement | None = None) -> EpsilonValue:
    """Single-term shortcut chi(c) psi(1/c) for even conductor a = 2d."""
    a = chi.conductor
    if a < 2 or a % 2:
        raise InputError("epsilon_even requires an even conductor >= 2")
    out = epsilon_lamprecht(chi, psi, a // 2, gauge)
    return dataclasses.replace(out, formula="even")


def epsilon_odd(chi: MultChar, psi: AddChar, gauge: GaugeElement | None = None) -> EpsilonValue:
    """chi(c) psi(1/c) times the central quadratic sum, for a = 2d+1 >= 3."""
    a = chi.conductor
    if a < 3 or a % 2 == 0:
        raise InputError("epsilon_odd requires an odd conductor >= 3")
    out = epsilon_lamprecht(chi, psi, (a - 1) // 2, gauge)
    return dataclasses.replace(out, formula="odd")


def central_gauss_sum(chi: MultChar, psi: AddChar, gauge: GaugeElement):
    """The normalized central sum over P^t/P^(t+1) and its quadratic diagnostics.

    Requires a(chi) = 2t + 1 with t the ramification break, and a gauge of
    level t (depth P^(t+1)).  Returns (value, diagnostics); the diagnostics
    record the residue-level quadratic character table, its gamma
    invariants, and the defining relation of the auxiliary additive
    character on the residue field when p = 2.
    """
    T = _require_tower_pair(chi, psi)
    a = chi.conductor
    t = T.t
    if a != 2 * t + 1:
        raise InputError(f"central sum needs a(chi) = 2t+1 = {2 * t + 1}, got {a}")
    if not verify_gauge(chi, psi, gauge, t):
        raise InputError("supplied element does not satisfy the central-sum gauge condition")
    digits = computation_budget(chi, psi).required_digits
    n_cyc = computation_conductor(chi, psi)
    c_inv = gauge.c.inv()
    one = T.one(digits)
    terms: Counter = Counter()
    qbar_table = {}
    for z0, z1 in _additive_reps(T, t, t + 1):
        x = T.element_from_coords(z0, z1, digits=digits)
        angle = -chi.eval(one.add(x)) + psi.eval(c_inv.mul(x))
        terms[_angle_exponent(angle, n_cyc)] += 1
        qbar_table[(str(z0), str(z1))] = str(angle)
    S = _sum_angles(terms, n_cyc)
    _check_modulus(S, T.q, 1, "central sum")
    value = S * _q_neg_half_power(T.q, 1, n_cyc)
    if not (value * value.conj() == 1):
        raise InternalInvariantError("central sum does not have modulus one")
    cls, angle = classify_value(value)
    diagnostics = {
        "qbar": qbar_table,
        "classification": cls,
        "angle": str(angle) if angle else None,
        "gamma_sq": (value * value).to_json(),
        "gamma_4": (value ** 4).to_json(),
    }
    if T.p == 2 and T.f == 1:
        # residue field F_2: the auxiliary character tau(eps) = psi(pi^(2t) eps / c)
        # must send 1 to -1 for its defining relation to be solvable.
        tau_one = psi.eval(c_inv.mul(T.pi_power(2 * t, digits)))
        satisfiable = tau_one == Angle(1, 2)
        diagnostics["tau_of_one"] = str(tau_one)
        diagnostics["tau_relation_satisfiable"] = satisfiable
        gamma4 = value**4
        diagnostics["gamma_4_is_minus_one"] = gamma4 == -1
        if satisfiable:
            # gamma^2 = Qbar at the lift of the residue solution (which is 1)
            x1 = T.pi_power(t, digits)
            qbar_at_1 = -chi.eval(one.add(x1)) + psi.eval(c_inv.mul(x1))
            diagnostics["gamma_sq_matches_qbar"] = (
                value * value == embed_angle(qbar_at_1, n_cyc)
            )
    return value, diagnostics


def deligne_twist(
    alpha: MultChar, beta: MultChar, psi: AddChar, gauge: GaugeElement | None = None
) -> EpsilonValue:
    """Twisting shortcut: epsilon(alpha*beta, psi) = beta(c) * epsilon(alpha, psi).

    Valid when a(alpha) >= 2 a(beta) and c gauges alpha to depth
    ceil(a(alpha)/2).  The returned value is the right-hand side; tests
    compare it against the defining sum for the product character.
    """
    T = _require_tower_pair(alpha, psi)
    if beta.ctx is not T:
        raise InputError("twisting character lives on a different field")
    a_alpha = alpha.conductor
    if a_alpha < 2 * beta.conductor:
        raise InputError("twisting formula needs a(alpha) >= 2 a(beta)")
    m = a_alpha // 2
    if gauge is None:
        gauge = solve_gauge(alpha, psi, m)
    elif not verify_gauge(alpha, psi, gauge, m):
        raise InputError("supplied element does not gauge alpha deeply enough")
    base = epsilon_lamprecht(alpha, psi, m, gauge)
    factor = beta.eval(gauge.c)
    value = embed_angle(factor, base.value.n) * base.value
    cls, angle = classify_value(value)
    return EpsilonValue(
        value=value,
        classification=cls,
        class_angle=angle,
        sum_s=base.sum_s,
        a_chi=a_alpha,
        n_psi=psi.conductor,
        formula="deligne",
        gauge_str=str(gauge),
    )
