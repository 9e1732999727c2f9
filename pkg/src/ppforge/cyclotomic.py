"""Multiplicative-coset permutation criteria and family generators.

The maps handled here are of the shape f(x) = x^u * h(x^((q-1)/d)) for a
divisor d of q-1: raising to the power (q-1)/d projects F_q^* onto the group
mu_d of d-th roots of unity, so whether f permutes F_q reduces to a coprime
condition on u and the behaviour of an induced map on the d points of mu_d.
"""

import functools
import math
from dataclasses import dataclass

from .errors import FieldError, ScopeError
from .field import Field
from .poly import CyclotomicForm, FqPoly, h_d_poly
from .report import Condition, ConditionReport

LEMMA_COPRIME = "gcd(u,(q-1)/d)=1"
LEMMA_MU_PERM = "x^u*h(x)^((q-1)/d) permutes mu_d"

T1_COPRIME = "gcd(u,(q-1)/d)=1"
T1_EXP_UNIT = "gcd(d,u+k(q-1)/d)=1"
T1_B_NONZERO = "b!=0"
T1_DTH_POWER = "1+g(1)/b is a d-th power in F_q*"

HERMITE_2A_SQUARE = "2a is a square"
HERMITE_2B_SQUARE = "2b is a square"
HERMITE_COPRIME = "gcd(i*j,q-1)=1"


def lemma_check(cf: CyclotomicForm) -> ConditionReport:
    """Decide whether x^u * h(x^((q-1)/d)) permutes F_q.

    Two conditions are necessary and sufficient: gcd(u, (q-1)/d) = 1, and
    the induced map z -> z^u * h(z)^((q-1)/d) being a bijection of mu_d.
    The second is decided by direct enumeration of the d images.
    """
    field = cf.field
    m = (field.q - 1) // cf.d
    c1 = math.gcd(cf.u, m) == 1
    mu = field.mu_d(cf.d)
    image = [field.mul(field.pow(z, cf.u), field.pow(cf.h.eval(z), m)) for z in mu]
    c2 = sorted(image) == sorted(mu)
    witness = None
    if not c2:
        missing = sorted(set(mu) - set(image))
        witness = f"mu_d element {missing[0]} not attained" if missing else "image leaves mu_d"
    return ConditionReport.build((
        Condition(LEMMA_COPRIME, c1),
        Condition(LEMMA_MU_PERM, c2, witness),
    ))


@dataclass(frozen=True)
class Theorem1Params:
    """Parameters of f(x) = x^u * (b*x^(k(q-1)/d) + g(x^((q-1)/d))).

    g is supplied through its cofactor g0, with g = h_d * g0, which makes
    the required divisibility structural.  b is an element index.
    """

    d: int
    u: int
    k: int
    b: int
    g0: FqPoly

    @property
    def field(self) -> Field:
        return self.g0.field

    def g(self) -> FqPoly:
        return _g_and_g1(self.field, self.d, self.g0)[0]


@functools.lru_cache(maxsize=None)
def _g_and_g1(field: Field, d: int, g0: FqPoly):
    g = h_d_poly(field, d) * g0
    return g, g.eval(1)


def _validate_d(field: Field, d: int):
    if d <= 2:
        raise ScopeError(f"d={d} is out of scope: the four-condition criterion needs d > 2")
    if (field.q - 1) % d != 0:
        raise ScopeError(f"d={d} does not divide q-1={field.q - 1}")


def _validate_theorem1_scope(field: Field, d: int, u: int, k: int, b: int):
    _validate_d(field, d)
    if u < 1 or k < 0:
        raise ScopeError(f"need u >= 1 and k >= 0, got u={u}, k={k}")
    if not 0 <= b < field.q:
        raise FieldError(f"b={b} is not an element index (q={field.q})")


def theorem1_check(params: Theorem1Params) -> ConditionReport:
    """The four-condition permutation criterion for h_d-divisible g.

    Conditions, in order: (1) gcd(u, (q-1)/d) = 1; (2) gcd(d, u + k(q-1)/d)
    = 1; (3) b != 0; (4) 1 + g(1)/b is a d-th power in F_q^*.  Condition (4)
    is evaluated only when b != 0 and recorded false otherwise, so reports
    stay total over the parameter space.  The verdict is equivalent to f
    permuting F_q.
    """
    field = params.field
    d, u, k, b = params.d, params.u, params.k, params.b
    _validate_theorem1_scope(field, d, u, k, b)
    m = (field.q - 1) // d
    c1 = math.gcd(u, m) == 1
    c2 = math.gcd(d, u + k * m) == 1
    c3 = b != 0
    if c3:
        g1 = _g_and_g1(field, d, params.g0)[1]
        val = field.add(1, field.div(g1, b))
        c4 = val != 0 and field.is_dth_power(val, d)
        witness4 = None if c4 else (f"1+g(1)/b = {val} is zero" if val == 0
                                    else f"1+g(1)/b = {val} is not a d-th power")
    else:
        c4 = False
        witness4 = "b=0: 1+g(1)/b is undefined"
    return ConditionReport.build((
        Condition(T1_COPRIME, c1),
        Condition(T1_EXP_UNIT, c2),
        Condition(T1_B_NONZERO, c3),
        Condition(T1_DTH_POWER, c4, witness4),
    ))


def theorem1_poly(params: Theorem1Params) -> FqPoly:
    """Expanded, exponent-reduced form of the parametrized polynomial."""
    field = params.field
    _validate_theorem1_scope(field, params.d, params.u, params.k, params.b)
    m = (field.q - 1) // params.d
    inner = FqPoly.monomial(field, params.b, params.k) + params.g()
    if inner.is_zero():
        return FqPoly.zero(field)
    return inner.substituted_power(m).shifted(params.u).reduce_exponents()


def cofactor_of(field: Field, d: int, g: FqPoly) -> FqPoly:
    """g0 with g = h_d * g0; raises when g is not divisible by h_d."""
    quot, rem = g.divmod(h_d_poly(field, d))
    if not rem.is_zero():
        raise FieldError(f"g = {g.text()} is not divisible by h_{d}; "
                         f"remainder {rem.text()}")
    return quot


def theorem1_generate(field: Field, d: int, u_values=(1,), k_values=(0,),
                      g0s=None, bs=None, g: FqPoly = None):
    """Emit (params, expanded polynomial) for every verdict-true tuple.

    Order is lexicographic in (u, k, b index, g0 position), so output is
    stable.  An explicit g may be given instead of cofactors; it is divided
    by h_d and rejected on a nonzero remainder.  An empty stream is valid.
    """
    if g is not None:
        if g0s is not None:
            raise FieldError("pass either g0s or an explicit g, not both")
        g0s = (cofactor_of(field, d, g),)
    if g0s is None:
        g0s = (FqPoly.one(field),)
    g0s = tuple(g0s)
    if bs is None:
        bs = field.elements()
    bs = tuple(bs)
    _validate_d(field, d)
    for u in u_values:
        for k in k_values:
            for b in bs:
                for g0 in g0s:
                    params = Theorem1Params(d, u, k, b, g0)
                    if theorem1_check(params).verdict:
                        yield params, theorem1_poly(params)


def fhat_on_mu_d(params: Theorem1Params):
    """Tabulate the induced map on mu_d: z -> z^u * (b*z^k + g(z))^((q-1)/d).

    On mu_d minus {1} this collapses to the monomial b^((q-1)/d) *
    z^(u+k(q-1)/d) because g vanishes there; the table is computed honestly
    from the defining expression so that invariant can be tested.
    """
    field = params.field
    _validate_theorem1_scope(field, params.d, params.u, params.k, params.b)
    m = (field.q - 1) // params.d
    g = params.g()
    out = []
    for z in field.mu_d(params.d):
        inner = field.add(field.mul(params.b, field.pow(z, params.k)), g.eval(z))
        out.append((z, field.mul(field.pow(z, params.u), field.pow(inner, m))))
    return out


@dataclass(frozen=True)
class HermiteParams:
    """f(x) = a*x^i*(x^((q-1)/2)+1) - b*x^j*(x^((q-1)/2)-1), q odd."""

    field: Field
    a: int
    b: int
    i: int
    j: int

    def __post_init__(self):
        if self.field.q % 2 == 0:
            raise ScopeError("the square/non-square split needs odd q")
        if not (0 < self.a < self.field.q and 0 < self.b < self.field.q):
            raise FieldError("a and b must be nonzero element indices")
        if self.i < 1 or self.j < 1:
            raise FieldError("exponents i, j must be positive")


@dataclass(frozen=True)
class HermiteFamily:
    """Expanded polynomial plus its piecewise description.

    On nonzero squares the map is square_coeff * x^square_exp; on
    non-squares it is nonsquare_coeff * x^nonsquare_exp.  `sufficient`
    reports the classical sufficient (not necessary) permutation condition.
    """

    poly: FqPoly
    square_coeff: int
    square_exp: int
    nonsquare_coeff: int
    nonsquare_exp: int
    sufficient: ConditionReport


def hermite_family(hp: HermiteParams) -> HermiteFamily:
    field = hp.field
    q, s = field.q, (hp.field.q - 1) // 2
    half_plus = FqPoly(field, (1,) + (0,) * (s - 1) + (1,))            # x^s + 1
    half_minus = FqPoly(field, (field.neg(1),) + (0,) * (s - 1) + (1,))  # x^s - 1
    f = (FqPoly.monomial(field, hp.a, hp.i) * half_plus
         - FqPoly.monomial(field, hp.b, hp.j) * half_minus).reduce_exponents()
    two_a = field.add(hp.a, hp.a)
    two_b = field.add(hp.b, hp.b)
    sufficient = ConditionReport.build((
        Condition(HERMITE_2A_SQUARE, field.is_dth_power(two_a, 2)),
        Condition(HERMITE_2B_SQUARE, field.is_dth_power(two_b, 2)),
        Condition(HERMITE_COPRIME, math.gcd(hp.i * hp.j, q - 1) == 1),
    ))
    return HermiteFamily(f, two_a, hp.i, two_b, hp.j, sufficient)
