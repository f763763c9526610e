import pickle
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from macdual.scalar import (
    ONE,
    PRESETS,
    ZERO,
    A,
    B,
    C,
    D,
    DivergentLimit,
    KParams,
    ParamPoint,
    PoleError,
    Q,
    RatFunc,
    ScalarError,
    T,
    ZeroDenominator,
    exact_sqrt,
    gen,
    normal_form,
    parse,
    q,
    specialize,
    t,
    t_infinity_leading,
)
from strategies import nonzero_ratfuncs, polynomials, ratfuncs

x = gen("x1")
y = gen("x2")


def test_normal_form_examples():
    assert normal_form((Q**2 - 1) / (Q - 1)) == Q + 1
    assert normal_form((T**2 * Q - Q) / (T - 1)) == Q * (T + 1)
    z = normal_form(RatFunc(0) / (Q**3 + 1))
    assert z.is_zero()
    assert str(z.den) == "1"


def test_canonical_form_has_positive_leading_denominator():
    r = RatFunc((Q - 1).num, (1 - T).num)
    assert r.den.leading_coefficient() > 0
    assert r == (1 - Q) / (T - 1)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominator):
        RatFunc(1, 0)
    with pytest.raises(ZeroDivisionError):
        RatFunc(0).inverse()


def test_specialize_dn1_sigma_squared_is_one():
    sigma2 = A * B * C * D / Q**2
    point = ParamPoint({"A": 1, "B": -1, "C": Q, "D": -Q})
    assert specialize(sigma2, point) == ONE


def test_specialize_identity_when_formal():
    assert specialize(T, ParamPoint()) == T


def test_specialize_pole_names_factor():
    with pytest.raises(PoleError) as info:
        (1 / ((T - 1) * (Q + 2))).subs({"T": ONE})
    assert "T - 1" in str(info.value)


def test_param_point_rejects_cycles():
    with pytest.raises(ValueError):
        ParamPoint({"A": B, "B": A})
    with pytest.raises(ValueError):
        ParamPoint({"A": A * Q})
    with pytest.raises(ValueError):
        ParamPoint({"x1": Q})


def test_t_infinity_examples():
    assert t_infinity_leading((T**2 * x - y) / T**2, 0) == x
    assert t_infinity_leading(T**2, -1) == ONE
    assert t_infinity_leading((1 - T**2) / (1 - Q * T**2), 0) == 1 / Q
    assert t_infinity_leading(1 / T, 0) == ZERO
    with pytest.raises(DivergentLimit):
        t_infinity_leading(T**3 / (T + 1), 0)


def test_t_infinity_numeric_oracle():
    # T = 10^m at Q = 3: the ratio stabilizes at 1/3
    s = (1 - T**2) / (1 - Q * T**2)
    errs = []
    for m in (2, 4, 6):
        v = s.subs({"Q": RatFunc(3), "T": RatFunc(10**m)})
        value = Fraction(int(v.num.leading_coefficient()), int(v.den.leading_coefficient()))
        errs.append(abs(value - Fraction(1, 3)))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < Fraction(1, 10**10)


def test_exact_sqrt():
    assert exact_sqrt(Q**2 * T**4 / A**2) == Q * T**2 / A
    with pytest.raises(ScalarError):
        exact_sqrt(Q)
    with pytest.raises(ScalarError):
        exact_sqrt(-(Q**2))


def test_parse_and_json_round_trip():
    r = (Q**2 * T - 3 * x**2) / (A + 1)
    assert RatFunc.from_json(r.to_json()) == r
    assert parse("(Q^2 - 1)/(Q - 1)") == Q + 1
    assert parse("Q**-2 * T") == T / Q**2
    with pytest.raises(ValueError):
        parse("Q ^ T")
    with pytest.raises(ValueError):
        parse("sin(Q)")


def test_pickle_round_trip():
    r = (Q * T + 1) / (A - 3 * x)
    assert pickle.loads(pickle.dumps(r)) == r
    k = PRESETS["generic"]
    assert pickle.loads(pickle.dumps(k)) == k


def test_presets_sigma():
    assert PRESETS["DN1"].sigma == ONE
    assert PRESETS["generic"].sigma2 == A**2 * B**2 * C**2 * D**2 / q
    assert PRESETS["generic"].sigma == A * B * C * D / Q


def test_involution_on_dn1_row_is_identity():
    k = PRESETS["DN1"]
    d = k.dual()
    assert tuple(d) == tuple(k)


def test_involution_squares_to_identity_on_generic_family():
    k = PRESETS["generic"]
    assert tuple(k.dual().dual()) == tuple(k)
    assert k.dual().sigma == k.a


def test_dual_needs_monomial_radicands():
    with pytest.raises(ScalarError):
        PRESETS["formal"].dual()


# --- properties ----------------------------------------------------------


@settings(max_examples=200)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE


@given(ratfuncs())
def test_equality_agrees_with_cross_multiplication(a):
    b = RatFunc(a.num * (Q + 2).num, a.den * (Q + 2).num)
    assert a == b
    assert a.num * b.den == b.num * a.den


@given(ratfuncs())
def test_normal_form_idempotent(a):
    assert normal_form(normal_form(a)) == normal_form(a)
    n = normal_form(a)
    assert (n.num, n.den) == (normal_form(n).num, normal_form(n).den)


@given(ratfuncs(), ratfuncs(), st.integers(2, 5), st.integers(-3, 3))
def test_specialize_commutes_with_arithmetic(a, b, qv, av):
    point = {"Q": RatFunc(qv), "A": RatFunc(av)}
    try:
        lhs = (a * b).subs(point)
        rhs = a.subs(point) * b.subs(point)
    except PoleError:
        return
    assert lhs == rhs


@given(polynomials(names=("Q", "T")), nonzero_ratfuncs(names=("Q", "T")), st.integers(-2, 2), st.integers(-2, 2))
def test_t_limit_multiplicative(a, b, k1, k2):
    try:
        l1 = t_infinity_leading(a, k1)
        l2 = t_infinity_leading(b, k2)
    except DivergentLimit:
        return
    assert t_infinity_leading(a * b, k1 + k2) == l1 * l2


def test_kparams_json():
    k = KParams(T, -1, Q, -Q, "x")
    assert k.to_json() == {"name": "x", "a": "T", "b": "-1", "c": "Q", "d": "-Q"}
    assert k.sigma2 == T * Q**2 / q
    assert t == T**2
