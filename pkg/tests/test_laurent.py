import pytest
from hypothesis import given
from hypothesis import strategies as st

from macdual.laurent import (
    GroupAction,
    LaurentPoly,
    NotLaurent,
    basis_monomial,
    dominant_coefficients,
    elementary,
    symmetrize,
)
from macdual.rootdata import GENUS_TWO, Kind, WeightLabel, in_cone, labels_up_to, leading_exponent
from macdual.scalar import ONE, Q, RatFunc, T, gen

A2, A3, K1, K2 = Kind("A", 2), Kind("A", 3), Kind("K", 1), Kind("K", 2)
X2 = ("x1", "x2")
X3 = ("x1", "x2", "x3")


def mono(exp, vars, c=ONE):
    return LaurentPoly.monomial(exp, vars, c)


def test_symmetrize_examples():
    assert symmetrize(mono((1, 0), X2), GroupAction(A2)) == mono((1, 0), X2) + mono((0, 1), X2)
    assert symmetrize(mono((1,), ("x1",)), GroupAction(K1)) == mono((1,), ("x1",)) + mono((-1,), ("x1",))
    assert symmetrize(LaurentPoly.constant(ONE, X3), GroupAction(GENUS_TWO)) == LaurentPoly.constant(RatFunc(8), X3)


def test_basis_monomial_examples():
    assert basis_monomial(WeightLabel(A2, (1, 0))) == mono((1, 0), X2) + mono((0, 1), X2)
    assert basis_monomial(WeightLabel(K1, (1,))) == mono((1,), ("x1",)) + mono((-1,), ("x1",))
    assert basis_monomial(WeightLabel(GENUS_TWO, (1, 1, 0))) == mono((1, 0, 0), X3) + mono((-1, 0, 0), X3)


def test_elementary_examples():
    assert elementary(A2, 1) == mono((1, 0), X2) + mono((0, 1), X2)
    assert elementary(K1, 1) == mono((1,), ("x1",)) + mono((-1,), ("x1",))
    assert elementary(GENUS_TWO, 3) == mono((0, 0, 1), X3) + mono((0, 0, -1), X3)
    assert elementary(K2, 2).coefficient((0, 0)) == RatFunc(2)
    with pytest.raises(ValueError):
        elementary(A2, 3)
    with pytest.raises(ValueError):
        elementary(GENUS_TWO, 4)


@pytest.mark.parametrize("kind", [A2, A3, K1, K2, GENUS_TWO])
def test_symmetrized_output_fixed_by_generators(kind):
    vars = kind.xvars
    f = LaurentPoly({tuple(range(kind.N)): Q, (1,) + (0,) * (kind.N - 1): T}, vars)
    g = GroupAction(kind)
    s = symmetrize(f, g)
    for gen_ in g.generators():
        moved = LaurentPoly({g.act(gen_, e): c for e, c in s.terms.items()}, vars)
        assert moved == s


@pytest.mark.parametrize("kind", [A3, K2, GENUS_TWO])
def test_basis_monomial_leading_term(kind):
    for lab in labels_up_to(kind, 3):
        m = basis_monomial(lab)
        lead = leading_exponent(kind, lab.lam)
        assert m.coefficient(lead) == ONE
        for e in m.terms:
            d = [a - b for a, b in zip(lead, e)]
            assert in_cone(kind, d)


def test_dominant_coefficients_round_trip():
    f = basis_monomial(WeightLabel(A3, (2, 1, 0))) * Q + basis_monomial(WeightLabel(A3, (1, 1, 1)))
    assert dominant_coefficients(A3, f) == {(2, 1, 0): Q, (1, 1, 1): ONE}
    with pytest.raises(ValueError):
        dominant_coefficients(A3, mono((1, 0, 0), X3))


def test_ratfunc_round_trip_and_not_laurent():
    f = mono((2, -1), X2, Q) + mono((0, 0), X2, T)
    assert LaurentPoly.from_ratfunc(f.to_ratfunc(), X2) == f
    with pytest.raises(NotLaurent):
        LaurentPoly.from_ratfunc(1 / (gen("x1") - gen("x2")), X2)


def test_json_round_trip():
    f = mono((2, -1), X2, Q / (T + 1)) + mono((0, 0), X2, T)
    data = f.to_json()
    assert data["dim"] == 2
    assert LaurentPoly.from_json(data) == f


def test_evaluate():
    f = mono((1, 0), X2) + mono((0, 1), X2)
    assert f.evaluate([T**2, ONE]) == T**2 + 1


exps = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
polys = st.dictionaries(exps, st.integers(-3, 3), max_size=4).map(lambda d: LaurentPoly({e: RatFunc(c) for e, c in d.items()}, X2))


@given(polys, polys)
def test_symmetrize_bilinear_with_invariant(f, h):
    g = symmetrize(h, GroupAction(A2))
    G = GroupAction(A2)
    assert symmetrize(f * g, G) == symmetrize(f, G) * g
    assert symmetrize(f + h, G) == symmetrize(f, G) + symmetrize(h, G)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero(X2)
