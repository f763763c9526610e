import json

import pytest

from macdual import diffop, dualitycheck
from macdual.dualitycheck import (
    CHECKS,
    CheckReport,
    NormalizationPole,
    check_commute,
    check_conjugation,
    check_duality_poly,
    check_eigen,
    check_involution,
    check_norm,
    check_pieri,
    check_pieri_operator,
    check_psi_pieri,
    check_split,
    check_toda,
    check_universal_duality,
    check_whittaker,
    plan,
    run_job,
    sweep,
    univariate_whittaker,
    whittaker_limit,
)
from macdual.eigensolve import eigen_poly
from macdual.laurent import LaurentPoly
from macdual.rootdata import GENUS_TWO, Kind, WeightLabel
from macdual.scalar import ONE, PRESETS, Q, RatFunc, T, q, t

A2, A3, K1, K2 = Kind("A", 2), Kind("A", 3), Kind("K", 1), Kind("K", 2)


def test_report_json_shape():
    r = check_duality_poly(A2, (1, 0), (1, 0))
    data = json.loads(json.dumps(r.to_json()))
    assert data["schema"] == "macdual/check/1"
    assert data["check"] == "duality"
    assert data["verdict"] == "pass"
    assert data["params"] == {"kind": "A", "N": 2, "label": [1, 0], "mu": [1, 0]}


def test_duality_trivial_cases():
    r = check_duality_poly(A2, (0, 0), (2, 1))
    assert r.passed
    assert r.witness["lhs"] == r.witness["rhs"] == "1"


def test_duality_two_zero_vs_one_one():
    r = check_duality_poly(A2, (2, 0), (1, 1))
    assert r.passed
    assert r.witness["lhs"] == r.witness["rhs"] != "1"


def test_duality_koornwinder_and_genus_two():
    assert check_duality_poly(K1, (1,), (2,), PRESETS["generic"]).passed
    assert check_duality_poly(K2, (1, 0), (1, 1), PRESETS["CN1"]).passed
    assert check_duality_poly(GENUS_TWO, (1, 1, 0), (2, 1, 1)).passed


def test_norm_examples():
    r = check_norm(A2, (0, 0))
    assert r.passed and r.witness["lhs"] == "1"
    r = check_norm(A2, (1, 0))
    assert r.passed
    assert eigen_poly(WeightLabel(A2, (1, 0))).evaluate([T**2, ONE]) == T**2 + 1
    assert check_norm(GENUS_TWO, (1, 1, 0)).passed
    r = check_norm(K2, (1, 1), PRESETS["DN1"])
    assert r.passed
    assert set(r.witness) == {"unstarred", "starred"}


def test_normalization_pole_raised():
    class Vanishing:
        label = WeightLabel(A2, (0, 0))

        def evaluate(self, point):
            return RatFunc(0)

    with pytest.raises(NormalizationPole):
        dualitycheck._normalized_value(Vanishing(), [ONE, ONE], [ONE, ONE])


def test_eigen_and_commute():
    assert check_eigen(A3, (2, 1, 0)).passed
    assert check_eigen(K2, (1, 0), PRESETS["A2N2"]).passed
    assert check_commute(GENUS_TWO).witness == {"pairs": 3, "noncommuting": []}


def test_universal_duality_examples():
    assert check_universal_duality(A2, 3).passed
    r = check_universal_duality(GENUS_TWO, 2)
    assert r.passed and r.witness["compared"] > 0
    with pytest.raises(ValueError):
        check_universal_duality(A2, 0)


def test_pieri_examples():
    r = check_pieri(A2, (0, 0), 1)
    assert r.passed
    assert r.witness["non_label_shifts"] == [[0, 1]]
    assert check_pieri(A2, (1, 0), 1).passed
    lhs = dualitycheck.multiply_and_expand(A2, (1, 0), 1)
    assert lhs[(1, 1)] == (1 - q) * (1 + t) / (1 - q * t)
    assert check_pieri(GENUS_TWO, (0, 0, 0), 1).passed
    assert check_pieri(K1, (1,), 1, PRESETS["generic"]).passed


def test_pieri_violation_detected(monkeypatch):
    real = dualitycheck.pieri_operator

    def tampered(kind, index, params=None, deformed=False):
        H = real(kind, index, params, deformed)
        return H + diffop.DiffOp({(0, 1): Q}, H.vars, "lambda")

    monkeypatch.setattr(dualitycheck, "pieri_operator", tampered)
    r = check_pieri(A2, (0, 0), 1)
    assert not r.passed
    assert r.witness["pieri_violation"] == {"[0, 1]": "Q"}


def test_pieri_mismatch_witness(monkeypatch):
    real = dualitycheck.multiply_and_expand

    def tampered(kind, lam, m, params=None):
        out = dict(real(kind, lam, m, params))
        out[(1, 1)] = out[(1, 1)] + ONE
        return out

    monkeypatch.setattr(dualitycheck, "multiply_and_expand", tampered)
    r = check_pieri(A2, (1, 0), 1)
    assert not r.passed
    assert r.witness["first_mismatch"]["at"] == [1, 1]


def test_pieri_operator_check():
    for a in (1, 2, 3):
        assert check_pieri_operator(A3, a).passed
    assert check_pieri_operator(GENUS_TWO, 2).passed


def test_conjugation_check():
    assert check_conjugation(3, 1, 3).passed
    assert check_conjugation(2, 1).passed


def test_involution_examples():
    r = check_involution(PRESETS["DN1"])
    assert r.passed
    assert r.witness["dual"]["a"] == "1"
    assert check_involution(PRESETS["generic"]).passed


def test_whittaker_examples():
    Pi = whittaker_limit(eigen_poly(WeightLabel(A2, (1, 0))).to_laurent())
    e1 = LaurentPoly.monomial((1, 0), ("x1", "x2")) + LaurentPoly.monomial((0, 1), ("x1", "x2"))
    assert Pi == e1
    assert diffop.apply(diffop.whittaker_A(2, 1), Pi) == Pi * Q**2
    assert check_whittaker(A2, (1, 0)).passed
    assert check_whittaker(A3, (2, 1, 1)).passed
    r = check_whittaker(GENUS_TWO, (1, 1, 0))
    assert r.passed
    expected = univariate_whittaker(1, 0) * univariate_whittaker(0, 1) * univariate_whittaker(0, 2)
    assert str(expected) == r.witness["product"]
    with pytest.raises(ValueError):
        check_whittaker(K1, (1,))


def test_split_and_toda():
    assert check_split().passed
    assert check_toda(A3).passed
    assert check_toda(GENUS_TWO).passed


def test_psi_pieri():
    assert check_psi_pieri((1, 1, 0), 1).passed
    assert check_psi_pieri((2, 1, 1), 3).passed


def test_map_report_first_mismatch():
    r = dualitycheck._map_report("x", {}, {(1,): ONE, (2,): Q}, {(1,): ONE, (2,): T})
    assert not r.passed
    assert r.witness["first_mismatch"] == {"at": [2], "lhs": "Q", "rhs": "T"}
    r = dualitycheck._map_report("x", {}, {(1,): ONE}, {(1,): ONE, (3,): Q}, order=[(1,)])
    assert not r.passed and r.witness["first_mismatch"]["at"] == [3]


def test_plan_and_sweep():
    jobs = plan(A2, ["eigen", "commute"], 2)
    assert jobs[0][0] == "check_eigen"
    assert len(jobs) == 5
    assert all(run_job(j).passed for j in jobs)
    assert len(plan(A2, ["duality"], 1, labels=[(1, 0), (0, 0)])) == 4
    assert plan(K1, ["split", "toda", "whittaker"], 2, params=PRESETS["DN1"]) == []
    reports = sweep(K1, ["eigen", "norm", "involution"], 2, params=PRESETS["BN1"])
    assert all(r.passed for r in reports)
    with pytest.raises(ValueError):
        plan(A2, ["nope"], 2)
    assert "psi" in CHECKS


def test_check_report_defaults():
    r = CheckReport("x", {}, True)
    assert r.to_json()["witness"] == {}
