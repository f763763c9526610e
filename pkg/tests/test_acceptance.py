"""Acceptance suite: one test per criterion, each printing a single verdict line."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from macdual import cli
from macdual.dualitycheck import (
    check_commute,
    check_conjugation,
    check_duality_poly,
    check_eigen,
    check_norm,
    check_pieri,
    check_pieri_operator,
    check_split,
    check_toda,
    check_universal_duality,
    check_whittaker,
)
from macdual.rootdata import GENUS_TWO, Kind, labels_up_to
from macdual.scalar import PRESETS

GOLDEN = Path(__file__).parent / "golden"
TABLE_ROWS = ("DN1", "BN1", "CN1", "A2N-1", "DN+12", "A2N2")
K_POINTS = TABLE_ROWS + ("generic",)
A_KINDS = (Kind("A", 2), Kind("A", 3))
K_KINDS = (Kind("K", 1), Kind("K", 2))


def a_labels(kind):
    return [l.lam for l in labels_up_to(kind, 4)]


def k_labels(kind):
    return [l.lam for l in labels_up_to(kind, 2)]


def g2_labels():
    return [l.lam for l in labels_up_to(GENUS_TWO, 3)]


def verdict(capsys, number, title, reports):
    failed = [r for r in reports if not r.passed]
    line = f"criterion {number:2d} {'PASS' if not failed else 'FAIL'}  {title}  ({len(reports) - len(failed)}/{len(reports)})"
    with capsys.disabled():
        print("\n" + line)
    assert reports
    assert not failed, json.dumps(failed[0].to_json(), indent=1)[:2000]


def test_criterion_01_type_a_eigen(capsys):
    reports = [check_eigen(kind, lam) for kind in A_KINDS for lam in a_labels(kind)]
    verdict(capsys, 1, "type A eigen identities, N=2,3, |lambda|<=4", reports)


def test_criterion_02_koornwinder_eigen(capsys):
    reports = [check_eigen(kind, lam, PRESETS[p]) for p in K_POINTS for kind in K_KINDS for lam in k_labels(kind)]
    verdict(capsys, 2, "Koornwinder eigen identities, N=1,2, |lambda|<=2, all presets", reports)


def test_criterion_03_genus_two_eigen_and_commute(capsys):
    reports = [check_commute(GENUS_TWO)] + [check_eigen(GENUS_TWO, lam) for lam in g2_labels()]
    verdict(capsys, 3, "genus-2 commutativity and eigen identities, max lambda_i<=3", reports)


def test_criterion_04_duality(capsys):
    reports = [check_duality_poly(kind, l, m) for kind in A_KINDS for l in a_labels(kind) for m in a_labels(kind)]
    reports += [
        check_duality_poly(kind, l, m, PRESETS[p])
        for p in K_POINTS
        for kind in K_KINDS
        for l in k_labels(kind)
        for m in k_labels(kind)
    ]
    reports += [check_duality_poly(GENUS_TWO, l, m) for l in g2_labels() for m in g2_labels()]
    verdict(capsys, 4, "polynomial duality on all label pairs", reports)


def test_criterion_05_normalization(capsys):
    reports = [check_norm(kind, lam) for kind in A_KINDS for lam in a_labels(kind)]
    reports += [check_norm(kind, lam, PRESETS[p]) for p in K_POINTS for kind in K_KINDS for lam in k_labels(kind)]
    reports += [check_norm(GENUS_TWO, lam) for lam in g2_labels()]
    verdict(capsys, 5, "normalization theorems, substitution vs finite Delta ratio", reports)


def test_criterion_06_universal_duality(capsys):
    reports = [
        check_universal_duality(Kind("A", 2), 3),
        check_universal_duality(Kind("K", 1), 3, PRESETS["generic"]),
        check_universal_duality(GENUS_TWO, 3),
    ]
    verdict(capsys, 6, "universal-series duality to joint height 3", reports)


def test_criterion_07_pieri(capsys):
    reports = [check_pieri(kind, lam, a) for kind in A_KINDS for lam in a_labels(kind) for a in (1, 2)]
    reports += [check_pieri(kind, lam, 1, PRESETS[p]) for p in K_POINTS for kind in K_KINDS for lam in k_labels(kind)]
    reports += [check_pieri(GENUS_TWO, lam, l) for lam in g2_labels() for l in (1, 2, 3)]
    reports += [check_pieri_operator(kind, a) for kind in A_KINDS for a in range(1, kind.N + 1)]
    reports += [check_pieri_operator(GENUS_TWO, l) for l in (1, 2, 3)]
    verdict(capsys, 7, "Pieri rules and adjoint vs explicit Pieri operators", reports)


def test_criterion_08_conjugation(capsys):
    reports = [check_conjugation(N, a, 4) for N in (2, 3) for a in range(1, N)]
    verdict(capsys, 8, "conjugation identity to height 4, N=2,3", reports)


def test_criterion_09_q_whittaker(capsys):
    reports = [check_whittaker(kind, lam) for kind in A_KINDS for lam in a_labels(kind)]
    reports += [check_toda(Kind("A", 2)), check_toda(Kind("A", 3)), check_split(), check_toda(GENUS_TWO)]
    reports += [check_whittaker(GENUS_TWO, lam) for lam in g2_labels()]
    verdict(capsys, 9, "q-Whittaker limits, Toda limits, split and factorization", reports)


def test_criterion_10_determinism_and_corpus(capsys):
    reports = []
    argv = ["verify", "--kind", "G2", "--lattice", "2", "--checks", "eigen,duality,pieri", "--jobs", "1"]
    runs = [subprocess.run([sys.executable, "-m", "macdual.cli", *argv], capture_output=True) for _ in range(2)]
    parallel = subprocess.run([sys.executable, "-m", "macdual.cli", *argv[:-1], "4"], capture_output=True)
    same = runs[0].returncode == 0 and runs[0].stdout == runs[1].stdout == parallel.stdout
    reports.append(cli.CheckReport("rerun", {}, same))
    entries = cli.load_manifest(GOLDEN)
    code, text = cli.execute(["corpus", str(GOLDEN)])
    docs = [json.loads(l) for l in text.splitlines()]
    reports.append(cli.CheckReport("corpus_size", {}, len(entries) >= 30, {"entries": len(entries)}))
    reports += [cli.CheckReport("corpus", d["params"], d["verdict"] == "pass", d["witness"]) for d in docs[:-1]]
    reports.append(cli.CheckReport("corpus_exit", {}, code == 0))
    verdict(capsys, 10, "byte-identical reruns and golden corpus", reports)


@pytest.mark.parametrize("name", TABLE_ROWS)
def test_presets_cover_every_table_row(name):
    assert PRESETS[name].name == name
