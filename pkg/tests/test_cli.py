import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from macdual import cli, diffop
from macdual.cli import execute, main
from macdual.scalar import RatFunc, q, t

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_macdonald_operator():
    code, text = execute("compute --kind A --N 2 --op macdonald --a 1".split())
    assert code == 0
    doc = json.loads(text)
    assert doc["schema"] == "macdual/diffop/1"
    assert diffop.DiffOp.from_json(doc) == diffop.macdonald(2, 1)


def test_compute_genus_two_polynomial():
    code, text = execute("compute --kind G2 --poly 1,1,0".split())
    doc = json.loads(text)
    assert code == 0
    assert doc["schema"] == "macdual/eigenpoly/1"
    assert doc["label"] == [1, 1, 0]
    assert [e["mu"] for e in doc["expansion"]][0] == [1, 1, 0]


def test_compute_pieri_matches_explicit():
    code, text = execute("compute --kind A --N 2 --pieri 1".split())
    op = diffop.DiffOp.from_json(json.loads(text))
    assert op == diffop.pieri_explicit_A(2, 1)
    assert op.coefficient((0, 1)).subs({"L1": q, "L2": RatFunc(1)}) == (1 - q) * (1 + t) / (1 - q * t)


def test_compute_other_artifacts():
    for argv in (
        "compute --kind A --N 2 --universal --cutoff 2",
        "compute --kind K --N 1 --delta --cutoff 2",
        "compute --kind G2 --op toda --a 2",
        "compute --kind K --N 1 --op koornwinder --preset BN1",
        "compute --kind A --N 2 --poly 2,0 --format table",
    ):
        code, text = execute(argv.split())
        assert code == 0, argv
        assert text


def test_table_format_rows():
    _, text = execute("compute --kind A --N 2 --poly 2,0 --format table".split())
    lines = text.splitlines()
    assert lines[0] == "# macdual/eigenpoly/1"
    assert lines[1].startswith("(2, 0)")


def test_verify_examples():
    code, text = execute("verify --kind A --N 2 --lattice 4 --checks eigen,duality,norm,pieri".split())
    lines = [json.loads(l) for l in text.splitlines()]
    assert code == 0
    summary = lines[-1]
    assert summary["schema"] == "macdual/summary/1"
    assert summary["failed"] == 0 and summary["total"] == len(lines) - 1
    assert execute("verify --kind G2 --checks commute".split())[0] == 0
    assert execute("verify --kind K --N 1 --preset A2N2 --checks eigen".split())[0] == 0


def test_verify_explicit_labels():
    code, text = execute(["verify", "--kind", "A", "--N", "3", "--lambda", "2,1,0;1,1,1", "--checks", "eigen,norm"])
    docs = [json.loads(l) for l in text.splitlines()]
    assert code == 0
    assert [d["params"]["label"] for d in docs[:-1]] == [[2, 1, 0], [1, 1, 1], [2, 1, 0], [1, 1, 1]]


def test_verify_failure_exit_code(monkeypatch):
    def broken(kind, lam, params=None):
        return cli.CheckReport("eigen", {}, False, {"forced": True})

    monkeypatch.setattr(cli.dualitycheck, "check_eigen", broken)
    code, text = execute("verify --kind A --N 2 --lattice 1 --checks eigen".split())
    assert code == 1
    assert json.loads(text.splitlines()[-1])["failed"] == 2


def test_verify_domain_error_becomes_failed_report(monkeypatch):
    def pole(kind, lam, params=None):
        raise ZeroDivisionError("pole at the chosen point")

    monkeypatch.setattr(cli.dualitycheck, "check_norm", pole)
    code, text = execute("verify --kind A --N 2 --lattice 0 --checks norm".split())
    assert code == 1
    report = json.loads(text.splitlines()[0])
    assert report["witness"]["error"] == "ZeroDivisionError"


@pytest.mark.parametrize(
    "argv",
    [
        "verify --kind X",
        "verify --kind A --N 2 --checks nothing",
        "verify --kind A --N 2 --lattice -1",
        "verify --kind G2 --N 2",
        "verify --kind A --N 2 --preset DN1",
        "compute --kind A --N 2",
        "compute --kind A --N 2 --poly 0,1",
        "compute --kind K --N 1 --pieri 1 --method explicit",
        "verify --kind A --N 2 --jobs 0",
        "frobnicate",
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv.split())
    assert code == 2
    assert out == ""
    doc = json.loads(err)
    assert doc["schema"] == "macdual/error/1"
    assert doc["error"] in ("usage", "input")


def test_internal_error_exit_three(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("unexpected")

    monkeypatch.setattr(cli, "compute_docs", boom)
    code, out, err = run(capsys, "compute", "--kind", "A", "--op", "macdonald")
    assert code == 3
    assert json.loads(err)["error"] == "internal"


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "op.json"
    code, out, _ = run(capsys, "compute", "--kind", "A", "--op", "macdonald", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["dim"] == 2


def test_determinism_and_job_ordering():
    argv = "verify --kind K --N 2 --preset DN1 --lattice 2 --checks eigen,duality,norm".split()
    a = execute(argv)
    b = execute(argv)
    c = execute(argv + ["--jobs", "3"])
    assert a == b == c


def test_config_file(tmp_path, monkeypatch):
    conf = tmp_path / "macdual.conf"
    conf.write_text("# sweep settings\nkind = A\nN = 3\nlattice = 1\nchecks = eigen\n")
    monkeypatch.setenv("MACDUAL_CONFIG", str(conf))
    _, text = execute(["verify"])
    docs = [json.loads(l) for l in text.splitlines()]
    assert [d["params"]["label"] for d in docs[:-1]] == [[0, 0, 0], [1, 0, 0]]
    # flags override the file
    _, text = execute(["verify", "--lattice", "0"])
    assert len(text.splitlines()) == 2


def test_config_unknown_key(tmp_path, monkeypatch, capsys):
    conf = tmp_path / "bad.conf"
    conf.write_text("colour = blue\n")
    monkeypatch.setenv("MACDUAL_CONFIG", str(conf))
    code, _, err = run(capsys, "verify")
    assert code == 2 and "colour" in err
    monkeypatch.setenv("MACDUAL_CONFIG", str(tmp_path / "absent.conf"))
    assert run(capsys, "verify")[0] == 2


def test_limits_polynomial():
    code, text = execute("limits --kind A --N 2 --lambda 1,0".split())
    doc = json.loads(text)
    assert code == 0
    assert doc["schema"] == "macdual/limit/1"
    code, text = execute("limits --kind G2 --lambda 1,1,0".split())
    assert json.loads(text)["factorizes"] is True


def test_limits_operators():
    code, text = execute("limits --kind A --N 2".split())
    assert code == 0
    assert json.loads(text)["schema"] == "macdual/limitops/1"


# --- corpus -------------------------------------------------------------------


def test_corpus_empty_directory_passes(tmp_path):
    code, text = execute(["corpus", str(tmp_path)])
    assert code == 0
    assert json.loads(text) == {"schema": "macdual/summary/1", "total": 0, "passed": 0, "failed": 0}


def test_corpus_missing_directory(tmp_path, capsys):
    assert run(capsys, "corpus", str(tmp_path / "nope"))[0] == 2


def small_corpus(tmp_path):
    root = tmp_path / "golden"
    root.mkdir()
    (root / "manifest.json").write_text(
        json.dumps({"schema": "macdual/corpus/1", "entries": [{"file": "A2_P_2_0.json", "command": "compute --kind A --N 2 --poly 2,0"}]})
    )
    code, _ = execute(["corpus", str(root), "--generate"])
    assert code == 0
    return root


def test_corpus_with_p20_passes(tmp_path):
    root = small_corpus(tmp_path)
    code, text = execute(["corpus", str(root)])
    assert code == 0
    doc = json.loads((root / "A2_P_2_0.json").read_text())
    coef = RatFunc.from_json(doc["expansion"][1]["coef"])
    assert coef == (1 + q) * (1 - t) / (1 - q * t)


def test_corpus_tampered_file_reports_location(tmp_path):
    root = small_corpus(tmp_path)
    path = root / "A2_P_2_0.json"
    lines = path.read_text().splitlines(keepends=True)
    lines[2] = lines[2].replace("A", "B")
    path.write_text("".join(lines))
    code, text = execute(["corpus", str(root)])
    assert code == 1
    report = json.loads(text.splitlines()[0])
    assert report["verdict"] == "fail"
    assert report["witness"]["diff"]["line"] == 3
    assert report["witness"]["diff"]["column"] > 1


def test_corpus_missing_file(tmp_path):
    root = small_corpus(tmp_path)
    (root / "A2_P_2_0.json").unlink()
    code, text = execute(["corpus", str(root)])
    assert code == 1
    assert json.loads(text.splitlines()[0])["witness"] == {"error": "missing"}


def test_corpus_corrupt_manifest(tmp_path, capsys):
    (tmp_path / "manifest.json").write_text("{not json")
    assert run(capsys, "corpus", str(tmp_path))[0] == 2


def test_golden_corpus_regenerates(tmp_path):
    assert len(cli.load_manifest(GOLDEN)) >= 30
    code, text = execute(["corpus", str(GOLDEN)])
    summary = json.loads(text.splitlines()[-1])
    assert code == 0, text
    assert summary["failed"] == 0


def test_console_script_entry_point(tmp_path):
    exe = shutil.which("macdual")
    cmd = [exe] if exe else [sys.executable, "-m", "macdual.cli"]
    proc = subprocess.run(cmd + ["compute", "--kind", "A", "--N", "2", "--op", "macdonald"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == execute("compute --kind A --N 2 --op macdonald".split())[1]
    proc = subprocess.run(cmd + ["verify", "--kind", "Z"], capture_output=True, text=True)
    assert proc.returncode == 2
