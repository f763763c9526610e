"""Command-line entry point: ``macdual {compute,verify,corpus,limits}``.

Every command writes deterministic JSON (one document per artifact, each with a
``schema`` field) or a plain-text table.  Exit codes:

    0  every requested check passed
    1  at least one check failed
    2  usage or configuration error
    3  internal error
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import diffop, dualitycheck, eigensolve, qseries
from .dualitycheck import CheckReport, univariate_whittaker, whittaker_limit
from .laurent import LaurentPoly
from .rootdata import GENUS_TWO, Kind, WeightLabel, leading_exponent
from .scalar import ONE, PRESETS, KParams, RatFunc, ScalarError

SCHEMA_ERROR = "macdual/error/1"
SCHEMA_SUMMARY = "macdual/summary/1"
SCHEMA_LIMIT = "macdual/limit/1"
SCHEMA_LIMIT_OPS = "macdual/limitops/1"
SCHEMA_CORPUS = "macdual/corpus/1"

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_LATTICE = {"A": 4, "K": 2, "G2": 3}
DEFAULT_N = {"A": 2, "K": 1, "G2": 3}
DEFAULT_CHECKS = ("eigen", "commute", "duality", "norm", "pieri")
CONFIG_KEYS = ("kind", "N", "lattice", "cutoff", "preset", "checks", "jobs", "format")
PRESET_NAMES = tuple(PRESETS)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    kind: Kind
    labels: list | None = None
    lattice: int = 4
    cutoff: int = 4
    params: KParams | None = None
    format: str = "json"
    checks: tuple = DEFAULT_CHECKS
    jobs: int = 1
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lattice < 0 or self.cutoff < 0:
            raise UsageError("bounds must be non-negative")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        unknown = [c for c in self.checks if c not in dualitycheck.CHECKS]
        if unknown:
            raise UsageError(f"unknown checks: {', '.join(unknown)}")


# --- configuration --------------------------------------------------------------


def read_config(path: str | None) -> dict:
    """``key=value`` lines; ``#`` starts a comment."""
    if not path:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    parser = configparser.ConfigParser(comment_prefixes=("#",), delimiters=("=",))
    parser.optionxform = str
    try:
        parser.read_string("[macdual]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config {path}") from exc
    values = dict(parser["macdual"])
    bad = sorted(set(values) - set(CONFIG_KEYS))
    if bad:
        raise UsageError(f"unknown config keys: {', '.join(bad)}")
    return values


def _int(value, name):
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{name} must be an integer, got {value!r}") from exc


def parse_label(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad label {text!r}") from exc


def build_config(args) -> RunConfig:
    conf = read_config(os.environ.get("MACDUAL_CONFIG"))

    def pick(name, default=None):
        value = getattr(args, name, None)
        return value if value is not None else conf.get(name, default)

    kind_name = pick("kind", "A")
    if kind_name not in DEFAULT_N:
        raise UsageError(f"unknown kind {kind_name!r}")
    N = _int(pick("N", DEFAULT_N[kind_name]), "N")
    if kind_name == "G2" and N != 3:
        raise UsageError("the genus-two family has N = 3")
    if not 1 <= N <= 3:
        raise UsageError("N must be 1, 2 or 3")
    kind = GENUS_TWO if kind_name == "G2" else Kind(kind_name, N)

    params = None
    preset = pick("preset")
    if kind_name == "K":
        preset = preset or "generic"
        if preset not in PRESETS:
            raise UsageError(f"unknown preset {preset!r}")
        params = PRESETS[preset]
    elif preset is not None:
        raise UsageError("--preset applies to --kind K only")

    labels = None
    if getattr(args, "lam", None):
        labels = [parse_label(p) for p in args.lam.split(";")]
        for lam in labels:
            try:
                WeightLabel(kind, lam)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc

    checks = pick("checks")
    checks = tuple(c.strip() for c in checks.split(",") if c.strip()) if checks else DEFAULT_CHECKS
    fmt = pick("format", "json")
    if fmt not in ("json", "table"):
        raise UsageError(f"unknown format {fmt!r}")
    return RunConfig(
        kind=kind,
        labels=labels,
        lattice=_int(pick("lattice", DEFAULT_LATTICE[kind_name]), "lattice"),
        cutoff=_int(pick("cutoff", 4), "cutoff"),
        params=params,
        format=fmt,
        checks=checks,
        jobs=_int(pick("jobs", 1), "jobs"),
        out=getattr(args, "out", None),
    )


# --- rendering ------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=True) + "\n"


def _coef_text(item) -> str:
    if "coef" in item:
        return str(RatFunc.from_json(item["coef"]))
    num = LaurentPoly.from_json(item["num"]).to_ratfunc()
    den = LaurentPoly.from_json(item["den"]).to_ratfunc()
    return str(num / den)


def table(doc: dict) -> str:
    """Plain rows for the common artifact schemas."""
    schema = doc.get("schema", "")
    if schema == dualitycheck.SCHEMA:
        p = " ".join(f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in doc["params"].items())
        return f"{doc['verdict'].upper():4}  {doc['check']:16} {p}\n"
    if schema == SCHEMA_SUMMARY:
        return f"total {doc['total']}  passed {doc['passed']}  failed {doc['failed']}\n"
    rows = []
    for key in ("terms", "expansion", "coefficients"):
        for item in doc.get(key, []):
            tag = item.get("shift", item.get("mu", item.get("alpha", item.get("exp"))))
            rows.append(f"{str(tuple(tag)):16} {_coef_text(item)}")
    if not rows:
        rows = [f"{k}: {v if isinstance(v, str) else json.dumps(v)}" for k, v in doc.items()]
    return f"# {schema}\n" + "\n".join(rows) + "\n"


def render(docs, fmt: str) -> str:
    if fmt == "table":
        return "".join(table(d) for d in docs)
    if len(docs) == 1:
        return dumps(docs[0])
    return "".join(json.dumps(d, separators=(",", ":")) + "\n" for d in docs)


# --- compute --------------------------------------------------------------------


def compute_docs(cfg: RunConfig, args) -> list[dict]:
    kind = cfg.kind
    if args.op:
        return [_operator(cfg, args).to_json()]
    if args.poly:
        label = WeightLabel(kind, parse_label(args.poly))
        return [eigensolve.eigen_poly(label, cfg.params).to_json()]
    if args.pieri is not None:
        if args.method == "explicit":
            if kind.name == "K":
                raise UsageError("Koornwinder Pieri operators exist in adjoint form only")
            return [diffop.pieri_explicit(kind, args.pieri).to_json()]
        return [diffop.pieri_adjoint(kind, args.pieri, cfg.params).to_json()]
    if args.universal:
        return [eigensolve.universal_series(kind, cfg.cutoff, cfg.params).to_json()]
    if args.delta:
        family = {"A": "A", "K": "K", "G2": "G2"}[kind.name]
        return [qseries.delta_series(family, kind.N, cfg.cutoff, cfg.params).to_json()]
    raise UsageError("compute needs one of --op, --poly, --pieri, --universal, --delta")


def _operator(cfg: RunConfig, args) -> diffop.DiffOp:
    kind, op = cfg.kind, args.op
    if op == "macdonald" and kind.name == "A":
        return diffop.macdonald(kind.N, args.a, args.n)
    if op == "koornwinder" and kind.name == "K":
        return diffop.koornwinder(kind.N, cfg.params)
    if op == "genus2" and kind.name == "G2":
        return diffop.genus_two(args.i, args.j)
    if op == "whittaker" and kind.name == "A":
        return diffop.whittaker_A(kind.N, args.a, args.n)
    if op == "whittaker" and kind.name == "G2":
        return diffop.whittaker_G2(args.i, args.j)
    if op == "toda" and kind.name == "A":
        return diffop.toda_A(kind.N)
    if op == "toda" and kind.name == "G2":
        return diffop.toda_G2(args.a)
    raise UsageError(f"operator {op!r} is not defined for kind {kind.name}")


# --- limits ---------------------------------------------------------------------


def limit_docs(cfg: RunConfig) -> list[dict]:
    kind = cfg.kind
    if kind.name == "K":
        raise UsageError("limits are defined for --kind A and G2")
    if not cfg.labels:
        return [_limit_operators(kind)]
    return [_limit_poly(kind, lam) for lam in cfg.labels]


def _limit_poly(kind: Kind, lam) -> dict:
    Pi = whittaker_limit(eigensolve.eigen_poly(WeightLabel(kind, lam)).to_laurent())
    doc = {"schema": SCHEMA_LIMIT, "kind": kind.name, "N": kind.N, "label": list(lam), "Pi": Pi.to_json()}
    if kind.name == "A":
        values = []
        for a in range(1, kind.N + 1):
            image = diffop.apply(diffop.whittaker_A(kind.N, a, 0), Pi)
            values.append({"a": a, "eigenvalue": _proportionality(image, Pi).to_json()})
        doc["eigenvalues"] = values
    else:
        factors = [univariate_whittaker(m, k) for k, m in enumerate(leading_exponent(kind, lam))]
        prod = LaurentPoly.constant(ONE, kind.xvars)
        for f in factors:
            prod = prod * f
        doc["factors"] = [f.to_json() for f in factors]
        doc["factorizes"] = prod == Pi
    return doc


def _proportionality(image: LaurentPoly, f: LaurentPoly) -> RatFunc:
    e = max(f.terms)
    ratio = image.terms.get(e, RatFunc(0)) / f.terms[e]
    if image != f * ratio:
        raise ArithmeticError("limited polynomial is not an eigenfunction")
    return ratio


def _limit_operators(kind: Kind) -> dict:
    if kind.name == "A":
        ops = {f"whittaker_{a}": diffop.whittaker_A(kind.N, a, 0) for a in range(1, kind.N + 1)}
        ops["toda"] = diffop.toda_A(kind.N)
    else:
        ops = {f"whittaker_{i}{j}": diffop.whittaker_G2(i, j) for i, j in ((1, 2), (1, 3), (2, 3))}
        ops.update({f"toda_{l}": diffop.toda_G2(l) for l in (1, 2, 3)})
    return {"schema": SCHEMA_LIMIT_OPS, "kind": kind.name, "N": kind.N, "operators": {k: v.to_json() for k, v in ops.items()}}


# --- verify ---------------------------------------------------------------------


def _run(job) -> dict:
    try:
        return dualitycheck.run_job(job).to_json()
    except (ArithmeticError, ScalarError, diffop.OperatorError, qseries.SeriesError) as exc:
        name, args = job
        params = {"job": name, "args": [repr(a) for a in args]}
        return CheckReport(name, params, False, {"error": type(exc).__name__, "message": str(exc)}).to_json()


def run_jobs(jobs, workers: int) -> list[dict]:
    """Reports in job order regardless of completion order."""
    if workers <= 1 or len(jobs) <= 1:
        return [_run(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def verify_docs(cfg: RunConfig) -> list[dict]:
    jobs = dualitycheck.plan(cfg.kind, cfg.checks, cfg.lattice, cfg.cutoff, cfg.params, cfg.labels)
    reports = run_jobs(jobs, cfg.jobs)
    failed = sum(r["verdict"] != "pass" for r in reports)
    summary = {"schema": SCHEMA_SUMMARY, "total": len(reports), "passed": len(reports) - failed, "failed": failed}
    return reports + [summary]


# --- corpus ---------------------------------------------------------------------


DEFAULT_CORPUS = [
    ("A2_macdonald_a1.json", "compute --kind A --N 2 --op macdonald --a 1"),
    ("A2_macdonald_a2.json", "compute --kind A --N 2 --op macdonald --a 2"),
    ("A2_macdonald_a1_n1.json", "compute --kind A --N 2 --op macdonald --a 1 --n 1"),
    ("A3_macdonald_a2.json", "compute --kind A --N 3 --op macdonald --a 2"),
    ("A2_whittaker_a1.json", "compute --kind A --N 2 --op whittaker --a 1"),
    ("A3_toda.json", "compute --kind A --N 3 --op toda"),
    ("A2_P_1_0.json", "compute --kind A --N 2 --poly 1,0"),
    ("A2_P_2_0.json", "compute --kind A --N 2 --poly 2,0"),
    ("A2_P_1_1.json", "compute --kind A --N 2 --poly 1,1"),
    ("A2_P_3_1.json", "compute --kind A --N 2 --poly 3,1"),
    ("A3_P_2_1_0.json", "compute --kind A --N 3 --poly 2,1,0"),
    ("A3_P_2_2_0.json", "compute --kind A --N 3 --poly 2,2,0"),
    ("A2_pieri_1.json", "compute --kind A --N 2 --pieri 1"),
    ("A3_pieri_2.json", "compute --kind A --N 3 --pieri 2"),
    ("A3_pieri_1_explicit.json", "compute --kind A --N 3 --pieri 1 --method explicit"),
    ("A2_universal_h3.json", "compute --kind A --N 2 --universal --cutoff 3"),
    ("A2_delta_h4.json", "compute --kind A --N 2 --delta --cutoff 4"),
    ("K1_koornwinder_generic.json", "compute --kind K --N 1 --op koornwinder --preset generic"),
    ("K2_koornwinder_CN1.json", "compute --kind K --N 2 --op koornwinder --preset CN1"),
    ("K1_P_2_formal.json", "compute --kind K --N 1 --poly 2 --preset formal"),
    ("K2_P_1_0_BN1.json", "compute --kind K --N 2 --poly 1,0 --preset BN1"),
    ("K2_P_1_1_A2N2.json", "compute --kind K --N 2 --poly 1,1 --preset A2N2"),
    ("K1_pieri_generic.json", "compute --kind K --N 1 --pieri 1 --preset generic"),
    ("K1_universal_h2.json", "compute --kind K --N 1 --universal --cutoff 2 --preset generic"),
    ("K1_delta_h3.json", "compute --kind K --N 1 --delta --cutoff 3 --preset DN+12"),
    ("G2_op_12.json", "compute --kind G2 --op genus2 --i 1 --j 2"),
    ("G2_op_23.json", "compute --kind G2 --op genus2 --i 2 --j 3"),
    ("G2_P_1_1_0.json", "compute --kind G2 --poly 1,1,0"),
    ("G2_P_2_1_1.json", "compute --kind G2 --poly 2,1,1"),
    ("G2_P_2_2_2.json", "compute --kind G2 --poly 2,2,2"),
    ("G2_pieri_1.json", "compute --kind G2 --pieri 1"),
    ("G2_pieri_3_explicit.json", "compute --kind G2 --pieri 3 --method explicit"),
    ("G2_universal_h2.json", "compute --kind G2 --universal --cutoff 2"),
    ("G2_delta_h2.json", "compute --kind G2 --delta --cutoff 2"),
    ("G2_whittaker_13.json", "compute --kind G2 --op whittaker --i 1 --j 3"),
    ("A2_limit_2_1.json", "limits --kind A --N 2 --lambda 2,1"),
    ("A3_limit_ops.json", "limits --kind A --N 3"),
    ("G2_limit_2_1_1.json", "limits --kind G2 --lambda 2,1,1"),
    ("G2_limit_ops.json", "limits --kind G2"),
    ("A2_verify_small.txt", "verify --kind A --N 2 --lattice 2 --checks eigen,norm,pieri --format table"),
    ("K1_verify_A2N2.txt", "verify --kind K --N 1 --preset A2N2 --lattice 2 --checks eigen,norm --format table"),
    ("G2_verify_commute.json", "verify --kind G2 --checks commute,split"),
]


def execute(argv) -> tuple[int, str]:
    """Run one command in-process; returns ``(exit code, output text)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "corpus":
        return corpus(args)
    cfg = build_config(args)
    if args.command == "compute":
        docs, code = compute_docs(cfg, args), EXIT_PASS
    elif args.command == "limits":
        docs, code = limit_docs(cfg), EXIT_PASS
    else:
        docs = verify_docs(cfg)
        code = EXIT_FAIL if docs[-1]["failed"] else EXIT_PASS
    return code, render(docs, cfg.format)


def _diff_location(expected: str, actual: str) -> dict:
    a, b = expected.splitlines(), actual.splitlines()
    for n, (x, y) in enumerate(zip(a, b), 1):
        if x != y:
            col = next((i for i, (u, v) in enumerate(zip(x, y), 1) if u != v), min(len(x), len(y)) + 1)
            return {"line": n, "column": col, "expected": x, "actual": y}
    n = min(len(a), len(b)) + 1
    return {"line": n, "column": 1, "expected": a[n - 1] if n <= len(a) else "<eof>", "actual": b[n - 1] if n <= len(b) else "<eof>"}


def load_manifest(root: Path) -> list[tuple[str, str]]:
    path = root / "manifest.json"
    if not path.exists():
        return []
    try:
        data = json.loads(path.read_text())
        if data.get("schema") != SCHEMA_CORPUS:
            raise ValueError("schema")
        return [(e["file"], e["command"]) for e in data["entries"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"corrupt corpus manifest {path}") from exc


def write_manifest(root: Path, entries) -> None:
    doc = {"schema": SCHEMA_CORPUS, "entries": [{"file": f, "command": c} for f, c in entries]}
    (root / "manifest.json").write_text(dumps(doc))


def corpus(args) -> tuple[int, str]:
    root = Path(args.path)
    if args.generate:
        root.mkdir(parents=True, exist_ok=True)
        entries = load_manifest(root) or DEFAULT_CORPUS
        write_manifest(root, entries)
    elif not root.is_dir():
        raise UsageError(f"corpus directory {root} does not exist")
    entries = load_manifest(root)
    docs = []
    for name, command in entries:
        _, actual = execute(command.split())
        target = root / name
        info = {"file": name, "command": command}
        if args.generate:
            target.write_text(actual)
            docs.append(CheckReport("corpus", info, True, {"written": len(actual)}).to_json())
            continue
        if not target.exists():
            docs.append(CheckReport("corpus", info, False, {"error": "missing"}).to_json())
            continue
        expected = target.read_text()
        witness = {} if expected == actual else {"diff": _diff_location(expected, actual)}
        docs.append(CheckReport("corpus", info, not witness, witness).to_json())
    failed = sum(d["verdict"] != "pass" for d in docs)
    docs.append({"schema": SCHEMA_SUMMARY, "total": len(docs), "passed": len(docs) - failed, "failed": failed})
    return (EXIT_FAIL if failed else EXIT_PASS), render(docs, args.format or "json")


# --- argument parsing -----------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--kind", choices=("A", "K", "G2"))
    p.add_argument("--N", type=int)
    p.add_argument("--lambda", dest="lam", help="label such as 2,1,0; several separated by ';'")
    p.add_argument("--lattice", type=int)
    p.add_argument("--cutoff", type=int)
    p.add_argument("--preset", choices=PRESET_NAMES)
    p.add_argument("--checks")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int)
    p.add_argument("--format", choices=("json", "table"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="macdual", description="Exact Macdonald-type operators, eigenpolynomials and duality checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="emit operators, polynomials, series")
    _common(p)
    what = p.add_mutually_exclusive_group()
    what.add_argument("--op", choices=("macdonald", "koornwinder", "genus2", "whittaker", "toda"))
    what.add_argument("--poly", metavar="LABEL")
    what.add_argument("--pieri", type=int, metavar="INDEX")
    what.add_argument("--universal", action="store_true")
    what.add_argument("--delta", action="store_true")
    p.add_argument("--a", type=int, default=1, help="operator index (also the Toda index for G2)")
    p.add_argument("--n", type=int, default=0, help="twist degree")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--method", choices=("adjoint", "explicit"), default="adjoint")

    p = sub.add_parser("verify", help="run duality checks over a lattice")
    _common(p)

    p = sub.add_parser("limits", help="q-Whittaker limits of polynomials and operators")
    _common(p)

    p = sub.add_parser("corpus", help="regenerate or compare the golden corpus")
    p.add_argument("path")
    p.add_argument("--generate", action="store_true")
    p.add_argument("--format", choices=("json", "table"))
    p.add_argument("--out")
    return parser


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, exc: BaseException) -> str:
    return dumps({"schema": SCHEMA_ERROR, "error": kind, "type": type(exc).__name__, "message": str(exc)})


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        code, text = execute(argv)
        _emit(text, build_parser().parse_args(argv).out)
        return code
    except UsageError as exc:
        sys.stderr.write(_error("usage", exc))
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        # invalid labels, poles at the chosen parameters, resonances
        sys.stderr.write(_error("input", exc))
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(_error("internal", exc))
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
