from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from skein_lattice import checks, cli
from skein_lattice.cli import EXIT_FAIL, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, main, run_manifest

DOCS = Path(__file__).resolve().parent.parent / "docs"


def write(tmp_path: Path, obj, name="m.json") -> Path:
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return path


@pytest.fixture(autouse=True)
def serial(monkeypatch):
    monkeypatch.setenv("SKEIN_LATTICE_THREADS", "1")


def test_kappa_manifest_passes(tmp_path):
    m = write(tmp_path, {"checks": [{"id": "kappa-factorization", "params": {"r": 3}}]})
    assert run_manifest(m) == EXIT_OK
    report = json.loads((tmp_path / "m.report.json").read_text())
    assert report["summary"] == {"total": 1, "pass": 1, "fail": 0, "error": 0}
    assert report["checks"][0]["status"] == "pass"


@pytest.mark.parametrize("text", ["", "{}", '{"checks": []}'])
def test_empty_manifest(tmp_path, text):
    m = write(tmp_path, text)
    assert run_manifest(m) == EXIT_OK
    assert json.loads((tmp_path / "m.report.json").read_text())["checks"] == []


@pytest.mark.parametrize("bad", [
    {"checks": [{"id": "no-such-check"}]},
    {"checks": [{"id": "kappa-factorization", "params": {"r": 4}}]},
    {"checks": [{"id": "gram", "params": {"p": 8, "family": "even-twists"}}]},
    {"checks": [{"id": "gram", "params": {"p": 5, "family": "delta-twists"}}]},
    {"checks": [{"id": "kappa-factorization", "params": {"r": 3}, "tolerance": 1e-9}]},
    {"checks": [{"id": "kappa-factorization", "params": {"r": 3, "bogus": 1}}]},
    {"checks": "kappa"},
    {"tests": []},
    [1, 2],
    "{not json",
])
def test_malformed_manifest_exit_2(tmp_path, bad, capsys):
    assert run_manifest(write(tmp_path, bad if isinstance(bad, str) else json.dumps(bad))) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_missing_manifest_exit_2(tmp_path):
    assert run_manifest(tmp_path / "absent.json") == EXIT_USAGE


def test_failing_check_exit_1(tmp_path):
    # an even-colored core breaks the FKB product at r = 5 (see fkb tests)
    corpus = [{"core_color": 2, "omega_twists": [1]}]
    m = write(tmp_path, {"checks": [{"id": "fkb-product", "params": {"r": 5, "corpus": corpus}}]})
    assert run_manifest(m) == EXIT_FAIL


def test_internal_error_exit_3(tmp_path, monkeypatch):
    def boom(params):
        raise RuntimeError("kaboom")
    spec = checks.REGISTRY["kappa-factorization"]
    monkeypatch.setitem(checks.REGISTRY, "kappa-factorization",
                        checks.CheckSpec(spec.id, boom, spec.params, spec.summary))
    m = write(tmp_path, {"checks": [{"id": "kappa-factorization", "params": {"r": 3}}]})
    assert run_manifest(m) == EXIT_INTERNAL
    report = json.loads((tmp_path / "m.report.json").read_text())
    assert report["checks"][0]["status"] == "error"
    assert "kaboom" in report["checks"][0]["witnesses"]["error"]


def test_output_path_and_order(tmp_path):
    ids = [("fkb-solid-torus", {"p": 6}), ("kappa-factorization", {"r": 5}),
           ("gram", {"p": 2, "family": "two-theory-genus1"})]
    m = write(tmp_path, {"output": "out/r.json",
                         "checks": [{"id": i, "params": p} for i, p in ids]})
    (tmp_path / "out").mkdir()
    assert run_manifest(m) == EXIT_OK
    report = json.loads((tmp_path / "out" / "r.json").read_text())
    assert [c["id"] for c in report["checks"]] == [i for i, _ in ids]


def test_report_is_deterministic_across_worker_counts(tmp_path, monkeypatch):
    manifest = {"checks": [{"id": "kappa-factorization", "params": {"r": r}} for r in (3, 5, 7)]
                + [{"id": "fkb-solid-torus", "params": {"p": p}} for p in (5, 6, 10)]
                + [{"id": "normalization", "params": {"p": 10}}]}
    m = write(tmp_path, manifest)
    texts = []
    for threads in ("1", "3", "0"):
        monkeypatch.setenv("SKEIN_LATTICE_THREADS", threads)
        out = tmp_path / f"r{threads}.json"
        assert run_manifest(m, out) == EXIT_OK
        texts.append(out.read_bytes())
    assert texts[0] == texts[1] == texts[2]
    assert "wall_time" not in texts[0].decode()


def test_timings_are_opt_in(tmp_path):
    m = write(tmp_path, {"timings": True,
                         "checks": [{"id": "kappa-factorization", "params": {"r": 3}}]})
    run_manifest(m)
    assert "wall_time" in json.loads((tmp_path / "m.report.json").read_text())["checks"][0]


@pytest.mark.parametrize("value, expected", [("0", None), ("", None), ("4", 4), ("1", 1)])
def test_thread_count(monkeypatch, value, expected):
    monkeypatch.setenv("SKEIN_LATTICE_THREADS", value)
    n = cli.thread_count()
    assert n == expected if expected else n >= 1


@pytest.mark.parametrize("value", ["-1", "many"])
def test_bad_thread_env_exit_2(tmp_path, monkeypatch, value):
    monkeypatch.setenv("SKEIN_LATTICE_THREADS", value)
    m = write(tmp_path, {"checks": []})
    assert run_manifest(m) == EXIT_USAGE


def test_schemas_validate_manifest_and_report(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    mschema = json.loads((DOCS / "manifest.schema.json").read_text())
    rschema = json.loads((DOCS / "report.schema.json").read_text())
    manifest = {"description": "smoke", "checks": [
        {"id": "kappa-factorization", "params": {"r": 3}, "tolerance": "exact"},
        {"id": "invariant", "params": {"p": 5, "presentations": [{"lens": [5, 2]}]}},
        {"id": "fkb-product", "params": {"r": 3, "corpus": [{"cable": 1}]}}]}
    jsonschema.validate(manifest, mschema)
    m = write(tmp_path, manifest)
    assert run_manifest(m) == EXIT_OK
    jsonschema.validate(json.loads((tmp_path / "m.report.json").read_text()), rschema)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"checks": [{"params": {}}]}, mschema)


def test_every_registered_check_is_listed(capsys):
    assert main(["checks"]) == EXIT_OK
    out = capsys.readouterr().out
    assert all(cid in out for cid in checks.REGISTRY)


@pytest.mark.parametrize("argv", [
    ["gram", "--p", "2", "--family", "two-theory-genus1"],
    ["gram", "--p", "6", "--family", "delta-twists", "--json"],
    ["invariant", "--p", "5", "--lens", "5", "2"],
    ["invariant", "--p", "6", "--chain", "1", "-2", "--json"],
    ["factorize", "--r", "3"],
    ["fkb", "--p", "6", "--cable", "1"],
    ["fkb", "--p", "10", "--omega", "0", "0", "--json"],
    ["bases", "--p", "5", "--verify", "all"],
    ["bases", "--p", "6", "--family", "u-divided"],
])
def test_subcommands_succeed(argv, capsys):
    assert main(argv) == EXIT_OK
    out = capsys.readouterr().out
    if "--json" in argv:
        json.loads(out)


@pytest.mark.parametrize("argv", [
    [], ["gram", "--p", "4", "--family", "even-twists"], ["factorize", "--r", "9"],
    ["invariant", "--p", "5"], ["invariant", "--p", "5", "--lens", "6", "2"],
    ["bases", "--p", "5", "--family", "nonsense"], ["frobnicate"],
])
def test_subcommand_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_console_entry_point(tmp_path):
    m = write(tmp_path, {"checks": [{"id": "kappa-factorization", "params": {"r": 3}}]})
    proc = subprocess.run([sys.executable, "-m", "skein_lattice", "run", str(m)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    proc = subprocess.run([sys.executable, "-m", "skein_lattice", "run", str(tmp_path / "nope")],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_shipped_acceptance_manifest_is_valid():
    m = cli.load_manifest(DOCS / "acceptance.manifest.json")
    assert len(m["checks"]) >= 13
    assert all(cid in checks.REGISTRY for cid, _ in m["checks"])
