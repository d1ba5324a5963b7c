import csv
import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from mockcong.cli import SCAN_COLUMNS, main


@pytest.fixture(scope="module")
def validator():
    schema = json.loads(resources.files("mockcong").joinpath("schemas/output.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_expand_examples():
    code, out = run("expand", "f", "10", "--mod", "5")
    assert code == 0
    assert [int(line.split()[1]) for line in out.splitlines()] == [1, 1, 3, 3, 2, 3, 0, 2, 4, 1, 0]
    assert run("expand", "partition", "4")[1] == "0 1\n1 1\n2 2\n3 3\n4 5\n"
    assert run("expand", "eta:1^-2", "0")[1] == "0 1\n"


def test_scan_examples():
    code, out = run("scan", "partition", "--ell", "5", "--mmax", "5", "--N", "400")
    assert code == 0
    rows = [l for l in out.splitlines() if not l.startswith("#")]
    assert rows == ["5 4 | HoldsUpTo(400) | NecessaryConditionsMet symbol_zero"]
    code, out = run("scan", "f", "--ell", "5", "--mmax", "3", "--N", "400", "--format", "json")
    assert json.loads(out)["rows"] == []
    code, out = run("scan", "kcolor:2", "--ell", "5", "--mmax", "5", "--N", "400", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == SCAN_COLUMNS
    assert [(r["m"], r["t"]) for r in rows] == [("5", "2"), ("5", "3"), ("5", "4")]
    assert all(r["status"] == "holds" and r["first_fail_n"] == "" for r in rows)


def test_scan_all_lists_failures():
    _, out = run("scan", "f", "--ell", "5", "--mmax", "5", "--N", "100", "--all", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 15
    assert all(r["status"] == "fails" and r["first_fail_n"] != "" for r in rows)
    assert {r["good_flag"] for r in rows} <= {"true", "false"}


def test_direct_wrappers():
    assert run("verdict", "f", "5", "3", "5") == (0, "RuledOut(legendre-clash)\n")
    code, out = run("witness", "4", "0", "-1", "1", "--lambda", "1")
    assert code == 0 and out.endswith("verified\n")
    a = int(out.split()[2])
    assert (a * a - 73) % 96 == 0
    assert run("dedekind", "1", "3") == (0, "1/18\n")
    assert run("orbit", "5", "1", "-1") == (0, "1 2\n")
    code, out = run("multiplier", "leading-f", "5", "7")
    assert code == 0 and out.rstrip().endswith("verified")
    code, out = run("multiplier", "check-eta", "--samples", "3", "--tol", "1e-9")
    assert code == 0 and "pass" in out


def test_exit_codes(capsys):
    assert run("verdict", "f", "5", "3", "4")[0] == 2
    assert run("verdict", "f", "5", "7", "5")[0] == 2
    assert run("expand", "nonsense", "4")[0] == 2
    assert run("witness", "8", "0", "16", "1", "--lambda", "1")[0] == 2
    assert run("multiplier", "leading-f", "6", "5")[0] == 2
    assert "mockcong:" in capsys.readouterr().err


def test_json_outputs_validate(validator, tmp_path):
    commands = [
        ["expand", "omega", "12"],
        ["expand", "diamond1", "12", "--mod", "7"],
        ["scan", "partition", "--ell", "7", "--mmax", "8", "--N", "50"],
        ["scan", "f", "--ell", "5", "--mmax", "3", "--N", "50", "--all"],
        ["verdict", "diamond1", "10", "3", "5"],
        ["verdict", "general:-4,6,0", "5", "2", "5"],
        ["witness", "12", "5", "-6", "1", "--lambda", "1"],
        ["orbit", "5", "4", "-1"],
        ["dedekind", "5", "12"],
        ["multiplier", "xi", "1", "0", "1", "1"],
        ["multiplier", "w", "1", "0", "2", "1"],
        ["multiplier", "w1", "3", "1", "2", "1"],
        ["multiplier", "w2", "1", "1", "1", "2"],
        ["multiplier", "check-eta", "--samples", "2"],
        ["multiplier", "leading-omega", "4", "7"],
    ]
    for argv in commands:
        code, out = run(*argv, "--format", "json")
        assert code == 0, argv
        validator.validate(json.loads(out))


def test_byte_identical_reruns(tmp_path, monkeypatch):
    monkeypatch.setenv("MOCKCONG_CACHE_DIR", str(tmp_path / "env-cache"))
    argv = ["scan", "omega", "--ell", "7", "--mmax", "12", "--N", "200", "--format", "json"]
    first = run(*argv)
    assert list((tmp_path / "env-cache").iterdir())
    second = run(*argv)  # served from the cache
    third = run(*argv, "--threads", "4")
    assert first == second == third
    explicit = tmp_path / "flag-cache"
    assert run(*argv, "--cache-dir", str(explicit)) == first
    assert len(list(explicit.iterdir())) == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mockcong", "dedekind", "1", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1/18\n"
    proc = subprocess.run([sys.executable, "-m", "mockcong", "verdict", "f", "5", "3", "9"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
