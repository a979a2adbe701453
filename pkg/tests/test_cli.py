import json
import os
import subprocess
import sys

import pytest

from artifact.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, SCRATCH_ENV, run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_builtins(capsys):
    code, out, _ = call(capsys, "list-builtins", "--json")
    assert code == EXIT_OK
    data = json.loads(out)["data"]
    assert "z6z6" in data["matched pairs"]
    assert "circle-3" in data["covers"]
    assert "suq2-QP-1-1" in data["ideal families"]
    assert {"Z12", "S3", "S3xS3"} <= set(data["groups"])


def test_hopf_check_builtin_and_file(capsys, tmp_path):
    assert call(capsys, "hopf", "check", "S3")[0] == EXIT_OK
    g = {"elements": ["e", "x"], "table": [["e", "x"], ["x", "e"]], "identity": "e"}
    f = tmp_path / "group.json"
    f.write_text(json.dumps(g))
    code, out, _ = call(capsys, "hopf", "check", str(f), "--json")
    assert code == EXIT_OK
    assert json.loads(out)["schema"] == 1


def test_hopf_check_bad_group(capsys, tmp_path):
    g = {"elements": ["e", "x"], "table": [["e", "x"], ["x", "x"]], "identity": "e"}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(g))
    code, _, err = call(capsys, "hopf", "check", str(f))
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_json_syntax_error_has_position(capsys, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text('{\n  "elements": [\n}')
    code, _, err = call(capsys, "cohomology", "nerve", str(f))
    assert code == EXIT_INPUT
    assert "line 3" in err


def test_missing_file(capsys):
    code, _, err = call(capsys, "cohomology", "nerve", "/nonexistent/cover.json")
    assert code == EXIT_INPUT and "no such file" in err


def test_unknown_field(capsys):
    assert call(capsys, "hopf", "check", "Z3", "--field", "R")[0] == EXIT_INPUT


def test_nerve_circle(capsys):
    cover = '{"sets": ["A", "B", "C"], "pairs": [["A", "B"], ["B", "C"], ["A", "C"]]}'
    code, out, _ = call(capsys, "cohomology", "nerve", cover, "--json")
    assert code == EXIT_OK
    assert json.loads(out)["data"]["H^1"] == 1


def test_bicross_example_degenerate(capsys):
    code, out, _ = call(capsys, "bicross", "example", "z3z2", "--gamma1", "2", "--gamma2", "1/2", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["data"]["dim ker eps / Q_P"] == 2


def test_bicross_example_symbolic(capsys):
    code, out, _ = call(capsys, "bicross", "example", "z3z2", "--gamma1", "q", "--gamma2", "1/q", "--json")
    assert code == EXIT_OK
    data = json.loads(out)["data"]
    assert data["field"] == "Q(q)" and data["dim ker eps / Q_P"] == 2


def test_bad_gamma_value(capsys):
    assert call(capsys, "bicross", "example", "z3z2", "--gamma1", "2/")[0] == EXIT_INPUT


def test_calculus_ideal_cyclotomic(capsys):
    code, out, _ = call(capsys, "calculus", "ideal", "Z3", "--kind", "group", "--field", "Q(zeta3)",
                        "--gens", '[{"e": "1", "g": "z3^2", "g^2": "z3"}]', "--json")
    assert code == EXIT_OK
    data = json.loads(out)["data"]
    assert data["dim ker eps/Q"] == 1 and data["bicovariant"]
    # g - e generates all of ker eps
    code, out, _ = call(capsys, "calculus", "ideal", "Z3", "--kind", "group", "--gens", '[{"g": "1", "e": "-1"}]',
                        "--json")
    assert json.loads(out)["data"]["dim ker eps/Q"] == 0


def test_bundle_run_spec(capsys, tmp_path):
    spec = {"base": ["x", "y"], "fibre": "C(Z2)", "beta": {"d:g": [["x", "y", "1"]]}}
    f = tmp_path / "bundle.json"
    f.write_text(json.dumps(spec))
    for mode in ("maximal", "minimal"):
        code, out, _ = call(capsys, "bundle", "run", str(f), "--nhor", mode, "--json")
        assert code == EXIT_OK, out


def test_bundle_run_rejects_diagonal_beta(capsys):
    spec = '{"base": 2, "fibre": "C(Z2)", "beta": {"d:g": [[0, 0, "1"]]}}'
    assert call(capsys, "bundle", "run", spec)[0] == EXIT_INPUT


def test_qmonopole_formula_miss_exits_one(capsys):
    # (2,2;0,0) is one smaller than the closed formula per zero index
    code, out, _ = call(capsys, "qmonopole", "dims", "--family", "2,2,0,0", "--json")
    assert code == EXIT_FAIL
    assert not json.loads(out)["ok"]


def test_bad_family(capsys):
    assert call(capsys, "qmonopole", "dims", "--family", "suq2-X")[0] == EXIT_INPUT


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["hopf"])
    assert exc.value.code == EXIT_INPUT


def test_out_atomic_with_scratch(capsys, tmp_path, monkeypatch):
    scratch = tmp_path / "scratch"
    scratch.mkdir()
    monkeypatch.setenv(SCRATCH_ENV, str(scratch))
    dest = tmp_path / "reports" / "h1.json"
    code, _, _ = call(capsys, "cohomology", "nerve", "disk-3", "--out", str(dest))
    assert code == EXIT_OK
    data = json.loads(dest.read_text())
    assert data["schema"] == 1 and data["data"]["H^1"] == 0
    assert list(scratch.iterdir()) == []


def test_module_entry_point(tmp_path):
    env = dict(os.environ)
    proc = subprocess.run([sys.executable, "-m", "artifact", "bicross", "gamma-dim", "z6z6", "--json"],
                          capture_output=True, text=True, env=env, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["data"]["dimension"] == 13
