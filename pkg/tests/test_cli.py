import json
import subprocess
import sys

import pytest

from npc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_then_check(tmp_path, capsys):
    proof = tmp_path / "p.json"
    code, out, _ = run(capsys, "prove", "--n", "2", "|-1 q(X,e1,e1)", "--out", str(proof))
    assert code == 0 and proof.exists()
    code, out, _ = run(capsys, "check", str(proof))
    assert code == 0 and out.startswith("ok: |-1 q(X, e1, e1)")


def test_valid_prints_counterexample(capsys):
    code, out, err = run(capsys, "valid", "--n", "2", "|-1 X")
    assert code == 1 and "X=2" in out and "X=2" in err
    code, out, _ = run(capsys, "valid", "|-1 X, X^[2,1]")
    assert code == 0 and out.strip() == "valid"


def test_check_reports_path_of_flipped_id(tmp_path, capsys):
    good = tmp_path / "good.json"
    assert run(capsys, "prove", "|-1 X, X^[2,1]", "--out", str(good))[0] == 0
    doc = json.loads(good.read_text())
    leaf = doc["proof"]["premises"][0]
    assert leaf["rule"] == "Id"
    leaf["params"]["rho"] = [1, 2]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, err = run(capsys, "check", str(bad))
    assert code == 1 and "at 0:" in err
    code, out, _ = run(capsys, "check", "--json", str(bad))
    payload = json.loads(out)
    assert code == 1 and payload["ok"] is False and payload["path"] == [0]


def test_prove_refuted_and_budget(capsys):
    code, out, err = run(capsys, "prove", "|-1 X")
    assert code == 1 and "X=2" in err
    code, _, err = run(capsys, "prove", "--budget", "1", "q(X, q(Y, e1, e2), e2) |-1 q(Y, X, e1)")
    assert code == 1 and "budget" in err


def test_prove_prints_proof_json(capsys):
    code, out, _ = run(capsys, "prove", "|-1 e1")
    assert code == 0
    assert json.loads(out) == {"version": 1, "n": 2,
                               "proof": {"rule": "Const", "params": {"i": 1}, "conclusion": "|-1 e1",
                                         "premises": []}}


def test_eval(capsys):
    assert run(capsys, "eval", "q(X, e2, e1)", "--env", "X=2") == (0, "1\n", "")
    code, _, err = run(capsys, "eval", "X")
    assert code == 2 and "X" in err
    code, out, _ = run(capsys, "eval", "--n", "3", "--json", "X^[2,3,1]", "--env", "X=1")
    assert code == 0 and json.loads(out)["value"] == 2


def test_translate(capsys):
    assert run(capsys, "translate", "X & Y")[:2] == (0, "q(X, Y, e2)\n")
    assert run(capsys, "translate", "--dir", "2pc-to-pc", "q(X, Y, Z)")[:2] == (0, "X & Y | ~X & Z\n")
    assert run(capsys, "translate", "--dir", "2pc-to-pc", "--n", "3", "X")[0] == 2


def test_algebra_commands(capsys):
    code, out, _ = run(capsys, "algebra", "identities", "--size", "2")
    assert code == 0 and out.count("PASS") == 6
    code, out, _ = run(capsys, "algebra", "corrupted", "--size", "2", "--json")
    payload = json.loads(out)
    assert code == 1 and payload["pass"] is False
    assert any(c["witness"] is not None for c in payload["checks"] if not c["pass"])
    assert run(capsys, "algebra", "multideals", "--n", "3", "--size", "2")[0] == 0
    assert run(capsys, "algebra", "iso", "--n", "3", "--size", "2")[0] == 0
    assert run(capsys, "algebra", "identities", "--size", "40")[0] == 2


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--vars", "1", "--depth", "1", "--max-total", "2", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["pass"] and payload["total"] > 0
    assert payload["matrix"]["Proved"]["Invalid"] == payload["matrix"]["Refuted"]["Valid"] == 0
    assert run(capsys, "enumerate", "--n", "3", "--vars", "2", "--depth", "2")[0] == 2


def test_json_output_is_stable(capsys):
    first = run(capsys, "valid", "--json", "X |-1 Y")[1]
    second = run(capsys, "valid", "--json", "X |-1 Y")[1]
    assert first == second
    assert json.loads(first) == {"command": "valid", "n": 2, "sequent": "X |-1 Y", "valid": False,
                                 "counterexample": {"X": 1, "Y": 2}}


@pytest.mark.parametrize("argv", [["valid", "X |-"], ["valid", "--n", "1", "|-1 X"], ["check", "/nonexistent.json"],
                                  ["prove", "--budget", "0", "|-1 e1"], ["eval", "e3"]])
def test_usage_errors_exit_2(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "npc.cli", "valid", "|-1 e1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "valid"
