import io
import json
import sys

import pytest

from gradedleibniz import __version__
from gradedleibniz.catalog import by_name
from gradedleibniz.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from gradedleibniz.iso import BasisChange, change_of_basis
from gradedleibniz.serialize import dumps_law, law_to_json, witness_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_check_catalog_law(capsys):
    code, out, err = run(capsys, "check", "mu3")
    assert code == EXIT_OK and out["leibniz"] and not out["lie"]
    assert out["series_dims"] == [5, 3, 1, 0] and out["nilindex"] == 4
    assert "Leibniz" in err


def test_check_file_and_failure(tmp_path, capsys):
    data = law_to_json(by_name("mu3"))
    data["products"][0]["value"] = {"e4": "7"}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, err = run(capsys, "check", str(path))
    assert code == EXIT_FAIL and not out["leibniz"]
    assert "FAIL" in err and out["violations"]


def test_check_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(dumps_law(by_name("dim4"))))
    code, out, _ = run(capsys, "check", "-")
    assert code == EXIT_OK and out["dim"] == 4


def test_bad_input_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run(capsys, "check", str(path))[0] == EXIT_INPUT
    assert run(capsys, "check", "no-such-law")[0] == EXIT_INPUT
    assert run(capsys, "template", "residuals", "T_nope(3)")[0] == EXIT_INPUT
    assert run(capsys, "reproduce", "nothing")[0] == EXIT_INPUT
    assert run(capsys, "catalog", "emit")[0] == EXIT_INPUT


def test_not_nilpotent_profile(tmp_path, capsys):
    path = tmp_path / "solvable.json"
    path.write_text(json.dumps({"dim": 2, "products": [
        {"left": "e2", "right": "e1", "value": {"e2": "1"}},
        {"left": "e1", "right": "e2", "value": {"e2": "-1"}}]}))
    code, _, err = run(capsys, "profile", str(path))
    assert code == EXIT_FAIL and "nilpotent" in err


def test_profile_and_series(capsys):
    code, out, _ = run(capsys, "profile", "thmI12(8,1)")
    assert code == EXIT_OK and out["charseq"] == [6, 1, 1] and out["type"] == "TypeI"
    code, out, _ = run(capsys, "series", "NF(5)")
    assert out["dims"] == [5, 4, 3, 2, 1, 0] and out["nilindex"] == 6


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "mu1")
    assert code == EXIT_OK and out["charseq"] == [3, 1, 1] and "battery" in out


def test_catalog_commands(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--max-dim", "6")
    assert code == EXIT_OK and "mu1" in out["laws"] and "dim4" in out["laws"]
    code, out, _ = run(capsys, "catalog", "emit", "L(7,3)")
    assert out["dim"] == 7 and out["name"] == "L(7,3)"


def test_template_residuals(capsys):
    code, out, _ = run(capsys, "template", "residuals", "T_I11(5)")
    assert code == EXIT_OK and len(out["residuals"]) == 9
    code, out, _ = run(capsys, "template", "residuals", "T_dim4")
    assert out["residuals"] == []


def test_iso_witness(tmp_path, capsys):
    a = by_name("mu1")
    P = BasisChange([[1, 0, 0, 0, 0], [0, 2, 0, 0, 0], [0, 0, 2, 0, 0],
                     [1, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    b = change_of_basis(a, P)
    (tmp_path / "b.json").write_text(dumps_law(b))
    (tmp_path / "w.json").write_text(json.dumps(witness_to_json(P)))
    code, out, _ = run(capsys, "iso", "--witness", str(tmp_path / "w.json"), "mu1",
                       str(tmp_path / "b.json"))
    assert code == EXIT_OK and out["verified"]
    code, out, _ = run(capsys, "iso", "--witness", str(tmp_path / "w.json"), "mu1", "mu2")
    assert code == EXIT_FAIL and not out["verified"]


def test_reproduce_dim4(capsys):
    code, out, err = run(capsys, "reproduce", "dim4")
    assert code == EXIT_OK and out["experiment"] == "dim4"
    assert "PASS" in err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out
