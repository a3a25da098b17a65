import json
import subprocess
import sys
from fractions import Fraction

import jsonschema
import numpy as np
import pytest

from majorana_hybrid import gates
from majorana_hybrid.catalog import CATALOG
from majorana_hybrid.cli import EXIT_FAIL, EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, _parse_angle, main
from majorana_hybrid.serialization import load_schema, matrix_from_document


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_verify_one_and_all(capsys):
    code, out, _ = run(capsys, "verify", "CNOT")
    assert code == EXIT_OK and lines(out) == [{"name": "CNOT", "fidelity": pytest.approx(1.0), "pass": True}]
    code, out, _ = run(capsys, "verify", "all")
    assert code == EXIT_OK and len(lines(out)) == len(CATALOG)


def test_verify_unknown_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "nosuchgate")
    assert code == EXIT_USAGE and "nosuchgate" in err


def test_verify_failure_exit_code(capsys):
    # a negative tolerance cannot be met
    code, out, _ = run(capsys, "verify", "CZ", "--eps", "-1")
    assert code == EXIT_FAIL and lines(out)[0]["pass"] is False


def test_synth_cnz_document_and_check(capsys):
    code, out, err = run(capsys, "synth", "cnz", "--n", "2", "--check")
    assert code == EXIT_OK
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("program"))
    assert doc["num_majoranas"] == 8 and len(doc["steps"]) == 7
    assert json.loads(err)["pass"] is True


def test_synth_diag_exact_and_float(capsys):
    code, out, err = run(capsys, "synth", "diag", "--phases", "0,1/2pi,1/4pi,0", "--check")
    assert code == EXIT_OK and json.loads(err)["fidelity"] == pytest.approx(1.0)
    assert all(isinstance(s["angle"], dict) for s in json.loads(out)["steps"])
    code, out, err = run(capsys, "synth", "diag", "--phases", "0,3.14159,0.2,0", "--check")
    assert code == EXIT_OK and json.loads(err)["pass"]


def test_synth_to_file(capsys, tmp_path):
    path = tmp_path / "toffoli.json"
    code, out, _ = run(capsys, "synth", "cnnot", "--n", "2", "--out", str(path), "--check")
    assert code == EXIT_OK and json.loads(out)["pass"]
    code, out, _ = run(capsys, "dump", "--program", str(path))
    assert code == EXIT_OK
    U = matrix_from_document(json.loads(out))
    assert np.allclose(np.abs(U), np.abs(gates.toffoli()))


def test_synth_cswap_and_cu(capsys):
    assert run(capsys, "synth", "cnswap", "--n", "1", "--check")[0] == EXIT_OK
    code, _, err = run(capsys, "synth", "cu", "--beta", "0.3", "--gamma", "1/3pi", "--delta", "-0.5", "--check")
    assert code == EXIT_OK and json.loads(err)["pass"]


@pytest.mark.parametrize("argv", [
    ["synth", "diag"],
    ["synth", "diag", "--phases", "0,1,2"],
    ["synth", "diag", "--phases", "0,abc"],
    ["synth", "cnz"],
    ["synth", "teleport"],
    ["search", "--target", "H"],
    ["search", "--logical", "2", "--target", "H"],
    ["search", "--logical", "1", "--target", "Nope"],
    ["enumerate"],
    ["enumerate", "--majoranas", "4", "--generators", "1,x"],
    ["dump"],
    ["dump", "even-cat"],
    ["dump", "Uzz", "--basis", "physical"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_search_commands(capsys):
    code, out, _ = run(capsys, "search", "--logical", "1", "--target", "H")
    assert code == EXIT_OK and json.loads(out) == {"found": True, "word": ["B1", "B2", "B1"], "length": 3}
    code, out, _ = run(capsys, "search", "--majoranas", "4", "--target", "T")
    doc = json.loads(out)
    assert code == EXIT_PARTIAL and doc["found"] is False and doc["group_closed"] is True


def test_search_program_file_target(capsys, tmp_path):
    path = tmp_path / "cz.json"
    run(capsys, "synth", "cnz", "--n", "1", "--out", str(path))
    code, out, _ = run(capsys, "search", "--logical", "2", "--target", str(path), "--depth", "4")
    assert code == EXIT_OK and json.loads(out)["length"] == 3


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--majoranas", "4", "--exact")
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("group"))
    assert code == EXIT_OK and (doc["order_projective"], doc["order_linear"]) == (192, 384)
    code, out, _ = run(capsys, "enumerate", "--majoranas", "6", "--cap", "100")
    assert code == EXIT_PARTIAL and json.loads(out)["completed"] is False
    code, out, _ = run(capsys, "enumerate", "--majoranas", "6", "--mode", "clifford", "--generators", "B1,B3,B5")
    assert code == EXIT_OK and json.loads(out)["order_linear"] == 128


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--logical", "1")
    assert code == EXIT_OK and json.loads(out)["count"] == 6
    code, out, _ = run(capsys, "orbit", "--logical", "3", "--cap", "10")
    assert code == EXIT_PARTIAL and not json.loads(out)["completed"]


def test_dump(capsys):
    code, out, _ = run(capsys, "dump", "CZ")
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema("matrix"))
    assert np.array_equal(matrix_from_document(doc), gates.CZ)
    code, out, _ = run(capsys, "dump", "MS", "--basis", "physical")
    assert code == EXIT_OK and json.loads(out)["dimension"] == 8
    # a reference-only gate with no braid program
    code, out, _ = run(capsys, "dump", "I")
    assert code == EXIT_OK and json.loads(out)["dimension"] == 2


def test_parse_angle():
    assert _parse_angle("3/4pi") == Fraction(3, 4)
    assert _parse_angle("pi") == Fraction(1)
    assert _parse_angle("0") == Fraction(0)
    assert _parse_angle("0.5") == 0.5


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "majorana_hybrid.cli", "verify", "H"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and json.loads(proc.stdout)["pass"] is True
