import csv
import io
import json
import math

import numpy as np
import pytest

from numrad.cli import main
from numrad.matrixio import dump_matrix, vector_to_obj


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, m in {"eye": np.eye(2), "nil": np.array([[0, 2], [0, 0]]),
                    "neg": -np.eye(2), "jordan": np.array([[3, 1], [0, 3]])}.items():
        paths[name] = tmp_path / f"{name}.json"
        dump_matrix(m, paths[name])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "data": [[[1, 0], [0, 0]]] * 3}))
    paths["bad"] = bad
    for name, v in {"x": [1, 2], "e": [0.6, 0.8], "y": [2j, 1]}.items():
        paths[name] = tmp_path / f"{name}.json"
        paths[name].write_text(json.dumps(vector_to_obj(np.array(v, dtype=complex))))
    return {k: str(v) for k, v in paths.items()}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_quantities(capsys, files):
    code, out, _ = run(capsys, "quantities", files["nil"], "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["operator_norm"] == pytest.approx(2)
    assert doc["numerical_radius"] == pytest.approx(1, abs=1e-12)
    assert doc["crawford_number"] == 0
    code, out, _ = run(capsys, "quantities", files["eye"])
    assert code == 0 and "numerical_radius = 1" in out


def test_quantities_rejects_bad_file(capsys, files):
    code, _, err = run(capsys, "quantities", files["bad"])
    assert code == 2 and "MatrixFormatError" in err


def test_check_worked_example(capsys, files):
    code, out, _ = run(capsys, "check", "--chain", "CH-C3.14", files["nil"], files["eye"],
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["verdicts"][0]["terms"][1][1] == pytest.approx(math.sqrt(61 / 12), abs=1e-12)


def test_check_text_uses_17_digits(capsys, files):
    code, out, _ = run(capsys, "check", "--chain", "CH-C3.14", files["nil"], files["eye"])
    assert code == 0 and "2.2546248764114472" in out


def test_check_errors(capsys, files):
    assert run(capsys, "check", "--chain", "CH-NOPE", files["eye"])[0] == 2
    assert run(capsys, "check", "--chain", "CH-BK", files["eye"])[0] == 2
    code, _, err = run(capsys, "check", "--chain", "CH-BK2", files["neg"], files["eye"])
    assert code == 2 and "PositivityViolation" in err


def test_check_vectors(capsys, files):
    code, out, _ = run(capsys, "check", "--chain", "CH-BUZANO", files["x"], files["e"],
                       files["y"])
    assert code == 0 and "PASS" in out


def test_check_alpha_grid_and_csv(capsys, files):
    code, out, _ = run(capsys, "check", "--chain", "CH-T3.5", files["jordan"], "--alpha", "grid",
                       "--f", "t,t^2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 16
    assert {r["f"] for r in rows} == {"t", "t^2"}
    assert all(r["pass"] == "true" for r in rows)


def test_batch_round_trip(capsys, tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run(capsys, "batch", "--count", "3", "--n", "2,3", "--format", "json",
               "--out", str(out1))[0] == 0
    assert run(capsys, "batch", "--replay", str(out1), "--format", "json",
               "--out", str(out2))[0] == 0
    r1, r2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    assert r1["verdicts"] == r2["verdicts"] and r1["config"] == r2["config"]
    assert r1["summary"]["failed"] == 0


def test_batch_wrong_ensemble_is_input_error(capsys):
    code, _, err = run(capsys, "batch", "--chain", "CH-BK2", "--class", "ginibre",
                       "--count", "2")
    assert code == 2 and "PositivityViolation" in err


def test_batch_bad_flags(capsys):
    assert run(capsys, "batch", "--class", "wishart")[0] == 2
    assert run(capsys, "batch", "--f", "t^x")[0] == 2
    assert run(capsys, "batch", "--n", "four")[0] == 2
    assert run(capsys, "batch", "--count", "zero")[0] == 2


def test_batch_failure_exit_code(capsys):
    # an absurd negative tolerance turns exact ties into failures
    code, out, _ = run(capsys, "batch", "--chain", "CH-IDENT", "--count", "2",
                       "--tol", "-1", "--format", "csv")
    assert code == 1 and "false" in out


def test_worked_example_commands(capsys):
    for example in ("cor5-2x2", "nilpotent-sharpness", "hermitian-sharpness",
                    "remark-counterexamples"):
        assert run(capsys, "paper-example", example)[0] == 0
    assert run(capsys, "paper-example", "nope")[0] == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "json")
    ids = [c["id"] for c in json.loads(out)]
    assert code == 0 and ids == sorted(ids) and "CH-T3.13" in ids and len(ids) == 38


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2
