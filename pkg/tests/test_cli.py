import json
import subprocess
import sys

import numpy as np
import pytest

from opradius import is_orthogonal, is_parallel, rho_radius
from opradius.cli import main
from opradius.io import (
    MatrixFileError,
    ReportEnvelope,
    envelope_from_json,
    envelope_to_json,
    load_matrix,
    parse_matrix,
    result_to_obj,
    save_matrix,
)
from opradius.oracle import OracleVerdict


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, m in {
        "nil": [[0, 1], [0, 0]],
        "id": np.eye(2),
        "d": np.diag([1, -1]),
        "d10": np.diag([1, 0]),
        "d01": np.diag([0, 1]),
        "twod": 2 * np.diag([1, -1]),
        "id3": np.eye(3),
    }.items():
        paths[name] = tmp_path / f"{name}.json"
        save_matrix(paths[name], m, label=name)
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestMatrixFile:
    def test_round_trip(self, tmp_path, rng):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        save_matrix(tmp_path / "a.json", a, "A")
        m = load_matrix(tmp_path / "a.json")
        assert m.n == 3 and m.label == "A" and np.array_equal(m.matrix, a)

    def test_row_major(self):
        m = parse_matrix({"n": 2, "entries": [[1, 0], [2, 0], [3, 0], [4, 1]]})
        assert m.matrix[0, 1] == 2 and m.matrix[1, 1] == 4 + 1j and m.label is None

    @pytest.mark.parametrize("obj,field", [
        ([], "top level"),
        ({"entries": []}, "n"),
        ({"n": 0, "entries": []}, "n"),
        ({"n": True, "entries": [[1, 0]]}, "n"),
        ({"n": 1}, "entries"),
        ({"n": 2, "entries": [[1, 0]]}, "entries"),
        ({"n": 1, "entries": [[1]]}, "entries[0]"),
        ({"n": 1, "entries": [["a", 0]]}, "entries[0]"),
        ({"n": 1, "entries": [[1e400, 0]]}, "entries[0]"),
        ({"n": 1, "entries": [[1, 0]], "label": 5}, "label"),
    ])
    def test_malformed_names_field(self, obj, field):
        with pytest.raises(MatrixFileError, match=field.replace("[", r"\[").replace("]", r"\]")):
            parse_matrix(obj)

    def test_invalid_json(self, tmp_path):
        (tmp_path / "x.json").write_text("{not json")
        with pytest.raises(MatrixFileError):
            load_matrix(tmp_path / "x.json")


class TestEnvelope:
    def test_round_trip_with_witnesses(self):
        rep = is_orthogonal(np.diag([1, -1]), np.eye(2), 1.0)
        env = ReportEnvelope("orthogonal", ["A", "B"], 1.0, rep.tolerance, result_to_obj(rep), rep.witnesses,
                             result_to_obj(OracleVerdict(True, 1.0, 1.0, 0.0, True, True, 0.1)))
        back = envelope_from_json(envelope_to_json(env))
        assert back == env
        for w0, w1 in zip(env.witnesses, back.witnesses):
            assert np.array_equal(w0.x, w1.x) and np.array_equal(w0.y, w1.y)
            assert w0.attainment_residual == w1.attainment_residual

    def test_radius_and_parallel_results(self):
        cert = rho_radius([[0, 1], [0, 0]], 0.5)
        obj = json.loads(json.dumps(result_to_obj(cert)))
        assert obj["radius"] == cert.radius
        assert np.array_equal([complex(*p) for p in obj["attaining_vector"]], cert.attaining_vector)
        rep = is_parallel(np.eye(2), 2 * np.eye(2), 1.0)
        assert result_to_obj(rep)["lambda_star"] == [rep.lambda_star.real, rep.lambda_star.imag]


class TestRadiusCommand:
    def test_nilpotent(self, capsys, files):
        code, out, _ = run(capsys, "radius", files["nil"], "--rho", "0.5")
        env = json.loads(out)
        assert code == 0 and env["result"]["radius"] == pytest.approx(2.0, abs=1e-9)
        assert env["inputs"] == ["nil"] and env["rho"] == 0.5 and env["tolerance"] == 1e-9

    @pytest.mark.parametrize("rho,want", [("1", 1.0), ("0.5", 3.0)])
    def test_identity(self, capsys, files, rho, want):
        code, out, _ = run(capsys, "radius", files["id"], "--rho", rho)
        assert code == 0 and json.loads(out)["result"]["radius"] == pytest.approx(want, abs=1e-9)

    @pytest.mark.parametrize("rho", ["0", "2.5", "0.0005", "nan"])
    def test_invalid_rho(self, capsys, files, rho):
        code, out, err = run(capsys, "radius", files["id"], "--rho", rho)
        assert code == 3 and out == "" and "rho" in err

    def test_malformed(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"n": 2, "entries": [[1, 0]]}')
        code, out, err = run(capsys, "radius", p)
        assert code == 2 and "entries" in err and out == ""

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "radius", tmp_path / "nope.json")[0] == 2


class TestPairCommands:
    def test_orthogonal(self, capsys, files):
        code, out, _ = run(capsys, "orthogonal", files["d"], files["id"], "--rho", "1", "--theta-samples", "4")
        env = json.loads(out)
        assert code == 0 and env["result"]["orthogonal"] is True and len(env["witnesses"]) == 4
        assert len(env["witnesses"][0]["x"]) == 2

    def test_not_orthogonal(self, capsys, files):
        code, out, _ = run(capsys, "orthogonal", files["d"], files["d"], "--rho", "2")
        assert code == 1 and json.loads(out)["result"]["orthogonal"] is False

    def test_mismatch(self, capsys, files):
        code, out, err = run(capsys, "orthogonal", files["d"], files["id3"])
        assert code == 4 and "mismatch" in err

    def test_cross_check(self, capsys, files):
        code, out, _ = run(capsys, "orthogonal", files["d"], files["id"], "--rho", "1", "--cross-check",
                           "--grid-radial", "8", "--grid-angular", "16", "--theta-samples", "0")
        env = json.loads(out)
        assert code == 0 and env["cross_check"]["agrees"] is True

    def test_tolerance_echo(self, capsys, files):
        _, out, _ = run(capsys, "orthogonal", files["d"], files["id"], "--rho", "1", "--tol", "1e-5",
                        "--theta-samples", "0")
        env = json.loads(out)
        assert env["tolerance"] == 1e-5 and env["result"]["tolerance"] == 1e-5

    def test_parallel(self, capsys, files):
        code, out, _ = run(capsys, "parallel", files["d"], files["twod"])
        env = json.loads(out)
        assert code == 0 and env["result"]["lambda_star"] == pytest.approx([1.0, 0.0], abs=1e-6)
        assert env["witnesses"][0]["found"] is True

    def test_not_parallel(self, capsys, files):
        code, out, _ = run(capsys, "parallel", files["d10"], files["d01"], "--rho", "1")
        assert code == 1 and json.loads(out)["result"]["parallel"] is False

    def test_parallel_malformed(self, capsys, files, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("[")
        assert run(capsys, "parallel", files["d"], p)[0] == 2

    def test_byte_identical(self, capsys, files):
        argv = ("orthogonal", files["d"], files["id"], "--rho", "0.8", "--theta-samples", "3")
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first


class TestSelftest:
    def test_zero_trials(self, capsys):
        code, out, _ = run(capsys, "selftest", "--trials", "0")
        assert code == 3 and out == ""

    def test_pass_and_deterministic(self, capsys):
        code, out, err = run(capsys, "selftest", "--seed", "3", "--trials", "2")
        env = json.loads(out)
        assert code == 0 and env["result"]["passed"] is True
        assert "PASS" in err and "FAIL" not in err
        assert run(capsys, "selftest", "--seed", "3", "--trials", "2")[1] == out


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "opradius.cli", "radius", str(files["id"]), "--rho", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["radius"] == pytest.approx(1.0)
