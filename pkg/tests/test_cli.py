import json
import subprocess
import sys

import pytest

from jacobi_nh import HalfIntSymMatrix, NearlyHoloElt, ShapeMismatch
from jacobi_nh.cli import EXIT_EXACT, EXIT_HYPOTHESIS, EXIT_IO, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main
from jacobi_nh.formsio.serialize import deserialize, deserialize_components, deserialize_decomposition, serialize_nh
from jacobi_nh.randomdata import random_holomorphic_vs, random_nh

M = HalfIntSymMatrix([[2]])


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_commutators_default(capsys):
    code, out, _ = run(capsys, "verify-commutators")
    assert code == EXIT_OK
    assert out.startswith("config: ")
    assert "FAIL" not in out


def test_verify_commutators_h3(capsys):
    code, out, _ = run(capsys, "verify-commutators", "--h", "3", "--count", "1", "--max-degree", "2", "--seed", "5")
    assert code == EXIT_OK
    assert out.count("PASS [") > 20


def test_verify_commutators_fault_injection(capsys):
    code, out, _ = run(capsys, "verify-commutators", "--count", "1", "--inject-fault", "[L, R_k]")
    assert code == EXIT_EXACT
    failing = [line for line in out.splitlines() if line.strip().startswith("FAIL [")]
    assert failing == ["  FAIL [L, R_k] = k (1 inputs)"]
    assert "first counterexample" in out


def test_verify_commutators_as_printed(capsys):
    code, out, _ = run(capsys, "verify-commutators", "--count", "1", "--as-printed")
    assert code == EXIT_EXACT
    assert "FAIL [L, Dt_k] = k - h/2 - 1/2 R^J' m^-1 L^J" in out


def test_index_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"two_m": [[2, 1], [1, 4]]}))
    code, out, _ = run(capsys, "verify-commutators", "--index-file", str(path), "--max-degree", "2")
    assert code == EXIT_OK
    assert "index m = HalfIntSymMatrix([[1, 1/2], [1/2, 2]])" in out


def test_decompose_scalar_passthrough(capsys, tmp_path):
    src, dst = tmp_path / "in.json", tmp_path / "out.json"
    src.write_bytes(serialize_nh(random_holomorphic_vs(4, 0, M, 1)))
    code, out, _ = run(capsys, "decompose", "--in", str(src), "--out", str(dst))
    assert code == EXIT_OK
    t = deserialize_components(dst.read_bytes())
    assert t.counts() == [1]


def test_decompose_h1_s2(capsys, tmp_path):
    src, dst = tmp_path / "in.json", tmp_path / "out.json"
    src.write_bytes(serialize_nh(random_holomorphic_vs(4, 2, M, 2)))
    code, out, _ = run(capsys, "decompose", "--in", str(src), "--out", str(dst))
    assert code == EXIT_OK
    assert deserialize_components(dst.read_bytes()).counts() == [1, 1, 1]
    assert "level 2: weight 6, multiplicity 1 (binom = 1)" in out


def test_decompose_nearly_holomorphic(capsys, tmp_path):
    src, dst = tmp_path / "in.json", tmp_path / "out.json"
    f = random_nh(5, M, 2, 3)
    src.write_bytes(serialize_nh(f))
    code, _, _ = run(capsys, "decompose", "--in", str(src), "--out", str(dst), "--d", "2")
    assert code == EXIT_OK
    assert deserialize_decomposition(dst.read_bytes()).multiplicities() == [1, 1, 2]


def test_decompose_hypothesis(capsys, tmp_path):
    src = tmp_path / "in.json"
    src.write_bytes(serialize_nh(random_holomorphic_vs(0, 1, M, 2)))
    code, _, err = run(capsys, "decompose", "--in", str(src))
    assert code == EXIT_HYPOTHESIS
    assert "hypothesis violated" in err


def test_decompose_io_errors(capsys, tmp_path):
    code, _, err = run(capsys, "decompose", "--in", str(tmp_path / "missing.json"))
    assert code == EXIT_IO
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "jacobi-nh/1", "h": 1}')
    code, _, err = run(capsys, "decompose", "--in", str(bad))
    assert code == EXIT_IO
    assert "$" in err


def test_roundtrip(capsys):
    assert run(capsys, "roundtrip")[0] == EXIT_OK
    code, out, _ = run(capsys, "roundtrip", "--h", "2", "--d", "2", "--count", "3")
    assert code == EXIT_OK
    assert "3/3" in out


def test_roundtrip_threads_deterministic(capsys, monkeypatch):
    _, one, _ = run(capsys, "roundtrip", "--s", "2", "--count", "4")
    monkeypatch.setenv("JD_THREADS", "3")
    _, three, _ = run(capsys, "roundtrip", "--s", "2", "--count", "4")
    assert one == three


def test_mixed_indices_are_rejected():
    a = NearlyHoloElt.constant(4, M)
    b = NearlyHoloElt.constant(4, HalfIntSymMatrix([[3]]))
    with pytest.raises(ShapeMismatch):
        a + b


def test_theta_and_slashcheck(capsys, tmp_path):
    dst = tmp_path / "theta.json"
    code, out, _ = run(capsys, "theta", "--roots", "0", "--trunc", "10", "--out", str(dst))
    assert code == EXIT_OK
    assert "support violations: 0" in out
    assert deserialize(dst.read_bytes(), strict=True).violations() == []
    code, out, _ = run(capsys, "slashcheck", "--in", str(dst))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "slashcheck", "--in", str(dst), "--tol", "1e-30")
    assert code == EXIT_NUMERIC


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jacobi_nh", "roundtrip", "--s", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
