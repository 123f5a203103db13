import json
import shutil
import subprocess
import sys

import pytest

from weakhecke.cli import run
from weakhecke.operators import bol
from weakhecke.qseries import FourierSeries, delta
from weakhecke.spaces import weak_cusp_basis


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_basis_example(capsys):
    code, out, _ = call(capsys, "basis", "--weight", "-10", "--pole", "3", "--prec", "40")
    assert code == 0
    data = json.loads(out)
    assert data["pivots"] == [-3, -2] and len(data["elements"]) == 2


def test_eigen_example(capsys):
    code, out, _ = call(capsys, "eigen", "--weight", "12", "--m", "2", "--pole", "3", "--prec", "120")
    assert code == 0
    classes = json.loads(out)["classes"]
    assert {(c["eigenvalue"], c["multiplicity"]) for c in classes} == {("2049/1", 2), ("-24/1", 2)}


def test_degenerate_round_trip(capsys, tmp_path):
    h = weak_cusp_basis(-10, 3, 12)[0]
    path = tmp_path / "form.json"
    path.write_text(bol(h, 6).to_json())
    code, out, _ = call(capsys, "degenerate", "--in", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["degenerate"] is True and data["obstruction"] is None
    assert FourierSeries.from_dict(data["witness"]).agrees(h)


def test_degenerate_negative_verdict(capsys, tmp_path):
    path = tmp_path / "delta.json"
    path.write_text(delta(10).to_json())
    code, out, _ = call(capsys, "degenerate", "--in", str(path))
    assert code == 1
    assert json.loads(out)["obstruction"] == {"kind": "residual", "exponent": 1}


def test_precision_error_exit_2(capsys):
    code, _, err = call(capsys, "basis", "--weight", "12", "--pole", "3", "--prec", "4")
    assert code == 2
    assert "minimum precision: 6" in err


def test_auto_prec(capsys):
    code, out, _ = call(capsys, "--auto-prec", "basis", "--weight", "12", "--pole", "3", "--prec", "4")
    assert code == 0
    assert json.loads(out)["precision"] == 6


def test_usage_errors(capsys, tmp_path):
    assert call(capsys, "eigen", "--weight", "7", "--m", "2")[0] == 2
    assert call(capsys, "hecke", "--in", str(tmp_path / "missing.json"), "--m", "2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == 2


def test_hecke_and_bol_files(capsys, tmp_path):
    path = tmp_path / "d.json"
    path.write_text(delta(21).to_json())
    code, out, _ = call(capsys, "hecke", "--in", str(path), "--m", "2")
    assert code == 0
    t2 = FourierSeries.from_json(out)
    assert t2.agrees(delta(11).scale(-24))
    code, _, err = call(capsys, "bol", "--in", str(path))
    assert code == 2 and "weight" in err


def test_pair(capsys, tmp_path):
    f = tmp_path / "f.json"
    g = tmp_path / "g.json"
    from weakhecke.spaces import weak_basis
    f.write_text(weak_basis(12, 1, 10)[0].to_json())
    g.write_text(delta(10).to_json())
    code, out, _ = call(capsys, "pair", "--f", str(f), "--g", str(g))
    assert code == 0 and json.loads(out)["value"] == "1/1"


def test_quotient(capsys):
    code, out, _ = call(capsys, "quotient", "--weight", "12", "--pole", "3", "--m", "2")
    data = json.loads(out)
    assert code == 0 and data["quotient_dim"] == data["expected_dim"] == 4
    assert len(data["hecke"]["2"]["charpoly"]) == 5


def test_verify_text(capsys):
    code, out, _ = call(capsys, "--format", "text", "verify", "flip", "--weights", "2,4",
                        "--cases", "20", "--workers", "1")
    assert code == 0
    assert out.strip().splitlines()[-1] == "ALL PASS"


def test_numeric(capsys):
    code, out, _ = call(capsys, "numeric", "--f", "delta", "--hermitian", "2", "--prec", "150")
    assert code == 0 and json.loads(out)["relative_gap"] < 1e-8
    code, _, err = call(capsys, "numeric", "--f", "E4")
    assert code == 2 and "diverges" in err


def test_out_file(capsys, tmp_path):
    target = tmp_path / "basis.json"
    code, out, _ = call(capsys, "--out", str(target), "basis", "--weight", "0", "--pole", "1",
                        "--prec", "5")
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["pivots"] == [-1, 0]


def test_determinism(capsys):
    argv = ["eigen", "--weight", "24", "--m", "2", "--pole", "3"]
    first = call(capsys, *argv)[1]
    assert call(capsys, *argv)[1] == first


@pytest.mark.skipif(shutil.which("weakhecke") is None, reason="console script not installed")
def test_console_script():
    a = subprocess.run(["weakhecke", "basis", "--weight", "4", "--prec", "5"],
                       capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "weakhecke.cli", "basis", "--weight", "4", "--prec", "5"],
                       capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
