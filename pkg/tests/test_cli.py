import os
import subprocess
import sys
from pathlib import Path

from adelic_codes.cli import main
from adelic_codes.codes import parse_matrix

DATA = Path(__file__).parent / "data"


def _body(path: Path) -> str:
    lines = path.read_text().splitlines(keepends=True)
    assert lines[0].startswith("# adelic-codes ")
    return "".join(lines[1:])


def test_code_writes_matrices_and_report(tmp_path, capsys):
    assert main(["code", str(DATA / "rs.spec"), "--out", str(tmp_path)]) == 0
    CF = parse_matrix((tmp_path / "C_F.txt").read_text())
    CO = parse_matrix((tmp_path / "C_Omega.txt").read_text())
    assert (CF.length, CF.k) == (5, 3)
    assert (CO.length, CO.k) == (5, 2)
    report = (tmp_path / "report.txt").read_text()
    assert "k_plus_k_dual = 5" in report
    assert "violations = 0" in report
    assert "k_plus_k_dual = 5" in capsys.readouterr().out


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["code", str(DATA / "diag.spec"), "--out", str(a)]) == 0
    assert main(["code", str(DATA / "diag.spec"), "--out", str(b)]) == 0
    for name in ("C_F.txt", "C_Omega.txt", "report.txt"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_audit_reports_violation(tmp_path, capsys):
    code = main(["audit", str(DATA / "diag.spec"), "--out", str(tmp_path)])
    assert code == 2
    out = capsys.readouterr().out
    assert "check.distance_bound = fail; value 3 < 6" in out
    assert "violation: distance_bound" in out
    assert "witness_codeword = " in _body(tmp_path / "audit.txt")


def test_audit_clean_instance(capsys):
    assert main(["audit", str(DATA / "rs.spec")]) == 0
    assert "violations = 0" in capsys.readouterr().out


def test_beta_table(tmp_path, capsys):
    assert main(["beta", "--q", "2,3", "--r", "1,2,3", "--keyvalue", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "verdict: " in out and "verdict = " in out
    assert _body(tmp_path / "beta.txt") == out
    table = out.split("\n\n")[0]
    assert table.count("sign=k-1,norm=s_residue,den=product") == 6
    assert out.count("convention = sign=k-1,norm=s_residue,den=product") == 6


def test_rr_listing(capsys):
    assert main(["rr", "--q", "5", "--divisor", "2*(inf)"]) == 0
    out = capsys.readouterr().out
    assert "l(E) = 3" in out
    assert main(["rr", str(DATA / "unipotent.spec")]) == 0
    out = capsys.readouterr().out
    assert "h0 = 4" in out and "splitting_type = 1,1" in out


def test_selftest(capsys):
    assert main(["selftest", "--seed", "3"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.spec"
    bad.write_text("field: 5\nrank: 2\nplace: (x); matrix: [[1, 0], [0 x]]\n")
    assert main(["code", str(bad), "--out", str(tmp_path)]) == 1
    assert "line 3, column 33" in capsys.readouterr().err
    assert main(["audit", str(tmp_path / "missing.spec")]) == 1
    assert main(["nonsense"]) == 1
    assert main(["rr"]) == 1
    nod = tmp_path / "nod.spec"
    nod.write_text("field: 5\nE: 2*(inf)\n")
    assert main(["audit", str(nod)]) == 1


def test_console_entry_point():
    env = dict(os.environ)
    res = subprocess.run([sys.executable, "-m", "adelic_codes.cli", "audit", str(DATA / "diag.spec")],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 2
