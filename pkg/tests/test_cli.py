import json
import subprocess
import sys

import pytest

from gcd_density.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_entangle_example(capsys):
    code, out = run(capsys, "verify-entangle", "--disc", "-3", "--set", "2,3")
    assert code == 0
    assert "5/24 = 5/24 PASS" in out


def test_verify_entangle_unentangled(capsys):
    code, out = run(capsys, "verify-entangle", "--disc", "-4", "--set", "2,3")
    assert code == 0 and "13/48 = 13/48 PASS" in out


def test_verify_entangle_bad_disc(capsys):
    code, _ = run(capsys, "verify-entangle", "--disc", "3", "--set", "2,3")
    assert code == 1


def test_constant(capsys):
    code, out = run(capsys, "constant", "--limit", "1000000")
    data = json.loads(out)
    assert code == 0
    assert abs(data["value"] - 0.24238005) < 1e-7
    assert data["error_bound"] == 4e-6


def test_conjecture(capsys):
    code, out = run(capsys, "conjecture", "--curve", "0,0,1,-1,0", "--limit", "1000")
    data = json.loads(out)
    assert code == 0
    assert data["fundamental_discriminant"] == 37
    assert data["serre_assumed"] is True


def test_ap(capsys):
    code, out = run(capsys, "ap", "--curve", "0,0,0,1,1", "--prime", "5")
    assert code == 0
    assert "ap=-3 cardinality=9" in out


def test_ap_bad_reduction(capsys):
    code, _ = run(capsys, "ap", "--curve", "0,0,0,1,1", "--prime", "31")
    assert code == 1


def test_verify_gl2(capsys):
    code, out = run(capsys, "verify-gl2", "--ell", "2")
    assert code == 0
    assert "sgn sum" in out and "FAIL" not in out
    code, out = run(capsys, "verify-gl2", "--ell", "7")
    assert code == 0 and "-49" in out
    code, _ = run(capsys, "verify-gl2", "--ell", "17")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["ap", "--curve", "1,2,3", "--prime", "5"],
    ["survey", "--curve", "0,0,1,-1,0"],
    ["verify-entangle", "--disc", "-3", "--set", "2,x"],
    ["nonsense"],
    [],
])
def test_malformed_flags_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1
    assert capsys.readouterr().err.strip()


def test_survey_writes_files(tmp_path, capsys):
    csv_path, json_path = tmp_path / "a.csv", tmp_path / "a.json"
    code, out = run(capsys, "survey", "--curve", "0,0,1,-1,0", "--limit", "2000",
                    "--csv", str(csv_path), "--json", str(json_path))
    assert code == 0
    assert csv_path.read_text().startswith("p,ap,cardinality,gcd_ok,re_member,anomalous,method\n")
    assert json.loads(json_path.read_text())["X"] == 2000
    assert "empirical density" in out


def test_survey_io_error(tmp_path, capsys):
    code, _ = run(capsys, "survey", "--curve", "0,0,1,-1,0", "--limit", "200",
                  "--csv", str(tmp_path / "no" / "a.csv"))
    assert code == 1


def test_survey_exit_2_on_statistical_failure(capsys):
    # y^2 = x^3 - x has all 2-torsion rational, so 2 | #E(F_p) always
    with pytest.warns(UserWarning, match="not a Serre curve"):
        code, out = run(capsys, "survey", "--curve", "0,0,0,-1,0", "--limit", "3000")
    assert code == 2
    assert "fail" in out


def test_help_mentions_every_subcommand():
    out = subprocess.run([sys.executable, "-m", "gcd_density", "--help"],
                         capture_output=True, text=True, check=True).stdout
    for name in ("constant", "conjecture", "survey", "verify-gl2", "verify-entangle", "ap"):
        assert name in out
