import json
import subprocess
import sys

import pytest

from ursb2.cli import cli_dispatch
from ursb2.workbench import SweepSpec, enumerate_settings, run_sweep


def run(capsys, *argv):
    code = cli_dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


CFG = ("--m", "3", "--n", "5", "--k1", "1", "--k2", "1")


def test_pideg_prints_225(capsys):
    code, out, _ = run(capsys, "pideg", *CFG)
    assert code == 0 and out == "225\n"


def test_pideg_json(capsys):
    code, out, _ = run(capsys, "pideg", *CFG, "--json")
    obj = json.loads(out)
    assert obj["pi_deg_snf"] == obj["pi_deg_closed"] == 225 and obj["case_label"] == "ODD"


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "X2 X1", *CFG)
    assert code == 0 and out.strip() == "s^-2 * X1 X2"


@pytest.mark.parametrize("argv", [["bogus"], [], ["pideg", "--m", "3"], ["normal-form", "X9", *CFG],
                                  ["pideg", "--m", "2", "--n", "2"], ["verify", "/nonexistent.json"],
                                  ["build-module", "--family", "U_M_XI", *CFG, "--params", "[1"]])
def test_usage_errors_exit_2(capsys, argv):
    assert cli_dispatch(argv) == 2


def test_build_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "rep.json"
    code, _, _ = run(capsys, "build-module", "--family", "U_M_NU", "--m", "2", "--n", "4",
                     "--params", '[2, {"zeta": 1}, "1/2"]', "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "verify", str(path))
    report = json.loads(out)
    assert code == 0 and report["pass"] and report["within_pi_degree"]
    code, out, _ = run(capsys, "simplicity", str(path))
    assert code == 0 and json.loads(out)["simple"] is True


def test_verify_failure_exit_1(capsys, tmp_path):
    path = tmp_path / "rep.json"
    run(capsys, "build-module", "--family", "U_M_NU", "--m", "6", "--n", "2",
        "--params", "[1, 1, 1]", "--reading", "literal", "--out", str(path))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and json.loads(out)["first_failure"] is not None


def test_simplicity_ceiling(capsys, tmp_path, monkeypatch):
    path = tmp_path / "rep.json"
    run(capsys, "build-module", "--family", "U_M_XI", *CFG, "--params", "[1, 1]", "--out", str(path))
    monkeypatch.setenv("URSB2_CEILING", "4")
    code, out, _ = run(capsys, "simplicity", str(path))
    assert code == 2 and json.loads(out)["simple"] is None


def test_iso_verb(capsys):
    code, out, _ = run(capsys, "iso", "--family", "U_M_EPSILON", "--m", "3", "--n", "3", "--k2", "2",
                       "--p", "[1, 1, 1]", "--p2", "[1, 2, 1]", "--intertwiner", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["by_criteria"] is False and obj["by_intertwiner"] is False
    code, out, _ = run(capsys, "iso", "--family", "U_M_XI", *CFG, "--p", "[1, 1]", "--p2", "[1, 1]",
                       "--intertwiner")
    assert code == 0 and "shift (u, v)           (0, 0)" in out


def test_sweep_verb_pi_degree_only(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--m-range", "2", "3", "--n-range", "2", "4", "--families", "",
                       "--out", str(tmp_path), "--json")
    summary = json.loads(out)
    assert code == 0 and summary["settings"] == 12 and not summary["failures"]
    setting = json.loads((tmp_path / "setting_m3_n4_k1_1.json").read_text())
    assert "pbw" not in setting and setting["pideg"]["pi_deg_snf"] == 72


def test_fixed_k_skips_invalid_settings():
    settings, skipped = enumerate_settings(SweepSpec(m_range=(2, 4), n_range=(3, 3), k_policy="fixed", k1=2, k2=1))
    assert settings == [(3, 3, 2, 1)]
    assert [s["setting"][0] for s in skipped] == [2, 4]
    assert all(s["note"] for s in skipped)


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(m_range=(4, 2))
    with pytest.raises(ValueError):
        SweepSpec(families=("U_M_OMEGA",))


def test_sweep_is_deterministic(tmp_path):
    spec = dict(m_range=(2, 3), n_range=(3, 4), samples=1, seed=9)
    a = run_sweep(SweepSpec(out_dir=str(tmp_path / "a"), **spec))
    b = run_sweep(SweepSpec(out_dir=str(tmp_path / "b"), workers=2, **spec))
    assert not a["failures"]
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert files == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert all(json.loads((tmp_path / "a" / n).read_text())["seed"] == 9 for n in files)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "ursb2.cli", "pideg", "--m", "4", "--n", "6"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "72"
