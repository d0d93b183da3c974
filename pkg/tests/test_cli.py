import json
import subprocess
import sys

import pytest

from conftest import SCENARIOS
from workbench.cli import CHECKS, ConfigError, exit_code, load_scenario, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report_of(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_run_all_small(capsys):
    code, rep = report_of(capsys, "run", "--e", "2", "--p", "2", "--d", "1", "--n", "2", "--checks", "all")
    assert code == 0 and rep["status"] == "pass"
    assert rep["dimensions"] == {"H": 8, "fixed": 4, "klr": 8}
    assert rep["schema"] == 1 and rep["tool"]["name"] == "workbench"
    assert set(rep["checks"]) == set(CHECKS)
    assert rep["checks"]["independence"]["status"] == "skip"
    assert "timings" not in rep


def test_params_worked_case(capsys):
    code, rep = report_of(capsys, "params", "--e", "2", "--p", "6")
    assert code == 0
    assert (rep["pprime"], rep["eta"], rep["omega"]) == (3, 1, 2)


def test_fields(capsys):
    code, rep = report_of(capsys, "fields", "--e", "3", "--p", "3")
    assert code == 0 and rep["ell"] == 7 and rep["field"]["q"] == 2


def test_expected_failure_is_witnessed(capsys):
    code, rep = report_of(capsys, "verify", "shift", "--family", "bk", "--e", "3", "--p", "3", "--n", "2")
    assert code == 1
    shift = rep["checks"]["shift"]
    assert shift["status"] == "fail" and shift["claim"]
    assert len(shift["intertwining"]["psi"]["offending"]) == 6
    code, rep = report_of(capsys, "run", "--config", str(SCENARIOS / "bk_shift_e3.toml"))
    assert code == 0 and rep["checks"]["shift"]["status"] == "expected-fail"


def test_unexpected_pass_is_a_failure(capsys):
    code, rep = report_of(capsys, "verify", "shift", "--family", "sw", "--e", "3", "--p", "3", "--n", "2",
                          "--expect-fail", "shift")
    assert code == 1 and rep["checks"]["shift"]["status"] == "fail"


def test_config_errors_exit_two(capsys):
    code, _, err = run(capsys, "run", "--e", "1", "--p", "2", "--n", "2")
    assert code == 2 and "e must be" in err
    code, _, err = run(capsys, "run", "--e", "2", "--p", "1", "--n", "2", "--variant", "Ar", "--checks", "grpn")
    assert code == 2
    code, _, err = run(capsys, "run", "--e", "2", "--p", "2", "--n", "2", "--checks", "nonsense")
    assert code == 2 and "checks" in err


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_flags_override_toml(tmp_path):
    cfg = tmp_path / "s.toml"
    cfg.write_text('[scenario]\ne = 2\np = 3\nn = 2\nfamily = "BK"\n[caps]\nmax_rules = 99\n')
    sc = load_scenario(str(cfg), {"p": 2, "max_rules": None}, env={"WORKBENCH_CAPS": "max_rules=50"})
    assert sc.p == 2 and sc.family == "BK"
    assert sc.caps.max_rules == 50
    sc = load_scenario(str(cfg), {"max_rules": 7}, env={"WORKBENCH_CAPS": "max_rules=50"})
    assert sc.caps.max_rules == 7 and sc.p == 3


def test_bad_toml_keys(tmp_path):
    cfg = tmp_path / "s.toml"
    cfg.write_text("[scenario]\nbogus = 1\n")
    with pytest.raises(ConfigError):
        load_scenario(str(cfg), {}, env={})
    with pytest.raises(ConfigError):
        load_scenario(None, {}, env={"WORKBENCH_CAPS": "speed=3"})


def test_tiny_caps_skip_not_fail(capsys, monkeypatch):
    monkeypatch.setenv("WORKBENCH_CAPS", "max_rules=2")
    code, rep = report_of(capsys, "run", "--e", "2", "--p", "2", "--n", "2", "--checks", "dims,grading")
    assert code == 0
    assert all(c["status"] == "skip(cap)" for c in rep["checks"].values())
    assert exit_code(rep) == 0


def test_explicit_field_scenario(capsys):
    code, rep = report_of(capsys, "run", "--config", str(SCENARIOS / "explicit_field.toml"))
    assert code == 0
    assert rep["params"]["field"]["modulus"] == 13
    assert rep["config"]["caps"]["max_rules"] == 5000


@pytest.mark.parametrize("name", ["basic_e2_p2.toml", "sw_shift_e3.toml", "appendix_p1.toml"])
def test_scenarios_pass(capsys, name):
    code, rep = report_of(capsys, "run", "--config", str(SCENARIOS / name))
    assert code == 0 and rep["status"] == "pass"


def test_reports_are_byte_identical(capsys):
    args = ["run", "--config", str(SCENARIOS / "sw_shift_e3.toml")]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    _, threaded, _ = run(capsys, *args, "--jobs", "2")
    assert first == second == threaded


def test_timings_are_opt_in(capsys):
    _, rep = report_of(capsys, "run", "--e", "2", "--p", "2", "--n", "2", "--checks", "params", "--timings")
    assert "timings" in rep


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "run", "--e", "2", "--p", "2", "--n", "2", "--checks", "params",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["status"] == "pass"


def test_gb_dump_and_reparse(capsys, tmp_path):
    rules, pres = tmp_path / "rules.txt", tmp_path / "ak.pres"
    code, rep = report_of(capsys, "gb", "--preset", "ariki-koike", "--e", "2", "--p", "3", "--n", "2",
                          "--dump", str(rules), "--dump-pres", str(pres))
    assert code == 0 and rep["dimension"] == 18
    assert "complete: true" in rules.read_text()
    code, again = report_of(capsys, "dims", "--input", str(pres))
    assert code == 0 and again["dimension"] == 18


def test_dims_graded(capsys):
    code, rep = report_of(capsys, "dims", "--preset", "klr", "--e", "2", "--p", "2", "--n", "2", "--words")
    assert code == 0 and rep["dimension"] == 8
    assert rep["graded_dimension"] == {"0": 2, "2": 4, "4": 2}
    assert len(rep["words"]) == 8


def test_dump_matrices(capsys, tmp_path):
    code, _, _ = run(capsys, "dump-matrices", "--e", "2", "--p", "2", "--n", "2", "--dir", str(tmp_path),
                     "--images")
    assert code == 0
    names = {f.name for f in tmp_path.iterdir()}
    assert {"S.csv", "T1.csv", "X1.csv", "X2.csv"} <= names
    assert any(n.startswith("psi") for n in names)


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "workbench.cli", "params", "--e", "2", "--p", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["pprime"] == 3
