import subprocess
import sys

import pytest

from xyzdm.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _value(out, name):
    for line in out.splitlines():
        if line.startswith(f"{name} = "):
            return line.split(" = ", 1)[1]
    raise AssertionError(f"{name} not in output:\n{out}")


def test_eval_concurrence_plateau(capsys):
    code, out, err = run(capsys, "eval", "concurrence")
    assert code == EXIT_OK
    assert f"{float(_value(out, 'C')):.2f}" == "0.53"
    assert "ground state" in err


def test_eval_dc(capsys):
    code, out, _ = run(capsys, "eval", "dc", "--B", "4", "--b", "2.5", "--gamma", "0.3", "--Jz", "0.5")
    assert code == EXIT_OK and abs(float(_value(out, "D_c")) - 4.51) < 0.01


def test_eval_dc_absent(capsys):
    code, out, _ = run(capsys, "eval", "dc", "--Jz", "0")
    assert code == EXIT_OK and _value(out, "D_c") == "none"


def test_eval_favg_hot(capsys):
    code, out, _ = run(capsys, "eval", "favg", "--T", "1e6")
    assert code == EXIT_OK and abs(float(_value(out, "F_A")) - 0.25) < 1e-5


def test_eval_favg_zero_temperature_is_domain_error(capsys):
    code, _, err = run(capsys, "eval", "favg")
    assert code == EXIT_FAIL and "temperature" in err


@pytest.mark.parametrize(
    "quantity",
    ["hamiltonian", "spectrum", "thermal", "concurrence", "eof", "lambdas", "cout",
     "fidelity", "favg", "dc", "bc", "tc", "region", "teleport"],
)
def test_every_eval_quantity_runs(capsys, quantity):
    code, out, _ = run(capsys, "eval", quantity, "--T", "0.5", "--D", "1")
    assert code == EXIT_OK and out
    code, out, _ = run(capsys, "eval", quantity, "--T", "0.5", "--D", "1", "--csv")
    assert code == EXIT_OK and out.startswith("name,re,im\n")


def test_eval_hamiltonian_csv(capsys):
    code, out, _ = run(capsys, "eval", "hamiltonian", "--D", "1", "--csv")
    assert "H[1][2],1.0,-1.0" in out.splitlines()


def test_usage_errors(capsys):
    assert run(capsys, "eval", "nonsense")[0] == EXIT_USAGE
    assert run(capsys, "sweep", "fig99")[0] == EXIT_USAGE
    assert run(capsys, "sweep")[0] == EXIT_USAGE
    assert run(capsys, "sweep", "fig1", "--axis", "b:0:1:3")[0] == EXIT_USAGE
    assert run(capsys, "sweep", "--axis", "b:0:1:1")[0] == EXIT_USAGE
    assert run(capsys, "eval", "dc", "--Jz", "x")[0] == EXIT_USAGE
    assert run(capsys, "eval", "dc", "--J")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_abbreviations_rejected(capsys):
    assert run(capsys, "eval", "dc", "--gam", "0.3")[0] == EXIT_USAGE


def test_invalid_params_are_domain_errors(capsys):
    assert run(capsys, "eval", "concurrence", "--gamma", "2")[0] == EXIT_FAIL
    assert run(capsys, "eval", "concurrence", "--T", "-1")[0] == EXIT_FAIL


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "phase.cfg"
    cfg.write_text("# phase-diagram point\nB = 4\nb = 2.5\ngamma = 0.3\nJz = 0.5\n")
    code, out, _ = run(capsys, "eval", "dc", "--config", str(cfg))
    assert abs(float(_value(out, "D_c")) - 4.507) < 1e-3
    code, out, _ = run(capsys, "eval", "dc", "--config", str(cfg), "--Jz", "1")
    assert float(_value(out, "D_c")) == pytest.approx(1.34816, abs=1e-4)


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = red\n")
    assert run(capsys, "eval", "dc", "--config", str(cfg))[0] == EXIT_USAGE
    assert run(capsys, "eval", "dc", "--config", str(tmp_path / "missing"))[0] == EXIT_USAGE


def test_sweep_fig1_to_file(tmp_path, capsys):
    target = tmp_path / "fig1.csv"
    code, _, _ = run(capsys, "sweep", "fig1", "-o", str(target))
    lines = target.read_text().splitlines()
    assert code == EXIT_OK and len(lines) == 302
    assert lines[1] == "b,C_ground"


def test_sweep_explicit_axis(capsys):
    code, out, _ = run(capsys, "sweep", "--axis", "D:0:8:200", "--quantity", "C_thermal", "--T", "0.5")
    assert code == EXIT_OK and len(out.splitlines()) == 202


def test_sweep_recipe_override_echoed(capsys):
    code, out, _ = run(capsys, "sweep", "fig1", "--gamma", "0.9")
    assert "gamma=0.9" in out.splitlines()[0]


def test_sweep_teleport_needs_temperature(capsys):
    code, _, err = run(capsys, "sweep", "--axis", "D:0:1:3", "--quantity", "F")
    assert code == EXIT_FAIL


def test_sweep_fig8(capsys):
    code, out, _ = run(capsys, "sweep", "fig8")
    assert out.splitlines()[1] == "Jz,D,F_A,C_out,F,C_channel"


def test_sweep_deterministic(capsys):
    a = run(capsys, "sweep", "fig1")[1]
    b = run(capsys, "sweep", "fig1", "--workers", "3")[1]
    assert a == b


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("XYZDM_OUTPUT_DIR", str(tmp_path / "out"))
    assert run(capsys, "sweep", "fig1")[0] == EXIT_OK
    assert (tmp_path / "out" / "fig1.csv").exists()
    assert run(capsys, "sweep", "fig1", "-o", "named.csv")[0] == EXIT_OK
    assert (tmp_path / "out" / "named.csv").exists()


def test_verify_filter_and_determinism(capsys):
    a = run(capsys, "verify", "--samples", "10", "--seed", "7", "--suite", "thermal")
    b = run(capsys, "verify", "--samples", "10", "--seed", "7", "--suite", "thermal")
    assert a == b and a[0] == EXIT_OK
    lines = a[1].splitlines()
    assert lines[0] == "suite,max_error,tolerance,status"
    assert len(lines) == 2 and lines[1].startswith("thermal,")


def test_verify_audit_report_and_strict(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "audit", "--audit-samples", "20")
    assert code == EXIT_OK and "audit," in out and ",report" in out
    assert "# audit item" not in out
    code, out, _ = run(capsys, "verify", "--suite", "audit", "--audit-samples", "20", "--strict")
    assert code == EXIT_FAIL
    assert out.count("# audit item: check=replica_matrix") == 20


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "xyzdm", "eval", "bc"], capture_output=True, text=True
    )
    assert out.returncode == 0 and "b_c = 1.66" in out.stdout
