import json
import subprocess
import sys

import pytest

from bellport.cli import main, parse_args


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- argument parsing -----------------------------------------------------------


def test_parse_teleport_arguments():
    args = parse_args(
        ["teleport", "--theta", "0", "--ndelta", "0", "--alpha", "0.7071",
         "--strategy", "pauli+rot"]
    )
    assert args.subcommand == "teleport"
    assert args.strategy == "pauli+rot"


def test_parse_sweep_panel():
    args = parse_args(["sweep", "--panel", "c", "--out", "fig.csv"])
    assert args.panel == "c" and args.out == "fig.csv"


def test_usage_error_on_alpha_out_of_range(capsys):
    with pytest.raises(SystemExit) as exc:
        parse_args(["teleport", "--theta", "0", "--alpha", "1.5"])
    assert exc.value.code == 2


def test_usage_error_on_unknown_flag():
    with pytest.raises(SystemExit) as exc:
        parse_args(["teleport", "--theta", "0", "--alpha", "0.5", "--bogus", "1"])
    assert exc.value.code == 2


def test_usage_error_on_missing_required_flag():
    with pytest.raises(SystemExit) as exc:
        parse_args(["teleport", "--theta", "0"])
    assert exc.value.code == 2


def test_usage_error_on_bad_ndelta_list():
    with pytest.raises(SystemExit) as exc:
        parse_args(["sweep", "--ndelta", "0,abc", "--out", "x.csv"])
    assert exc.value.code == 2


def test_usage_error_on_non_positive_tolerance():
    with pytest.raises(SystemExit) as exc:
        parse_args(["table1", "--theta", "0", "--alpha", "0.5", "--tolerance", "0"])
    assert exc.value.code == 2


# --- teleport subcommand -----------------------------------------------------------


def test_teleport_perfect_run(capsys):
    code, out, _ = run_cli(
        ["teleport", "--theta", "0", "--ndelta", "0", "--alpha", "0.6"], capsys
    )
    assert code == 0
    assert out.count("0.2500000000") == 4
    avg = float(out.split("average fidelity (sq) : ")[1].splitlines()[0])
    assert avg == pytest.approx(1, abs=1e-10)


def test_teleport_pauli_dead_point(capsys):
    code, out, _ = run_cli(
        ["teleport", "--theta", "1.5707963267948966", "--alpha", "0.6",
         "--strategy", "pauli"], capsys
    )
    assert code == 0
    assert "average fidelity (sq) : " in out
    avg = float(out.split("average fidelity (sq) : ")[1].splitlines()[0])
    assert abs(avg) < 1e-10


def test_teleport_no_correction_half(capsys):
    code, out, _ = run_cli(
        ["teleport", "--theta", "0", "--alpha", "0.7071067811865476",
         "--strategy", "none"], capsys
    )
    assert code == 0
    avg = float(out.split("average fidelity (sq) : ")[1].splitlines()[0])
    assert avg == pytest.approx(0.5, abs=1e-10)


def test_teleport_degrees_flag_matches_radians(capsys):
    code, out_deg, _ = run_cli(
        ["teleport", "--theta", "90", "--degrees", "--alpha", "0.6"], capsys
    )
    deg_avg = out_deg.split("average fidelity (sq) : ")[1].splitlines()[0]
    code, out_rad, _ = run_cli(
        ["teleport", "--theta", "1.5707963267948966", "--alpha", "0.6"], capsys
    )
    rad_avg = out_rad.split("average fidelity (sq) : ")[1].splitlines()[0]
    assert deg_avg == rad_avg


def test_teleport_json_output(capsys):
    code, out, _ = run_cli(
        ["teleport", "--theta", "0.5", "--ndelta", "0.1", "--alpha", "0.6",
         "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["outcomes"]) == 4
    assert payload["strategy"] == "pauli+rot"
    total = sum(o["probability"] for o in payload["outcomes"])
    assert total == pytest.approx(1, abs=1e-12)


def test_teleport_csv_output_to_file(tmp_path, capsys):
    out_file = tmp_path / "run.csv"
    code, out, _ = run_cli(
        ["teleport", "--theta", "0", "--alpha", "1.0", "--format", "csv",
         "--out", str(out_file)], capsys
    )
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0].startswith("m1,m2,probability")
    assert len(lines) == 5


# --- table1 subcommand ---------------------------------------------------------------


def test_table1_cross_check_passes(capsys):
    code, out, _ = run_cli(
        ["table1", "--theta", "0", "--ndelta", "0", "--alpha", "0.6"], capsys
    )
    assert code == 0 and "PASS" in out


def test_table1_cross_check_various_points(capsys):
    code, out, _ = run_cli(
        ["table1", "--theta", "1.0471975511965976", "--ndelta", "0.15",
         "--alpha", "0.6", "--tolerance", "1e-10"], capsys
    )
    assert code == 0 and "PASS" in out


def test_table1_fails_below_roundoff_floor(capsys):
    code, out, _ = run_cli(
        ["table1", "--theta", "0.7", "--ndelta", "0.1", "--alpha", "0.6",
         "--tolerance", "1e-18"], capsys
    )
    assert code == 1 and "FAIL" in out


# --- sweep subcommand ---------------------------------------------------------------


def test_sweep_writes_csv_and_summarizes(tmp_path, capsys):
    out_file = tmp_path / "panel_b.csv"
    code, out, _ = run_cli(
        ["sweep", "--panel", "b", "--theta-points", "5", "--alpha-points", "4",
         "--out", str(out_file)], capsys
    )
    assert code == 0
    assert "wrote 120 rows" in out
    assert len(out_file.read_text().splitlines()) == 121


def test_sweep_byte_identical_reruns(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        code, _, _ = run_cli(
            ["sweep", "--panel", "c", "--theta-points", "5", "--alpha-points", "5",
             "--ndelta", "0,0.1", "--out", str(p)], capsys
        )
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_sweep_custom_ndelta_and_strategy(tmp_path, capsys):
    out_file = tmp_path / "custom.csv"
    code, out, _ = run_cli(
        ["sweep", "--theta-points", "3", "--alpha-points", "3",
         "--ndelta", "0,0.05,0.2", "--strategy", "none", "--out", str(out_file)],
        capsys,
    )
    assert code == 0
    body = out_file.read_text().splitlines()[1:]
    assert len(body) == 27
    assert all(",none," in line for line in body)


def test_sweep_unwritable_path_fails(tmp_path, capsys):
    code, out, err = run_cli(
        ["sweep", "--panel", "a", "--theta-points", "2", "--alpha-points", "2",
         "--out", str(tmp_path / "missing_dir" / "x.csv")], capsys
    )
    assert code != 0 and "error" in err


# --- verify subcommand ---------------------------------------------------------------


def test_verify_runs_clean(capsys):
    code, out, _ = run_cli(["verify"], capsys)
    assert code == 0
    assert "[FAIL]" not in out
    lines = [l for l in out.splitlines() if l.startswith("[PASS]")]
    assert len(lines) >= 20


def test_verify_output_deterministic_for_fixed_seed(capsys):
    _, first, _ = run_cli(["verify", "--seed", "123"], capsys)
    _, second, _ = run_cli(["verify", "--seed", "123"], capsys)
    assert first == second


# --- module entry point -----------------------------------------------------------------


def test_module_invocation_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "bellport", "table1", "--theta", "0.3",
         "--ndelta", "0.05", "--alpha", "0.8"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
