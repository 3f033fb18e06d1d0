import json
import math

import numpy as np
import pytest

from qracdiscord.cli import CliError, parse_angle, parse_params, run

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------- angle parsing


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0", 0.0),
        ("0.5", 0.5),
        ("-2.25", -2.25),
        ("1.40pi", 1.40 * math.pi),
        ("0.2509pi", 0.2509 * math.pi),
        ("-0.75pi", -0.75 * math.pi),
        ("pi", math.pi),
        ("-pi", -math.pi),
        ("1.6089PI", 1.6089 * math.pi),
    ],
)
def test_parse_angle(text, expected):
    assert parse_angle(text) == expected


@pytest.mark.parametrize("bad", ["", "pie", "1.2.3", "0x3pi", "one"])
def test_parse_angle_rejects(bad):
    with pytest.raises(CliError):
        parse_angle(bad)


def test_parse_params_round_trips_reference_rows():
    row = "0.2509pi,0.1980pi,0.3909pi,1.6089pi,0.6928pi,0.3079pi"
    vals = parse_params(row)
    expected = np.array([0.2509, 0.1980, 0.3909, 1.6089, 0.6928, 0.3079]) * math.pi
    assert np.array_equal(vals, expected)


def test_parse_params_wrong_count():
    with pytest.raises(CliError):
        parse_params("1,2,3")


# ------------------------------------------------------------------- eval


def test_eval_optimal_json(tmp_path, capsys):
    code = run(["eval", "--params", "0,0,0,0,0,0", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert np.isclose(payload["qd"], 0.5, atol=1e-6)
    assert np.isclose(payload["gd8"], 0.5, atol=1e-12)
    assert np.isclose(payload["t_max"], 2 * SQRT2, atol=1e-12)
    assert np.isclose(payload["p_success"], (2 + SQRT2) / 4, atol=1e-12)
    assert np.isclose(payload["gram_trace"], 1.0, atol=1e-12)
    assert np.allclose(payload["joint_spectrum"], [0.25] * 4 + [0.0] * 4, atol=1e-12)
    assert payload["params_pi"] == [0.0] * 6


def test_eval_reference_point(capsys):
    code = run(
        ["eval", "--params", "0.2509pi,0.1980pi,0.3909pi,1.6089pi,0.6928pi,0.3079pi",
         "--format", "json"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["gd8"] - 0.6649) <= 5e-4


def test_eval_identical_states(capsys):
    code = run(["eval", "--params", "0,-0.75pi,-0.25pi,-0.5pi,0,0", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert abs(payload["qd"]) <= 1e-6
    assert abs(payload["gd8"]) <= 1e-12
    assert abs(payload["t_max"]) <= 1e-12


def test_eval_text_output(capsys):
    assert run(["eval", "--params", "0,0,0,0,0,0"]) == 0
    out = capsys.readouterr().out
    assert "quantum discord" in out
    assert "witness maximum" in out


def test_eval_bad_angles_exit_1(capsys):
    assert run(["eval", "--params", "zero,0,0,0,0,0"]) == 1
    assert run(["eval", "--params", "1,2"]) == 1
    assert run(["eval"]) == 1


# ------------------------------------------------------------------ sweep


def test_sweep_csv_file(tmp_path):
    out = tmp_path / "fig.csv"
    code = run(
        ["sweep", "--from", "0", "--to", "0.125pi", "--steps", "5", "--out", str(out)]
    )
    assert code == 0
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == "delta,qd,gd8,t_minus_2"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert np.isclose(float(first[1]), 0.5, atol=1e-6)
    assert np.isclose(float(first[2]), 0.5, atol=1e-12)
    assert np.isclose(float(first[3]), 2 * SQRT2 - 2, atol=1e-12)
    last = lines[-1].split(",")
    assert np.isclose(float(last[1]), 0.0, atol=1e-6)
    assert np.isclose(float(last[2]), 0.0, atol=1e-12)
    assert np.isclose(float(last[3]), 0.0, atol=1e-9)
    assert "\r" not in text


def test_sweep_csv_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--from", "0", "--to", "0.125pi", "--steps", "4"]
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_two_steps(tmp_path):
    out = tmp_path / "two.csv"
    assert run(["sweep", "--from", "0", "--to", "0.125pi", "--steps", "2", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 3


def test_sweep_io_failure_exit_2(tmp_path):
    target = tmp_path / "missing" / "file.csv"
    code = run(["sweep", "--from", "0", "--to", "0.1", "--steps", "2", "--out", str(target)])
    assert code == 2


def test_sweep_json(capsys):
    assert run(["sweep", "--from", "0", "--to", "0.125pi", "--steps", "2",
                "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 2
    assert set(rows[0]) == {"delta", "qd", "gd8", "t_minus_2"}


# ----------------------------------------------------------------- search


def test_search_tiny_grid(capsys):
    code = run(["search", "--step", "0.5pi", "--workers", "1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["evaluations"] == 4**6
    assert payload["gd8"] <= 2.0 / 3.0 + 1e-9
    assert payload["step_pi"] == 0.5
    assert len(payload["best_params"]) == 6
    assert len(payload["best_params_pi"]) == 6
    assert "wall_seconds" in payload


def test_search_refine(capsys):
    code = run(["search", "--step", "0.5pi", "--refine", "--workers", "1"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["refined_gd8"] >= payload["gd8"] - 1e-15
    assert len(payload["refined_params"]) == 6


def test_search_guard_exit_2(capsys):
    assert run(["search", "--step", "0.01pi", "--workers", "1"]) == 2


def test_search_requires_step(capsys):
    assert run(["search"]) == 1


# ---------------------------------------------------------------- witness


def test_witness_command(capsys):
    code = run(["witness", "--params", "0,0,0,0,0,0", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert np.isclose(payload["t_max"], 2 * SQRT2, atol=1e-12)
    assert np.isclose(payload["t_numeric"], 2 * SQRT2, atol=1e-6)


# ----------------------------------------------------------------- config


def test_config_provides_defaults_and_flags_override(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"params": "0,0,0,0,0,0", "format": "json"}))
    assert run(["eval", "--config", str(config)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert np.isclose(payload["t_max"], 2 * SQRT2, atol=1e-12)

    # explicit flag wins over the config value
    assert run(["eval", "--config", str(config), "--format", "text"]) == 0
    assert "witness maximum" in capsys.readouterr().out


def test_config_missing_file_exit_1(tmp_path):
    assert run(["eval", "--params", "0,0,0,0,0,0", "--config", str(tmp_path / "no.json")]) == 1


# -------------------------------------------------------------- reproduce


def test_reproduce_single_check(capsys):
    code = run(["reproduce", "--only", "gd_optimal"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[PASS] gd_optimal" in out
    assert "1/1 checks passed" in out


def test_reproduce_rejects_unknown_check(capsys):
    assert run(["reproduce", "--only", "not_a_check"]) == 1


def test_reproduce_fails_on_perturbed_reference(monkeypatch, capsys):
    # negative control: a corrupted reference value must turn the check
    # red and the exit code to 3
    import qracdiscord.checks as checks

    broken = list(checks.REFERENCE_POINTS)
    params, gd8_ref, t_ref = broken[0]
    broken[0] = (params, gd8_ref + 0.01, t_ref)
    monkeypatch.setattr(checks, "REFERENCE_POINTS", tuple(broken))
    code = run(["reproduce", "--only", "reference_points"])
    out = capsys.readouterr().out
    assert code == 3
    assert "[FAIL] reference_points" in out
