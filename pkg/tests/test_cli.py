import csv
import json

import pytest

from hybridmoments.app.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_config(path, **overrides):
    data = {
        "signature": {"n_classical": 1, "n_quantum": 1, "hbar": 1.0},
        "hamiltonian": {"preset": "coupled_oscillator", "parameters": {"omega_sq": "17/2", "gamma": "1/2"}},
        "kind": "hybrid",
        "truncation_order": 2,
        "initial": {"centroids": {"q": 1.0, "x": 2.0}, "moments": {"d[0,0;2,0]": 0.5, "d[0,0;0,2]": 0.5}},
        "integrator": {"method": "rk4", "step": 0.01, "t_end": 0.1, "output_stride": 1},
    }
    data.update(overrides)
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--sig", "0c1q", "--kind", "quantum", "d[2,0]", "d[0,2]"], "4*d[1,1]"),
        (["--sig", "1c0q", "--kind", "classical", "d[3,0]", "d[0,3]"], "9*d[2,2] - 9*d[2,0]*d[0,2]"),
        (["d[1,1]", "d[1,1]"], "0"),
        (["q1", "p1"], "1"),
    ],
)
def test_bracket_prints_rendered_result(capsys, argv, expected):
    code, out, _ = run(capsys, "bracket", *argv)
    assert code == EXIT_OK
    assert out.strip() == expected


def test_bracket_oracle_agrees_with_engine(capsys):
    argv = ["bracket", "--sig", "0c1q", "--kind", "quantum", "d[3,0]", "d[0,3]"]
    _, engine, _ = run(capsys, *argv)
    code, oracle, _ = run(capsys, *argv, "--oracle")
    assert code == EXIT_OK
    assert oracle == engine
    assert "hb^2" in engine


def test_bracket_bad_key_reports_position(capsys):
    code, out, err = run(capsys, "bracket", "d[1,a]", "d[0,2]")
    assert code == EXIT_CONFIG
    assert out == ""
    assert "position" in err


def test_bracket_key_with_wrong_dof_count(capsys):
    code, _, err = run(capsys, "bracket", "--sig", "1c1q", "d[2,0]", "d[0,2;0,0]")
    assert code == EXIT_CONFIG
    assert "degrees of freedom" in err


def test_eom_from_preset(capsys):
    code, out, _ = run(capsys, "eom", "--preset", "coupled_oscillator")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("# 1c1q, hybrid bracket, truncation order 2")
    assert lines[1].startswith("H_eff = ")
    assert "d/dt q = p" in lines
    assert "d/dt p = -17/2*q - 1/2*x" in lines


def test_eom_param_override_and_bad_override(capsys):
    code, out, _ = run(capsys, "eom", "--preset", "coupled_oscillator", "--param", "gamma=0")
    assert code == EXIT_OK
    assert "d/dt p = -17/2*q" in out.splitlines()
    code, _, err = run(capsys, "eom", "--preset", "coupled_oscillator", "--param", "gamma")
    assert code == EXIT_CONFIG
    assert "NAME=VALUE" in err


def test_eom_from_config(capsys, tmp_path):
    config = write_config(tmp_path / "run.json")
    code, out, _ = run(capsys, "eom", "--config", str(config))
    assert code == EXIT_OK
    assert "14 equations" in out.splitlines()[0]


def test_simulate_writes_csv_to_stdout(capsys, tmp_path):
    config = write_config(tmp_path / "run.json")
    code, out, err = run(capsys, "simulate", str(config))
    assert code == EXIT_OK
    rows = list(csv.reader(out.splitlines()))
    assert rows[0][:5] == ["t", "q1", "p1", "q2", "p2"]
    assert len(rows) == 1 + 11
    assert float(rows[1][1]) == 1.0
    assert float(rows[-1][0]) == pytest.approx(0.1)
    assert "energy drift" in err


def test_simulate_is_deterministic(capsys, tmp_path):
    config = write_config(tmp_path / "run.json")
    first = tmp_path / "first.csv"
    second = tmp_path / "second.csv"
    assert run(capsys, "simulate", str(config), "--csv", str(first))[0] == EXIT_OK
    assert run(capsys, "simulate", str(config), "--csv", str(second))[0] == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_simulate_zero_duration_emits_single_row(capsys, tmp_path):
    integrator = {"method": "rk4", "step": 0.01, "t_end": 0.0}
    config = write_config(tmp_path / "run.json", integrator=integrator)
    summary = tmp_path / "summary.json"
    code, out, _ = run(capsys, "simulate", str(config), "--summary", str(summary))
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 2
    assert json.loads(summary.read_text(encoding="utf-8"))["final_time"] == 0.0


def test_simulate_rejects_moment_with_wrong_dof_count(capsys, tmp_path):
    initial = {"centroids": {}, "moments": {"d[2,0]": 0.5}}
    config = write_config(tmp_path / "run.json", initial=initial)
    code, out, err = run(capsys, "simulate", str(config))
    assert code == EXIT_CONFIG
    assert out == ""
    assert err


def test_simulate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "simulate", str(tmp_path / "missing.json"))
    assert code == EXIT_IO
    assert "missing.json" in err


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--max-exp", "2")
    assert code == EXIT_OK
    assert out.strip()


def test_verify_cost_guard(capsys):
    code, _, err = run(capsys, "verify", "identities", "--max-exp", "7")
    assert code == EXIT_CONFIG
    assert err


def test_verify_quantum_jacobi_passes(capsys):
    code, _, _ = run(capsys, "verify", "jacobi", "--kind", "quantum", "--max-order", "2", "--samples", "10")
    assert code == EXIT_OK


def test_verify_hybrid_jacobi_json_carries_witness(capsys):
    code, out, _ = run(
        capsys, "verify", "jacobi", "--kind", "hybrid", "--max-order", "2", "--samples", "10", "--json", "-"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert "J(d[3,0;1,0], d[1,1;2,0], d[1,0;0,3]) = " in json.dumps(payload)


def test_presets_listing(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == EXIT_OK
    assert out.startswith("Hamiltonian presets:")
    assert "  coupled_oscillator (1c1q)" in out
    assert "Oscillator scenarios:" in out
    assert "  activation (omega1^2=9, omega2^2=4, t_end=30)" in out


def test_oscillator_writes_csvs_and_report(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(
        capsys, "oscillator", "--scenario", "activation", "--t-end", "1", "--step", "1e-3", "--stride", "10"
    )
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["params"]["omega1_sq"] == "9"
    assert report["params"]["gamma"] == "5/2"
    assert report["u0"] == pytest.approx(1e-10)
    assert report["simulation"]["samples"] == 101
    assert report["simulation"]["max_abs_error_overall"] < 1e-9
    assert report["simulation"]["hybrid_floor"] == report["u0"] / 2
    assert report["simulation"]["quantum_pair_floor"] == 2 * report["u0"]
    assert report["bounds"]["quantum_pair_floor"] == 2 * report["u0"]
    assert "bounds" in report

    analytic = list(csv.reader((tmp_path / "oscillator_analytic.csv").read_text().splitlines()))
    simulated = list(csv.reader((tmp_path / "oscillator_simulated.csv").read_text().splitlines()))
    assert analytic[0] == simulated[0]
    assert analytic[0][:5] == ["t", "q1", "p1", "q2", "p2"]
    assert len(analytic) == len(simulated) == 102


def test_oscillator_unknown_scenario(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, err = run(capsys, "oscillator", "--scenario", "nope")
    assert code == EXIT_CONFIG
    assert "known: beats" in err


def test_oscillator_rejects_inverted_frequencies(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, _ = run(capsys, "oscillator", "--omega1-sq", "4", "--omega2-sq", "9", "--t-end", "0.1")
    assert code == EXIT_CONFIG


def test_read_requirements_skips_comments_and_includes(tmp_path):
    from hybridmoments.app.diagnostics import read_requirements

    path = tmp_path / "requirements.txt"
    path.write_text("# runtime\n-r base.txt\nnumpy>=1.22  # arrays\n\nHypothesis==6.0\n", encoding="utf-8")
    assert read_requirements(path) == ["numpy", "hypothesis"]
    assert read_requirements(tmp_path / "missing.txt") == []
