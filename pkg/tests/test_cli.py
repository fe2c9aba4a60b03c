"""End-to-end command line tests driven through main() in process."""

import json

import numpy as np
import pytest

from locnet.cli import main
from locnet.integrate import Trajectory
from locnet.manifest import RunManifest, sha256_file

TINY_INI = """\
[experiment]
ensemble_size = 2
seed = 77
"""

SWEEP_ARTIFACTS = (
    "degrees.csv",
    "stats.csv",
    "scc.json",
    "report.json",
    "degree_bands.svg",
    "scc_trace.svg",
)


@pytest.fixture()
def tiny_ini(tmp_path):
    path = tmp_path / "tiny.ini"
    path.write_text(TINY_INI, encoding="utf-8")
    return str(path)


def run_sweep(tmp_path, tiny_ini, name):
    out = tmp_path / name
    code = main(
        ["sweep", "--config", tiny_ini, "--grid", "1.0:0.8:2", "--out", str(out)]
    )
    assert code == 0
    return out


def test_simulate_writes_trajectory_and_manifest(tmp_path, capsys):
    out = tmp_path / "sim"
    assert main(["simulate", "--ic", "x0a", "--out", str(out)]) == 0
    traj = Trajectory.from_csv(out / "trajectory.csv")
    assert traj.n_samples == 201
    assert traj.n_osc == 10
    manifest = RunManifest.load(out / "manifest.json")
    assert manifest.outputs["trajectory.csv"] == sha256_file(out / "trajectory.csv")
    assert "201 rows" in capsys.readouterr().out


def test_simulate_inline_initial_state(tmp_path):
    out = tmp_path / "sim"
    spec = ",".join(["0.05"] + ["0"] * 19)
    assert main(["simulate", "--ic", spec, "--out", str(out)]) == 0
    traj = Trajectory.from_csv(out / "trajectory.csv")
    assert traj.displacements[0, 0] == 0.05
    assert traj.displacements[1:, 0].max() == 0.0


def test_simulate_rejects_unknown_ic_name(tmp_path, capsys):
    assert main(["simulate", "--ic", "nope", "--out", str(tmp_path / "x")]) == 1
    assert "error:" in capsys.readouterr().err


def test_simulate_rejects_wrong_ic_length(tmp_path, capsys):
    assert main(["simulate", "--ic", "1,2,3", "--out", str(tmp_path / "x")]) == 1
    assert "20 numbers" in capsys.readouterr().err


def test_network_outputs_are_consistent(tmp_path, capsys):
    sim = tmp_path / "sim"
    main(["simulate", "--ic", "x0a", "--out", str(sim)])
    out = tmp_path / "net"
    code = main(["network", str(sim / "trajectory.csv"), "--out", str(out)])
    assert code == 0
    data = json.loads((out / "network.json").read_text(encoding="utf-8"))
    edge_lines = (out / "edges.txt").read_text(encoding="utf-8").splitlines()
    assert data["n_nodes"] == 10
    assert len(edge_lines) == len(data["edges"])
    stdout = capsys.readouterr().out
    assert "10 nodes" in stdout
    assert (out / "pairs.csv").exists()
    assert (out / "manifest.json").exists()


def test_network_rejects_constant_column(tmp_path, capsys):
    t = np.linspace(0.0, 2.0, 50)
    disp = np.vstack([np.sin(t), np.zeros_like(t)])
    traj = Trajectory(t, disp, np.zeros_like(disp))
    path = tmp_path / "flat.csv"
    traj.to_csv(path)
    assert main(["network", str(path), "--out", str(tmp_path / "n")]) == 2
    assert "x2 is constant" in capsys.readouterr().err


def test_network_needs_two_series(tmp_path, capsys):
    t = np.linspace(0.0, 2.0, 50)
    traj = Trajectory(t, np.sin(t)[None, :], np.cos(t)[None, :])
    path = tmp_path / "single.csv"
    traj.to_csv(path)
    assert main(["network", str(path), "--out", str(tmp_path / "n")]) == 1
    assert "at least 2 series" in capsys.readouterr().err


def test_network_missing_trajectory_file(tmp_path, capsys):
    missing = str(tmp_path / "nope.csv")
    assert main(["network", missing, "--out", str(tmp_path / "n")]) == 1
    assert "error:" in capsys.readouterr().err


def test_sweep_emits_all_artifacts(tmp_path, tiny_ini, capsys):
    out = run_sweep(tmp_path, tiny_ini, "sweep")
    manifest = RunManifest.load(out / "manifest.json")
    for name in SWEEP_ARTIFACTS:
        assert (out / name).exists()
        assert manifest.outputs[name] == sha256_file(out / name)
    assert manifest.seed == 77
    stdout = capsys.readouterr().out
    assert "flagged node:" in stdout
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert set(report) == {
        "node",
        "m4_first_zero",
        "m4_mean_zero",
        "m4_scc_split",
        "m4_first_localized",
        "m4_always_localized",
    }


def test_sweep_is_deterministic_across_runs(tmp_path, tiny_ini):
    first = run_sweep(tmp_path, tiny_ini, "run1")
    second = run_sweep(tmp_path, tiny_ini, "run2")
    for name in SWEEP_ARTIFACTS:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_report_rerenders_charts_byte_identically(tmp_path, tiny_ini):
    out = run_sweep(tmp_path, tiny_ini, "sweep")
    originals = {
        name: (out / name).read_bytes()
        for name in ("degree_bands.svg", "scc_trace.svg")
    }
    (out / "degree_bands.svg").unlink()
    (out / "scc_trace.svg").write_bytes(b"<svg/>")
    assert main(["report", str(out)]) == 0
    manifest = RunManifest.load(out / "manifest.json")
    for name, blob in originals.items():
        assert (out / name).read_bytes() == blob
        assert manifest.outputs[name] == sha256_file(out / name)


def test_report_rejects_non_sweep_directory(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["report", str(empty)]) == 1
    assert "does not look like a sweep output" in capsys.readouterr().err


def test_validate_passes_by_default(capsys):
    assert main(["validate"]) == 0
    stdout = capsys.readouterr().out
    assert stdout.count("PASS") == 3
    assert "sign convention:" in stdout


def test_validate_fails_with_wide_dead_zone(capsys):
    assert main(["validate", "--tol", "0.5"]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_unknown_flag_exits_one():
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--frobnicate"])
    assert exc.value.code == 1


def test_missing_subcommand_exits_one():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_missing_config_file_exits_one(tmp_path, capsys):
    args = ["sweep", "--config", str(tmp_path / "nope.ini"), "--out", str(tmp_path / "o")]
    assert main(args) == 1
    assert "cannot read config file" in capsys.readouterr().err


def test_malformed_grid_exits_one(tmp_path, capsys):
    args = ["sweep", "--grid", "1.0:0.8", "--out", str(tmp_path / "o")]
    assert main(args) == 1
    assert "start:stop:count" in capsys.readouterr().err


def test_malformed_ic_range_exits_one(tmp_path, capsys):
    args = ["sweep", "--ic-range", "0.3", "--out", str(tmp_path / "o")]
    assert main(args) == 1
    assert "low,high" in capsys.readouterr().err


def test_flag_overrides_reach_the_manifest_config(tmp_path, tiny_ini):
    out = tmp_path / "sweep"
    code = main(
        [
            "sweep",
            "--config",
            tiny_ini,
            "--grid",
            "1.0:0.8:2",
            "--seed",
            "123",
            "--noise",
            "0.01",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    manifest = RunManifest.load(out / "manifest.json")
    assert manifest.seed == 123
    assert "noise_level = 0.01" in manifest.config_ini
    assert "seed = 123" in manifest.config_ini
