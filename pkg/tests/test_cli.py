import csv

import numpy as np
import pytest

from components.cli.commands.analyze import NO_BIFURCATION
from components.cli.commands.simulate import initial_state
from components.cli.writers import BRANCH_COLUMNS, write_rows
from components.models.config import RunConfig
from conftest import row
from main import main


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


def test_analyze_preset_1(tmp_path, capsys):
    assert main(["--preset", "1", "--out", str(tmp_path), "analyze"]) == 0
    for name in ("regime.txt", "modes.csv", "thresholds.csv", "theorem.txt"):
        assert (tmp_path / name).exists()
    stdout = capsys.readouterr().out
    assert "regime: weak" in stdout
    assert "case: 3w" in stdout
    modes = read_csv(tmp_path / "modes.csv")
    first = next(m for m in modes if m["k"] == "1")
    assert float(first["d_bif"]) == pytest.approx(0.0328, abs=5e-5)
    thresholds = read_csv(tmp_path / "thresholds.csv")
    assert float(thresholds[0]["d21_threshold"]) == pytest.approx(0.0394, abs=5e-5)


def test_analyze_case_2w_notice(tmp_path):
    argv = ["--preset", "1", "--set", "r1=1", "--set", "r2=1", "--out", str(tmp_path)]
    assert main([*argv, "analyze"]) == 0
    regime = (tmp_path / "regime.txt").read_text(encoding="utf-8")
    assert "case: 2w" in regime
    assert f"notice: {NO_BIFURCATION}" in regime


def test_analyze_large_cross_diffusion_check(tmp_path):
    assert main(["--preset", "3", "--out", str(tmp_path), "analyze"]) == 0
    theorem = (tmp_path / "theorem.txt").read_text(encoding="utf-8")
    assert "holds: yes" in theorem
    assert "105/32" in theorem


def test_analyze_limits_for_the_varied_coefficient(tmp_path):
    argv = ["--preset", "1", "--set", "sweep_param=d12", "--out", str(tmp_path)]
    assert main([*argv, "analyze"]) == 0
    modes = read_csv(tmp_path / "modes.csv")
    first = next(m for m in modes if m["k"] == "1")
    assert float(first["d_bif_limit"]) == pytest.approx(0.1267, abs=5e-5)


def test_analyze_is_deterministic(tmp_path):
    for run in ("a", "b"):
        assert main(["--preset", "2", "--out", str(tmp_path / run), "analyze"]) == 0
    for name in ("regime.txt", "modes.csv", "thresholds.csv", "theorem.txt"):
        first, second = tmp_path / "a" / name, tmp_path / "b" / name
        assert first.read_bytes() == second.read_bytes()


def test_missing_configuration_is_invalid_input(tmp_path):
    assert main(["--out", str(tmp_path), "analyze"]) == 2
    assert main(["--preset", "1", "--set", "colour=red", "analyze"]) == 2


def test_bad_config_file(tmp_path):
    path = tmp_path / "bad.conf"
    path.write_text("r1 = 5\nr1 = 6\n", encoding="utf-8")
    assert main(["--config", str(path), "--out", str(tmp_path), "analyze"]) == 2


def test_continue_without_admissible_state_has_no_result(tmp_path):
    argv = [
        "--preset", "1",
        "--set", "param=r1",
        "--set", "param_min=7",
        "--set", "param_max=8",
        "--out", str(tmp_path),
    ]
    assert main([*argv, "continue"]) == 3


def test_sweep_needs_values(tmp_path):
    assert main(["--preset", "1", "--out", str(tmp_path), "sweep"]) == 2


def test_sweep_without_any_diagram_has_no_result(tmp_path):
    argv = [
        "--preset", "1",
        "--set", "sweep_param=r1",
        "--set", "sweep_values=7,8",
        "--set", "workers=1",
        "--set", "N=21",
        "--out", str(tmp_path),
    ]
    assert main([*argv, "sweep"]) == 3


def test_simulate_strict_without_steady_state(tmp_path):
    argv = [
        "--preset", "1",
        "--set", "N=21",
        "--set", "max_time_steps=1",
        "--out", str(tmp_path),
    ]
    assert main([*argv, "simulate"]) == 0
    assert main(["--strict", *argv, "simulate"]) == 4
    for name in ("trajectory.csv", "final_state.csv", "spectrum.csv"):
        assert (tmp_path / name).exists()
    assert len(read_csv(tmp_path / "trajectory.csv")) == 2
    assert len(read_csv(tmp_path / "final_state.csv")) == 21


def test_simulate_rejects_a_mode_beyond_the_grid(tmp_path):
    argv = ["--preset", "1", "--set", "N=11", "--set", "init_mode=11"]
    assert main([*argv, "--out", str(tmp_path), "simulate"]) == 2


def test_plot_state_and_branch_files(tmp_path):
    state = tmp_path / "final_state.csv"
    rows = [(0.0, 1.0, 2.0), (0.5, 1.5, 1.0), (1.0, 2.0, 0.5)]
    write_rows(state, ["x", "u", "v"], rows)
    branch = tmp_path / "branch_2.csv"
    write_rows(
        branch,
        BRANCH_COLUMNS,
        [
            (0.03, 1.6, 0.2, 1.9, 0.1, 1, 1.2, 0.05, "BranchPoint"),
            (0.04, 1.7, 0.2, 2.0, 0.1, 0, 1.1, 0.04, ""),
        ],
    )
    out = tmp_path / "plots"
    argv = ["--out", str(out), "plot", str(state), str(branch), "--uv-overlay"]
    assert main(argv) == 0
    profile = (out / "final_state.svg").read_text(encoding="utf-8")
    assert 'class="profile-uv"' in profile
    diagram = (out / "diagram.svg").read_text(encoding="utf-8")
    assert 'class="event-branch-point"' in diagram
    assert diagram.count("<polyline") == 2


def test_plot_rejects_malformed_csv(tmp_path):
    path = tmp_path / "branch_1.csv"
    header = ",".join(BRANCH_COLUMNS)
    path.write_text(header + "\n0.1,x,1,1,1,0,1,1,\n", encoding="utf-8")
    assert main(["--out", str(tmp_path), "plot", str(path)]) == 2


def test_plot_rejects_a_missing_archive_point(tmp_path):
    path = tmp_path / "branch_1.json"
    path.write_text(
        '{"branch_id": 1, "param": "d", "grid_nodes": 3, "points": []}',
        encoding="utf-8",
    )
    assert main(["--out", str(tmp_path), "plot", str(path)]) == 2


@pytest.mark.slow
def test_continue_writes_a_diagram(tmp_path):
    argv = [
        "--preset", "1",
        "--set", "N=21",
        "--set", "max_steps=5",
        "--set", "primary_branches=1",
        "--set", "secondary_depth=1",
        "--out", str(tmp_path),
    ]
    assert main([*argv, "continue"]) == 0
    for name in ("branch_0.csv", "branch_0.msgpack", "events.csv", "diagram.svg"):
        assert (tmp_path / name).exists()
    events = read_csv(tmp_path / "events.csv")
    assert any(event["kind"] == "BranchPoint" for event in events)
    homogeneous = read_csv(tmp_path / "branch_0.csv")
    assert all(float(row["norm_u"]) == pytest.approx(13 / 8) for row in homogeneous)


@pytest.mark.parametrize("init", ["mode", "cosine"])
def test_initial_cosine_perturbations(init):
    config = RunConfig(row(1), grid_nodes=11, init=init, init_amplitude=0.1)
    s = initial_state(config)
    shape = 0.1 * np.cos(np.pi * s.grid.x)
    if init == "cosine":
        np.testing.assert_allclose(s.u, 13 / 8 + shape)
        np.testing.assert_allclose(s.v, 1 / 8 + shape)
    else:
        np.testing.assert_allclose(s.u, 13 / 8 * (1 + shape))
        np.testing.assert_allclose(s.v, 1 / 8 * (1 - shape))
