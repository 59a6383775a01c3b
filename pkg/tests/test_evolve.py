import numpy as np
import pytest

from components.continuation.homogeneous import continue_homogeneous
from components.models.settings import EvolveSettings
from components.models.states import Grid, StateVector
from components.numerics.discretization import block_matrices, l2_norm, residual
from components.numerics.evolve import integrate_to_steady, step
from conftest import homogeneous, perturbed, row


def test_step_rejects_non_positive_dt():
    p = row(1)
    with pytest.raises(ValueError):
        step(p, homogeneous(p, Grid(11)), 0.0)


def test_step_keeps_a_steady_state():
    p = row(1, d1="1/10", d2="1/10")
    s = homogeneous(p, Grid(21))
    assert step(p, s, 0.5).distance(s) < 1e-12


def test_steps_damp_a_decaying_mode():
    # the mode-1 block is stable but non-normal: the deviation first grows
    p = row(1, d1="1/10", d2="1/10")
    base = homogeneous(p, Grid(21))
    s = perturbed(base, 1e-2)
    initial = s.distance(base)
    for _ in range(80):
        s = step(p, s, 0.1)
    assert s.distance(base) < 0.1 * initial


def test_growth_rate_matches_the_mode_block():
    p = row(1, d1="1/40", d2="1/40")
    grid = Grid(41)
    base = homogeneous(p, grid)
    block = block_matrices(p, base.u[0], base.v[0], grid)[1]
    rate = max(np.linalg.eigvals(block).real)
    assert rate > 0
    dt = 0.2
    s = perturbed(base, 1e-5)
    distances = []
    for _ in range(40):
        s = step(p, s, dt)
        distances.append(s.distance(base))
    factor = (distances[-1] / distances[-21]) ** (1 / 20)
    # backward Euler multiplies the mode by 1 / (1 - dt * rate)
    assert (1 - 1 / factor) / dt == pytest.approx(rate, rel=1e-2)


def test_steady_initial_data_needs_no_steps():
    p = row(1, d1="1/10", d2="1/10")
    s = homogeneous(p, Grid(21))
    result = integrate_to_steady(p, s)
    assert result.converged
    assert result.steps == 0
    assert len(result.trajectory) == 1


def test_perturbation_decays_to_the_homogeneous_state():
    p = row(1, d1="1/10", d2="1/10")
    base = homogeneous(p, Grid(21))
    result = integrate_to_steady(p, perturbed(base, 5e-2))
    assert result.converged
    assert result.state.distance(base) < 1e-6
    times = [point.t for point in result.trajectory]
    assert times == sorted(times)
    assert result.trajectory[-1].t == pytest.approx(result.time)
    assert result.trajectory[-1].norm_u == pytest.approx(13 / 8, rel=1e-6)


def test_strong_competition_ends_in_exclusion():
    p = row(4)
    grid = Grid(21)
    rng = np.random.default_rng(11)
    noise = rng.uniform(-1, 1, size=(2, grid.n))
    s0 = StateVector.from_fields(
        grid, 5 / 7 * (1 + 0.01 * noise[0]), 5 / 7 * (1 + 0.01 * noise[1])
    )
    result = integrate_to_steady(p, s0)
    assert result.converged
    final = result.state
    assert np.max(np.abs(residual(p, final))) < 1e-8
    winners = [(2.5, 0.0), (0.0, 5 / 3)]
    assert any(
        np.allclose(final.u, u, atol=1e-6) and np.allclose(final.v, v, atol=1e-6)
        for u, v in winners
    )


def test_step_limit_reports_no_convergence():
    p = row(1, d1="1/10", d2="1/10")
    base = homogeneous(p, Grid(21))
    result = integrate_to_steady(p, perturbed(base, 5e-2), EvolveSettings(max_steps=1))
    assert not result.converged
    assert result.steps == 1
    assert len(result.trajectory) == 2


def test_settings_validate():
    with pytest.raises(ValueError):
        EvolveSettings(dt_initial=10.0, dt_max=1.0)
    settings = EvolveSettings(newton={"max_iter": 5})
    assert settings.newton.max_iter == 5


@pytest.fixture(scope="module")
def sampled_branch():
    return continue_homogeneous(row(1), "d", (0.01, 0.1), Grid(41))


def _sample(branch, d):
    return min(branch.points, key=lambda pt: abs(pt.value - d))


@pytest.mark.slow
@pytest.mark.parametrize("d", [0.036, 0.04, 0.05, 0.07, 0.1])
def test_stable_points_attract_nearby_data(sampled_branch, d):
    point = _sample(sampled_branch, d)
    assert point.stable
    p = row(1).with_value("d", point.value)
    result = integrate_to_steady(p, perturbed(point.state, 0.01 * 13 / 8))
    assert result.converged
    assert l2_norm(result.state)[0] == pytest.approx(point.norm_u, abs=1e-3)
    assert result.state.distance(point.state) < 1e-3


@pytest.mark.slow
@pytest.mark.parametrize("d", [0.012, 0.014, 0.016, 0.018, 0.02])
def test_unstable_points_are_left_behind(sampled_branch, d):
    point = _sample(sampled_branch, d)
    assert not point.stable
    p = row(1).with_value("d", point.value)
    result = integrate_to_steady(p, perturbed(point.state, 0.01 * 13 / 8))
    # measured on the profile: a reflected pattern keeps the same norm
    assert result.state.distance(point.state) > 0.1 * 13 / 8
