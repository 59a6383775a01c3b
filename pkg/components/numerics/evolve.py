"""Backward Euler time stepping of the full time-dependent system."""

from dataclasses import dataclass, field

import numpy as np

from components.exceptions import SolverException, StepRejected
from components.logs import logger
from components.models.params import ModelParams, NumericParams
from components.models.settings import EvolveSettings, NewtonSettings
from components.models.states import StateVector
from components.numerics import newton
from components.numerics.discretization import (
    jacobian_data,
    l2_norm,
    residual_data,
    roundoff_floor,
)


@dataclass
class TrajectoryPoint:
    t: float
    dt: float
    norm_u: float
    norm_v: float


@dataclass(eq=False)
class EvolveResult:
    state: StateVector
    converged: bool
    time: float = 0.0
    steps: int = 0
    rejected: int = 0
    trajectory: list[TrajectoryPoint] = field(default_factory=list)


def step(
    p: ModelParams | NumericParams,
    s: StateVector,
    dt: float,
    settings: NewtonSettings | None = None,
) -> StateVector:
    """One implicit step: solve x - s - dt F(x) = 0 starting from ``s``."""
    if dt <= 0:
        raise ValueError("dt", "'dt' must be > 0")
    grid, previous = s.grid, s.data

    def residual_fn(x):
        return x - previous - dt * residual_data(p, x, grid)

    def jacobian_fn(x):
        return jacobian_data(p, x, grid).shifted(scale=-dt, shift=1.0)

    try:
        result = newton.solve_system(
            residual_fn,
            jacobian_fn,
            previous,
            settings,
            tol=dt * roundoff_floor(p, s),
        )
    except SolverException as exc:
        raise StepRejected(
            f"implicit step dt={dt:.3e} failed: {exc}",
            state=s,
            residual_norm=exc.residual_norm,
            iterations=exc.iterations,
        ) from exc
    return s.with_data(result.data)


def _record(trajectory: list, t: float, dt: float, s: StateVector) -> None:
    norm_u, norm_v = l2_norm(s)
    trajectory.append(TrajectoryPoint(t, dt, norm_u, norm_v))


def integrate_to_steady(
    p: ModelParams | NumericParams,
    s0: StateVector,
    settings: EvolveSettings | None = None,
) -> EvolveResult:
    settings = settings or EvolveSettings()
    s, t, dt = s0, 0.0, settings.dt_initial
    trajectory: list[TrajectoryPoint] = []
    _record(trajectory, t, 0.0, s)
    steps = rejected = 0

    tol = max(settings.newton.tol_residual, roundoff_floor(p, s))
    settled = float(np.max(np.abs(residual_data(p, s.data, s.grid)))) <= tol

    while not settled and steps < settings.max_steps:
        try:
            new = step(p, s, dt, settings.newton)
        except StepRejected as exc:
            rejected += 1
            dt *= 0.5
            logger.debug(f"Rejected step at t={t:.6g}: {exc}")
            if dt < settings.dt_min:
                logger.warning(f"Time step underflow at t={t:.6g}")
                break
            continue

        change = s.distance(new) / dt
        s, t, steps = new, t + dt, steps + 1
        _record(trajectory, t, dt, s)
        settled = change < settings.steady_tol
        dt = min(2.0 * dt, settings.dt_max)

    if not settled:
        logger.warning(f"No steady state after {steps} steps (t={t:.6g})")
        return EvolveResult(s, False, t, steps, rejected, trajectory)

    try:
        polished = newton.solve(p, s, settings.newton).state
    except SolverException as exc:
        logger.warning(f"Polishing the final state failed: {exc}")
        return EvolveResult(s, False, t, steps, rejected, trajectory)
    return EvolveResult(polished, True, t, steps, rejected, trajectory)
