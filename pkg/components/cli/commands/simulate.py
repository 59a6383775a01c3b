import numpy as np

from components.analysis.model import admissible_coexistence
from components.cli.writers import (
    STATE_COLUMNS,
    read_table,
    write_spectrum,
    write_state,
    write_trajectory,
)
from components.exceptions import ConfigError, DomainError, EigensolveFailed
from components.logs import logger
from components.models.config import RunConfig
from components.models.states import Grid, StateVector
from components.numerics.discretization import cosine_mode
from components.numerics.evolve import integrate_to_steady
from components.numerics.stability import spectrum

from .plugin import CommandPlugin, ExitCode, output_dir


def initial_state(config: RunConfig) -> StateVector:
    """Homogeneous state plus a cosine mode or seeded noise, or a state CSV.

    ``mode`` scales the cosine by each density with opposite signs; ``cosine``
    adds ``init_amplitude * cos(k pi x)`` to both components.
    """
    if config.init == "file":
        rows = read_table(config.init_file, STATE_COLUMNS)
        if len(rows) < 3:
            raise ConfigError(f"'{config.init_file}' holds fewer than 3 nodes")
        grid = Grid(len(rows))
        return StateVector.from_fields(
            grid, [row["u"] for row in rows], [row["v"] for row in rows]
        )

    try:
        u, v = (float(x) for x in admissible_coexistence(config.params))
    except DomainError as exc:
        raise ConfigError(f"cannot build initial data: {exc}")
    grid = Grid(config.grid_nodes)
    if config.init in ("mode", "cosine"):
        if config.init_mode >= grid.n:
            raise ConfigError(f"'init_mode' must be < N = {grid.n}")
        shape = config.init_amplitude * cosine_mode(grid, config.init_mode)
        if config.init == "cosine":
            return StateVector.from_fields(grid, u + shape, v + shape)
        # relative to each density, u and v in antiphase
        return StateVector.from_fields(grid, u * (1.0 + shape), v * (1.0 - shape))
    rng = np.random.default_rng(config.seed)
    noise = rng.uniform(-1.0, 1.0, size=(2, grid.n))
    return StateVector.from_fields(
        grid,
        u * (1.0 + config.init_amplitude * noise[0]),
        v * (1.0 + config.init_amplitude * noise[1]),
    )


class SimulateCommand(CommandPlugin):
    name = "simulate"
    help = "integrate the time-dependent system to a steady state"

    def handle(self, config: RunConfig, args) -> int:
        out = output_dir(config, args)
        s0 = initial_state(config)
        result = integrate_to_steady(config.params, s0, config.evolve)

        write_trajectory(out / "trajectory.csv", result.trajectory)
        write_state(out / "final_state.csv", result.state)
        try:
            summary = spectrum(config.params, result.state, keep=True)
        except EigensolveFailed as exc:
            logger.warning(str(exc))
        else:
            write_spectrum(out / "spectrum.csv", summary.eigenvalues)
            logger.info(f"Final state has {summary.unstable} unstable eigenvalues")

        if not result.converged:
            logger.warning(
                f"No steady state after {result.steps} steps (t={result.time:.6g})"
            )
            if config.strict:
                return ExitCode.NOT_CONVERGED
        else:
            logger.success(
                f"Steady state at t={result.time:.6g} after {result.steps} steps"
            )
        return ExitCode.OK
