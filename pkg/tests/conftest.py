import numpy as np
import pytest

from components.analysis.model import admissible_coexistence
from components.models.params import ModelParams
from components.models.states import Grid, StateVector


def row(number: int, **overrides) -> ModelParams:
    base = {
        1: dict(r1=5, r2=2, a1=3, a2=3, b1=1, b2=1, d12=3, d21=0),
        2: dict(r1=2, r2=5, a1=1, a2=1, b1="1/2", b2=3, d12=3, d21=0),
        3: dict(
            r1="15/2", r2="16/7", a1=4, a2=2, b1=6, b2=1, d12=100, d21=100
        ),
        4: dict(r1=5, r2=5, a1=2, a2=3, b1=5, b2=4),
    }[number]
    return ModelParams(**(base | overrides))


def homogeneous(p: ModelParams, grid: Grid, param: str = "d") -> StateVector:
    u, v = admissible_coexistence(p)
    return StateVector.constant(grid, float(u), float(v), param=param, value=float(p.d))


def perturbed(s: StateVector, amplitude: float, k: int = 1) -> StateVector:
    shape = np.cos(k * np.pi * s.grid.x)
    return StateVector.from_fields(
        s.grid,
        s.u + amplitude * shape,
        s.v - amplitude * shape,
        param=s.param,
        value=s.value,
    )


@pytest.fixture
def row1() -> ModelParams:
    return row(1)


@pytest.fixture
def row3() -> ModelParams:
    return row(3)


@pytest.fixture
def small_grid() -> Grid:
    return Grid(21)

