from dataclasses import dataclass, replace

import numpy as np

from components.models.helpers import to_int
from config.defaults import GRID_NODES


@dataclass(frozen=True)
class Grid:
    n: int = GRID_NODES

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", to_int(self.n))
        if self.n < 3:
            raise ValueError("n", "'n' must be >= 3")

    @property
    def h(self) -> float:
        return 1.0 / (self.n - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Discrete state with interleaved storage (u0, v0, u1, v1, ...)."""

    grid: Grid
    data: np.ndarray
    param: str | None = None
    value: float | None = None

    def __post_init__(self) -> None:
        data = np.asarray(self.data, dtype=float)
        if data.shape != (2 * self.grid.n,):
            raise ValueError(
                "data", f"'data' must have shape ({2 * self.grid.n},), got {data.shape}"
            )
        if not np.all(np.isfinite(data)):
            raise ValueError("data", "'data' must be finite")
        object.__setattr__(self, "data", data)
        if self.value is not None:
            object.__setattr__(self, "value", float(self.value))

    @classmethod
    def from_fields(
        cls,
        grid: Grid,
        u,
        v,
        param: str | None = None,
        value: float | None = None,
    ) -> "StateVector":
        data = np.empty(2 * grid.n)
        data[0::2] = u
        data[1::2] = v
        return cls(grid=grid, data=data, param=param, value=value)

    @classmethod
    def constant(
        cls,
        grid: Grid,
        u: float,
        v: float,
        param: str | None = None,
        value: float | None = None,
    ) -> "StateVector":
        return cls.from_fields(grid, float(u), float(v), param=param, value=value)

    @property
    def u(self) -> np.ndarray:
        return self.data[0::2]

    @property
    def v(self) -> np.ndarray:
        return self.data[1::2]

    def with_data(self, data, value: float | None = None) -> "StateVector":
        return replace(self, data=data, value=self.value if value is None else value)

    def reflected(self) -> "StateVector":
        return StateVector.from_fields(
            self.grid, self.u[::-1], self.v[::-1], param=self.param, value=self.value
        )

    def distance(self, other: "StateVector") -> float:
        return float(np.max(np.abs(self.data - other.data)))
