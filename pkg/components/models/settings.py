from dataclasses import dataclass, field

from components.models.helpers import to_bool, to_float, to_int
from config.defaults import (
    DS_GROWTH,
    DS_GROWTH_AFTER,
    DS_INITIAL,
    DS_MAX,
    DS_MIN,
    DT_INITIAL,
    DT_MAX,
    DT_MIN,
    EVENT_MAX_BISECTIONS,
    EVENT_TOL,
    FOLD_THRESHOLD,
    MAX_STEPS,
    MAX_TIME_STEPS,
    NEWTON_DAMPING_FACTOR,
    NEWTON_DAMPING_MIN,
    NEWTON_MAX_ITER,
    NEWTON_TOL,
    PRIMARY_BRANCHES,
    SECONDARY_DEPTH,
    STEADY_TOL,
    SWITCH_EPSILON,
)


def _positive(obj, *names: str) -> None:
    for name in names:
        if getattr(obj, name) <= 0:
            raise ValueError(name, f"'{name}' must be > 0")


@dataclass
class NewtonSettings:
    tol_residual: float = NEWTON_TOL
    max_iter: int = NEWTON_MAX_ITER
    damping_factor: float = NEWTON_DAMPING_FACTOR
    damping_min: float = NEWTON_DAMPING_MIN

    def __post_init__(self) -> None:
        for name in ("tol_residual", "damping_factor", "damping_min"):
            setattr(self, name, to_float(getattr(self, name)))
        self.max_iter = to_int(self.max_iter)
        _positive(self, "tol_residual", "damping_min")
        if self.max_iter < 1:
            raise ValueError("max_iter", "'max_iter' must be >= 1")
        if not 0 < self.damping_factor < 1:
            raise ValueError("damping_factor", "'damping_factor' must be in (0, 1)")


@dataclass
class ContinuationSettings:
    ds_initial: float = DS_INITIAL
    ds_min: float = DS_MIN
    ds_max: float = DS_MAX
    ds_growth: float = DS_GROWTH
    ds_growth_after: int = DS_GROWTH_AFTER
    max_steps: int = MAX_STEPS
    fold_threshold: float = FOLD_THRESHOLD
    event_tol: float = EVENT_TOL
    event_max_bisections: int = EVENT_MAX_BISECTIONS
    switch_epsilon: float = SWITCH_EPSILON
    secondary_depth: int = SECONDARY_DEPTH
    primary_branches: int = PRIMARY_BRANCHES
    allow_negative_d: bool = False
    newton: NewtonSettings | dict = field(default_factory=NewtonSettings)

    def __post_init__(self) -> None:
        for name in (
            "ds_initial",
            "ds_min",
            "ds_max",
            "ds_growth",
            "fold_threshold",
            "event_tol",
            "switch_epsilon",
        ):
            setattr(self, name, to_float(getattr(self, name)))
        for name in (
            "ds_growth_after",
            "max_steps",
            "event_max_bisections",
            "secondary_depth",
            "primary_branches",
        ):
            setattr(self, name, to_int(getattr(self, name)))
        self.allow_negative_d = to_bool(self.allow_negative_d)
        if isinstance(self.newton, dict):
            self.newton = NewtonSettings(**self.newton)

        _positive(self, "ds_initial", "ds_min", "event_tol", "switch_epsilon")
        if self.ds_max < self.ds_min:
            raise ValueError("ds_max", "'ds_max' must be >= 'ds_min'")
        if self.ds_growth <= 1:
            raise ValueError("ds_growth", "'ds_growth' must be > 1")
        if self.secondary_depth < 0 or self.primary_branches < 0:
            raise ValueError("secondary_depth", "branch counts must be >= 0")


@dataclass
class EvolveSettings:
    dt_initial: float = DT_INITIAL
    dt_min: float = DT_MIN
    dt_max: float = DT_MAX
    steady_tol: float = STEADY_TOL
    max_steps: int = MAX_TIME_STEPS
    newton: NewtonSettings | dict = field(default_factory=NewtonSettings)

    def __post_init__(self) -> None:
        for name in ("dt_initial", "dt_min", "dt_max", "steady_tol"):
            setattr(self, name, to_float(getattr(self, name)))
        self.max_steps = to_int(self.max_steps)
        if isinstance(self.newton, dict):
            self.newton = NewtonSettings(**self.newton)

        _positive(self, "dt_initial", "dt_min", "steady_tol", "max_steps")
        if not self.dt_min <= self.dt_initial <= self.dt_max:
            raise ValueError("dt_initial", "'dt_initial' must lie in [dt_min, dt_max]")
