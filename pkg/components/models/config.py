from dataclasses import dataclass, field

from components.models.helpers import to_bool, to_float, to_float_list, to_int, to_str
from components.models.params import ACTIVE_PARAMETERS, PARAMETER_NAMES, ModelParams
from components.models.settings import (
    ContinuationSettings,
    EvolveSettings,
    NewtonSettings,
)
from config.defaults import GRID_NODES, MODES_MAX, WORKERS

INITIAL_DATA = ("mode", "cosine", "random", "file")
PROJECTIONS = ("norm_u", "norm_v", "u0", "v0")
STUDIES = ("first", "primary", "full")


@dataclass
class RunConfig:
    params: ModelParams
    grid_nodes: int = GRID_NODES
    param: str = "d"
    param_min: float = 0.005
    param_max: float = 0.05
    k_min: int = 0
    k_max: int = MODES_MAX
    newton: NewtonSettings = field(default_factory=NewtonSettings)
    continuation: ContinuationSettings = field(default_factory=ContinuationSettings)
    evolve: EvolveSettings = field(default_factory=EvolveSettings)
    out: str = "out"
    seed: int = 0
    sweep_param: str = "d21"
    sweep_values: list[float] | str = field(default_factory=list)
    study: str = "full"
    workers: int = WORKERS
    strict: bool = False
    projection: str = "norm_u"
    init: str = "mode"
    init_mode: int = 1
    init_amplitude: float = 0.1
    init_file: str | None = None
    uv_overlay: bool = False

    def __post_init__(self) -> None:
        for name in ("grid_nodes", "k_min", "k_max", "seed", "workers", "init_mode"):
            setattr(self, name, to_int(getattr(self, name)))
        for name in ("param_min", "param_max", "init_amplitude"):
            setattr(self, name, to_float(getattr(self, name)))
        for name in ("strict", "uv_overlay"):
            setattr(self, name, to_bool(getattr(self, name)))
        self.out = to_str(self.out)
        self.sweep_values = to_float_list(self.sweep_values)

        if self.grid_nodes < 3:
            raise ValueError("grid_nodes", "'N' must be >= 3")
        if self.param not in ACTIVE_PARAMETERS:
            raise ValueError(
                "param", f"'param' must be one of {', '.join(ACTIVE_PARAMETERS)}"
            )
        if self.sweep_param not in PARAMETER_NAMES + ("d",):
            raise ValueError("sweep_param", f"Unknown parameter '{self.sweep_param}'")
        if self.param_min >= self.param_max:
            raise ValueError("param_min", "'param_min' must be < 'param_max'")
        if not 0 <= self.k_min <= self.k_max:
            raise ValueError("k_min", "mode range must satisfy 0 <= k_min <= k_max")
        if self.study not in STUDIES:
            raise ValueError("study", f"'study' must be one of {', '.join(STUDIES)}")
        if self.projection not in PROJECTIONS:
            raise ValueError(
                "projection", f"'projection' must be one of {', '.join(PROJECTIONS)}"
            )
        if self.init not in INITIAL_DATA:
            raise ValueError("init", f"'init' must be one of {', '.join(INITIAL_DATA)}")
        if self.init == "file" and not self.init_file:
            raise ValueError("init_file", "'init_file' is required when init = file")
        if self.workers < 1:
            raise ValueError("workers", "'workers' must be >= 1")

    @property
    def param_range(self) -> tuple[float, float]:
        return self.param_min, self.param_max
