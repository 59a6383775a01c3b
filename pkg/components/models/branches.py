from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from components.models.params import ACTIVE_PARAMETERS
from components.models.states import StateVector
from config.defaults import POSITIVITY_TOL


class EventKind(Enum):
    BRANCH_POINT = "BranchPoint"
    FOLD = "Fold"
    HOPF = "Hopf"


class Provenance(Enum):
    HOMOGENEOUS = "homogeneous"
    PRIMARY = "primary"
    SECONDARY = "secondary"
    SEED = "seed"


@dataclass(eq=False)
class BranchPoint:
    value: float
    state: StateVector
    norm_u: float
    norm_v: float
    u0: float
    v0: float
    stability_index: int
    min_u: float
    min_v: float
    arclength: float = 0.0
    tangent: np.ndarray | None = None
    event_flag: str = ""
    unstable_real: int = 0
    unstable_complex: int = 0
    critical_imag: float = 0.0

    def __post_init__(self) -> None:
        if self.stability_index < 0:
            raise ValueError("stability_index", "'stability_index' must be >= 0")

    @property
    def positive(self) -> bool:
        return self.min_u >= -POSITIVITY_TOL and self.min_v >= -POSITIVITY_TOL

    @property
    def stable(self) -> bool:
        return self.stability_index == 0


@dataclass(eq=False)
class Event:
    kind: EventKind
    value: float
    arclength: float
    # arclength stations of the accepted points around the event
    bracket: tuple[float, float]
    mode_hint: int | None = None
    branch_id: int | None = None
    point: BranchPoint | None = None
    # null direction of the critical Jacobian, when known analytically
    kernel: np.ndarray | None = None

    def __post_init__(self) -> None:
        if isinstance(self.kind, str):
            self.kind = EventKind(self.kind)
        low, high = sorted(self.bracket)
        self.bracket = (low, high)
        if not low - 1e-12 <= self.arclength <= high + 1e-12:
            raise ValueError("arclength", "event must lie inside its bracket")


@dataclass(eq=False)
class Branch:
    id: int
    param: str
    provenance: Provenance = Provenance.HOMOGENEOUS
    parent_id: int | None = None
    parent_event: Event | None = None
    depth: int = 0
    points: list[BranchPoint] = field(default_factory=list)
    events: list[Event] = field(default_factory=list)
    stop_reason: str = ""
    # spatial profile the branch left the homogeneous state along
    seed_direction: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.param not in ACTIVE_PARAMETERS:
            raise ValueError(
                "param", f"'param' must be one of {', '.join(ACTIVE_PARAMETERS)}"
            )
        if isinstance(self.provenance, str):
            self.provenance = Provenance(self.provenance)

    @property
    def label(self) -> str:
        if self.provenance in (Provenance.HOMOGENEOUS, Provenance.SEED):
            return self.provenance.value
        return f"{self.provenance.value} from branch {self.parent_id}"

    @property
    def values(self) -> np.ndarray:
        return np.array([point.value for point in self.points])

    @property
    def last(self) -> BranchPoint:
        return self.points[-1]

    def add_event(self, event: Event) -> None:
        event.branch_id = self.id
        self.events.append(event)

    def sorted_events(self) -> list[Event]:
        return sorted(self.events, key=lambda event: (event.value, event.kind.value))
