from dataclasses import dataclass, field

from components.continuation.homogeneous import continue_homogeneous
from components.continuation.switching import switch_branch
from components.exceptions import SwitchFailed
from components.logs import logger
from components.models.branches import Branch, Event, EventKind
from components.models.params import ModelParams
from components.models.settings import ContinuationSettings
from components.models.states import Grid

__all__ = ["Diagram", "compute_diagram", "continue_in_r1"]


@dataclass(eq=False)
class Diagram:
    param: str
    params: ModelParams
    param_range: tuple[float, float]
    branches: list[Branch] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def homogeneous(self) -> Branch:
        return self.branches[0]

    @property
    def nontrivial(self) -> list[Branch]:
        return self.branches[1:]

    def events(self) -> list[Event]:
        merged = [event for branch in self.branches for event in branch.events]
        return sorted(merged, key=lambda event: (event.value, event.branch_id))


def _branch_points(branch: Branch, limit: int) -> list[Event]:
    events = [e for e in branch.events if e.kind == EventKind.BRANCH_POINT]
    if all(event.mode_hint is not None for event in events):
        events.sort(key=lambda event: (event.mode_hint, event.value))
    return events[:limit]


def compute_diagram(
    p: ModelParams,
    param: str,
    param_range: tuple[float, float],
    grid: Grid | None = None,
    settings: ContinuationSettings | None = None,
) -> Diagram:
    """Homogeneous branch, then primary and secondary switches up to the depth limit."""
    settings = settings or ContinuationSettings(allow_negative_d=p.allow_negative_d)
    grid = grid or Grid()
    bounds = tuple(sorted(float(x) for x in param_range))

    homogeneous = continue_homogeneous(p, param, bounds, grid)
    diagram = Diagram(param=param, params=p, param_range=bounds, branches=[homogeneous])

    def spawn(parent: Branch, event: Event) -> Branch | None:
        branch_id = len(diagram.branches)
        try:
            branch = switch_branch(p, parent, event, settings, bounds, branch_id)
        except SwitchFailed as exc:
            logger.warning(str(exc))
            diagram.failures.append(str(exc))
            return None
        diagram.branches.append(branch)
        return branch

    frontier = [homogeneous]
    depth = 0
    while frontier and depth < settings.secondary_depth:
        limit = settings.primary_branches
        children = []
        for parent in frontier:
            for event in _branch_points(parent, limit):
                child = spawn(parent, event)
                if child is not None:
                    children.append(child)
        frontier, depth = children, depth + 1

    logger.info(
        f"Diagram in {param}: {len(diagram.nontrivial)} nontrivial branches, "
        f"{len(diagram.events())} events"
    )
    return diagram


def continue_in_r1(
    p: ModelParams,
    r1_range: tuple[float, float],
    d_fixed: float,
    grid: Grid | None = None,
    settings: ContinuationSettings | None = None,
) -> Diagram:
    return compute_diagram(p.with_value("d", d_fixed), "r1", r1_range, grid, settings)
