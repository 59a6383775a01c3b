import asyncio
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

from components.continuation.diagram import Diagram, compute_diagram
from components.exceptions import SKTException
from components.logs import logger
from components.models.params import ModelParams
from components.models.settings import ContinuationSettings
from components.models.states import Grid
from config.defaults import WORKERS

__all__ = ["SweepResult", "sweep", "STUDIES"]

# which branches each study tracks: (primary branches, depth)
STUDIES = {
    "first": (1, 1),
    "primary": (None, 1),
    "full": (None, None),
}


@dataclass(eq=False)
class SweepResult:
    value: float
    diagram: Diagram | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.diagram is not None


def _study_settings(settings: ContinuationSettings, study: str) -> ContinuationSettings:
    if study not in STUDIES:
        raise ValueError("study", f"'study' must be one of {', '.join(STUDIES)}")
    primary, depth = STUDIES[study]
    return replace(
        settings,
        primary_branches=settings.primary_branches if primary is None else primary,
        secondary_depth=settings.secondary_depth if depth is None else depth,
    )


def _run_one(
    p: ModelParams,
    sweep_param: str,
    value: float,
    param: str,
    param_range: tuple[float, float],
    grid: Grid,
    settings: ContinuationSettings,
) -> SweepResult:
    try:
        diagram = compute_diagram(
            p.with_value(sweep_param, value), param, param_range, grid, settings
        )
    except (SKTException, ValueError) as exc:
        return SweepResult(value=value, error=str(exc))
    return SweepResult(value=value, diagram=diagram)


async def _run_pool(jobs: list, workers: int) -> list[SweepResult]:
    loop = asyncio.get_running_loop()

    async def run(job):
        return await loop.run_in_executor(pool, job)

    with ProcessPoolExecutor(max_workers=workers) as pool:
        async with asyncio.TaskGroup() as tg:
            tasks = [
                tg.create_task(run(job), name=f"sweep-{i}")
                for i, job in enumerate(jobs)
            ]
    return [task.result() for task in tasks]


def sweep(
    p: ModelParams,
    sweep_param: str,
    values: list[float],
    param: str,
    param_range: tuple[float, float],
    study: str = "full",
    grid: Grid | None = None,
    settings: ContinuationSettings | None = None,
    workers: int = WORKERS,
) -> list[SweepResult]:
    """One diagram per sweep value, returned in the order of ``values``."""
    settings = _study_settings(
        settings or ContinuationSettings(allow_negative_d=p.allow_negative_d), study
    )
    grid = grid or Grid()
    jobs = [
        partial(_run_one, p, sweep_param, value, param, param_range, grid, settings)
        for value in values
    ]

    if workers <= 1 or len(jobs) <= 1:
        results = [job() for job in jobs]
    else:
        results = asyncio.run(_run_pool(jobs, min(workers, len(jobs))))

    for result in results:
        log = logger.bind(**{sweep_param: f"{result.value:g}"})
        if result.ok:
            log.info(f"{len(result.diagram.nontrivial)} nontrivial branches")
        else:
            log.error(f"Failed: {result.error}")
    return results
