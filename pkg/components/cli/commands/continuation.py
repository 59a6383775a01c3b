from pathlib import Path

from components.cli.plots import branch_color, render_diagram, series_from_branch
from components.cli.storage import StorageCodec, write_archive
from components.cli.writers import write_branch, write_events
from components.continuation.diagram import Diagram, compute_diagram, continue_in_r1
from components.continuation.sweep import sweep
from components.exceptions import ConfigError, DomainError
from components.logs import logger
from components.models.branches import Provenance
from components.models.config import RunConfig
from components.models.states import Grid

from .plugin import CommandPlugin, ExitCode, output_dir

AXIS_LABELS = {
    "norm_u": "||u||_L2",
    "norm_v": "||v||_L2",
    "u0": "u(0)",
    "v0": "v(0)",
}


def write_diagram(out: Path, diagram: Diagram, projection: str) -> None:
    out.mkdir(parents=True, exist_ok=True)
    codec = StorageCodec()
    for branch in diagram.branches:
        write_branch(out / f"branch_{branch.id}.csv", branch)
        write_archive(out / f"branch_{branch.id}", branch, codec)
    write_events(out / "events.csv", diagram.events())
    svg = render_diagram(
        [series_from_branch(branch, projection) for branch in diagram.branches],
        xlabel=diagram.param,
        ylabel=AXIS_LABELS[projection],
        title=f"bifurcation diagram in {diagram.param}",
    )
    (out / "diagram.svg").write_text(svg, encoding="utf-8")


class ContinueCommand(CommandPlugin):
    name = "continue"
    help = "homogeneous branch, primary and secondary branches, events"

    def handle(self, config: RunConfig, args) -> int:
        p, out = config.params, output_dir(config, args)
        grid = Grid(config.grid_nodes)
        try:
            if config.param == "r1":
                diagram = continue_in_r1(
                    p, config.param_range, p.d, grid, config.continuation
                )
            else:
                diagram = compute_diagram(
                    p, config.param, config.param_range, grid, config.continuation
                )
        except DomainError as exc:
            logger.error(f"No branch produced: {exc}")
            return ExitCode.NO_RESULT

        for branch in diagram.branches:
            if branch.stop_reason == "stalled":
                logger.warning(f"Branch {branch.id} is partial (stalled)")
        write_diagram(out, diagram, config.projection)
        logger.success(
            f"{len(diagram.branches)} branches and {len(diagram.events())} events "
            f"written to {out}"
        )
        return ExitCode.OK


class SweepCommand(CommandPlugin):
    name = "sweep"
    help = "one diagram per value of a second parameter, plus an overlay"

    def handle(self, config: RunConfig, args) -> int:
        if not config.sweep_values:
            raise ConfigError("'sweep_values' is required for sweep")
        out = output_dir(config, args)
        results = sweep(
            config.params,
            config.sweep_param,
            config.sweep_values,
            config.param,
            config.param_range,
            study=config.study,
            grid=Grid(config.grid_nodes),
            settings=config.continuation,
            workers=config.workers,
        )

        overlay = []
        for i, result in enumerate(results):
            if not result.ok:
                continue
            name = f"{config.sweep_param}={result.value:g}"
            write_diagram(out / name, result.diagram, config.projection)
            first = next(
                (
                    branch
                    for branch in result.diagram.nontrivial
                    if branch.provenance == Provenance.PRIMARY
                ),
                None,
            )
            if first is None:
                logger.info(f"{name}: no primary branch")
                continue
            series = series_from_branch(first, config.projection)
            series.label, series.color = name, branch_color(i + 1)
            overlay.append(series)

        if not any(result.ok for result in results):
            logger.error("No sweep value produced a diagram")
            return ExitCode.NO_RESULT

        svg = render_diagram(
            overlay,
            xlabel=config.param,
            ylabel=AXIS_LABELS[config.projection],
            title=f"first branch for varying {config.sweep_param}",
        )
        (out / "overlay.svg").write_text(svg, encoding="utf-8")
        logger.success(f"Sweep over {len(results)} values written to {out}")
        return ExitCode.OK
