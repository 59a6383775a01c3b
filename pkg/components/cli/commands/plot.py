import argparse
import csv
import re
from pathlib import Path

from components.cli.plots import (
    branch_color,
    render_diagram,
    render_profile,
    series_from_rows,
)
from components.cli.storage import read_archive
from components.cli.writers import BRANCH_COLUMNS, STATE_COLUMNS, read_table
from components.exceptions import PlotInputError
from components.logs import logger
from components.models.config import PROJECTIONS
from components.models.states import Grid

from .continuation import AXIS_LABELS
from .plugin import CommandPlugin, ExitCode, output_dir

ARCHIVE_SUFFIXES = (".msgpack", ".json")
BRANCH_FILE = re.compile(r"branch_(\d+)$")


def _header(path: Path) -> list[str]:
    try:
        with open(path, encoding="utf-8", newline="") as f:
            return next(csv.reader(f), [])
    except OSError as exc:
        raise PlotInputError(f"cannot read '{path}': {exc.strerror}")


def _archive_profile(path: Path, index: int, uv_overlay: bool) -> str:
    try:
        archive = read_archive(path)
        point = archive["points"][index]
    except IndexError:
        raise PlotInputError(f"'{path}' has no point {index}")
    except Exception as exc:
        raise PlotInputError(f"cannot decode archive '{path}': {exc}")
    grid = Grid(archive["grid_nodes"])
    data = point["data"]
    return render_profile(
        grid.x,
        data[0::2],
        data[1::2],
        title=f"branch {archive['branch_id']}, {archive['param']}={point['value']:.6g}",
        uv_overlay=uv_overlay,
    )


class PlotCommand(CommandPlugin):
    name = "plot"
    help = "render branch CSVs as a diagram, state CSVs or archives as profiles"
    requires_config = False

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("files", nargs="+", type=Path)
        parser.add_argument(
            "--projection", choices=PROJECTIONS, default="norm_u"
        )
        parser.add_argument("--uv-overlay", action="store_true")
        parser.add_argument(
            "--point",
            type=int,
            default=-1,
            help="point index for state archives (default: last)",
        )

    def handle(self, config, args) -> int:
        out = output_dir(config, args)
        projection = config.projection if config else args.projection
        uv_overlay = args.uv_overlay or bool(config and config.uv_overlay)

        branches = []
        for path in args.files:
            if path.suffix in ARCHIVE_SUFFIXES:
                target = out / f"{path.stem}_point{args.point}.svg"
                target.write_text(
                    _archive_profile(path, args.point, uv_overlay), encoding="utf-8"
                )
                logger.success(f"Profile written to {target}")
                continue
            header = _header(path)
            if set(STATE_COLUMNS) <= set(header):
                rows = read_table(path, STATE_COLUMNS)
                if not rows:
                    raise PlotInputError(f"'{path}' holds no rows", 2)
                target = out / f"{path.stem}.svg"
                target.write_text(
                    render_profile(
                        [row["x"] for row in rows],
                        [row["u"] for row in rows],
                        [row["v"] for row in rows],
                        title=path.stem,
                        uv_overlay=uv_overlay,
                    ),
                    encoding="utf-8",
                )
                logger.success(f"Profile written to {target}")
            else:
                rows = read_table(path, BRANCH_COLUMNS)
                match = BRANCH_FILE.match(path.stem)
                color = branch_color(int(match[1]) if match else len(branches) + 1)
                branches.append(series_from_rows(rows, path.stem, color, projection))

        if branches:
            target = out / "diagram.svg"
            svg = render_diagram(
                branches, xlabel="param", ylabel=AXIS_LABELS[projection]
            )
            target.write_text(svg, encoding="utf-8")
            logger.success(f"Diagram of {len(branches)} branches written to {target}")
        return ExitCode.OK
