import csv
import math
from fractions import Fraction
from pathlib import Path

from components.exceptions import PlotInputError
from components.models.branches import Branch, Event
from components.models.reports import ModeReport
from components.models.states import StateVector
from config.defaults import CSV_FLOAT_FORMAT

BRANCH_COLUMNS = [
    "param",
    "norm_u",
    "norm_v",
    "u0",
    "v0",
    "stability_index",
    "min_u",
    "min_v",
    "event_flag",
]
EVENT_COLUMNS = ["kind", "param", "branch_id", "mode_hint"]
MODE_COLUMNS = ["k", "lambda", "A", "B", "C", "bifurcates", "d_bif", "d_bif_limit"]
STATE_COLUMNS = ["x", "u", "v"]
TRAJECTORY_COLUMNS = ["t", "norm_u", "norm_v"]
SPECTRUM_COLUMNS = ["re", "im"]


def fmt(value) -> str:
    match value:
        case None:
            return ""
        case bool():
            return "true" if value else "false"
        case int():
            return str(value)
        case float() | Fraction():
            return CSV_FLOAT_FORMAT.format(float(value))
    return str(value)


def write_rows(path: Path, columns: list[str], rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(value) for value in row])
    return path


def write_branch(path: Path, branch: Branch) -> Path:
    return write_rows(
        path,
        BRANCH_COLUMNS,
        (
            (
                point.value,
                point.norm_u,
                point.norm_v,
                point.u0,
                point.v0,
                point.stability_index,
                point.min_u,
                point.min_v,
                point.event_flag,
            )
            for point in branch.points
        ),
    )


def write_events(path: Path, events: list[Event]) -> Path:
    return write_rows(
        path,
        EVENT_COLUMNS,
        ((e.kind.value, e.value, e.branch_id, e.mode_hint) for e in events),
    )


def write_modes(path: Path, reports: list[ModeReport]) -> Path:
    return write_rows(
        path,
        MODE_COLUMNS,
        (
            (r.k, r.lam, r.A, r.B, r.C, r.bifurcates, r.d_bif, r.d_bif_limit)
            for r in reports
        ),
    )


def write_state(path: Path, state: StateVector) -> Path:
    return write_rows(
        path, STATE_COLUMNS, zip(map(float, state.grid.x), state.u, state.v)
    )


def write_trajectory(path: Path, trajectory) -> Path:
    return write_rows(
        path,
        TRAJECTORY_COLUMNS,
        ((point.t, point.norm_u, point.norm_v) for point in trajectory),
    )


def write_spectrum(path: Path, eigenvalues) -> Path:
    ordered = sorted(eigenvalues, key=lambda z: (-z.real, -z.imag))
    return write_rows(path, SPECTRUM_COLUMNS, ((z.real, z.imag) for z in ordered))


def read_table(path: Path, columns: list[str]) -> list[dict]:
    """Read a CSV written by this module; numeric columns come back as floats."""
    rows = []
    try:
        f = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise PlotInputError(f"cannot read '{path}': {exc.strerror}")
    with f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise PlotInputError(f"'{path}' is empty", 1)
        missing = [column for column in columns if column not in header]
        if missing:
            raise PlotInputError(f"missing columns: {', '.join(missing)}", 1)
        for line_no, record in enumerate(reader, start=2):
            if len(record) != len(header):
                raise PlotInputError(
                    f"expected {len(header)} fields, got {len(record)}", line_no
                )
            row = {}
            for name, raw in zip(header, record):
                if name in ("event_flag", "kind"):
                    row[name] = raw
                    continue
                try:
                    row[name] = float(raw) if raw else None
                except ValueError:
                    raise PlotInputError(f"bad number {raw!r} in '{name}'", line_no)
                if row[name] is not None and not math.isfinite(row[name]):
                    raise PlotInputError(f"non-finite value in '{name}'", line_no)
            rows.append(row)
    return rows
