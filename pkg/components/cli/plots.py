"""Template rendering: bifurcation diagrams, solution profiles, text reports.

Diagram lines are drawn thick where the stability index is 0 and thin
otherwise; events get a circle (branch point), a cross (fold) or a diamond
(Hopf).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from jinja2 import Environment, FileSystemLoader, StrictUndefined, select_autoescape

from components.exceptions import PlotInputError
from components.models.branches import Branch, EventKind
from config.defaults import (
    BRANCH_COLORS,
    HOMOGENEOUS_COLOR,
    SVG_HEIGHT,
    SVG_WIDTH,
)

STABLE_WIDTH = 2.0
UNSTABLE_WIDTH = 0.75
MARGIN = {"left": 80, "right": 200, "top": 40, "bottom": 60}
GLYPHS = {
    EventKind.BRANCH_POINT.value: "circle",
    EventKind.FOLD.value: "cross",
    EventKind.HOPF.value: "diamond",
}
PROFILE_COLORS = {"u": "#000000", "v": "#1f4fd8", "uv": "#8c8c8c"}

env = Environment(
    loader=FileSystemLoader(Path(__file__).parent / "templates"),
    autoescape=select_autoescape(enabled_extensions=("svg.j2",)),
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


def exact(value) -> str:
    """Rationals as ``p/q (decimal)``, everything else as a short decimal."""
    match value:
        case None:
            return "-"
        case bool():
            return "yes" if value else "no"
        case Fraction() if value.denominator == 1:
            return str(value.numerator)
        case Fraction():
            return f"{value} ({float(value):.6g})"
        case int():
            return str(value)
    return f"{float(value):.6g}"


env.filters["exact"] = exact


def branch_color(branch_id: int) -> str:
    if branch_id == 0:
        return HOMOGENEOUS_COLOR
    return BRANCH_COLORS[(branch_id - 1) % len(BRANCH_COLORS)]


@dataclass
class Series:
    label: str
    color: str
    x: list[float]
    y: list[float]
    stability: list[int]
    flags: list[str] = field(default_factory=list)


def series_from_branch(branch: Branch, projection: str = "norm_u") -> Series:
    return Series(
        label=f"branch {branch.id} ({branch.label})",
        color=branch_color(branch.id),
        x=[point.value for point in branch.points],
        y=[getattr(point, projection) for point in branch.points],
        stability=[point.stability_index for point in branch.points],
        flags=[point.event_flag for point in branch.points],
    )


def series_from_rows(
    rows: list[dict], label: str, color: str, projection: str = "norm_u"
) -> Series:
    if any(row[projection] is None or row["param"] is None for row in rows):
        raise PlotInputError(f"empty '{projection}' or 'param' value")
    return Series(
        label=label,
        color=color,
        x=[row["param"] for row in rows],
        y=[row[projection] for row in rows],
        stability=[int(row["stability_index"] or 0) for row in rows],
        flags=[row.get("event_flag", "") or "" for row in rows],
    )


class _Axis:
    def __init__(self, values: list[float], start: float, stop: float):
        lo, hi = (min(values), max(values)) if values else (0.0, 1.0)
        if hi - lo <= 1e-12 * max(1.0, abs(hi)):
            lo, hi = lo - 0.5 * max(abs(lo), 1.0), hi + 0.5 * max(abs(hi), 1.0)
        pad = 0.05 * (hi - lo)
        self.lo, self.hi = lo - pad, hi + pad
        self.start, self.stop = start, stop

    def __call__(self, value: float) -> float:
        return self.start + (value - self.lo) / (self.hi - self.lo) * (
            self.stop - self.start
        )

    def ticks(self, count: int = 5) -> list[tuple[float, str]]:
        return [
            (self(value), f"{value:.4g}")
            for value in np.linspace(self.lo, self.hi, count)
        ]


def _segments(series: Series, sx: _Axis, sy: _Axis) -> list[dict]:
    """Polylines split where stability changes; each shares its end point."""
    segments, current, stable = [], [], None
    for x, y, index in zip(series.x, series.y, series.stability):
        point = f"{sx(x):.3f},{sy(y):.3f}"
        now = index == 0
        if stable is not None and now != stable:
            segments.append({"points": " ".join(current), "stable": stable})
            current = current[-1:]
        current.append(point)
        stable = now
    if len(current) > 1 or (current and not segments):
        segments.append({"points": " ".join(current), "stable": stable})
    for segment in segments:
        segment["width"] = STABLE_WIDTH if segment["stable"] else UNSTABLE_WIDTH
    return segments


def _glyphs(series: Series, sx: _Axis, sy: _Axis) -> list[dict]:
    return [
        {"shape": GLYPHS[flag], "x": f"{sx(x):.3f}", "y": f"{sy(y):.3f}"}
        for x, y, flag in zip(series.x, series.y, series.flags)
        if flag in GLYPHS
    ]


def render_diagram(
    series: list[Series],
    xlabel: str,
    ylabel: str,
    title: str = "",
    width: int = SVG_WIDTH,
    height: int = SVG_HEIGHT,
) -> str:
    sx = _Axis(
        [x for s in series for x in s.x], MARGIN["left"], width - MARGIN["right"]
    )
    sy = _Axis(
        [y for s in series for y in s.y], height - MARGIN["bottom"], MARGIN["top"]
    )
    curves = [
        {
            "label": s.label,
            "color": s.color,
            "segments": _segments(s, sx, sy),
            "glyphs": _glyphs(s, sx, sy),
        }
        for s in series
    ]
    return env.get_template("diagram.svg.j2").render(
        width=width,
        height=height,
        margin=MARGIN,
        title=title,
        xlabel=xlabel,
        ylabel=ylabel,
        xticks=sx.ticks(),
        yticks=sy.ticks(),
        curves=curves,
        stable_width=STABLE_WIDTH,
        unstable_width=UNSTABLE_WIDTH,
    )


def uv_spread(u: np.ndarray, v: np.ndarray) -> float:
    product = np.asarray(u) * np.asarray(v)
    return float(np.max(product) - np.min(product))


def render_profile(
    x: np.ndarray,
    u: np.ndarray,
    v: np.ndarray,
    title: str = "",
    uv_overlay: bool = False,
    width: int = SVG_WIDTH,
    height: int = SVG_HEIGHT,
) -> str:
    x, u, v = (np.asarray(a, dtype=float) for a in (x, u, v))
    lines = {"u": u, "v": v}
    caption = ""
    if uv_overlay:
        lines["uv"] = u * v
        caption = f"uv spread (max - min) = {uv_spread(u, v):.6g}"

    sx = _Axis(list(x), MARGIN["left"], width - MARGIN["right"])
    sy = _Axis(
        [float(y) for y in np.concatenate(list(lines.values()))],
        height - MARGIN["bottom"],
        MARGIN["top"],
    )
    curves = [
        {
            "label": name,
            "color": PROFILE_COLORS[name],
            "dashed": name == "uv",
            "points": " ".join(f"{sx(a):.3f},{sy(b):.3f}" for a, b in zip(x, y)),
        }
        for name, y in lines.items()
    ]
    return env.get_template("profile.svg.j2").render(
        width=width,
        height=height,
        margin=MARGIN,
        title=title,
        caption=caption,
        xticks=sx.ticks(),
        yticks=sy.ticks(),
        curves=curves,
    )
