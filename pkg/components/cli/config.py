"""Plain-text run configuration.

One ``key = value`` per line, ``#`` starts a comment. Layers are merged in
the order preset < config file < ``--set`` overrides < command-line flags.
"""

from dataclasses import dataclass
from pathlib import Path

from components.exceptions import ConfigError
from components.logs import logger
from components.models.config import RunConfig
from components.models.helpers import to_bool
from components.models.params import PARAMETER_NAMES, ModelParams
from components.models.settings import (
    ContinuationSettings,
    EvolveSettings,
    NewtonSettings,
)

PRESET_DIR = Path(__file__).resolve().parents[2] / "config" / "presets"
PRESETS = (1, 2, 3, 4)

REQUIRED_KEYS = ("r1", "r2", "a1", "a2", "b1", "b2")
MODEL_KEYS = {name: name for name in PARAMETER_NAMES} | {"d": "d"}
RUN_KEYS = {
    "N": "grid_nodes",
    "param": "param",
    "param_min": "param_min",
    "param_max": "param_max",
    "k_min": "k_min",
    "k_max": "k_max",
    "out": "out",
    "seed": "seed",
    "sweep_param": "sweep_param",
    "sweep_values": "sweep_values",
    "study": "study",
    "workers": "workers",
    "strict": "strict",
    "projection": "projection",
    "init": "init",
    "init_mode": "init_mode",
    "init_amplitude": "init_amplitude",
    "init_file": "init_file",
    "uv_overlay": "uv_overlay",
}
NEWTON_KEYS = {"newton_tol": "tol_residual", "newton_max_iter": "max_iter"}
CONTINUATION_KEYS = {
    "ds_initial": "ds_initial",
    "ds_min": "ds_min",
    "ds_max": "ds_max",
    "max_steps": "max_steps",
    "primary_branches": "primary_branches",
    "secondary_depth": "secondary_depth",
    "switch_epsilon": "switch_epsilon",
    "fold_threshold": "fold_threshold",
    "allow_negative_d": "allow_negative_d",
}
EVOLVE_KEYS = {
    "dt_initial": "dt_initial",
    "dt_min": "dt_min",
    "dt_max": "dt_max",
    "steady_tol": "steady_tol",
    "max_time_steps": "max_steps",
}
KNOWN_KEYS = (
    MODEL_KEYS.keys()
    | RUN_KEYS.keys()
    | NEWTON_KEYS.keys()
    | CONTINUATION_KEYS.keys()
    | EVOLVE_KEYS.keys()
)


@dataclass
class Entry:
    value: str
    line_no: int | None = None
    source: str = ""


def parse_text(text: str, source: str = "<config>") -> dict[str, Entry]:
    entries: dict[str, Entry] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line_no)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key '{key}'", line_no)
        if not value:
            raise ConfigError(f"missing value for '{key}'", line_no)
        if key in entries:
            raise ConfigError(f"duplicate key '{key}'", line_no)
        entries[key] = Entry(value, line_no, source)
    return entries


def parse_file(path: str | Path) -> dict[str, Entry]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config '{path}': {exc.strerror}")
    return parse_text(text, source=str(path))


def preset_entries(number: int) -> dict[str, Entry]:
    if number not in PRESETS:
        raise ConfigError(f"unknown preset {number}, choose one of {PRESETS}")
    return parse_file(PRESET_DIR / f"preset{number}.conf")


def parse_overrides(items: list[str] | None) -> dict[str, Entry]:
    entries: dict[str, Entry] = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, value = (part.strip() for part in item.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key '{key}' in --set")
        entries[key] = Entry(value, None, "--set")
    return entries


def _line_of(entries: dict[str, Entry], field: str) -> int | None:
    for table in (MODEL_KEYS, RUN_KEYS, NEWTON_KEYS, CONTINUATION_KEYS, EVOLVE_KEYS):
        for key, target in table.items():
            if target == field and key in entries:
                return entries[key].line_no
    if field in ("d1", "d2") and "d" in entries:
        return entries["d"].line_no
    return None


def _section(entries: dict[str, Entry], table: dict[str, str]) -> dict[str, str]:
    return {
        target: entries[key].value for key, target in table.items() if key in entries
    }


def build_config(*layers: dict[str, Entry]) -> RunConfig:
    entries: dict[str, Entry] = {}
    for layer in layers:
        entries.update(layer)

    missing = [key for key in REQUIRED_KEYS if key not in entries]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")
    tied = {"d", "d1", "d2"} if entries.keys() & {"d", "d1", "d2"} else set()
    defaulted = sorted(KNOWN_KEYS - entries.keys() - tied)
    if defaulted:
        logger.info(f"Using defaults for: {', '.join(defaulted)}")

    model = _section(entries, MODEL_KEYS)
    if "d" in model:
        model["d1"] = model["d2"] = model.pop("d")
    continuation = _section(entries, CONTINUATION_KEYS)
    try:
        newton = NewtonSettings(**_section(entries, NEWTON_KEYS))
        allow_negative_d = to_bool(continuation.get("allow_negative_d", False))
        params = ModelParams(**model, allow_negative_d=allow_negative_d)
        return RunConfig(
            params=params,
            newton=newton,
            continuation=ContinuationSettings(**continuation, newton=newton),
            evolve=EvolveSettings(**_section(entries, EVOLVE_KEYS), newton=newton),
            **_section(entries, RUN_KEYS),
        )
    except (ValueError, TypeError) as exc:
        field, message = exc.args if len(exc.args) == 2 else (None, str(exc))
        raise ConfigError(message, _line_of(entries, field)) from exc


def load_config(
    preset: int | None = None,
    path: str | None = None,
    overrides: list[str] | None = None,
    flags: dict[str, str] | None = None,
) -> RunConfig:
    layers = []
    if preset is not None:
        layers.append(preset_entries(preset))
    if path is not None:
        layers.append(parse_file(path))
    if not layers:
        raise ConfigError("either --preset or --config is required")
    layers.append(parse_overrides(overrides))
    flags = flags or {}
    layers.append(
        {key: Entry(str(value), None, "flag") for key, value in flags.items()}
    )
    return build_config(*layers)
