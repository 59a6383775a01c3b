from fractions import Fraction

import pytest

from components.cli.config import (
    build_config,
    load_config,
    parse_overrides,
    parse_text,
    preset_entries,
)
from components.exceptions import ConfigError

MODEL = """\
# weak competition
r1 = 5
r2 = 2
a1 = 3
a2 = 3
b1 = 1
b2 = 1
"""


def write(tmp_path, text):
    path = tmp_path / "run.conf"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_comments_and_blank_lines_are_ignored():
    entries = parse_text("\n# only a comment\nr1 = 15/2  # trailing\n\n")
    assert list(entries) == ["r1"]
    assert entries["r1"].value == "15/2"
    assert entries["r1"].line_no == 3


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("r1 = 5\nr2 2\n", 2, "expected 'key = value'"),
        ("r1 = 5\nr1 = 6\n", 2, "duplicate key 'r1'"),
        ("r1 = 5\n\nwidth = 3\n", 3, "unknown key 'width'"),
        ("r1 =\n", 1, "missing value"),
    ],
)
def test_parse_errors_name_the_line(text, line, fragment):
    with pytest.raises(ConfigError) as info:
        parse_text(text)
    assert info.value.line_no == line
    assert str(info.value).startswith(f"line {line}:")
    assert fragment in str(info.value)


def test_values_stay_exact(tmp_path):
    config = load_config(path=write(tmp_path, MODEL + "d12 = 15/2\n"))
    assert config.params.d12 == Fraction(15, 2)
    assert config.params.is_exact


def test_standard_diffusion_key_sets_both(tmp_path):
    config = load_config(path=write(tmp_path, MODEL + "d = 1/40\n"))
    assert config.params.d1 == config.params.d2 == Fraction(1, 40)


def test_invalid_value_reports_its_line(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_config(path=write(tmp_path, MODEL + "N = 2\n"))
    assert info.value.line_no == 8
    with pytest.raises(ConfigError) as info:
        load_config(path=write(tmp_path, MODEL + "d12 = -3\n"))
    assert info.value.line_no == 8
    with pytest.raises(ConfigError) as info:
        load_config(path=write(tmp_path, MODEL + "study = everything\n"))
    assert info.value.line_no == 8


def test_missing_required_keys(tmp_path):
    with pytest.raises(ConfigError) as info:
        load_config(path=write(tmp_path, "r1 = 5\nr2 = 2\n"))
    assert "a1" in str(info.value)
    assert "b2" in str(info.value)


def test_a_source_is_required():
    with pytest.raises(ConfigError):
        load_config()


def test_unreadable_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(path=str(tmp_path / "absent.conf"))


def test_presets_load():
    for number in (1, 2, 3, 4):
        config = load_config(preset=number)
        assert config.param == "d"
    assert load_config(preset=3).params.r1 == Fraction(15, 2)
    with pytest.raises(ConfigError):
        preset_entries(7)


def test_layers_override_in_order(tmp_path):
    config = load_config(
        preset=1,
        path=write(tmp_path, "d12 = 10\nN = 51\n"),
        overrides=["d12=100", "workers=2"],
        flags={"out": str(tmp_path / "result"), "strict": "true"},
    )
    assert config.params.d12 == 100
    assert config.params.r1 == 5
    assert config.grid_nodes == 51
    assert config.workers == 2
    assert config.out == str(tmp_path / "result")
    assert config.strict


def test_overrides_are_validated():
    with pytest.raises(ConfigError):
        parse_overrides(["d12"])
    with pytest.raises(ConfigError):
        parse_overrides(["colour=red"])
    assert parse_overrides(["d21 = 1/2"])["d21"].value == "1/2"


def test_numeric_settings_reach_every_solver(tmp_path):
    config = load_config(
        path=write(
            tmp_path,
            MODEL + "newton_tol = 1e-9\nmax_steps = 12\nmax_time_steps = 7\n",
        )
    )
    assert config.newton.tol_residual == 1e-9
    assert config.continuation.newton.tol_residual == 1e-9
    assert config.evolve.newton.tol_residual == 1e-9
    assert config.continuation.max_steps == 12
    assert config.evolve.max_steps == 7


def test_negative_diffusion_needs_the_flag(tmp_path):
    text = MODEL + "d = -1/100\n"
    with pytest.raises(ConfigError):
        load_config(path=write(tmp_path, text))
    config = load_config(
        path=write(tmp_path, text), flags={"allow_negative_d": "true"}
    )
    assert config.params.d == Fraction(-1, 100)
    assert config.continuation.allow_negative_d


def test_sweep_values_parse():
    entries = parse_text(MODEL + "sweep_param = d12\nsweep_values = 3, 10, 100\n")
    config = build_config(entries)
    assert config.sweep_values == [3.0, 10.0, 100.0]
    assert config.sweep_param == "d12"
