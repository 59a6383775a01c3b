import argparse
import sys

from components.cli import registry
from components.cli.commands.plugin import ExitCode
from components.cli.config import PRESETS, load_config
from components.exceptions import ConfigError
from components.logs import logger


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skt",
        description="Steady states and bifurcations of the 1D SKT system",
    )
    parser.add_argument(
        "--config", metavar="PATH", help="key = value run configuration"
    )
    parser.add_argument("--preset", type=int, choices=PRESETS)
    parser.add_argument("--out", metavar="DIR", help="output directory")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        metavar="KEY=VALUE",
        help="override a configuration key (repeatable)",
    )
    parser.add_argument("--allow-negative-d", action="store_true")
    parser.add_argument(
        "--strict", action="store_true", help="exit 4 when a simulation does not settle"
    )
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    commands = parser.add_subparsers(dest="command", required=True)
    for plugin in registry.all():
        sub = commands.add_parser(plugin.name, help=plugin.help)
        plugin.add_arguments(sub)
    return parser


def flags_of(args: argparse.Namespace) -> dict[str, str]:
    flags = {}
    if args.out:
        flags["out"] = args.out
    if args.allow_negative_d:
        flags["allow_negative_d"] = "true"
    if args.strict:
        flags["strict"] = "true"
    return flags


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logger.set_level("DEBUG")
    plugin = registry.get(args.command)

    config = None
    if plugin.requires_config or args.config or args.preset:
        try:
            config = load_config(
                args.preset, args.config, args.overrides, flags_of(args)
            )
        except ConfigError as exc:
            logger.error(str(exc))
            return ExitCode.INVALID_INPUT

    return plugin.dispatch(config, args)


if __name__ == "__main__":
    sys.exit(main())
