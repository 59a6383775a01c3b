import argparse
import time
from abc import ABC, abstractmethod
from contextlib import contextmanager
from enum import IntEnum
from pathlib import Path

from components.exceptions import ConfigError, PlotInputError
from components.logs import logger
from components.models.config import RunConfig


class ExitCode(IntEnum):
    OK = 0
    INVALID_INPUT = 2
    NO_RESULT = 3
    NOT_CONVERGED = 4


class CommandPlugin(ABC):
    name: str
    help: str = ""
    requires_config: bool = True

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def dispatch(self, config: RunConfig | None, args: argparse.Namespace) -> int:
        with self.wrapper():
            try:
                return int(self.handle(config, args))
            except (ConfigError, PlotInputError) as exc:
                logger.error(str(exc))
                return ExitCode.INVALID_INPUT

    @abstractmethod
    def handle(self, config: RunConfig | None, args: argparse.Namespace) -> int:
        pass

    @contextmanager
    def wrapper(self):
        start = time.monotonic()
        try:
            yield
        except Exception as e:
            logger.error(f"{self.name} failed")
            logger.critical(e, exc_info=True)
            raise
        finally:
            duration = time.monotonic() - start
            logger.debug(f"{self.name} handled in {duration:.4f}s")


def output_dir(config: RunConfig | None, args: argparse.Namespace) -> Path:
    out = Path(config.out if config is not None else args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    return out
