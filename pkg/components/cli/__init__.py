from components.cli.commands import CommandRegistry
from components.cli.commands.analyze import AnalyzeCommand
from components.cli.commands.continuation import ContinueCommand, SweepCommand
from components.cli.commands.plot import PlotCommand
from components.cli.commands.simulate import SimulateCommand

registry = CommandRegistry()
registry.register(AnalyzeCommand())
registry.register(ContinueCommand())
registry.register(SweepCommand())
registry.register(SimulateCommand())
registry.register(PlotCommand())
