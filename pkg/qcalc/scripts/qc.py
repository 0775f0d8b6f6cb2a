"""
The ``qc`` command-line tool: inspect system-definition files, check and
evaluate quantity expressions, convert between units, reduce to natural
units and compare systems up to isomorphism.

Exit codes are 0 on success, 1 for dimensional errors, 2 for parse
errors, 3 for algebraic rejections (torsion, conflicting constants) and
4 for internal consistency failures.
"""

import logging
import sys
from pathlib import Path

from pydantic import BaseModel
from pydantic_settings import CliApp, CliPositionalArg, CliSubCommand

from qcalc.errors import QuantityCalculusError
from qcalc.settings import settings

logger = logging.getLogger("qcalc")

COLORS = {
    logging.ERROR: "\033[31m",
    logging.CRITICAL: "\033[31m",
    logging.WARNING: "\033[33m",
}
RESET = "\033[0m"


class LevelFormatter(logging.Formatter):
    """
    ``<level>: <message>``, with the level coloured when ``color`` is set.
    """

    def __init__(self, color: bool = False):
        super().__init__()
        self.color = color

    def format(self, record: logging.LogRecord) -> str:
        level = record.levelname.lower()

        if self.color and record.levelno in COLORS:
            level = f"{COLORS[record.levelno]}{level}{RESET}"

        return f"{level}: {record.getMessage()}"


_handler: logging.StreamHandler | None = None


def configure_logging():
    global _handler

    if _handler is None:
        _handler = logging.StreamHandler(sys.stderr)
        _handler.setFormatter(LevelFormatter(color=settings.color))
        logger.addHandler(_handler)
    else:
        _handler.setStream(sys.stderr)


def load_system(filename: Path):
    from qcalc.system.parser import parse_system

    return parse_system(filename.read_text())


class InfoCommand(BaseModel):
    """
    Show a system's name, rank, dimensions, units and constants.
    """

    filename: CliPositionalArg[Path]
    "The system-definition file"

    def cli_cmd(self) -> None:
        from qcalc.system.report import info_lines

        print("\n".join(info_lines(load_system(self.filename))))


class CheckCommand(BaseModel):
    """
    Print the dimension of a quantity expression.
    """

    filename: CliPositionalArg[Path]
    "The system-definition file"
    expression: CliPositionalArg[str]
    "The quantity expression to check"

    def cli_cmd(self) -> None:
        from qcalc.system.parser import parse_quantity

        print(parse_quantity(self.expression, load_system(self.filename)).dimension)


class EvalCommand(BaseModel):
    """
    Evaluate a quantity expression in the system's coherent units.
    """

    filename: CliPositionalArg[Path]
    "The system-definition file"
    expression: CliPositionalArg[str]
    "The quantity expression to evaluate"

    def cli_cmd(self) -> None:
        from qcalc.system.parser import parse_quantity
        from qcalc.system.report import render_quantity

        print(render_quantity(parse_quantity(self.expression, load_system(self.filename))))


class ConvertCommand(BaseModel):
    """
    Express a quantity as an exact multiple of a target unit.
    """

    filename: CliPositionalArg[Path]
    "The system-definition file"
    expression: CliPositionalArg[str]
    "The quantity expression to convert"
    to: str
    "The unit expression to convert to"

    def cli_cmd(self) -> None:
        from qcalc.algebra.units import convert
        from qcalc.system.parser import parse_expression
        from qcalc.system.report import render_decimal

        system = load_system(self.filename)
        source = parse_expression(self.expression)
        target = parse_expression(self.to)

        factor = convert(
            source.evaluate(system.space, system.lookup),
            target.evaluate(system.space, system.lookup),
        )

        line = f"{source} = {factor} [{target}]"

        if factor.denominator != 1:
            line += f" (~{render_decimal(factor)})"

        print(line)


class ReduceCommand(BaseModel):
    """
    Reduce a system to natural units by setting the listed constants to 1.
    """

    filename: CliPositionalArg[Path]
    "The system-definition file"
    kill: str = ""
    "Comma-separated constants to set to 1"
    out: Path | None = None
    "Write the reduced system here instead of printing it"

    def cli_cmd(self) -> None:
        from qcalc.system.reduction import reduce_system
        from qcalc.system.report import reduction_lines

        names = [name.strip() for name in self.kill.split(",") if name.strip()]
        reduction = reduce_system(load_system(self.filename), names)

        print("\n".join(reduction_lines(reduction)))

        if self.out is not None:
            self.out.write_text(reduction.system.to_text())
            print(f"Wrote {self.out}")
        else:
            print()
            print(reduction.system.to_text(), end="")


class IsoCommand(BaseModel):
    """
    Decide whether two systems' spaces of quantities are isomorphic.
    """

    first: CliPositionalArg[Path]
    "The first system-definition file"
    second: CliPositionalArg[Path]
    "The second system-definition file"

    def cli_cmd(self) -> None:
        from qcalc.algebra.homomorphisms import classify
        from qcalc.system.report import classification_lines

        first, second = load_system(self.first), load_system(self.second)
        result = classify(first.space, second.space, first.section, second.section)

        print("\n".join(classification_lines(result)))


class QcCommand(BaseModel):
    """
    Exact quantity calculus on system-definition files.
    """

    info: CliSubCommand[InfoCommand]
    check: CliSubCommand[CheckCommand]
    eval: CliSubCommand[EvalCommand]
    convert: CliSubCommand[ConvertCommand]
    reduce: CliSubCommand[ReduceCommand]
    iso: CliSubCommand[IsoCommand]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


def main(argv: list[str] | None = None) -> None:
    configure_logging()

    try:
        CliApp.run(QcCommand, cli_args=sys.argv[1:] if argv is None else argv)
    except QuantityCalculusError as error:
        logger.error(str(error))
        raise SystemExit(error.exit_code)
    except OSError as error:
        logger.error(f"cannot read {error.filename}: {error.strerror}")
        raise SystemExit(2)
