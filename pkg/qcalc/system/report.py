"""
Text reports printed by the ``qc`` commands.
"""

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from ..algebra.dimensions import Dimension
from ..algebra.homomorphisms import ClassificationResult, Isomorphic
from ..algebra.quantities import Quantity
from .definition import SystemDef
from .reduction import Reduction

SIGNIFICANT_DIGITS = 15


def render_decimal(value: Fraction) -> str:
    "Fixed-point rendering with 15 significant digits, rounding half to even."

    with localcontext() as context:
        context.prec = SIGNIFICANT_DIGITS
        context.rounding = ROUND_HALF_EVEN
        decimal = Decimal(value.numerator) / Decimal(value.denominator)

    return format(decimal, "f")


def render_value(value: Fraction) -> str:
    "The exact value, followed by a decimal approximation unless it is an integer."
    if value.denominator == 1:
        return str(value)
    return f"{value} (~{render_decimal(value)})"


def render_quantity(q: Quantity) -> str:
    if q.dimension.is_identity:
        return render_value(q.value)

    if q.value.denominator == 1:
        return f"{q.value} {q.dimension}"

    return f"{q.value} {q.dimension} (~{render_decimal(q.value)})"


def render_dimension_list(generators) -> str:
    return " ".join(generators) if generators else "(none)"


def info_lines(system: SystemDef) -> list[str]:
    lines = [
        f"system {system.name}",
        f"rank {system.rank}",
        f"dimensions {render_dimension_list(system.space.basis.generators)}",
        "units",
    ]

    for unit in system.units:
        if unit.base:
            lines.append(f"  {unit.name}: {unit.dimension} (base)")
        else:
            lines.append(f"  {unit.name}: {unit.dimension} = {render_value(unit.value)}")

    if not system.units:
        lines.append("  (none)")

    lines.append("constants")

    for constant in system.constants:
        q = constant.quantity
        lines.append(f"  {constant.name}: {q.dimension} = {render_value(q.value)}")

    if not system.constants:
        lines.append("  (none)")

    return lines


def reduction_lines(reduction: Reduction) -> list[str]:
    killed = ", ".join(reduction.killed) if reduction.killed else "(nothing)"
    lines = [
        f"quotient of {reduction.source.name} by {killed}",
        f"rank {reduction.source.rank} -> {reduction.system.rank}",
        "dimension classes",
    ]

    classes: list[tuple[str, Dimension]] = reduction.classes()
    lines += [f"  {name} -> {dimension}" for name, dimension in classes]

    if not classes:
        lines.append("  (none)")

    lines.append("constants")
    lines += [
        f"  {name} -> {render_quantity(q)}" for name, q in reduction.reduced_constants()
    ]

    if not reduction.source.constants:
        lines.append("  (none)")

    return lines


def classification_lines(result: ClassificationResult) -> list[str]:
    if isinstance(result, Isomorphic):
        return [f"isomorphic (rank {result.witness.source.rank})"] + [
            f"  {source} -> {target}" for source, target in result.correspondence
        ]

    return [f"not isomorphic (rank {result.source_rank} vs rank {result.target_rank})"]
