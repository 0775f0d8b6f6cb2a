"""
Natural-unit reduction of a whole system: quotient by the subsection that
sets the chosen constants to 1, and rewrite every unit and constant in the
quotient system.
"""

import logging
from collections.abc import Sequence
from fractions import Fraction

from pydantic import BaseModel, ConfigDict

from ..algebra.constructions import QuotientSpace, compound_name, natural_units, unique_names
from ..algebra.dimensions import Dimension
from ..algebra.quantities import Quantity
from .definition import ConstantDef, SystemDef, UnitDef
from .expressions import Name, Negate, Node, Number, Power, Product

logger = logging.getLogger(__name__)


class Reduction(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: SystemDef
    killed: tuple[str, ...]
    "Constants set to 1, in the order given."
    quotient: QuotientSpace
    system: SystemDef
    "The quotient written as a system of its own."

    def classes(self) -> list[tuple[str, Dimension]]:
        "Each source generator with its dimension class in the quotient."
        basis = self.source.space.basis
        return [
            (name, self.quotient.dimension_class(basis.generator(name)))
            for name in basis.generators
        ]

    def reduced_constants(self) -> list[tuple[str, Quantity]]:
        return [(constant.name, constant.quantity) for constant in self.system.constants]


def quantity_expression(q: Quantity, unit_names: Sequence[str]) -> Node:
    "Literal expression for ``q`` as a number times powers of the base units."

    magnitude = abs(q.value)
    factors: list[Node] = [Number(value=magnitude, text=str(magnitude))]

    for name, n in zip(unit_names, q.dimension.exponents):
        if n == 1:
            factors.append(Name(name=name))
        elif n != 0:
            factors.append(Power(base=Name(name=name), exponent=n))

    node = factors[0] if len(factors) == 1 else Product(factors=tuple(factors))

    return Negate(term=node) if q.value < 0 else node


def reduce_system(system: SystemDef, kill: Sequence[str]) -> Reduction:
    constants = [system.constant(name).quantity for name in kill]
    quotient = natural_units(system.space, constants, name=f"{system.name}_natural")

    source_units = [system.base_unit(g).name for g in system.space.basis.generators]
    taken = {unit.name for unit in system.units} | {c.name for c in system.constants}
    base_names = []

    for row in quotient.structure.complement():
        nonzero = [(k, n) for k, n in enumerate(row) if n]

        if len(nonzero) == 1 and nonzero[0][1] == 1:
            base_names.append(source_units[nonzero[0][0]])
            continue

        name = compound_name(row, source_units)
        while name in taken:
            name = f"{name}_u"
        base_names.append(name)

    base_names = list(unique_names(base_names))
    space = quotient.space
    units = [
        UnitDef(name=name, dimension=space.basis.generator(generator), value=Fraction(1), base=True)
        for name, generator in zip(base_names, space.basis.generators)
    ]

    for unit in system.units:
        if unit.name in base_names:
            continue

        reduced = quotient.reduce(system.space.quantity(unit.value, unit.dimension))
        units.append(
            UnitDef(
                name=unit.name,
                dimension=reduced.dimension,
                value=reduced.value,
                expression=quantity_expression(reduced, base_names),
            )
        )

    reduced_constants = []

    for constant in system.constants:
        reduced = quotient.reduce(constant.quantity)
        reduced_constants.append(
            ConstantDef(
                name=constant.name,
                expression=quantity_expression(reduced, base_names),
                quantity=reduced,
            )
        )

    logger.debug(
        "Reduced %s by %s: rank %d -> %d", system.name, list(kill), system.rank, space.rank
    )

    return Reduction(
        source=system,
        killed=tuple(kill),
        quotient=quotient,
        system=SystemDef(
            name=space.name,
            space=space,
            units=tuple(units),
            constants=tuple(reduced_constants),
        ),
    )
