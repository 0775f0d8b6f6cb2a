"""
A parsed system-definition file: a space of quantities together with its
named units and constants.

Base units fix the coherent section (value 1 on their generator); derived
units and constants are quantities of that space, stored by their value
in the standard model.
"""

from fractions import Fraction

from pydantic import BaseModel, ConfigDict

from ..algebra.dimensions import Dimension
from ..algebra.quantities import Quantity, QuantitySpace
from ..algebra.units import Section
from ..errors import UnknownName
from .expressions import Name, Node


class UnitDef(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    dimension: Dimension
    value: Fraction
    "Multiple of the coherent unit of its dimension."
    base: bool = False
    "Base units carry value 1 on a single generator."
    expression: Node | None = None
    "Defining expression of a derived unit."
    line: int = 1


class ConstantDef(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    expression: Node
    quantity: Quantity
    line: int = 1


class SystemDef(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    space: QuantitySpace
    units: tuple[UnitDef, ...] = ()
    "In declaration order."
    constants: tuple[ConstantDef, ...] = ()
    "In declaration order."

    @property
    def rank(self) -> int:
        return self.space.rank

    @property
    def section(self) -> Section:
        "The coherent section fixed by the base units."
        return Section.coherent(self.space)

    def base_unit(self, generator: str) -> UnitDef:
        index = self.space.basis.index(generator)
        return next(
            unit for unit in self.units if unit.base and unit.dimension.exponents[index] == 1
        )

    def quantity(self, name: str) -> Quantity:
        for unit in self.units:
            if unit.name == name:
                return self.space.quantity(unit.value, unit.dimension)

        for constant in self.constants:
            if constant.name == name:
                return constant.quantity

        raise UnknownName(f"unknown name '{name}'")

    def lookup(self, node: Name) -> Quantity:
        "Resolve a name in an expression, reporting its position when unknown."
        try:
            return self.quantity(node.name)
        except UnknownName:
            raise UnknownName(f"unknown name '{node.name}'", line=node.line, column=node.column)

    def constant(self, name: str) -> ConstantDef:
        for constant in self.constants:
            if constant.name == name:
                return constant
        raise UnknownName(f"unknown constant '{name}'")

    def to_text(self) -> str:
        "The system as a definition file."

        lines = [f"system {self.name}"]
        lines += [f"dimension {generator}" for generator in self.space.basis.generators]

        for unit in self.units:
            if unit.base:
                lines.append(f"unit {unit.name} : {unit.dimension}")
            else:
                lines.append(f"unit {unit.name} : {unit.dimension} = {unit.expression}")

        lines += [
            f"constant {constant.name} = {constant.expression}"
            for constant in self.constants
        ]

        return "\n".join(lines) + "\n"
