"""
Dimensions, the elements of a finitely generated free Abelian group with
a named generator basis.

A dimension is stored as its exponent vector over the basis, so the group
law is componentwise integer arithmetic:

    L T^-1 * L^2 T^-1 M = L^3 T^-2 M
"""

import re

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..errors import BasisMismatch, ParseError, UnknownGenerator

NAME_PATTERN = r"[A-Za-z][A-Za-z0-9_]*"
TERM = re.compile(rf"({NAME_PATTERN})(?:\^([+-]?[0-9]+))?")


class DimBasis(BaseModel):
    """
    An ordered list of distinct generator names. Two bases are the same
    group exactly when their name lists are equal.
    """

    model_config = ConfigDict(frozen=True)

    generators: tuple[str, ...] = ()
    "Generator names, in declaration order."

    @field_validator("generators")
    @classmethod
    def check_generators(cls, v):
        if any(not name for name in v):
            raise ValueError("Generator names must be non-empty.")
        if len(set(v)) != len(v):
            raise ValueError(f"Generator names must be distinct, got {v}.")
        return v

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise UnknownGenerator(f"unknown generator '{name}'")

    def identity(self) -> "Dimension":
        return Dimension(exponents=(0,) * self.rank, basis=self)

    def generator(self, name: str) -> "Dimension":
        exponents = [0] * self.rank
        exponents[self.index(name)] = 1
        return Dimension(exponents=tuple(exponents), basis=self)

    def dimension(self, exponents) -> "Dimension":
        return Dimension(exponents=tuple(exponents), basis=self)

    def __str__(self):
        return "<" + ", ".join(self.generators) + ">"


class Dimension(BaseModel):
    model_config = ConfigDict(frozen=True)

    exponents: tuple[int, ...]
    "Integer exponent of each generator of the basis."
    basis: DimBasis
    "The group this dimension belongs to."

    @model_validator(mode="after")
    def check_length(self):
        if len(self.exponents) != self.basis.rank:
            raise ValueError(
                f"Expected {self.basis.rank} exponents, got {len(self.exponents)}."
            )
        return self

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: "Dimension") -> "Dimension":
        return dim_mul(self, other)

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return dim_mul(self, dim_inv(other))

    def __pow__(self, n: int) -> "Dimension":
        return dim_pow(self, n)

    def inv(self) -> "Dimension":
        return dim_inv(self)

    def __str__(self):
        return dim_format(self)


def check_same_basis(a: Dimension, b: Dimension):
    if a.basis != b.basis:
        raise BasisMismatch(
            f"dimensions over different groups: {a.basis} and {b.basis}"
        )


def dim_mul(a: Dimension, b: Dimension) -> Dimension:
    check_same_basis(a, b)
    return Dimension(
        exponents=tuple(x + y for x, y in zip(a.exponents, b.exponents)),
        basis=a.basis,
    )


def dim_inv(a: Dimension) -> Dimension:
    return Dimension(exponents=tuple(-x for x in a.exponents), basis=a.basis)


def dim_pow(a: Dimension, n: int) -> Dimension:
    return Dimension(exponents=tuple(n * x for x in a.exponents), basis=a.basis)


def dim_format(a: Dimension) -> str:
    """
    Generators with nonzero exponents in basis order, exponent 1 omitted;
    the identity is written ``1``.
    """

    terms = [
        name if exponent == 1 else f"{name}^{exponent}"
        for name, exponent in zip(a.basis.generators, a.exponents)
        if exponent != 0
    ]

    return " ".join(terms) if terms else "1"


def dim_parse(text: str, basis: DimBasis, line: int = 1, offset: int = 0) -> Dimension:
    """
    Parse ``"1"`` or space-separated terms ``NAME`` / ``NAME^SIGNED_INT``.

    Parameters
    ----------
    text : str
        The dimension text.
    basis : DimBasis
        Basis that the generator names are looked up in.
    line, offset : int
        Position of ``text`` inside a larger document, used in error reports.
    """

    if text == "1":
        return basis.identity()

    exponents = [0] * basis.rank
    position = 0

    while True:
        match = TERM.match(text, position)

        if match is None:
            raise ParseError(
                "expected a generator name", line=line, column=offset + position + 1
            )

        name, power = match.groups()

        if name not in basis.generators:
            raise UnknownGenerator(
                f"unknown generator '{name}'", line=line, column=offset + position + 1
            )

        exponents[basis.index(name)] += int(power) if power is not None else 1
        position = match.end()

        if position == len(text):
            break

        if text[position] != " ":
            raise ParseError(
                f"unexpected character {text[position]!r}",
                line=line,
                column=offset + position + 1,
            )

        position += 1

    return Dimension(exponents=tuple(exponents), basis=basis)
