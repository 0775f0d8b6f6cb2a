"""
Systems of units as nonzero sections of a space of quantities.

A section picks one quantity in every fiber. Coherent sections are group
homomorphisms, and in the standard model they are exactly the characters
``chi: D -> F*`` via ``A -> (chi(A), A)``. Sections are represented as a
character plus a finite table of per-fiber overrides; a section is
coherent precisely when no override changes a value of its character.

With a section fixed, every quantity splits as ``q = {q} [q]`` into its
numerical value ``nu(q)`` and its unit ``sigma(dim q)``.
"""

import math
from collections.abc import Mapping
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..errors import BasisMismatch, FiberMismatch, ZeroUnit
from .dimensions import DimBasis, Dimension, dim_mul, dim_pow
from .quantities import Quantity, QuantitySpace, check_same_space, q_scale, to_scalar


class Character(BaseModel):
    """
    A multiplicative map from the group of dimensions into the nonzero
    rationals, fixed by its values on the generators.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis: DimBasis
    values: tuple[Fraction, ...]
    "Nonzero value on each generator, in basis order."

    @field_validator("values", mode="before")
    @classmethod
    def make_exact(cls, v):
        return tuple(to_scalar(x) for x in v)

    @model_validator(mode="after")
    def check_values(self):
        if len(self.values) != self.basis.rank:
            raise ValueError(
                f"Expected {self.basis.rank} generator values, got {len(self.values)}."
            )
        if any(x == 0 for x in self.values):
            raise ZeroUnit(f"Character values must be nonzero, got {self.values}.")
        return self

    @classmethod
    def trivial(cls, basis: DimBasis) -> "Character":
        return cls(basis=basis, values=(1,) * basis.rank)

    @classmethod
    def from_mapping(cls, basis: DimBasis, values: Mapping[str, object]) -> "Character":
        """
        Character with the given values on named generators and 1 on the
        generators not mentioned.
        """

        vector = [Fraction(1)] * basis.rank
        for name, value in values.items():
            vector[basis.index(name)] = to_scalar(value)
        return cls(basis=basis, values=tuple(vector))

    def __call__(self, dimension: Dimension) -> Fraction:
        if dimension.basis != self.basis:
            raise BasisMismatch(f"Dimension {dimension} is not over {self.basis}.")

        return math.prod(
            (value**n for value, n in zip(self.values, dimension.exponents)),
            start=Fraction(1),
        )

    def __mul__(self, other: "Character") -> "Character":
        if other.basis != self.basis:
            raise BasisMismatch(f"Characters over {self.basis} and {other.basis}.")
        return Character(
            basis=self.basis, values=tuple(a * b for a, b in zip(self.values, other.values))
        )

    def inverse(self) -> "Character":
        return Character(basis=self.basis, values=tuple(1 / x for x in self.values))


class Section(BaseModel):
    """
    A nonzero section ``sigma`` of ``space``: the coherent part given by
    ``character`` with replacement values on finitely many fibers.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    space: QuantitySpace
    character: Character
    "The coherent part of the section."
    overrides: dict[Dimension, Fraction] = {}
    "Replacement unit values on specific fibers."

    @field_validator("overrides", mode="before")
    @classmethod
    def make_exact(cls, v):
        return {dimension: to_scalar(value) for dimension, value in v.items()}

    @model_validator(mode="after")
    def check_section(self):
        if self.character.basis != self.space.basis:
            raise BasisMismatch(
                f"Character over {self.character.basis} for space {self.space}."
            )

        for dimension, value in self.overrides.items():
            if dimension.basis != self.space.basis:
                raise BasisMismatch(f"Override at {dimension} is not over {self.space}.")
            if value == 0:
                raise ZeroUnit(f"A system of units cannot pick the zero of {dimension}.")

        return self

    @classmethod
    def coherent(
        cls, space: QuantitySpace, character: Character | None = None
    ) -> "Section":
        if character is None:
            character = Character.trivial(space.basis)
        return cls(space=space, character=character)

    @classmethod
    def from_units(cls, space: QuantitySpace, values: Mapping[str, object]) -> "Section":
        "Coherent section with the given unit values on named generators."
        return cls.coherent(space, Character.from_mapping(space.basis, values))

    def with_override(self, dimension: Dimension, value) -> "Section":
        return Section(
            space=self.space,
            character=self.character,
            overrides={**self.overrides, dimension: value},
        )

    @property
    def is_coherent(self) -> bool:
        return all(
            value == self.character(dimension)
            for dimension, value in self.overrides.items()
        )

    def value_at(self, dimension: Dimension) -> Fraction:
        if dimension.basis != self.space.basis:
            raise BasisMismatch(f"Dimension {dimension} is not over {self.space}.")

        override = self.overrides.get(dimension)
        return override if override is not None else self.character(dimension)

    def __call__(self, dimension: Dimension) -> Quantity:
        return section_eval(self, dimension)


def section_eval(sigma: Section, dimension: Dimension) -> Quantity:
    return sigma.space.quantity(sigma.value_at(dimension), dimension)


def nu(q: Quantity, sigma: Section) -> Fraction:
    "Numerical value of ``q`` with respect to the unit of its fiber."
    if q.space != sigma.space:
        raise BasisMismatch(f"Quantity from {q.space}, section of {sigma.space}.")
    return q.value / sigma.value_at(q.dimension)


def unit_of(q: Quantity, sigma: Section) -> Quantity:
    if q.space != sigma.space:
        raise BasisMismatch(f"Quantity from {q.space}, section of {sigma.space}.")
    return section_eval(sigma, q.dimension)


def maxwell_decompose(q: Quantity, sigma: Section) -> tuple[Fraction, Quantity]:
    """
    Split ``q`` into ``({q}, [q])`` with ``q == {q} [q]``.
    """

    return nu(q, sigma), unit_of(q, sigma)


def convert(q: Quantity, target_unit: Quantity) -> Fraction:
    """
    The number ``b`` with ``q == b * target_unit``.
    """

    check_same_space(q, target_unit)

    if target_unit.is_zero():
        raise ZeroUnit(f"Cannot measure against the zero of {target_unit.dimension}.")

    if q.dimension != target_unit.dimension:
        raise FiberMismatch(q.dimension, target_unit.dimension)

    return q.value / target_unit.value


def coherence_witness(sigma: Section) -> tuple[Dimension, Dimension] | None:
    """
    Dimensions ``(A, B)`` with ``sigma(AB) != sigma(A) sigma(B)``, or None
    when the section is coherent.

    For a breaking override at ``D != 1``, some power ``B = D^k`` has both
    ``B`` and ``DB`` outside the (finite) override table, and then
    ``(D, B)`` is a witness. An override at the identity is witnessed by
    ``(1, 1)``.
    """

    breaking = [
        dimension
        for dimension, value in sigma.overrides.items()
        if value != sigma.character(dimension)
    ]

    if not breaking:
        return None

    d = breaking[0]

    if d.is_identity:
        return d, d

    k = 1
    while dim_pow(d, k) in sigma.overrides or dim_pow(d, k + 1) in sigma.overrides:
        k += 1

    b = dim_pow(d, k)
    assert sigma.value_at(dim_mul(d, b)) != sigma.value_at(d) * sigma.value_at(b)

    return d, b


def reconstruct(q: Quantity, sigma: Section) -> Quantity:
    "``nu(q) sigma(dim q)``, which equals ``q``."
    value, unit = maxwell_decompose(q, sigma)
    return q_scale(value, unit)
