"""
New spaces of quantities from old ones.

- Subspaces are the preimages ``dim^-1(E)`` of subgroups ``E`` of the
  group of dimensions.
- The tensor product of two spaces has the product group of dimensions;
  in the standard model its classes are represented by
  ``(a, A) (x) (b, B) = (a b, (A, B))``.
- Quotients by a subsection ``Sigma = sigma(E)`` identify ``q`` with
  ``q s`` for every ``s`` in ``Sigma``. They exist as spaces of quantities
  only when ``D / E`` is free Abelian; this is checked eagerly.
"""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import (
    BasisMismatch,
    ConflictingSection,
    FiberMismatch,
    NameCollision,
    NotCoherent,
    SpaceMismatch,
    TorsionQuotient,
    ZeroNotInvertible,
)
from .dimensions import DimBasis, Dimension
from .lattice import QuotientStructure, Subgroup, membership, quotient_structure
from .quantities import Quantity, QuantitySpace, q_add, q_mul
from .units import Character, Section

logger = logging.getLogger(__name__)


def compound_name(exponents: Sequence[int], names: Sequence[str]) -> str:
    """
    Name for the generator with the given exponent row: the generator's
    own name for a unit vector, otherwise parts such as ``L2`` or ``Tm1``
    (exponent -1) joined with ``_``.
    """

    parts = [(name, n) for name, n in zip(names, exponents) if n != 0]

    if len(parts) == 1 and parts[0][1] == 1:
        return parts[0][0]

    return "_".join(
        name if n == 1 else (f"{name}{n}" if n > 0 else f"{name}m{-n}")
        for name, n in parts
    )


def unique_names(names: Sequence[str]) -> tuple[str, ...]:
    seen = set()
    result = []

    for name in names:
        candidate, suffix = name, 2
        while candidate in seen:
            candidate = f"{name}_{suffix}"
            suffix += 1
        seen.add(candidate)
        result.append(candidate)

    return tuple(result)


class Subspace(BaseModel):
    """
    The subspace ``dim^-1(E)`` of ``parent``, also available as a space
    of its own (``space``) whose generators are the Hermite basis rows of
    ``E``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    parent: QuantitySpace
    subgroup: Subgroup
    space: QuantitySpace
    "The subspace as a space of quantities over the subgroup's own basis."

    @property
    def rank(self) -> int:
        return self.subgroup.rank

    def contains(self, q: Quantity) -> bool:
        if q.space != self.parent:
            raise SpaceMismatch(f"Quantity from {q.space}, subspace of {self.parent}.")
        return membership(self.subgroup, q.dimension).member

    def embed(self, q: Quantity) -> Quantity:
        "Send a quantity of ``space`` to the parent space."
        if q.space != self.space:
            raise SpaceMismatch(f"Quantity from {q.space}, expected {self.space}.")
        return self.parent.quantity(
            q.value, self.subgroup.element(q.dimension.exponents)
        )

    def restrict(self, q: Quantity) -> Quantity:
        "Express a parent quantity lying in the subspace as a quantity of ``space``."
        certificate = membership(self.subgroup, q.dimension)
        if not certificate:
            raise SpaceMismatch(f"{q} is not in the subspace over {self.space.basis}.")
        return self.space.quantity(
            q.value, self.space.basis.dimension(certificate.coordinates)
        )


def make_subspace(
    space: QuantitySpace, subgroup: Subgroup, name: str | None = None
) -> Subspace:
    if subgroup.ambient != space.basis:
        raise BasisMismatch(f"Subgroup of {subgroup.ambient} in space {space}.")

    names = unique_names(
        [compound_name(row, space.basis.generators) for row in subgroup.hnf_basis.tolist()]
    )

    return Subspace(
        parent=space,
        subgroup=subgroup,
        space=QuantitySpace(basis=DimBasis(generators=names), name=name or space.name),
    )


class TensorProduct(BaseModel):
    """
    ``left (x) right`` with group of dimensions the direct product of the
    factors' groups; ``space`` is the product as a space of quantities.
    """

    model_config = ConfigDict(frozen=True)

    left: QuantitySpace
    right: QuantitySpace
    space: QuantitySpace

    @property
    def rank(self) -> int:
        return self.space.rank

    def element(self, q: Quantity, r: Quantity) -> Quantity:
        return tensor_elem(q, r, self)

    def embed_left(self, q: Quantity) -> Quantity:
        "Identify ``left`` with ``left (x) dim^-1(1)``."
        return tensor_elem(q, self.right.one(), self)

    def embed_right(self, r: Quantity) -> Quantity:
        "Identify ``right`` with ``dim^-1(1) (x) right``."
        return tensor_elem(self.left.one(), r, self)


def tensor(
    left: QuantitySpace,
    right: QuantitySpace,
    qualify: bool = False,
    name: str | None = None,
) -> TensorProduct:
    """
    Tensor product of two spaces. Generator names must be disjoint unless
    ``qualify`` is set, in which case every generator is prefixed with its
    space name (``geom.L``). Qualified names are outside the dimension
    grammar, so ``dim_parse`` cannot read back their formatted dimensions.
    """

    left_names, right_names = left.basis.generators, right.basis.generators

    if qualify:
        left_prefix, right_prefix = left.name, right.name
        if left_prefix == right_prefix:
            left_prefix, right_prefix = f"{left.name}1", f"{right.name}2"
        left_names = tuple(f"{left_prefix}.{g}" for g in left_names)
        right_names = tuple(f"{right_prefix}.{g}" for g in right_names)
    elif collisions := set(left_names) & set(right_names):
        raise NameCollision(
            f"Generators {sorted(collisions)} appear in both factors; "
            "pass qualify=True to keep them apart."
        )

    space = QuantitySpace(
        basis=DimBasis(generators=left_names + right_names),
        name=name or f"{left.name}_{right.name}",
    )

    return TensorProduct(left=left, right=right, space=space)


def tensor_elem(q: Quantity, r: Quantity, product: TensorProduct) -> Quantity:
    if q.space != product.left or r.space != product.right:
        raise SpaceMismatch(
            f"Expected factors from {product.left} and {product.right}, "
            f"got {q.space} and {r.space}."
        )

    return product.space.quantity(
        q.value * r.value,
        product.space.basis.dimension(q.dimension.exponents + r.dimension.exponents),
    )


class Subsection(BaseModel):
    """
    The restriction ``Sigma = sigma(E)`` of a nonzero coherent section to a
    subgroup ``E``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    section: Section
    subgroup: Subgroup

    @model_validator(mode="after")
    def check_subsection(self):
        if self.subgroup.ambient != self.section.space.basis:
            raise BasisMismatch(
                f"Subgroup of {self.subgroup.ambient} for section of {self.section.space}."
            )
        if not self.section.is_coherent:
            raise NotCoherent("A subsection needs a coherent section.")
        return self

    @property
    def space(self) -> QuantitySpace:
        return self.section.space

    @property
    def character(self) -> Character:
        return self.section.character

    def element(self, coordinates: Sequence[int]) -> Quantity:
        "``sigma`` at the subgroup element with the given Hermite coordinates."
        return self.section(self.subgroup.element(coordinates))

    def contains(self, q: Quantity) -> bool:
        return (
            q.space == self.space
            and self.subgroup.contains(q.dimension)
            and q.value == self.character(q.dimension)
        )


class QuotientSpace(BaseModel):
    """
    The quotient ``Q / Sigma``. Classes are represented canonically by
    quantities of ``space``, whose basis is the complement of ``E`` in an
    adapted basis of the group of dimensions.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: QuantitySpace
    subsection: Subsection
    structure: QuotientStructure
    space: QuantitySpace
    "The quotient as a space of quantities, rank(D) - rank(E)."

    @property
    def rank(self) -> int:
        return self.space.rank

    def dimension_class(self, dimension: Dimension) -> Dimension:
        _, free = self.structure.project(dimension.exponents)
        return self.space.basis.dimension(free)

    def reduce(self, q: Quantity) -> Quantity:
        return reduce_quantity(self, q)

    def lift(self, x: Quantity) -> Quantity:
        "A representative in the source space of the class ``x``."
        if x.space != self.space:
            raise SpaceMismatch(f"Quantity from {x.space}, expected {self.space}.")

        exponents = [0] * self.source.rank
        for n, row in zip(x.dimension.exponents, self.structure.complement()):
            exponents = [e + n * r for e, r in zip(exponents, row)]

        return self.source.quantity(x.value, self.source.basis.dimension(exponents))

    def equivalent(self, q1: Quantity, q2: Quantity) -> bool:
        return reduce_quantity(self, q1) == reduce_quantity(self, q2)

    def add_classes(self, q1: Quantity, q2: Quantity) -> Quantity:
        """
        Sum of the classes of ``q1`` and ``q2``: ``q1`` is first moved into
        the fiber of ``q2`` by the subsection element ``sigma(A)`` with
        ``dim q2 = dim q1 A``.
        """

        if self.dimension_class(q1.dimension) != self.dimension_class(q2.dimension):
            raise FiberMismatch(
                self.dimension_class(q1.dimension), self.dimension_class(q2.dimension)
            )

        shift = q2.dimension / q1.dimension
        aligned = q_mul(q1, self.subsection.section(shift))

        return reduce_quantity(self, q_add(aligned, q2))


def make_quotient(
    space: QuantitySpace, subsection: Subsection, name: str | None = None
) -> QuotientSpace:
    if subsection.space != space:
        raise SpaceMismatch(f"Subsection of {subsection.space}, quotient of {space}.")

    structure = quotient_structure(subsection.subgroup)

    if not structure.is_free:
        raise TorsionQuotient(structure.torsion)

    names = unique_names(
        [compound_name(row, space.basis.generators) for row in structure.complement()]
    )

    logger.debug(
        "Quotient of %s by a rank %d subsection: generators %s",
        space,
        structure.lattice_rank,
        names,
    )

    return QuotientSpace(
        source=space,
        subsection=subsection,
        structure=structure,
        space=QuantitySpace(
            basis=DimBasis(generators=names), name=name or f"{space.name}_quotient"
        ),
    )


def reduce_quantity(quotient: QuotientSpace, q: Quantity) -> Quantity:
    """
    Canonical representative of the class of ``q``: with ``dim q = E F``,
    ``E`` in the subgroup and ``F`` in the complement, the result is
    ``q sigma(E)^-1`` read in the quotient basis.
    """

    if q.space != quotient.source:
        raise BasisMismatch(f"Quantity from {q.space}, quotient of {quotient.source}.")

    _, free = quotient.structure.project(q.dimension.exponents)
    along = quotient.source.basis.dimension(
        quotient.structure.subgroup_part(q.dimension.exponents)
    )

    return quotient.space.quantity(
        q.value / quotient.subsection.character(along),
        quotient.space.basis.dimension(free),
    )


def natural_units(
    space: QuantitySpace, constants: Sequence[Quantity], name: str | None = None
) -> QuotientSpace:
    """
    The quotient that makes each of ``constants`` dimensionless with value 1.

    The subgroup is generated by the constants' dimensions. The character
    of the subsection must send each of those dimensions to the constant's
    value; integer relations between the dimensions must hold between the
    values too, otherwise the requirements conflict.
    """

    for q in constants:
        if q.space != space:
            raise SpaceMismatch(f"Constant {q} is not in {space}.")
        if q.is_zero():
            raise ZeroNotInvertible(f"Cannot set the zero of {q.dimension} to 1.")

    subgroup = Subgroup.generated_by(space.basis, [q.dimension for q in constants])
    structure = quotient_structure(subgroup)

    if not structure.is_free:
        raise TorsionQuotient(structure.torsion)

    decomposition = subgroup.snf
    values = [q.value for q in constants]

    def combined(coefficients) -> Fraction:
        return math.prod(
            (v**n for v, n in zip(values, coefficients)), start=Fraction(1)
        )

    # Rows of U past the rank are the integer relations between the
    # generators; rows before it give the adapted basis of the subgroup.
    for i in range(decomposition.rank, len(constants)):
        if combined(decomposition.u.row(i)) != 1:
            raise ConflictingSection(
                "The constants satisfy a dimensional relation that their values "
                "do not: "
                + " ".join(
                    f"{q}^{n}" for q, n in zip(constants, decomposition.u.row(i)) if n
                )
            )

    adapted_values = [combined(decomposition.u.row(j)) for j in range(decomposition.rank)]
    generator_values = tuple(
        math.prod(
            (w**n for w, n in zip(adapted_values, decomposition.v.row(k))),
            start=Fraction(1),
        )
        for k in range(space.rank)
    )
    character = Character(basis=space.basis, values=generator_values)

    for q in constants:
        if character(q.dimension) != q.value:
            raise ConflictingSection(f"No coherent section sends {q.dimension} to {q.value}.")

    subsection = Subsection(section=Section.coherent(space, character), subgroup=subgroup)

    return make_quotient(space, subsection, name=name)
