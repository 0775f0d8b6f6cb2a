"""
Homomorphisms between spaces of quantities.

A nonzero homomorphism ``psi: Q -> R`` is fiberwise linear and respects
products, so it is fixed by a homomorphism ``phi`` of the groups of
dimensions (an integer matrix acting on exponent rows) together with a
character ``lambda`` of the source:

    psi(a, A) = (a lambda(A), phi(A))

The zero homomorphisms send every quantity to the zero of the fiber that
``phi`` selects; there is one for each ``phi``.
"""

import logging

from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import (
    BasisMismatch,
    InternalConsistencyError,
    NotCoherent,
    NotRepresentable,
    SpaceMismatch,
    TorsionQuotient,
    ZeroHomomorphism,
)
from .constructions import (
    QuotientSpace,
    Subsection,
    Subspace,
    make_quotient,
    make_subspace,
)
from .dimensions import Dimension
from .lattice import IntMatrix, Subgroup, kernel_basis, membership, solve
from .quantities import Quantity, QuantitySpace
from .units import Character, Section

logger = logging.getLogger(__name__)


class SpaceHom(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: QuantitySpace
    target: QuantitySpace
    matrix: IntMatrix
    "The group map phi, source.rank x target.rank, acting on exponent rows."
    scaling: Character
    "The character lambda of the source scaling each fiber."
    zero: bool = False
    "Send everything to fiber zeros instead."

    @model_validator(mode="after")
    def check_shapes(self):
        if self.matrix.shape != (self.source.rank, self.target.rank):
            raise BasisMismatch(
                f"A map {self.source} -> {self.target} needs a "
                f"{self.source.rank}x{self.target.rank} matrix, got {self.matrix.shape}."
            )
        if self.scaling.basis != self.source.basis:
            raise BasisMismatch(f"Scaling over {self.scaling.basis}, source {self.source}.")
        return self

    def dimension_map(self, dimension: Dimension) -> Dimension:
        if dimension.basis != self.source.basis:
            raise BasisMismatch(f"Dimension {dimension} is not over {self.source}.")
        return self.target.basis.dimension(self.matrix.apply(dimension.exponents))

    def __call__(self, q: Quantity) -> Quantity:
        return hom_apply(self, q)


def make_hom(
    source: QuantitySpace,
    target: QuantitySpace,
    matrix: IntMatrix,
    scaling: Character | None = None,
) -> SpaceHom:
    return SpaceHom(
        source=source,
        target=target,
        matrix=matrix,
        scaling=scaling or Character.trivial(source.basis),
    )


def identity_hom(space: QuantitySpace) -> SpaceHom:
    return make_hom(space, space, IntMatrix.identity(space.rank))


def zero_hom(
    source: QuantitySpace, target: QuantitySpace, matrix: IntMatrix | None = None
) -> SpaceHom:
    if matrix is None:
        matrix = IntMatrix.zeros(source.rank, target.rank)
    return SpaceHom(
        source=source,
        target=target,
        matrix=matrix,
        scaling=Character.trivial(source.basis),
        zero=True,
    )


def hom_apply(psi: SpaceHom, q: Quantity) -> Quantity:
    if q.space != psi.source:
        raise BasisMismatch(f"Quantity from {q.space}, homomorphism from {psi.source}.")

    value = 0 if psi.zero else q.value * psi.scaling(q.dimension)
    return psi.target.quantity(value, psi.dimension_map(q.dimension))


def induced_group_hom(psi: SpaceHom) -> IntMatrix:
    return psi.matrix


def is_zero_hom(psi: SpaceHom) -> bool:
    "A homomorphism is zero exactly when it sends ``1_Q`` to a zero."
    return hom_apply(psi, psi.source.one()).is_zero()


def compose(outer: SpaceHom, inner: SpaceHom) -> SpaceHom:
    """
    ``outer o inner``, so that ``compose(g, f)(q) == g(f(q))``.
    """

    if inner.target != outer.source:
        raise SpaceMismatch(f"Cannot compose through {inner.target} and {outer.source}.")

    source = inner.source
    values = []

    for k in range(source.rank):
        generator = source.basis.dimension(
            [int(i == k) for i in range(source.rank)]
        )
        values.append(
            inner.scaling(generator) * outer.scaling(inner.dimension_map(generator))
        )

    return SpaceHom(
        source=source,
        target=outer.target,
        matrix=inner.matrix @ outer.matrix,
        scaling=Character(basis=source.basis, values=tuple(values)),
        zero=inner.zero or outer.zero,
    )


def invert(psi: SpaceHom) -> SpaceHom:
    """
    Inverse of a bijective homomorphism: ``phi`` must be unimodular, and
    then ``psi^-1(b, B) = (b / lambda(phi^-1 B), phi^-1 B)``.
    """

    if psi.zero:
        raise ZeroHomomorphism("A zero homomorphism has no inverse.")

    try:
        inverse = psi.matrix.inverse()
    except ValueError:
        raise NotRepresentable(
            f"The map {psi.source} -> {psi.target} is not bijective on dimensions."
        )

    values = tuple(
        1 / psi.scaling(psi.source.basis.dimension(inverse.row(k)))
        for k in range(psi.target.rank)
    )

    return SpaceHom(
        source=psi.target,
        target=psi.source,
        matrix=inverse,
        scaling=Character(basis=psi.target.basis, values=values),
    )


def hom_kernel(psi: SpaceHom) -> Subsection:
    """
    ``psi^-1(1_R)``: the subsection over ``ker phi`` with section
    ``A -> (lambda(A)^-1, A)``.
    """

    if psi.zero:
        raise ZeroHomomorphism("The kernel of a zero homomorphism is empty.")

    subgroup = Subgroup.from_matrix(psi.source.basis, kernel_basis(psi.matrix))

    return Subsection(
        section=Section.coherent(psi.source, psi.scaling.inverse()),
        subgroup=subgroup,
    )


def hom_image(psi: SpaceHom) -> Subspace:
    if psi.zero:
        raise ZeroHomomorphism("The image of a zero homomorphism is not a subspace.")

    return make_subspace(psi.target, Subgroup.from_matrix(psi.target.basis, psi.matrix))


def image_of_subspace(psi: SpaceHom, subspace: Subspace) -> Subspace:
    if subspace.parent != psi.source:
        raise SpaceMismatch(f"Subspace of {subspace.parent}, homomorphism from {psi.source}.")
    if psi.zero:
        raise ZeroHomomorphism("The image of a zero homomorphism is not a subspace.")

    rows = subspace.subgroup.hnf_basis @ psi.matrix
    return make_subspace(psi.target, Subgroup.from_matrix(psi.target.basis, rows))


def preimage_section(psi: SpaceHom, sigma: Section) -> Section:
    """
    The section of the source sending ``A`` to the quantity that ``psi``
    maps onto ``sigma(phi A)``.

    Its coherent part is ``chi_R(phi A) / lambda(A)``. An override of
    ``sigma`` at a dimension in the image of ``phi`` pulls back to a
    single fiber when ``phi`` is injective, and to infinitely many fibers
    otherwise; the latter cannot be written as a character plus finitely
    many overrides.
    """

    if psi.zero:
        raise ZeroHomomorphism("Sections do not pull back along a zero homomorphism.")
    if sigma.space != psi.target:
        raise SpaceMismatch(f"Section of {sigma.space}, homomorphism into {psi.target}.")

    source = psi.source
    values = tuple(
        sigma.character(psi.dimension_map(generator)) / psi.scaling(generator)
        for generator in (source.basis.generator(name) for name in source.basis.generators)
    )
    injective = kernel_basis(psi.matrix).rows == 0
    overrides = {}

    for dimension, value in sigma.overrides.items():
        preimage = solve(psi.matrix, dimension.exponents)

        if preimage is None:
            continue

        if not injective:
            raise NotRepresentable(
                f"The override at {dimension} pulls back to infinitely many fibers."
            )

        a = source.basis.dimension(preimage)
        overrides[a] = value / psi.scaling(a)

    return Section(
        space=source,
        character=Character(basis=source.basis, values=values),
        overrides=overrides,
    )


def first_isomorphism(psi: SpaceHom) -> SpaceHom:
    """
    The isomorphism ``Q / ker psi -> im psi``.

    Classes of the quotient are represented over the complement of the
    kernel; each complement generator ``w`` goes to ``phi(w)``, read in the
    Hermite basis of the image, scaled by ``lambda(w)``.
    """

    kernel = hom_kernel(psi)

    try:
        quotient = make_quotient(psi.source, kernel)
    except TorsionQuotient as error:
        raise InternalConsistencyError(
            f"The quotient by a kernel has torsion: {error}"
        ) from error

    image = hom_image(psi)
    rows, values = [], []

    for w in quotient.structure.complement():
        certificate = membership(image.subgroup, psi.dimension_map(psi.source.basis.dimension(w)))

        if not certificate:
            raise InternalConsistencyError(f"phi({w}) is missing from the image.")

        rows.append(certificate.coordinates)
        values.append(psi.scaling(psi.source.basis.dimension(w)))

    isomorphism = SpaceHom(
        source=quotient.space,
        target=image.space,
        matrix=IntMatrix(rows, cols=image.space.rank),
        scaling=Character(basis=quotient.space.basis, values=tuple(values)),
    )

    try:
        invert(isomorphism)
    except NotRepresentable as error:
        raise InternalConsistencyError(
            f"The induced map of a quotient by its kernel is not bijective: {error}"
        ) from error

    logger.debug(
        "First isomorphism for %s -> %s: kernel rank %d, image rank %d",
        psi.source,
        psi.target,
        kernel.subgroup.rank,
        image.rank,
    )

    return isomorphism


def first_isomorphism_spaces(psi: SpaceHom) -> tuple[QuotientSpace, Subspace]:
    "The quotient and image that :func:`first_isomorphism` maps between."
    return make_quotient(psi.source, hom_kernel(psi)), hom_image(psi)


def inclusion_hom(subspace: Subspace) -> SpaceHom:
    return make_hom(subspace.space, subspace.parent, subspace.subgroup.hnf_basis)


def projection_hom(quotient: QuotientSpace) -> SpaceHom:
    """
    The natural projection onto the quotient, agreeing with
    :meth:`QuotientSpace.reduce`.
    """

    source = quotient.source
    rows, values = [], []

    for name in source.basis.generators:
        generator = source.basis.generator(name)
        _, free = quotient.structure.project(generator.exponents)
        along = source.basis.dimension(quotient.structure.subgroup_part(generator.exponents))
        rows.append(free)
        values.append(1 / quotient.subsection.character(along))

    return SpaceHom(
        source=source,
        target=quotient.space,
        matrix=IntMatrix(rows, cols=quotient.rank),
        scaling=Character(basis=source.basis, values=tuple(values)),
    )


class Isomorphic(BaseModel):
    model_config = ConfigDict(frozen=True)

    witness: SpaceHom
    inverse: SpaceHom
    correspondence: tuple[tuple[str, str], ...]
    "Source generator paired with the target generator it is sent to."

    def __bool__(self):
        return True


class NotIsomorphic(BaseModel):
    model_config = ConfigDict(frozen=True)

    source_rank: int
    target_rank: int

    def __bool__(self):
        return False


ClassificationResult = Isomorphic | NotIsomorphic


def classify(
    source: QuantitySpace,
    target: QuantitySpace,
    source_section: Section | None = None,
    target_section: Section | None = None,
) -> ClassificationResult:
    """
    Spaces free of zero divisors are isomorphic exactly when their groups
    of dimensions have the same rank.

    The witness pairs the generators in order and maps each unit of
    ``source_section`` onto the corresponding unit of ``target_section``,
    extended linearly in each fiber. Different sections give different
    witnesses.
    """

    if source.rank != target.rank:
        return NotIsomorphic(source_rank=source.rank, target_rank=target.rank)

    source_section = source_section or Section.coherent(source)
    target_section = target_section or Section.coherent(target)

    if source_section.space != source or target_section.space != target:
        raise SpaceMismatch("Each section must belong to the space it classifies.")
    if not (source_section.is_coherent and target_section.is_coherent):
        raise NotCoherent("Classification witnesses are built from coherent sections.")

    values = tuple(
        target_section.character.values[k] / source_section.character.values[k]
        for k in range(source.rank)
    )
    witness = make_hom(
        source,
        target,
        IntMatrix.identity(source.rank),
        Character(basis=source.basis, values=values),
    )

    logger.debug("Isomorphism witness %s -> %s with scaling %s", source, target, values)

    return Isomorphic(
        witness=witness,
        inverse=invert(witness),
        correspondence=tuple(zip(source.basis.generators, target.basis.generators)),
    )


def canonical_model_iso(space: QuantitySpace, sigma: Section) -> SpaceHom:
    """
    ``q -> (nu(q), dim q)``, the isomorphism onto the standard model
    chosen by the coherent section ``sigma``. Its inverse is
    ``(a, A) -> a sigma(A)``.
    """

    if sigma.space != space:
        raise SpaceMismatch(f"Section of {sigma.space}, space {space}.")
    if not sigma.is_coherent:
        raise NotCoherent("Only a coherent section identifies a space with its model.")

    return make_hom(space, space, IntMatrix.identity(space.rank), sigma.character.inverse())
