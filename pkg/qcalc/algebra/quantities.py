"""
Spaces of quantities free of zero divisors, in their standard model.

A quantity is a pair ``(value, dimension)`` with an exact rational value.
Quantities sharing a dimension form a fiber, a one dimensional vector
space; the product multiplies values and dimensions:

    (a, A) + (b, A) = (a + b, A)
    b (a, A)        = (b a, A)
    (a, A) (b, B)   = (a b, A B)

Every space free of zero divisors is isomorphic to one of these, so this
is the only runtime representation.
"""

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..errors import BasisMismatch, FiberMismatch, ZeroNotInvertible
from .dimensions import DimBasis, Dimension, dim_inv, dim_mul, dim_pow

Scalar = Fraction


def to_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


class QuantitySpace(BaseModel):
    """
    The standard model of a space of quantities over the rationals with
    group of dimensions given by ``basis``.
    """

    model_config = ConfigDict(frozen=True)

    basis: DimBasis
    "Basis of the group of dimensions."
    name: str = "Q"
    "Label used for display and for qualifying tensor-product generators."

    @classmethod
    def over(cls, *generators: str, name: str = "Q") -> "QuantitySpace":
        return cls(basis=DimBasis(generators=generators), name=name)

    @property
    def rank(self) -> int:
        return self.basis.rank

    def dimension(self, **exponents: int) -> Dimension:
        vector = [0] * self.rank
        for generator, exponent in exponents.items():
            vector[self.basis.index(generator)] = exponent
        return self.basis.dimension(vector)

    def quantity(self, value, dimension: Dimension | None = None) -> "Quantity":
        if dimension is None:
            dimension = self.basis.identity()
        return Quantity(value=value, dimension=dimension, space=self)

    def one(self) -> "Quantity":
        return self.quantity(1)

    def zero(self, dimension: Dimension | None = None) -> "Quantity":
        return self.quantity(0, dimension)

    def __str__(self):
        return f"{self.name}{self.basis}"


class Quantity(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction
    "Exact numerical component in the standard model."
    dimension: Dimension
    "The fiber this quantity lives in."
    space: QuantitySpace

    @field_validator("value", mode="before")
    @classmethod
    def make_exact(cls, v):
        return to_scalar(v)

    @model_validator(mode="after")
    def check_basis(self):
        if self.dimension.basis != self.space.basis:
            raise BasisMismatch(
                f"Dimension {self.dimension} is not over the basis of {self.space}."
            )
        return self

    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: "Quantity") -> "Quantity":
        return q_add(self, other)

    def __sub__(self, other: "Quantity") -> "Quantity":
        return q_sub(self, other)

    def __neg__(self) -> "Quantity":
        return q_neg(self)

    def __mul__(self, other) -> "Quantity":
        if isinstance(other, Quantity):
            return q_mul(self, other)
        return q_scale(other, self)

    def __rmul__(self, other) -> "Quantity":
        return q_scale(other, self)

    def __truediv__(self, other) -> "Quantity":
        if isinstance(other, Quantity):
            return q_mul(self, q_inv(other))
        return q_scale(1 / to_scalar(other), self)

    def __pow__(self, n: int) -> "Quantity":
        return q_pow(self, n)

    def __str__(self):
        if self.dimension.is_identity:
            return str(self.value)
        return f"{self.value} {self.dimension}"


def check_same_space(a: Quantity, b: Quantity):
    if a.space != b.space:
        raise BasisMismatch(f"Quantities from different spaces: {a.space} and {b.space}")


def q_dim(q: Quantity) -> Dimension:
    return q.dimension


def q_add(a: Quantity, b: Quantity) -> Quantity:
    check_same_space(a, b)

    if a.dimension != b.dimension:
        raise FiberMismatch(a.dimension, b.dimension)

    return Quantity(value=a.value + b.value, dimension=a.dimension, space=a.space)


def q_sub(a: Quantity, b: Quantity) -> Quantity:
    return q_add(a, q_neg(b))


def q_neg(q: Quantity) -> Quantity:
    return q_scale(-1, q)


def q_scale(alpha, q: Quantity) -> Quantity:
    return Quantity(value=to_scalar(alpha) * q.value, dimension=q.dimension, space=q.space)


def q_mul(a: Quantity, b: Quantity) -> Quantity:
    check_same_space(a, b)
    return Quantity(
        value=a.value * b.value,
        dimension=dim_mul(a.dimension, b.dimension),
        space=a.space,
    )


def q_inv(q: Quantity) -> Quantity:
    if q.is_zero():
        raise ZeroNotInvertible(f"The zero of dimension {q.dimension} has no inverse.")

    return Quantity(value=1 / q.value, dimension=dim_inv(q.dimension), space=q.space)


def q_pow(q: Quantity, n: int) -> Quantity:
    if n < 0:
        return q_pow(q_inv(q), -n)

    return Quantity(value=q.value**n, dimension=dim_pow(q.dimension, n), space=q.space)
