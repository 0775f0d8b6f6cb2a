"""
Syntax tree for quantity expressions.

Nodes are evaluated against a namespace of named quantities (a system's
units and constants) and format back to canonical text, so that
formatting a parsed expression and parsing it again gives the same tree.
"""

from collections.abc import Callable
from fractions import Fraction

from pydantic import BaseModel, ConfigDict

from ..algebra.quantities import Quantity, QuantitySpace, q_add, q_inv, q_mul, q_pow, q_sub

Lookup = Callable[["Name"], Quantity]


class Node(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def evaluate(self, space: QuantitySpace, lookup: Lookup) -> Quantity:
        raise NotImplementedError

    def format(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.format()


class Number(Node):
    value: Fraction
    text: str
    "The literal as written; decimals and p/q rationals are kept verbatim."

    def evaluate(self, space, lookup):
        return space.quantity(self.value)

    def format(self):
        return self.text


class Name(Node):
    name: str
    line: int = 1
    column: int = 1

    def evaluate(self, space, lookup):
        return lookup(self)

    def format(self):
        return self.name


class Group(Node):
    inner: Node

    def evaluate(self, space, lookup):
        return self.inner.evaluate(space, lookup)

    def format(self):
        return f"({self.inner.format()})"


class Power(Node):
    base: Node
    exponent: int

    def evaluate(self, space, lookup):
        return q_pow(self.base.evaluate(space, lookup), self.exponent)

    def format(self):
        return f"{self.base.format()}^{self.exponent}"


class Reciprocal(Node):
    factor: Node

    def evaluate(self, space, lookup):
        return q_inv(self.factor.evaluate(space, lookup))

    def format(self):
        return f"/{self.factor.format()}"


class Product(Node):
    "Juxtaposed factors, an optional leading number among them."

    factors: tuple[Node, ...]

    def evaluate(self, space, lookup):
        result = space.one()
        for factor in self.factors:
            result = q_mul(result, factor.evaluate(space, lookup))
        return result

    def format(self):
        return " ".join(factor.format() for factor in self.factors)


class Negate(Node):
    term: Node

    def evaluate(self, space, lookup):
        q = self.term.evaluate(space, lookup)
        return space.quantity(-q.value, q.dimension)

    def format(self):
        return f"-{self.term.format()}"


class Sum(Node):
    first: Node
    rest: tuple[tuple[str, Node], ...]
    "Pairs of operator (``+`` or ``-``) and term."

    def evaluate(self, space, lookup):
        total = self.first.evaluate(space, lookup)
        for operator, term in self.rest:
            q = term.evaluate(space, lookup)
            total = q_add(total, q) if operator == "+" else q_sub(total, q)
        return total

    def format(self):
        return self.first.format() + "".join(
            f" {operator} {term.format()}" for operator, term in self.rest
        )
