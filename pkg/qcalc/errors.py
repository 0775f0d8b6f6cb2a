"""
Exceptions raised by the quantity calculus engine.

Every error carries the exit code that the ``qc`` command-line tool
reports for it: 1 for dimensional errors, 2 for parse and naming errors,
3 for algebraic rejections and 4 for internal consistency failures.
"""


class QuantityCalculusError(Exception):
    exit_code: int = 3


class BasisMismatch(QuantityCalculusError):
    """
    Two values live over different groups of dimensions.
    """

    exit_code = 1


class FiberMismatch(QuantityCalculusError):
    """
    Two quantities were combined additively but have different dimensions.
    """

    exit_code = 1

    def __init__(self, left, right, message: str | None = None):
        self.left = left
        self.right = right
        super().__init__(
            message or f"quantities have different dimensions: {left} vs {right}"
        )


class SpaceMismatch(QuantityCalculusError):
    exit_code = 1


class ParseError(QuantityCalculusError):
    """
    Malformed dimension, expression or system-file text. Positions are
    1-based.
    """

    exit_code = 2

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownGenerator(ParseError):
    pass


class UnknownName(ParseError):
    pass


class DuplicateName(ParseError):
    pass


class NonIntegerExponent(ParseError):
    pass


class NameCollision(QuantityCalculusError):
    exit_code = 2


class ZeroNotInvertible(QuantityCalculusError):
    pass


class ZeroUnit(QuantityCalculusError):
    pass


class TorsionQuotient(QuantityCalculusError):
    """
    The quotient of the group of dimensions by a subgroup is not free
    Abelian; ``invariant_factors`` lists the torsion witnesses (all >= 2).
    """

    def __init__(self, invariant_factors: tuple[int, ...]):
        self.invariant_factors = tuple(invariant_factors)
        super().__init__(
            "quotient group has torsion, invariant factors "
            f"[{', '.join(str(d) for d in self.invariant_factors)}]"
        )


class ConflictingSection(QuantityCalculusError):
    pass


class NotCoherent(QuantityCalculusError):
    pass


class NotRepresentable(QuantityCalculusError):
    pass


class ZeroHomomorphism(QuantityCalculusError):
    pass


class InternalConsistencyError(QuantityCalculusError):
    exit_code = 4
