"""
Recursive-descent parsing of quantity expressions and system-definition
files.

Expressions:

    expr   := term (("+" | "-") term)*
    term   := "-"? NUMBER? factor*            (not empty)
    factor := NAME power? | "(" expr ")" power? | "/" factor
    power  := "^" SIGNED_INT
    NUMBER := INT | INT "." DIGITS | INT "/" POSINT

System files hold one declaration per line, ``#`` starting a comment:

    system NAME
    dimension NAME
    unit NAME : DIM_EXPR
    unit NAME : DIM_EXPR = EXPR
    constant NAME = EXPR
"""

import logging
import re
from fractions import Fraction

from ..algebra.dimensions import NAME_PATTERN, DimBasis, dim_parse
from ..algebra.quantities import Quantity, QuantitySpace
from ..errors import (
    DuplicateName,
    FiberMismatch,
    NonIntegerExponent,
    ParseError,
    ZeroUnit,
)
from .definition import ConstantDef, SystemDef, UnitDef
from .expressions import (
    Group,
    Name,
    Negate,
    Node,
    Number,
    Power,
    Product,
    Reciprocal,
    Sum,
)

logger = logging.getLogger(__name__)

TOKEN = re.compile(
    rf"\s*(?:(?P<number>[0-9]+(?:\.[0-9]+|/[0-9]+)?)|(?P<name>{NAME_PATTERN})|(?P<symbol>[-+^()/]))"
)
SYSTEM_LINE = re.compile(rf"system\s+({NAME_PATTERN})\s*$")
DIMENSION_LINE = re.compile(rf"dimension\s+({NAME_PATTERN})\s*$")
UNIT_LINE = re.compile(rf"unit\s+({NAME_PATTERN})\s*:\s*([^=]*?)\s*(?:=\s*(.*?)\s*)?$")
CONSTANT_LINE = re.compile(rf"constant\s+({NAME_PATTERN})\s*=\s*(.*?)\s*$")


class Token:
    __slots__ = ("kind", "text", "column")

    def __init__(self, kind: str, text: str, column: int):
        self.kind = kind
        self.text = text
        self.column = column


def tokenize(text: str, line: int = 1, offset: int = 0) -> list[Token]:
    tokens = []
    position = 0

    while position < len(text):
        if text[position:].isspace():
            break

        match = TOKEN.match(text, position)

        if match is None:
            column = offset + len(text) - len(text[position:].lstrip()) + 1
            raise ParseError(
                f"unexpected character {text[position:].lstrip()[0]!r}",
                line=line,
                column=column,
            )

        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), offset + match.start(kind) + 1))
        position = match.end()

    tokens.append(Token("end", "", offset + len(text) + 1))
    return tokens


class ExpressionParser:
    def __init__(self, text: str, line: int = 1, offset: int = 0):
        self.tokens = tokenize(text, line, offset)
        self.index = 0
        self.line = line

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def at(self, kind: str, text: str | None = None) -> bool:
        token = self.current
        return token.kind == kind and (text is None or token.text == text)

    def error(self, message: str, token: Token | None = None, cls=ParseError):
        token = token or self.current
        return cls(message, line=self.line, column=token.column)

    def parse(self) -> Node:
        node = self.expression()

        if not self.at("end"):
            raise self.error(f"unexpected {self.current.text!r}")

        return node

    def expression(self) -> Node:
        first = self.term()
        rest = []

        while self.at("symbol", "+") or self.at("symbol", "-"):
            operator = self.advance().text
            rest.append((operator, self.term()))

        return Sum(first=first, rest=tuple(rest)) if rest else first

    def term(self) -> Node:
        if self.at("symbol", "-"):
            self.advance()
            return Negate(term=self.term())

        factors = []

        if self.at("number"):
            token = self.advance()
            try:
                value = Fraction(token.text)
            except ZeroDivisionError:
                raise self.error("zero denominator", token)
            factors.append(Number(value=value, text=token.text))

        while self.at("name") or self.at("symbol", "(") or self.at("symbol", "/"):
            factors.append(self.factor())

        if not factors:
            raise self.error("expected a number, a name or '('")

        return factors[0] if len(factors) == 1 else Product(factors=tuple(factors))

    def factor(self) -> Node:
        token = self.advance()

        if token.kind == "name":
            base = Name(name=token.text, line=self.line, column=token.column)
        elif token.text == "(":
            inner = self.expression()
            if not self.at("symbol", ")"):
                raise self.error("expected ')'")
            self.advance()
            base = Group(inner=inner)
        elif token.text == "/":
            if not (self.at("name") or self.at("symbol", "(")):
                raise self.error("expected a name or '(' after '/'")
            return Reciprocal(factor=self.factor())
        else:
            raise self.error(f"unexpected {token.text!r}", token)

        if self.at("symbol", "^"):
            return Power(base=base, exponent=self.exponent())

        return base

    def exponent(self) -> int:
        self.advance()
        sign = 1

        if self.at("symbol", "-") or self.at("symbol", "+"):
            sign = -1 if self.advance().text == "-" else 1

        token = self.current

        if token.kind == "symbol" and token.text == "(":
            raise self.error("exponents must be integers", cls=NonIntegerExponent)
        if token.kind != "number":
            raise self.error("expected an integer exponent")
        if not token.text.isdigit():
            raise self.error("exponents must be integers", cls=NonIntegerExponent)

        self.advance()
        return sign * int(token.text)


def parse_expression(text: str, line: int = 1, offset: int = 0) -> Node:
    return ExpressionParser(text, line, offset).parse()


def parse_quantity(text: str, system: SystemDef) -> Quantity:
    return parse_expression(text).evaluate(system.space, system.lookup)


def strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def parse_system(text: str) -> SystemDef:
    """
    Parse a system-definition file.

    Dimensions are collected first, so they may be declared anywhere in
    the file; units and constants are then read in order and may only
    refer to names declared above them.
    """

    lines = [(number, strip_comment(raw)) for number, raw in enumerate(text.splitlines(), 1)]
    lines = [(number, content) for number, content in lines if content.strip()]

    name = None
    generators: list[str] = []
    generator_lines: dict[str, int] = {}

    for number, content in lines:
        indent = len(content) - len(content.lstrip())
        content = content.strip()
        keyword = content.split()[0]

        if keyword == "system":
            if (match := SYSTEM_LINE.match(content)) is None:
                raise ParseError("expected 'system NAME'", line=number, column=indent + 1)
            if name is not None:
                raise DuplicateName("the system is already named", line=number, column=indent + 1)
            name = match.group(1)
        elif keyword == "dimension":
            if (match := DIMENSION_LINE.match(content)) is None:
                raise ParseError("expected 'dimension NAME'", line=number, column=indent + 1)
            generator = match.group(1)
            if generator in generator_lines:
                raise DuplicateName(
                    f"dimension '{generator}' is already declared",
                    line=number,
                    column=indent + match.start(1) + 1,
                )
            generators.append(generator)
            generator_lines[generator] = number
        elif keyword not in ("unit", "constant"):
            raise ParseError(f"unknown declaration '{keyword}'", line=number, column=indent + 1)

    space = QuantitySpace(basis=DimBasis(generators=tuple(generators)), name=name or "Q")
    system = SystemDef(name=space.name, space=space)
    base_units: dict[str, str] = {}

    for number, content in lines:
        indent = len(content) - len(content.lstrip())
        content = content.strip()
        keyword = content.split()[0]

        if keyword == "unit":
            if (match := UNIT_LINE.match(content)) is None:
                raise ParseError(
                    "expected 'unit NAME : DIMENSION' or 'unit NAME : DIMENSION = EXPR'",
                    line=number,
                    column=indent + 1,
                )
            unit = parse_unit(system, match, number, indent, base_units)
            system = system.model_copy(update={"units": system.units + (unit,)})
        elif keyword == "constant":
            if (match := CONSTANT_LINE.match(content)) is None:
                raise ParseError(
                    "expected 'constant NAME = EXPR'", line=number, column=indent + 1
                )
            constant = parse_constant(system, match, number, indent)
            system = system.model_copy(update={"constants": system.constants + (constant,)})

    for generator in generators:
        if generator not in base_units:
            raise ParseError(
                f"dimension '{generator}' has no base unit",
                line=generator_lines[generator],
                column=1,
            )

    logger.debug(
        "Parsed system %s: rank %d, %d units, %d constants",
        system.name,
        system.rank,
        len(system.units),
        len(system.constants),
    )

    return system


def check_new_name(system: SystemDef, name: str, line: int, column: int):
    taken = {unit.name for unit in system.units} | {c.name for c in system.constants}
    if name in taken:
        raise DuplicateName(f"'{name}' is already defined", line=line, column=column)


def parse_unit(
    system: SystemDef, match: re.Match, line: int, indent: int, base_units: dict[str, str]
) -> UnitDef:
    name, dimension_text, expression_text = match.groups()
    check_new_name(system, name, line, indent + match.start(1) + 1)

    dimension = dim_parse(
        re.sub(r"\s+", " ", dimension_text),
        system.space.basis,
        line=line,
        offset=indent + match.start(2),
    )

    if expression_text is None:
        nonzero = [(g, n) for g, n in zip(system.space.basis.generators, dimension.exponents) if n]

        if len(nonzero) != 1 or nonzero[0][1] != 1:
            raise ParseError(
                "a base unit must have a single generator as its dimension",
                line=line,
                column=indent + match.start(2) + 1,
            )

        generator = nonzero[0][0]

        if generator in base_units:
            raise DuplicateName(
                f"dimension '{generator}' already has base unit '{base_units[generator]}'",
                line=line,
                column=indent + match.start(1) + 1,
            )

        base_units[generator] = name
        return UnitDef(name=name, dimension=dimension, value=Fraction(1), base=True, line=line)

    expression = parse_expression(expression_text, line=line, offset=indent + match.start(3))
    q = expression.evaluate(system.space, system.lookup)

    if q.dimension != dimension:
        raise FiberMismatch(
            dimension,
            q.dimension,
            f"line {line}: unit '{name}' is declared as {dimension} but its value has "
            f"dimension {q.dimension}",
        )
    if q.is_zero():
        raise ZeroUnit(f"line {line}: unit '{name}' is zero")

    return UnitDef(
        name=name,
        dimension=dimension,
        value=q.value,
        expression=expression,
        line=line,
    )


def parse_constant(system: SystemDef, match: re.Match, line: int, indent: int) -> ConstantDef:
    name, expression_text = match.groups()
    check_new_name(system, name, line, indent + match.start(1) + 1)

    expression = parse_expression(expression_text, line=line, offset=indent + match.start(2))

    return ConstantDef(
        name=name,
        expression=expression,
        quantity=expression.evaluate(system.space, system.lookup),
        line=line,
    )
