"""
Tests for the group of dimensions.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcalc.algebra.dimensions import DimBasis, dim_format, dim_parse
from qcalc.errors import BasisMismatch, ParseError, UnknownGenerator
from strategies import exponent_rows

KINEMATICS = DimBasis(generators=("L", "T"))
MECHANICS = DimBasis(generators=("L", "T", "M"))


def dims(basis=MECHANICS):
    return exponent_rows(basis.rank).map(basis.dimension)


@given(dims(), dims(), dims())
def test_group_laws(a, b, c):
    one = MECHANICS.identity()

    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * one == a
    assert a * a.inv() == one
    assert a / b == a * b.inv()


@given(dims(), st.integers(-3, 3), st.integers(-3, 3))
def test_powers(a, m, n):
    assert a**m * a**n == a ** (m + n)
    assert (a**m) ** n == a ** (m * n)


@given(dims(), st.integers(-4, 4).filter(bool))
def test_no_torsion(a, n):
    assert (a**n == MECHANICS.identity()) == a.is_identity


@given(dims())
def test_format_parse_roundtrip(a):
    assert dim_parse(dim_format(a), MECHANICS) == a


def test_format():
    assert dim_format(KINEMATICS.dimension((1, -1))) == "L T^-1"
    assert dim_format(MECHANICS.dimension((2, -2, 1))) == "L^2 T^-2 M"
    assert dim_format(KINEMATICS.identity()) == "1"
    assert str(MECHANICS) == "<L, T, M>"


def test_parse_accumulates_repeated_generators():
    assert dim_parse("L^2 T L^-1", KINEMATICS) == KINEMATICS.dimension((1, 1))
    assert dim_parse("1", KINEMATICS).is_identity


def test_parse_errors_carry_positions():
    with pytest.raises(UnknownGenerator) as error:
        dim_parse("L T^-1 X", KINEMATICS)

    assert error.value.column == 8

    with pytest.raises(ParseError) as error:
        dim_parse("L  T", KINEMATICS, line=4, offset=10)

    assert (error.value.line, error.value.column) == (4, 13)

    with pytest.raises(ParseError):
        dim_parse("L^x", KINEMATICS)


def test_unknown_generator_lookup():
    with pytest.raises(UnknownGenerator):
        KINEMATICS.generator("M")


def test_bases_do_not_mix():
    with pytest.raises(BasisMismatch):
        KINEMATICS.generator("L") * MECHANICS.generator("L")


def test_generators_must_be_distinct():
    with pytest.raises(ValueError):
        DimBasis(generators=("L", "L"))


def test_trivial_group():
    trivial = DimBasis()
    assert trivial.rank == 0
    assert trivial.identity() * trivial.identity() == trivial.identity()
    assert dim_format(trivial.identity()) == "1"
