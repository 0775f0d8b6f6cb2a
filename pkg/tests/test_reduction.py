"""
Tests for reducing whole systems to natural units.
"""

from fractions import Fraction

import pytest

from qcalc.errors import UnknownName
from qcalc.system.parser import parse_system
from qcalc.system.reduction import reduce_system
from qcalc.system.report import render_decimal, render_value


def test_mechanics_by_standard_gravity(mechanics):
    reduction = reduce_system(mechanics, ["g0"])
    system = reduction.system

    assert [(name, str(dimension)) for name, dimension in reduction.classes()] == [
        ("L", "T^2"),
        ("T", "T"),
        ("M", "M"),
    ]
    assert [unit.name for unit in system.units if unit.base] == ["s", "kg"]
    assert system.quantity("g0") == system.space.one()
    assert system.quantity("m").value == Fraction(20000, 196133)


def test_reduced_systems_roundtrip(kinematics, mechanics):
    for reduction in (reduce_system(kinematics, ["c"]), reduce_system(mechanics, ["g0"])):
        text = reduction.system.to_text()
        again = parse_system(text)

        assert again.to_text() == text
        for unit in reduction.system.units:
            assert again.quantity(unit.name).value == reduction.system.quantity(unit.name).value


def test_acceleration_constant():
    system = parse_system(
        "system s\ndimension L\ndimension T\nunit m : L\nunit s : T\nconstant a = 2 m s^-2\n"
    )
    reduction = reduce_system(system, ["a"])

    assert reduction.system.rank == 1
    assert reduction.system.quantity("a") == reduction.system.space.one()
    assert reduction.system.quantity("m").value == Fraction(1, 2)


def test_unknown_constants(kinematics):
    with pytest.raises(UnknownName):
        reduce_system(kinematics, ["h"])


def test_decimal_rendering():
    assert render_decimal(Fraction(5, 18)) == "0.277777777777778"
    assert render_decimal(Fraction(1, 299792458)) == "0.00000000333564095198152"
    assert render_decimal(Fraction(2, 3)) == "0.666666666666667"
    assert render_decimal(Fraction(1, 8)) == "0.125"
    assert render_value(Fraction(6)) == "6"
    assert render_value(Fraction(-1, 4)) == "-1/4 (~-0.25)"
