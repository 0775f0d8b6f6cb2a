"""
Tests for sections (systems of units), numerical values and conversion.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from qcalc.algebra.quantities import QuantitySpace, q_mul
from qcalc.algebra.units import (
    Character,
    Section,
    coherence_witness,
    convert,
    maxwell_decompose,
    nu,
    reconstruct,
    unit_of,
)
from qcalc.errors import BasisMismatch, FiberMismatch, ZeroUnit
from strategies import (
    characters,
    dimensions,
    incoherent_sections,
    nonzero_values,
    quantities,
    sections,
    space_of_rank,
)

SPACE = space_of_rank(3)


@settings(max_examples=1000)
@given(quantities(SPACE), sections(SPACE))
def test_reconstruction(q, sigma):
    value, unit = maxwell_decompose(q, sigma)

    assert reconstruct(q, sigma) == q
    assert value * unit == q
    assert unit.dimension == q.dimension


@settings(max_examples=1000)
@given(characters(SPACE), quantities(SPACE), quantities(SPACE))
def test_coherent_sections_are_multiplicative(chi, q, r):
    sigma = Section.coherent(SPACE, chi)

    assert nu(q_mul(q, r), sigma) == nu(q, sigma) * nu(r, sigma)
    assert unit_of(q_mul(q, r), sigma) == q_mul(unit_of(q, sigma), unit_of(r, sigma))
    assert sigma(q.dimension * r.dimension) == sigma(q.dimension) * sigma(r.dimension)
    assert sigma(SPACE.basis.identity()) == SPACE.one()
    assert coherence_witness(sigma) is None


@settings(max_examples=200)
@given(incoherent_sections(SPACE))
def test_incoherent_sections_have_witnesses(sigma):
    assert not sigma.is_coherent

    a, b = coherence_witness(sigma)
    q, r = sigma(a), sigma(b)

    assert nu(q, sigma) == nu(r, sigma) == 1
    assert nu(q_mul(q, r), sigma) != nu(q, sigma) * nu(r, sigma)
    assert unit_of(q_mul(q, r), sigma) != q_mul(unit_of(q, sigma), unit_of(r, sigma))


@given(characters(SPACE), dimensions(SPACE), dimensions(SPACE))
def test_character_is_a_homomorphism(chi, a, b):
    assert chi(a * b) == chi(a) * chi(b)
    assert (chi * chi.inverse())(a) == 1


def test_numerical_value_depends_on_the_unit():
    space = QuantitySpace.over("L")
    length = space.quantity(6, space.dimension(L=1))
    metres = Section.coherent(space)
    feet = Section.from_units(space, {"L": Fraction(3048, 10000)})

    assert nu(length, metres) == 6
    assert nu(length, feet) == Fraction(6 * 10000, 3048)


def test_convert():
    space = QuantitySpace.over("L", "T")
    km_per_h = space.quantity(Fraction(1000, 3600), space.dimension(L=1, T=-1))
    m_per_s = space.quantity(1, space.dimension(L=1, T=-1))

    assert convert(km_per_h, m_per_s) == Fraction(5, 18)
    assert convert(m_per_s, m_per_s) == 1

    with pytest.raises(FiberMismatch):
        convert(space.quantity(1, space.dimension(L=1)), space.quantity(1, space.dimension(T=1)))

    with pytest.raises(ZeroUnit):
        convert(m_per_s, space.zero(m_per_s.dimension))


@given(quantities(SPACE), nonzero_values, sections(SPACE))
def test_convert_agrees_with_any_section_through_the_unit(q, unit_value, sigma):
    unit = SPACE.quantity(unit_value, q.dimension)
    through_unit = sigma.with_override(unit.dimension, unit.value)

    assert convert(q, unit) == nu(q, through_unit)
    assert unit_of(q, through_unit) == unit


def test_sections_never_pick_zeros():
    space = QuantitySpace.over("L")

    with pytest.raises(ZeroUnit):
        Character(basis=space.basis, values=(0,))

    with pytest.raises(ZeroUnit):
        Section.coherent(space).with_override(space.dimension(L=1), 0)


def test_override_at_the_identity_is_witnessed():
    space = QuantitySpace.over("L")
    sigma = Section.coherent(space).with_override(space.basis.identity(), 2)

    assert coherence_witness(sigma) == (space.basis.identity(), space.basis.identity())


def test_override_agreeing_with_the_character_is_coherent():
    space = QuantitySpace.over("L", "T")
    sigma = Section.from_units(space, {"L": 2}).with_override(space.dimension(L=2), 4)

    assert sigma.is_coherent
    assert coherence_witness(sigma) is None


def test_witness_skips_overridden_powers():
    space = QuantitySpace.over("L")
    length = space.dimension(L=1)
    sigma = (
        Section.coherent(space)
        .with_override(length, 2)
        .with_override(length**2, 3)
        .with_override(length**3, 5)
    )

    a, b = coherence_witness(sigma)

    assert a == length
    assert b == length**4
    assert sigma.value_at(a * b) != sigma.value_at(a) * sigma.value_at(b)


def test_sections_belong_to_one_space():
    space = QuantitySpace.over("L")
    other = QuantitySpace.over("T")

    with pytest.raises(BasisMismatch):
        nu(other.one(), Section.coherent(space))
