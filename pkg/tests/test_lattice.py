"""
Tests for integer matrices, normal forms and subgroups, checked against
sympy determinants.
"""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from qcalc.algebra.dimensions import DimBasis
from qcalc.algebra.lattice import (
    IntMatrix,
    Subgroup,
    hnf,
    kernel_basis,
    membership,
    quotient_structure,
    snf,
    solve,
)
from strategies import matrices, square_matrices

PLANCK = IntMatrix(
    [
        [1, -1, 0, 0, 0],  # c
        [2, -1, 1, 0, 0],  # h
        [3, -2, -1, 0, 0],  # G
        [3, -2, 1, -2, 0],  # k_C
        [2, -2, 1, 0, -1],  # k_B
    ]
)


def determinantal_divisors(m: IntMatrix) -> list[int]:
    "gcd of all k x k minors for k = 1, 2, ..., computed with sympy."
    sym = Matrix(m.tolist())
    divisors = []

    for k in range(1, min(m.shape) + 1):
        minors = [
            int(sym.extract(list(rows), list(cols)).det())
            for rows in itertools.combinations(range(m.rows), k)
            for cols in itertools.combinations(range(m.cols), k)
        ]
        divisor = math.gcd(*minors)
        if divisor == 0:
            break
        divisors.append(divisor)

    return divisors


def invariant_factors_oracle(m: IntMatrix) -> tuple[int, ...]:
    divisors = [1] + determinantal_divisors(m)
    return tuple(divisors[k] // divisors[k - 1] for k in range(1, len(divisors)))


@settings(max_examples=500, deadline=None)
@given(matrices())
def test_smith_decomposition(m):
    d = snf(m)

    assert d.u @ m @ d.v == d.s
    assert abs(d.u.determinant()) == 1
    assert abs(d.v.determinant()) == 1
    assert d.v @ d.v_inverse == IntMatrix.identity(m.cols)

    for i in range(m.rows):
        for j in range(m.cols):
            if i != j:
                assert d.s[i, j] == 0

    factors = d.invariant_factors
    assert all(x > 0 for x in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    assert all(x == 0 for x in d.diagonal[len(factors) :])
    assert factors == invariant_factors_oracle(m)


@settings(max_examples=200, deadline=None)
@given(square_matrices())
def test_determinant_matches_sympy(m):
    assert m.determinant() == int(Matrix(m.tolist()).det())


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_hermite_form(m):
    h = hnf(m)

    # Same row lattice: each side's rows are integer combinations of the other's.
    for i in range(m.rows):
        assert solve(h, m.row(i)) is not None if h.rows else not any(m.row(i))
    for i in range(h.rows):
        assert solve(m, h.row(i)) is not None

    pivots = []
    for i in range(h.rows):
        row = h.row(i)
        pivot = next(j for j, x in enumerate(row) if x != 0)
        assert row[pivot] > 0
        pivots.append(pivot)
        for k in range(i):
            assert 0 <= h[k, pivot] < row[pivot]

    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    assert h.rows == snf(m).rank


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_kernel_basis(m):
    kernel = kernel_basis(m)

    assert kernel.rows == m.rows - snf(m).rank
    for i in range(kernel.rows):
        assert not any(m.apply(kernel.row(i)))


@settings(max_examples=300, deadline=None)
@given(matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve(m, x):
    b = m.apply(x[: m.rows])
    solution = solve(m, b)

    assert solution is not None
    assert m.apply(solution) == b


def square_lattices(n):
    return st.lists(
        st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n
    ).filter(lambda rows: Matrix(rows).det() != 0)


@pytest.mark.parametrize("n", [2, 3])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_membership_against_rational_solve(n, data):
    rows = data.draw(square_lattices(n))
    basis = DimBasis(generators=("L", "T", "M")[:n])
    sub = Subgroup.from_matrix(basis, IntMatrix(rows))
    inverse = Matrix(rows).inv()

    for target in itertools.product(range(-3, 4), repeat=n):
        rational = Matrix([list(target)]) * inverse
        certificate = membership(sub, basis.dimension(target))

        assert bool(certificate) == all(x.is_integer for x in rational)
        if certificate:
            assert sub.hnf_basis.apply(certificate.coordinates) == target


@pytest.mark.parametrize("n", [2, 3])
@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_membership_finds_small_combinations(n, data):
    rows = data.draw(
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=n)
    )
    basis = DimBasis(generators=("L", "T", "M")[:n])
    sub = Subgroup.from_matrix(basis, IntMatrix(rows, cols=n))

    for coefficients in itertools.product(range(-2, 3), repeat=len(rows)):
        target = tuple(
            sum(c * row[j] for c, row in zip(coefficients, rows)) for j in range(n)
        )
        assert sub.contains(basis.dimension(target))


def test_planck_constants_have_torsion():
    d = snf(PLANCK)

    assert PLANCK.determinant() == -4
    assert d.diagonal == (1, 1, 1, 2, 2)
    assert invariant_factors_oracle(PLANCK) == (1, 1, 1, 2, 2)

    structure = quotient_structure(
        Subgroup.from_matrix(DimBasis(generators=("L", "T", "M", "Q", "Th")), PLANCK)
    )
    assert not structure.is_free
    assert structure.torsion == (2, 2)
    assert structure.free_rank == 0


def test_square_of_length_has_torsion():
    basis = DimBasis(generators=("L", "T"))
    structure = quotient_structure(Subgroup.generated_by(basis, [basis.dimension((2, 0))]))

    assert structure.torsion == (2,)


def test_speed_of_light_quotient_structure():
    basis = DimBasis(generators=("L", "T"))
    structure = quotient_structure(Subgroup.generated_by(basis, [basis.dimension((1, -1))]))

    assert structure.is_free
    assert structure.free_rank == 1
    assert structure.complement() == [(0, 1)]
    assert structure.project((1, 0)) == ((1,), (1,))
    assert structure.subgroup_part((1, 0)) == (1, -1)


@given(matrices(max_size=3, bound=3))
def test_adapted_basis_splits_exponents(m):
    basis = DimBasis(generators=("L", "T", "M")[: m.cols])
    structure = quotient_structure(Subgroup.from_matrix(basis, m))
    assert structure.free_rank + structure.lattice_rank == basis.rank

    for exponents in itertools.product(range(-2, 3), repeat=m.cols):
        head, tail = structure.project(exponents)
        along = structure.subgroup_part(exponents)
        rest = [e - a for e, a in zip(exponents, along)]
        free = [
            sum(n * row[j] for n, row in zip(tail, structure.complement()))
            for j in range(m.cols)
        ]
        assert rest == free


def test_unimodular_inverse():
    m = IntMatrix([[2, 1], [1, 1]])
    assert m @ m.inverse() == IntMatrix.identity(2)

    with pytest.raises(ValueError):
        IntMatrix([[2, 0], [0, 1]]).inverse()


def test_empty_shapes():
    empty = IntMatrix([], cols=3)

    assert hnf(empty).shape == (0, 3)
    assert snf(empty).rank == 0
    assert kernel_basis(IntMatrix([], cols=0)).shape == (0, 0)
    assert IntMatrix.identity(0).determinant() == 1
    assert Subgroup.trivial(DimBasis(generators=("L",))).rank == 0
    assert Subgroup.whole(DimBasis(generators=("L", "T"))).rank == 2
