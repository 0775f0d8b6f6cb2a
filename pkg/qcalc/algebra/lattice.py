"""
Integer matrices, their Hermite and Smith normal forms, and subgroups
(lattices) of a group of dimensions.

Matrices act on row vectors: a subgroup is generated by the rows of its
generator matrix, and a map of groups sends the exponent row ``x`` to
``x @ m``. All arithmetic is on Python integers held in numpy object
arrays, so nothing overflows.
"""

import logging
from collections.abc import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..errors import BasisMismatch
from .dimensions import DimBasis, Dimension

logger = logging.getLogger(__name__)


class IntMatrix:
    """
    An immutable ``rows x cols`` matrix of arbitrary-precision integers.
    Empty shapes (zero rows or zero columns) are legal.
    """

    _data: np.ndarray

    def __init__(self, entries: Iterable[Sequence[int]] = (), cols: int | None = None):
        rows = [tuple(row) for row in entries]

        if cols is None:
            if not rows:
                raise ValueError("The column count is required for a matrix with no rows.")
            cols = len(rows[0])

        data = np.empty((len(rows), cols), dtype=object)

        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"Row {i} has {len(row)} entries, expected {cols}.")
            for j, entry in enumerate(row):
                data[i, j] = int(entry)

        data.flags.writeable = False
        self._data = data

    @classmethod
    def from_array(cls, array: np.ndarray) -> "IntMatrix":
        matrix = cls.__new__(cls)
        data = np.empty(array.shape, dtype=object)
        data[...] = array
        data.flags.writeable = False
        matrix._data = data
        return matrix

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def array(self) -> np.ndarray:
        "A writable copy of the entries."
        data = np.empty(self._data.shape, dtype=object)
        data[...] = self._data
        return data

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(self._data[i])

    def tolist(self) -> list[list[int]]:
        return [list(self._data[i]) for i in range(self.rows)]

    def __getitem__(self, index: tuple[int, int]) -> int:
        return self._data[index]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}.")
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix.from_array(self._data @ other._data)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        "The row vector ``vector @ self``."
        if len(vector) != self.rows:
            raise ValueError(f"Vector of length {len(vector)} against {self.shape}.")
        if self.rows == 0:
            return (0,) * self.cols
        result = np.array(list(vector), dtype=object) @ self._data
        return tuple(int(x) for x in result)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_array(self._data.T)

    def select_rows(self, indices: Iterable[int]) -> "IntMatrix":
        return IntMatrix([self.row(i) for i in indices], cols=self.cols)

    def determinant(self) -> int:
        """
        Exact determinant by fraction-free (Bareiss) elimination.
        """

        if self.rows != self.cols:
            raise ValueError("Determinant of a non-square matrix.")

        n = self.rows
        a = self.tolist()
        sign = 1
        previous = 1

        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign

            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous

            previous = a[k][k]

        return sign * a[n - 1][n - 1] if n else 1

    def inverse(self) -> "IntMatrix":
        """
        Inverse of a unimodular matrix, from its Smith decomposition
        ``U A V = I``, so that ``A^-1 = V U``.
        """

        decomposition = snf(self)

        if self.rows != self.cols or any(d != 1 for d in decomposition.diagonal):
            raise ValueError("Only unimodular matrices have integer inverses.")

        return decomposition.v @ decomposition.u

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.tolist() == other.tolist()

    def __hash__(self):
        return hash((self.shape, tuple(tuple(row) for row in self.tolist())))

    def __repr__(self):
        return f"IntMatrix({self.tolist()}, cols={self.cols})"


class SnfDecomposition(BaseModel):
    """
    Smith decomposition ``U A V = S`` of an integer matrix ``A``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: IntMatrix
    "The decomposed matrix A."
    u: IntMatrix
    "Unimodular row transform, rows x rows."
    s: IntMatrix
    "Diagonal with nonnegative entries, each dividing the next nonzero one."
    v: IntMatrix
    "Unimodular column transform, cols x cols."
    v_inverse: IntMatrix
    "The inverse of V; its rows are a basis adapted to the row lattice of A."

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.s[i, i] for i in range(min(self.s.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)


def hnf(m: IntMatrix) -> IntMatrix:
    """
    Row-style Hermite normal form: positive pivots, entries above each
    pivot reduced into ``[0, pivot)``, zero rows removed. The result spans
    the same row lattice as ``m``.
    """

    a = m.array()
    rows, cols = a.shape
    pivot_row = 0

    for col in range(cols):
        if pivot_row == rows:
            break

        while True:
            candidates = [i for i in range(pivot_row, rows) if a[i, col] != 0]

            if not candidates:
                break

            smallest = min(candidates, key=lambda i: abs(a[i, col]))
            a[[pivot_row, smallest]] = a[[smallest, pivot_row]]

            for i in range(pivot_row + 1, rows):
                q = a[i, col] // a[pivot_row, col]
                if q:
                    a[i] -= q * a[pivot_row]

            if all(a[i, col] == 0 for i in range(pivot_row + 1, rows)):
                break

        if a[pivot_row, col] == 0:
            continue

        if a[pivot_row, col] < 0:
            a[pivot_row] = -a[pivot_row]

        for i in range(pivot_row):
            q = a[i, col] // a[pivot_row, col]
            if q:
                a[i] -= q * a[pivot_row]

        pivot_row += 1

    return IntMatrix.from_array(a[:pivot_row])


def snf(m: IntMatrix) -> SnfDecomposition:
    """
    Smith normal form by elementary row and column operations with gcd
    pivoting, tracking both unimodular transforms and the inverse of the
    column transform.
    """

    a = m.array()
    rows, cols = a.shape
    u = IntMatrix.identity(rows).array()
    v = IntMatrix.identity(cols).array()
    v_inverse = IntMatrix.identity(cols).array()

    def swap_rows(i, j):
        if i != j:
            a[[i, j]] = a[[j, i]]
            u[[i, j]] = u[[j, i]]

    def swap_cols(i, j):
        if i != j:
            a[:, [i, j]] = a[:, [j, i]]
            v[:, [i, j]] = v[:, [j, i]]
            v_inverse[[i, j]] = v_inverse[[j, i]]

    for t in range(min(rows, cols)):
        nonzero = [
            (i, j) for i in range(t, rows) for j in range(t, cols) if a[i, j] != 0
        ]

        if not nonzero:
            break

        i, j = min(nonzero, key=lambda ij: abs(a[ij]))
        swap_rows(t, i)
        swap_cols(t, j)

        while True:
            for i in range(t + 1, rows):
                q = a[i, t] // a[t, t]
                if q:
                    a[i] -= q * a[t]
                    u[i] -= q * u[t]

            for j in range(t + 1, cols):
                q = a[t, j] // a[t, t]
                if q:
                    a[:, j] -= q * a[:, t]
                    v[:, j] -= q * v[:, t]
                    v_inverse[t] += q * v_inverse[j]

            # Any remainder is smaller than the pivot, so pivoting on it
            # strictly shrinks the pivot.
            remainder = next((i for i in range(t + 1, rows) if a[i, t] != 0), None)
            if remainder is not None:
                swap_rows(t, remainder)
                continue

            remainder = next((j for j in range(t + 1, cols) if a[t, j] != 0), None)
            if remainder is not None:
                swap_cols(t, remainder)
                continue

            offending = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if a[i, j] % a[t, t] != 0
                ),
                None,
            )
            if offending is not None:
                a[t] += a[offending]
                u[t] += u[offending]
                continue

            break

        if a[t, t] < 0:
            a[t] = -a[t]
            u[t] = -u[t]

    logger.debug("Smith form of %dx%d matrix: diagonal %s", rows, cols, a.diagonal())

    return SnfDecomposition(
        source=m,
        u=IntMatrix.from_array(u),
        s=IntMatrix.from_array(a),
        v=IntMatrix.from_array(v),
        v_inverse=IntMatrix.from_array(v_inverse),
    )


def solve(m: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """
    A particular integer solution ``x`` of ``x @ m = b``, or None when
    there is none.
    """

    decomposition = snf(m)
    target = decomposition.v.apply(b)
    diagonal = decomposition.diagonal
    y = [0] * m.rows

    for i, c in enumerate(target):
        d = diagonal[i] if i < len(diagonal) else 0
        if d == 0:
            if c != 0:
                return None
        elif c % d != 0:
            return None
        else:
            y[i] = c // d

    return decomposition.u.apply(y)


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """
    Basis (in Hermite normal form) of the integer kernel of ``x -> x @ m``.
    """

    decomposition = snf(m)
    kernel = decomposition.u.select_rows(range(decomposition.rank, m.rows))
    return hnf(kernel)


class Membership(BaseModel):
    """
    Result of a membership test; truthy when the dimension is in the
    subgroup, in which case ``coordinates`` expresses it in the Hermite
    basis of the subgroup.
    """

    model_config = ConfigDict(frozen=True)

    member: bool
    coordinates: tuple[int, ...] | None = None

    def __bool__(self):
        return self.member


class Subgroup(BaseModel):
    """
    A subgroup of the group of dimensions over ``ambient``, given by
    generator rows. Subgroups of free Abelian groups are free, and
    ``hnf_basis`` is a basis of this one.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ambient: DimBasis
    "The group of dimensions this is a subgroup of."
    generators: IntMatrix
    "One generating dimension per row."
    hnf_basis: IntMatrix
    "Hermite normal form of the generators; independent rows."
    snf: SnfDecomposition
    "Smith decomposition of the generator matrix."

    @classmethod
    def from_matrix(cls, ambient: DimBasis, generators: IntMatrix) -> "Subgroup":
        if generators.cols != ambient.rank:
            raise BasisMismatch(
                f"Generator rows of length {generators.cols} over {ambient}."
            )

        return cls(
            ambient=ambient,
            generators=generators,
            hnf_basis=hnf(generators),
            snf=snf(generators),
        )

    @classmethod
    def generated_by(
        cls, ambient: DimBasis, dimensions: Iterable[Dimension]
    ) -> "Subgroup":
        rows = []

        for dimension in dimensions:
            if dimension.basis != ambient:
                raise BasisMismatch(f"Generator {dimension} is not over {ambient}.")
            rows.append(dimension.exponents)

        return cls.from_matrix(ambient, IntMatrix(rows, cols=ambient.rank))

    @classmethod
    def trivial(cls, ambient: DimBasis) -> "Subgroup":
        return cls.from_matrix(ambient, IntMatrix([], cols=ambient.rank))

    @classmethod
    def whole(cls, ambient: DimBasis) -> "Subgroup":
        return cls.from_matrix(ambient, IntMatrix.identity(ambient.rank))

    @property
    def rank(self) -> int:
        return self.hnf_basis.rows

    def basis_dimensions(self) -> list[Dimension]:
        return [
            self.ambient.dimension(self.hnf_basis.row(i)) for i in range(self.rank)
        ]

    def element(self, coordinates: Sequence[int]) -> Dimension:
        "The dimension with the given coordinates in the Hermite basis."
        return self.ambient.dimension(self.hnf_basis.apply(coordinates))

    def contains(self, dimension: Dimension) -> bool:
        return membership(self, dimension).member


def membership(sub: Subgroup, d: Dimension) -> Membership:
    """
    Back-substitution against the echelon rows of the Hermite basis.
    """

    if d.basis != sub.ambient:
        raise BasisMismatch(f"Dimension {d} is not over {sub.ambient}.")

    residual = list(d.exponents)
    coordinates = []

    for k in range(sub.rank):
        row = sub.hnf_basis.row(k)
        pivot_col = next(j for j, x in enumerate(row) if x != 0)
        q, r = divmod(residual[pivot_col], row[pivot_col])

        if r != 0:
            return Membership(member=False)

        coordinates.append(q)
        residual = [x - q * y for x, y in zip(residual, row)]

    if any(residual):
        return Membership(member=False)

    return Membership(member=True, coordinates=tuple(coordinates))


class QuotientStructure(BaseModel):
    """
    Structure of the quotient of the ambient group by a subgroup.

    The rows of ``adapted_basis`` form a basis of the ambient group in
    which the subgroup is spanned by ``d_i`` times the first
    ``lattice_rank`` rows; the remaining rows span a complement, and their
    classes are a basis of the free part of the quotient.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ambient: DimBasis
    lattice_rank: int
    "Rank of the subgroup."
    free_rank: int
    "Rank of the free part of the quotient."
    invariant_factors: tuple[int, ...]
    "Nonzero Smith invariant factors of the generator matrix."
    torsion: tuple[int, ...]
    "The invariant factors that are at least 2; empty iff the quotient is free."
    adapted_basis: IntMatrix
    "Unimodular, ambient.rank x ambient.rank."
    coordinates: IntMatrix
    "Inverse of ``adapted_basis``: exponent rows to adapted coordinates."

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def complement(self) -> list[tuple[int, ...]]:
        return [
            self.adapted_basis.row(i)
            for i in range(self.lattice_rank, self.ambient.rank)
        ]

    def project(
        self, exponents: Sequence[int]
    ) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """
        Split an exponent row into its coordinates on the subgroup part and
        on the complement (the free quotient part).
        """

        coordinates = self.coordinates.apply(exponents)
        return coordinates[: self.lattice_rank], coordinates[self.lattice_rank :]

    def subgroup_part(self, exponents: Sequence[int]) -> tuple[int, ...]:
        "Exponent row of the component of ``exponents`` along the subgroup."
        head, _ = self.project(exponents)
        rows = self.adapted_basis.select_rows(range(self.lattice_rank))
        return rows.apply(head)


def quotient_structure(sub: Subgroup) -> QuotientStructure:
    decomposition = sub.snf
    lattice_rank = decomposition.rank
    factors = decomposition.invariant_factors

    adapted = decomposition.v_inverse.array()
    coordinates = decomposition.v.array()

    # Sign-normalise the complement rows: first nonzero entry positive.
    for i in range(lattice_rank, sub.ambient.rank):
        leading = next((x for x in adapted[i] if x != 0), 0)
        if leading < 0:
            adapted[i] = -adapted[i]
            coordinates[:, i] = -coordinates[:, i]

    return QuotientStructure(
        ambient=sub.ambient,
        lattice_rank=lattice_rank,
        free_rank=sub.ambient.rank - lattice_rank,
        invariant_factors=factors,
        torsion=tuple(d for d in factors if d >= 2),
        adapted_basis=IntMatrix.from_array(adapted),
        coordinates=IntMatrix.from_array(coordinates),
    )
