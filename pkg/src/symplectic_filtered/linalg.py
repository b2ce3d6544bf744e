"""Exact linear algebra over the rationals.

Vectors are lists of :class:`fractions.Fraction`; matrices are lists of rows.
The heavy lifting (row reduction, nullspaces, inverses) is done by sympy's
``DomainMatrix`` over ``QQ``; this module only converts at the boundary and
adds the quotient-space bookkeeping used for cohomology.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = list
Matrix = list


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _domain(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    data = [[QQ(int(x.numerator), int(x.denominator)) for x in row] for row in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _from_domain(dm: DomainMatrix) -> Matrix:
    return [[_to_fraction(x) for x in row] for row in dm.to_list()]


def rank(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    if ncols == 0:
        return 0
    return _domain(rows, ncols).rank()


def rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[Matrix, list[int]]:
    """Nonzero rows of the reduced row echelon form, and the pivot columns."""
    if not rows or ncols == 0:
        return [], []
    reduced, pivots = _domain(rows, ncols).rref()
    return _from_domain(reduced)[: len(pivots)], list(pivots)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis of ``{x : M x = 0}`` in reduced echelon form."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    kernel = _domain(rows, ncols).nullspace()
    if kernel.shape[0] == 0:
        return []
    return rref_rows(_from_domain(kernel), ncols)[0]


def transpose(rows: Sequence[Sequence[Fraction]], nrows_out: int | None = None) -> Matrix:
    if not rows:
        return [[] for _ in range(nrows_out or 0)]
    return [list(col) for col in zip(*rows)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    cols = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def inverse(rows: Matrix) -> Matrix:
    n = len(rows)
    return _from_domain(_domain(rows, n).inv())


def solve(rows: Matrix, rhs: Vector, ncols: int) -> Vector | None:
    """One solution of ``M x = rhs`` or ``None`` when the system is inconsistent."""
    if ncols == 0:
        return [] if all(v == 0 for v in rhs) else None
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref_rows(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, col in zip(reduced, pivots):
        x[col] = row[ncols]
    return x


def span_contains(basis: Matrix, vector: Vector, ncols: int) -> bool:
    if all(v == 0 for v in vector):
        return True
    return rank(list(basis) + [list(vector)], ncols) == rank(basis, ncols)


class Subspace:
    """A subspace of ``Q^n`` with a fixed basis and fast coordinate extraction."""

    def __init__(self, basis: Matrix, ncols: int):
        self.ncols = ncols
        self.basis = [list(v) for v in basis]
        self.dim = len(self.basis)
        if self.dim:
            _, pivots = rref_rows(self.basis, ncols)
            if len(pivots) != self.dim:
                raise ValueError("basis vectors are linearly dependent")
            self._pivots = pivots
            square = [[v[c] for c in pivots] for v in self.basis]
            self._inverse = inverse(square)
        else:
            self._pivots, self._inverse = [], []

    def coordinates(self, vector: Vector) -> Vector | None:
        """Coordinates in ``basis``, or ``None`` when ``vector`` is outside the span."""
        if not self.dim:
            return [] if all(v == 0 for v in vector) else None
        restricted = [vector[c] for c in self._pivots]
        coords = [
            sum((restricted[i] * self._inverse[i][j] for i in range(self.dim)), Fraction(0))
            for j in range(self.dim)
        ]
        for k in range(self.ncols):
            total = sum((coords[j] * self.basis[j][k] for j in range(self.dim)), Fraction(0))
            if total != vector[k]:
                return None
        return coords


class Quotient:
    """``closed / exact`` with representatives chosen from an echelon basis of ``closed``.

    ``exact`` must lie inside ``closed``.
    """

    def __init__(self, closed: Matrix, exact: Matrix, ncols: int):
        self.ncols = ncols
        exact_basis, _ = rref_rows(exact, ncols) if exact else ([], [])
        closed_basis, _ = rref_rows(closed, ncols) if closed else ([], [])
        for v in exact_basis:
            if not span_contains(closed_basis, v, ncols):
                raise ValueError("exact subspace is not contained in the closed subspace")
        reps: Matrix = []
        current = rank(exact_basis, ncols)
        for v in closed_basis:
            trial = rank(exact_basis + reps + [v], ncols)
            if trial > current:
                reps.append(v)
                current = trial
        self.representatives = reps
        self.exact = exact_basis
        self.dim = len(reps)
        self._space = Subspace(reps + exact_basis, ncols)

    def coordinates(self, vector: Vector) -> Vector:
        """Class coordinates of a closed vector; raises if it is not closed."""
        coords = self._space.coordinates(vector)
        if coords is None:
            raise ValueError("vector is not closed")
        return coords[: self.dim]

    def is_zero(self, vector: Vector) -> bool:
        return all(c == 0 for c in self.coordinates(vector))
