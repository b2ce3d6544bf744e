"""Exterior algebra on ``2n`` degree-one generators with exact rational coefficients.

Generators are numbered ``1..2n``; a basis monomial ``e_{i1} ^ ... ^ e_{ik}`` is the
strictly increasing tuple ``(i1, ..., ik)`` and the empty tuple is the unit.

>>> e1, e2 = Form.generator(4, 1), Form.generator(4, 2)
>>> wedge(e1, e2)
Form(4, 'e12')
>>> contract(2, wedge(e1, e2))
Form(4, '-e1')
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

MultiIndex = tuple

Scalar = int | Fraction


def sort_with_sign(indices: Iterable[int]) -> tuple[int, MultiIndex]:
    """Sort a generator sequence; return ``(sign, sorted)`` with sign 0 on repeats."""
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, ()
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign, tuple(sorted(items))


@lru_cache(maxsize=None)
def _merge(left: MultiIndex, right: MultiIndex) -> tuple[int, MultiIndex]:
    if set(left) & set(right):
        return 0, ()
    inversions = sum(1 for a in left for b in right if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(left + right))


@lru_cache(maxsize=None)
def basis(dim: int, degree: int) -> tuple[MultiIndex, ...]:
    """Basis monomials of degree ``degree`` in lexicographic order."""
    if degree < 0 or degree > dim:
        return ()
    return tuple(combinations(range(1, dim + 1), degree))


@lru_cache(maxsize=None)
def basis_position(dim: int, degree: int) -> dict:
    return {index: pos for pos, index in enumerate(basis(dim, degree))}


def monomial_label(index: MultiIndex) -> str:
    if not index:
        return "1"
    sep = "" if max(index) < 10 else "_"
    return "e" + sep.join(str(i) for i in index)


class Form:
    """An element of the exterior algebra; treated as immutable once built."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[MultiIndex, Scalar] | None = None):
        if dim < 0:
            raise ValueError("ambient dimension must be non-negative")
        self.dim = dim
        clean = {}
        for index, coeff in (terms or {}).items():
            if coeff == 0:
                continue
            if any(a >= b for a, b in zip(index, index[1:])):
                raise ValueError(f"multi-index {index} is not strictly increasing")
            if index and (index[0] < 1 or index[-1] > dim):
                raise ValueError(f"multi-index {index} out of range for dimension {dim}")
            clean[tuple(index)] = Fraction(coeff)
        self.terms = clean

    @classmethod
    def _trusted(cls, dim: int, terms: dict) -> "Form":
        """Build from canonical multi-indices without validation; zeros are dropped."""
        form = object.__new__(cls)
        form.dim = dim
        form.terms = {k: v for k, v in terms.items() if v}
        return form

    @classmethod
    def zero(cls, dim: int) -> "Form":
        return cls(dim)

    @classmethod
    def scalar(cls, dim: int, value: Scalar) -> "Form":
        return cls(dim, {(): value})

    @classmethod
    def generator(cls, dim: int, i: int) -> "Form":
        return cls.monomial(dim, (i,))

    @classmethod
    def monomial(cls, dim: int, indices: Iterable[int], coeff: Scalar = 1) -> "Form":
        """Monomial from generators in any order, sign-corrected to canonical order."""
        indices = tuple(indices)
        if any(i < 1 or i > dim for i in indices):
            raise ValueError(f"generator index out of range in {indices}")
        sign, index = sort_with_sign(indices)
        return cls(dim, {index: sign * Fraction(coeff)} if sign else {})

    @classmethod
    def from_vector(cls, dim: int, degree: int, vector) -> "Form":
        return cls(dim, {index: c for index, c in zip(basis(dim, degree), vector) if c})

    def to_vector(self, degree: int) -> list[Fraction]:
        positions = basis_position(self.dim, degree)
        out = [Fraction(0)] * len(positions)
        for index, coeff in self.terms.items():
            if len(index) != degree:
                raise ValueError(f"form has a component outside degree {degree}")
            out[positions[index]] = coeff
        return out

    def degrees(self) -> set[int]:
        return {len(index) for index in self.terms}

    @property
    def degree(self) -> int:
        """Degree of a homogeneous form (the zero form reports -1)."""
        found = self.degrees()
        if len(found) > 1:
            raise ValueError(f"form is not homogeneous (degrees {sorted(found)})")
        return found.pop() if found else -1

    def is_homogeneous_of(self, degree: int) -> bool:
        return all(len(index) == degree for index in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[MultiIndex, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0])))

    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected a Form, got {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"ambient dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        terms = dict(self.terms)
        for index, coeff in other.terms.items():
            terms[index] = terms.get(index, 0) + coeff
        return Form._trusted(self.dim, terms)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form._trusted(self.dim, {k: -v for k, v in self.terms.items()})

    def __mul__(self, scalar: Scalar) -> "Form":
        if isinstance(scalar, Form):
            return NotImplemented
        scalar = Fraction(scalar)
        return Form._trusted(self.dim, {k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "Form":
        return self * (1 / Fraction(scalar))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Form.scalar(self.dim, other)
        if not isinstance(other, Form):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for index, coeff in self:
            label = monomial_label(index)
            if index and abs(coeff) == 1:
                text = label
            elif index:
                text = f"{abs(coeff)}*{label}"
            else:
                text = str(abs(coeff))
            parts.append(("-" if coeff < 0 else "+", text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"Form({self.dim}, {str(self)!r})"


def wedge(*forms: Form) -> Form:
    if not forms:
        raise ValueError("wedge needs at least one factor")
    result = forms[0]
    for other in forms[1:]:
        result._check(other)
        terms: dict = {}
        for left, a in result.terms.items():
            for right, b in other.terms.items():
                sign, index = _merge(left, right)
                if sign:
                    terms[index] = terms.get(index, 0) + sign * a * b
        result = Form._trusted(result.dim, terms)
    return result


def contract(i: int, a: Form) -> Form:
    """Interior product with the ``i``-th coordinate vector (a degree -1 derivation)."""
    if i < 1 or i > a.dim:
        raise ValueError(f"generator index {i} out of range for dimension {a.dim}")
    terms: dict = {}
    for index, coeff in a.terms.items():
        if i in index:
            pos = index.index(i)
            rest = index[:pos] + index[pos + 1:]
            terms[rest] = terms.get(rest, 0) + (-coeff if pos % 2 else coeff)
    return Form._trusted(a.dim, terms)


def degree_component(a: Form, k: int) -> Form:
    return Form._trusted(a.dim, {index: c for index, c in a.terms.items() if len(index) == k})


def dimension(dim: int, degree: int) -> int:
    return comb(dim, degree) if 0 <= degree <= dim else 0


def random_form(seed: int | random.Random, dim: int, degree: int, bound: int = 3) -> Form:
    """Reproducible homogeneous form with integer coefficients in ``[-bound, bound]``."""
    if degree < 0 or degree > dim:
        raise ValueError(f"degree {degree} outside 0..{dim}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return Form(dim, {index: rng.randint(-bound, bound) for index in basis(dim, degree)})


def sum_forms(dim: int, forms: Iterable[Form]) -> Form:
    terms: dict = {}
    for form in forms:
        for index, coeff in form.terms.items():
            terms[index] = terms.get(index, 0) + coeff
    return Form._trusted(dim, terms)
