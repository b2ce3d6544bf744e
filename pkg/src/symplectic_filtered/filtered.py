"""Filtered forms, the operators d+, d-, the two-row complex and its cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import linalg
from .exterior import Form, MultiIndex, basis
from .model import Model


# -- operators --------------------------------------------------------------

def dpp_dpm(model: Model, b: Form) -> tuple[Form, Form]:
    """``(del+ B, del- B)`` for a primitive form: the r=0 and r=1 parts of ``dB``."""
    S = model.symplectic
    if S.Lambda(b):
        raise ValueError("dpp_dpm expects a primitive form")
    parts = S.decompose(model.d(b))
    stray = [r for r in parts if r > 1]
    if stray:
        raise ArithmeticError(f"dB has Lefschetz components at powers {stray}")
    zero = Form.zero(model.dim)
    return parts.get(0, zero), parts.get(1, zero)


def _partial(model: Model, which: int) -> Callable[[MultiIndex], Form]:
    S = model.symplectic

    def image_of(index: MultiIndex) -> Form:
        total = Form.zero(model.dim)
        monomial = Form._trusted(model.dim, {index: Fraction(1)})
        for r, b in S.decompose(monomial).items():
            total = total + S.L(dpp_dpm(model, b)[which], r)
        return total

    return image_of


def partial_plus(model: Model, a: Form) -> Form:
    """``del+`` extended to ``omega^r B`` as ``omega^r del+ B``."""
    return model.symplectic.apply(a, "partial_plus", _partial(model, 0))


def partial_minus(model: Model, a: Form) -> Form:
    """``del-`` extended to ``omega^r B`` as ``omega^r del- B``."""
    return model.symplectic.apply(a, "partial_minus", _partial(model, 1))


def partial_plus_minus(model: Model, a: Form) -> Form:
    return partial_plus(model, partial_minus(model, a))


def _require_filtered(model: Model, p: int, a: Form) -> None:
    if not model.symplectic.is_filtered(p, a):
        raise ValueError(f"form is not {p}-filtered")


def d_plus(model: Model, p: int, a: Form, check: bool = True) -> Form:
    if check:
        _require_filtered(model, p, a)
    return model.symplectic.project(p, model.d(a))


def d_minus(model: Model, p: int, a: Form, check: bool = True) -> Form:
    if check:
        _require_filtered(model, p, a)
    S = model.symplectic
    return S.star_r(model.d(S.star_r(a)))


# -- cohomology slots --------------------------------------------------------

@dataclass
class Slot:
    """One node of a complex: a form space with a chosen basis and its cohomology there.

    ``coords`` maps a form of the space to its coordinates in ``basis``;
    ``differential`` is the outgoing map used when chasing diagrams.
    """

    label: str
    degree: int
    ambient: int
    basis: list[Form]
    coords: Callable[[Form], list[Fraction]]
    quotient: linalg.Quotient
    differential: Callable[[Form], Form] | None = None

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def representatives(self) -> list[Form]:
        return [self.form_of(v) for v in self.quotient.representatives]

    def form_of(self, coords) -> Form:
        total: dict = {}
        for b, c in zip(self.basis, coords):
            if c:
                for index, value in b.terms.items():
                    total[index] = total.get(index, 0) + c * value
        return Form._trusted(self.ambient, total)

    def class_of(self, form: Form) -> list[Fraction]:
        """Class coordinates of a closed form; raises when it is not closed."""
        if not form.is_homogeneous_of(self.degree) and form:
            raise ValueError(f"{self.label}: form of the wrong degree")
        return self.quotient.coordinates(self.coords(form))


def _columns_to_rows(columns: list[list[Fraction]], nrows: int) -> list[list[Fraction]]:
    if not columns:
        return [[] for _ in range(nrows)]
    return [list(row) for row in zip(*columns)]


class FilteredComplex:
    """The two-row complex on ``p``-filtered forms, as exact matrices."""

    def __init__(self, model: Model, p: int):
        if not 0 <= p <= model.n:
            raise ValueError(f"filtration degree must lie in 0..{model.n}")
        self.model = model
        self.p = p
        self.n = model.n
        self.top_degree = model.n + p
        S = model.symplectic
        self.bases = {k: S.filtered_basis(p, k) for k in range(self.top_degree + 1)}
        self.top_maps = [self._matrix(lambda a: d_plus(model, p, a, check=False), k, k + 1)
                         for k in range(self.top_degree)]
        self.middle_map = self._matrix(lambda a: partial_plus_minus(model, a), self.top_degree, self.top_degree)
        self.bottom_maps = {k: self._matrix(lambda a: d_minus(model, p, a, check=False), k, k - 1)
                            for k in range(1, self.top_degree + 1)}
        self._check_composites()
        self._slots: dict = {}

    def dim(self, k: int) -> int:
        return len(self.bases.get(k, []))

    def coords(self, k: int, a: Form) -> list[Fraction]:
        return self.model.symplectic.filtered_coordinates(self.p, a, k)

    def _matrix(self, op, source: int, target: int) -> list[list[Fraction]]:
        columns = [self.coords(target, op(b)) for b in self.bases[source]]
        return _columns_to_rows(columns, self.dim(target))

    def _check_composites(self) -> None:
        def vanishes(first, second, inner):
            if not first or not second or inner == 0:
                return True
            return all(v == 0 for row in linalg.matmul(second, first) for v in row)

        chain = [(self.top_maps[k], self.top_maps[k + 1], self.dim(k + 1)) for k in range(self.top_degree - 1)]
        if self.top_degree >= 1:
            chain.append((self.top_maps[-1], self.middle_map, self.dim(self.top_degree)))
            chain.append((self.middle_map, self.bottom_maps[self.top_degree], self.dim(self.top_degree)))
        chain += [(self.bottom_maps[k], self.bottom_maps[k - 1], self.dim(k - 1)) for k in range(self.top_degree, 1, -1)]
        for first, second, inner in chain:
            if not vanishes(first, second, inner):
                raise ArithmeticError(f"filtered complex for p={self.p} fails d^2 = 0")

    def slot(self, side: str, k: int) -> Slot:
        """Cohomology at the top (``'+'``) or bottom (``'-'``) row in degree ``k``."""
        key = (side, k)
        if key in self._slots:
            return self._slots[key]
        if side not in "+-" or not 0 <= k <= self.top_degree:
            raise ValueError(f"no slot {side}{k} for p={self.p}")
        size = self.dim(k)
        top = self.top_degree
        model, p = self.model, self.p
        if side == "+":
            outgoing = self.top_maps[k] if k < top else self.middle_map
            closed = linalg.nullspace(outgoing, size) if outgoing else _identity(size)
            exact = linalg.transpose(self.top_maps[k - 1]) if k >= 1 else []
            differential = (lambda a: d_plus(model, p, a, check=False)) if k < top else partial_plus_minus_of(model)
        else:
            outgoing = self.bottom_maps.get(k)
            closed = linalg.nullspace(outgoing, size) if outgoing else _identity(size)
            incoming = self.bottom_maps.get(k + 1) if k < top else self.middle_map
            exact = linalg.transpose(incoming) if incoming else []
            differential = lambda a: d_minus(model, p, a, check=False)
        exact = [v for v in exact if any(v)]
        label = f"F{p}H{side}{k}"
        slot = Slot(label, k, model.dim, self.bases[k], lambda a, k=k: self.coords(k, a),
                    linalg.Quotient(closed, exact, size), differential)
        self._slots[key] = slot
        return slot

    def plus_dims(self) -> list[int]:
        return [self.slot("+", k).dim for k in range(self.top_degree + 1)]

    def minus_dims(self) -> list[int]:
        """``F^pH-`` dims listed from degree ``n+p`` down to 0."""
        return [self.slot("-", k).dim for k in range(self.top_degree, -1, -1)]

    def index(self) -> int:
        total = sum((-1) ** k * d for k, d in enumerate(self.plus_dims()))
        for k in range(self.top_degree + 1):
            total += (-1) ** (2 * self.top_degree + 1 - k) * self.slot("-", k).dim
        return total


def partial_plus_minus_of(model: Model):
    return lambda a: partial_plus_minus(model, a)


def _identity(size: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


@lru_cache(maxsize=None)
def filtered_complex(model: Model, p: int) -> FilteredComplex:
    return FilteredComplex(model, p)


@dataclass(frozen=True)
class FilteredCohomology:
    p: int
    plus_dims: tuple[int, ...]
    minus_dims: tuple[int, ...]


def filtered_cohomology(model: Model, p: int) -> FilteredCohomology:
    fc = filtered_complex(model, p)
    return FilteredCohomology(p, tuple(fc.plus_dims()), tuple(fc.minus_dims()))


def primitive_cohomologies(model: Model) -> dict[str, list[int]]:
    """Dimensions of the four primitive cohomologies read off from filtered slots.

    ``del+`` and ``del-`` are listed for degrees ``0..n-1``; ``dd^Lambda`` and
    ``d+d^Lambda`` for degrees ``0..n``.
    """
    n = model.n
    low = filtered_complex(model, 0)
    return {
        "del+": [low.slot("+", k).dim for k in range(n)],
        "del-": [low.slot("-", k).dim for k in range(n)],
        "ddL": [filtered_complex(model, n - k).slot("+", 2 * n - k).dim for k in range(n + 1)],
        "d+dL": [filtered_complex(model, n - k).slot("-", 2 * n - k).dim for k in range(n + 1)],
    }
