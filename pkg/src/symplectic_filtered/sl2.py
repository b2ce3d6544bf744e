"""The sl(2) calculus of a constant symplectic form.

``L`` is wedging with the symplectic form, ``Lambda`` its adjoint built from the
inverse (Poisson) matrix, and ``H`` the counting operator ``(n - k)`` on
``k``-forms.  Every homogeneous form splits uniquely as
``sum_r omega^r ^ B_r`` with each ``B_r`` primitive; the filtration projection,
negative Lefschetz powers and the two reflection operators are all read off
from this splitting.

>>> S = SymplecticStructure.darboux(4)
>>> S.decompose(Form.monomial(4, (1, 2)))
{0: Form(4, '1/2*e12 - 1/2*e34'), 1: Form(4, '1/2')}
>>> S.star_r(Form.scalar(4, 1))
Form(4, '2*e1234')
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable

from . import linalg
from .exterior import Form, MultiIndex, basis, contract, dimension, wedge


class SymplecticStructure:
    """A nondegenerate constant 2-form on ``2n`` generators."""

    def __init__(self, omega: Form):
        if not omega.is_homogeneous_of(2) or not omega:
            raise ValueError("the symplectic form must be a nonzero 2-form")
        if omega.dim % 2:
            raise ValueError("the ambient dimension must be even")
        self.dim = omega.dim
        self.n = omega.dim // 2
        self.omega = omega
        matrix = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (i, j), coeff in omega.terms.items():
            matrix[i - 1][j - 1] = coeff
            matrix[j - 1][i - 1] = -coeff
        self.omega_matrix = matrix
        if linalg.rank(matrix, self.dim) < self.dim:
            raise ValueError("the symplectic form is degenerate")
        self.omega_inverse = linalg.inverse(matrix)
        self._powers = [Form.scalar(self.dim, 1)]
        self._cache: dict = {}
        self._primitive: dict[int, list[Form]] = {}
        self._adapted: dict[int, tuple] = {}

    @classmethod
    def darboux(cls, dim: int) -> "SymplecticStructure":
        """``e12 + e34 + ...`` on ``dim`` generators."""
        omega = Form(dim, {(2 * i + 1, 2 * i + 2): 1 for i in range(dim // 2)})
        return cls(omega)

    # -- basic operators -------------------------------------------------

    def omega_power(self, m: int) -> Form:
        while len(self._powers) <= m:
            self._powers.append(wedge(self._powers[-1], self.omega))
        return self._powers[m]

    def apply(self, a: Form, key, image_of: Callable[[MultiIndex], Form]) -> Form:
        """Extend a monomial-level map linearly, caching monomial images under ``key``."""
        cache = self._cache.setdefault(key, {})
        terms: dict = {}
        for index, coeff in a.terms.items():
            image = cache.get(index)
            if image is None:
                image = cache[index] = image_of(index)
            for target, value in image.terms.items():
                terms[target] = terms.get(target, 0) + coeff * value
        return Form._trusted(self.dim, terms)

    def L(self, a: Form, power: int = 1) -> Form:
        if power < 0:
            return self.L_inverse(a, -power)
        if power == 0:
            return a
        return wedge(self.omega_power(power), a)

    def Lambda(self, a: Form) -> Form:
        return self.apply(a, "Lambda", self._lambda_monomial)

    def _lambda_monomial(self, index: MultiIndex) -> Form:
        base = Form._trusted(self.dim, {index: Fraction(1)})
        total = Form.zero(self.dim)
        for i in index:
            for j in index:
                coeff = self.omega_inverse[i - 1][j - 1]
                if coeff:
                    total = total + contract(i, contract(j, base)) * coeff
        return total * Fraction(1, 2)

    def H(self, a: Form) -> Form:
        degree = a.degree
        return a * (self.n - degree) if a else a

    # -- Lefschetz decomposition -----------------------------------------

    def primitive_basis(self, s: int) -> list[Form]:
        """Echelon basis of the primitive ``s``-forms (kernel of Lambda)."""
        if s not in self._primitive:
            if s < 0 or s > self.n:
                self._primitive[s] = []
            else:
                monomials = basis(self.dim, s)
                rows = [[Fraction(0)] * len(monomials) for _ in basis(self.dim, s - 2)]
                for col, index in enumerate(monomials):
                    image = self.Lambda(Form._trusted(self.dim, {index: Fraction(1)}))
                    if s >= 2:
                        for row, value in enumerate(image.to_vector(s - 2)):
                            rows[row][col] = value
                kernel = linalg.nullspace(rows, len(monomials)) if s >= 2 else [
                    [Fraction(int(i == j)) for j in range(len(monomials))]
                    for i in range(len(monomials))
                ]
                self._primitive[s] = [Form.from_vector(self.dim, s, v) for v in kernel]
        return self._primitive[s]

    def power_range(self, k: int) -> range:
        """Admissible powers ``r`` in the decomposition of a ``k``-form."""
        return range(max(0, k - self.n), k // 2 + 1) if 0 <= k <= self.dim else range(0)

    def adapted_basis(self, k: int) -> tuple[list[tuple[int, Form]], list[list[Fraction]]]:
        """Basis ``omega^r ^ B`` of ``k``-forms and the inverse of its coordinate matrix."""
        if k not in self._adapted:
            labelled = []
            for r in self.power_range(k):
                for b in self.primitive_basis(k - 2 * r):
                    labelled.append((r, wedge(self.omega_power(r), b), b))
            size = dimension(self.dim, k)
            if len(labelled) != size:
                raise ArithmeticError(f"primitive dimensions do not add up in degree {k}")
            columns = [item[1].to_vector(k) for item in labelled]
            matrix = linalg.transpose(columns) if columns else []
            inverse = linalg.inverse(matrix) if size else []
            self._adapted[k] = (labelled, inverse)
        return self._adapted[k]

    def _decompose_monomial(self, index: MultiIndex) -> dict[int, Form]:
        k = len(index)
        labelled, inverse = self.adapted_basis(k)
        position = basis(self.dim, k).index(index)
        parts: dict[int, Form] = {}
        for row, (r, _, primitive) in enumerate(labelled):
            coeff = inverse[row][position]
            if coeff:
                parts[r] = parts.get(r, Form.zero(self.dim)) + primitive * coeff
        return parts

    def decompose(self, a: Form) -> dict[int, Form]:
        """Primitive components ``{r: B_r}`` of a homogeneous form (zero parts omitted)."""
        if not a:
            return {}
        a.degree  # homogeneity check
        cache = self._cache.setdefault("decompose", {})
        parts: dict[int, dict] = {}
        for index, coeff in a.terms.items():
            pieces = cache.get(index)
            if pieces is None:
                pieces = cache[index] = self._decompose_monomial(index)
            for r, b in pieces.items():
                bucket = parts.setdefault(r, {})
                for target, value in b.terms.items():
                    bucket[target] = bucket.get(target, 0) + coeff * value
        out = {r: Form._trusted(self.dim, terms) for r, terms in sorted(parts.items())}
        return {r: b for r, b in out.items() if b}

    def recompose(self, parts: dict[int, Form]) -> Form:
        total = Form.zero(self.dim)
        for r, b in parts.items():
            total = total + self.L(b, r)
        return total

    def _by_components(self, key, rule: Callable[[int, int], tuple[int, Fraction] | None]):
        """Monomial map sending ``omega^r B_s`` to ``c * omega^r' B_s`` with ``(r', c) = rule(r, s)``."""

        def image_of(index: MultiIndex) -> Form:
            k = len(index)
            total = Form.zero(self.dim)
            for r, b in self._decompose_monomial(index).items():
                outcome = rule(r, k - 2 * r)
                if outcome is not None:
                    power, coeff = outcome
                    total = total + self.L(b, power) * coeff
            return total

        return image_of

    def project(self, p: int, a: Form) -> Form:
        """The filtration projection keeping components with ``r <= p``."""
        rule = lambda r, s: (r, Fraction(1)) if r <= p else None
        return self.apply(a, ("project", p), self._by_components(("project", p), rule))

    def L_inverse(self, a: Form, m: int) -> Form:
        """``L^{-m}``: drop components with ``r < m`` and lower the rest by ``m``."""
        if m <= 0:
            return self.L(a, -m)
        rule = lambda r, s: (r - m, Fraction(1)) if r >= m else None
        return self.apply(a, ("L_inverse", m), self._by_components(("L_inverse", m), rule))

    def star_r(self, a: Form) -> Form:
        """Reflection ``omega^r B_s -> omega^(n-r-s) B_s``."""
        n = self.n
        rule = lambda r, s: (n - r - s, Fraction(1))
        return self.apply(a, "star_r", self._by_components("star_r", rule))

    def star_s(self, a: Form) -> Form:
        """Symplectic star determined by the Weil relation."""
        n = self.n

        def rule(r: int, s: int):
            sign = -1 if (s * (s + 1) // 2) % 2 else 1
            return n - r - s, Fraction(sign * factorial(r), factorial(n - r - s))

        return self.apply(a, "star_s", self._by_components("star_s", rule))

    def component_map(self, a: Form, r: int) -> Form:
        """The primitive component ``B_r`` of ``a`` (zero when absent)."""
        rule = lambda rr, s: (0, Fraction(1)) if rr == r else None
        return self.apply(a, ("component", r), self._by_components(("component", r), rule))

    # -- filtration ---------------------------------------------------------

    def is_filtered(self, p: int, a: Form) -> bool:
        return all(r <= p for r in self.decompose_any(a))

    def decompose_any(self, a: Form) -> dict[int, Form]:
        """Components by power, summed over degrees (for inhomogeneous input)."""
        merged: dict[int, Form] = {}
        for k in sorted(a.degrees()):
            for r, b in self.decompose(Form._trusted(self.dim, {i: c for i, c in a.terms.items() if len(i) == k})).items():
                merged[r] = merged.get(r, Form.zero(self.dim)) + b
        return merged

    def filtered_range(self, p: int, k: int) -> range:
        rng = self.power_range(k)
        return range(rng.start, min(rng.stop, p + 1)) if len(rng) else rng

    def filtered_basis(self, p: int, k: int) -> list[Form]:
        """Basis ``omega^r ^ B`` (``r <= p``) of the ``p``-filtered ``k``-forms."""
        if not 0 <= k <= self.dim:
            return []
        labelled, _ = self.adapted_basis(k)
        return [form for r, form, _ in labelled if r <= p]

    def filtered_coordinates(self, p: int, a: Form, k: int) -> list[Fraction]:
        """Coordinates of a ``p``-filtered ``k``-form in :meth:`filtered_basis`."""
        labelled, inverse = self.adapted_basis(k)
        vector = a.to_vector(k)
        coords = []
        for row, (r, _, _) in enumerate(labelled):
            value = sum((inverse[row][c] * vector[c] for c in range(len(vector)) if vector[c]), Fraction(0))
            if r > p:
                if value:
                    raise ValueError(f"form is not {p}-filtered")
            else:
                coords.append(value)
        return coords

    def from_filtered_coordinates(self, p: int, k: int, coords) -> Form:
        total = {}
        for form, c in zip(self.filtered_basis(p, k), coords):
            if c:
                for index, value in form.terms.items():
                    total[index] = total.get(index, 0) + c * value
        return Form._trusted(self.dim, total)
