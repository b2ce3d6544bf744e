"""The A-infinity structure on p-filtered forms and the induced ring on filtered cohomology.

Gradings run over ``0..2n+2p+1``.  Grading ``j <= n+p`` holds p-filtered
``j``-forms; grading ``j > n+p`` holds "barred" p-filtered forms of degree
``2n+2p+1-j``.  ``m1`` is ``d+``, then ``-del+del-`` at the middle, then
``-d-``; ``m2`` is the filtered product and ``m3`` its associator homotopy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .exterior import Form, basis, wedge
from .filtered import d_minus, filtered_complex, partial_minus, partial_plus_minus
from .model import Model
from .resolution import derham_slot


@dataclass(frozen=True)
class GradedElement:
    """A p-filtered form placed at grading ``j``; past the top grading only zero lives."""

    p: int
    n: int
    j: int
    form: Form

    @property
    def top(self) -> int:
        return 2 * self.n + 2 * self.p + 1

    @property
    def bar(self) -> bool:
        return self.j > self.n + self.p

    @property
    def form_degree(self) -> int:
        return self.j if not self.bar else self.top - self.j

    def is_zero(self) -> bool:
        return not self.form

    def _like(self, form: Form) -> "GradedElement":
        return GradedElement(self.p, self.n, self.j, form)

    def _same(self, other: "GradedElement") -> None:
        if (other.p, other.n, other.j) != (self.p, self.n, self.j):
            raise ValueError(f"cannot add elements at gradings {self.j} and {other.j}")

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._same(other)
        return self._like(self.form + other.form)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        self._same(other)
        return self._like(self.form - other.form)

    def __neg__(self) -> "GradedElement":
        return self._like(-self.form)

    def __mul__(self, scalar) -> "GradedElement":
        return self._like(self.form * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        mark = "bar " if self.bar else ""
        return f"GradedElement(p={self.p}, j={self.j}, {mark}{self.form})"


class FilteredAlgebra:
    """``m1``, ``m2``, ``m3`` on the p-filtered forms of a model."""

    def __init__(self, model: Model, p: int):
        if not 0 <= p <= model.n:
            raise ValueError(f"filtration degree must lie in 0..{model.n}")
        self.model = model
        self.p = p
        self.n = model.n
        self.S = model.symplectic
        self.middle = model.n + p
        self.top = 2 * model.n + 2 * p + 1

    # -- elements ------------------------------------------------------------

    def element(self, j: int, form: Form) -> GradedElement:
        if j < 0:
            raise ValueError("gradings are non-negative")
        if j > self.top:
            if form:
                raise ValueError(f"grading {j} is past the top grading {self.top}")
            return GradedElement(self.p, self.n, j, Form.zero(self.model.dim))
        x = GradedElement(self.p, self.n, j, form)
        if form and not form.is_homogeneous_of(x.form_degree):
            raise ValueError(f"grading {j} holds forms of degree {x.form_degree}")
        if not self.S.is_filtered(self.p, form):
            raise ValueError(f"form is not {self.p}-filtered")
        return x

    def zero(self, j: int) -> GradedElement:
        return GradedElement(self.p, self.n, j, Form.zero(self.model.dim))

    def random_element(self, j: int, rng: random.Random, bound: int = 2) -> GradedElement:
        x = self.zero(j)
        if j > self.top:
            return x
        total = Form.zero(self.model.dim)
        for b in self.S.filtered_basis(self.p, x.form_degree):
            total = total + b * rng.randint(-bound, bound)
        return x._like(total)

    def _check(self, *xs: GradedElement) -> None:
        for x in xs:
            if x.p != self.p or x.n != self.n:
                raise ValueError("elements belong to a different filtered algebra")

    # -- building blocks -------------------------------------------------------------

    def lower(self, a: Form) -> Form:
        """``L^{-(p+1)} d a`` for a p-filtered form, read off as ``del- B_p``."""
        return partial_minus(self.model, self.S.component_map(a, self.p)) if a else a

    def lower_direct(self, a: Form) -> Form:
        return self.S.L_inverse(self.model.d(a), self.p + 1)

    def _cross(self, x: Form, j: int, y: Form) -> Form:
        """The unbarred product past the middle grading, before any range check."""
        S, p = self.S, self.p
        sign = -1 if j % 2 else 1
        inner = (-self.model.d(S.L_inverse(wedge(x, y), p + 1))
                 + wedge(self.lower(x), y) + wedge(x, self.lower(y)) * sign)
        return S.project(p, S.star_r(inner))

    # -- the maps -------------------------------------------------------------------

    def m1(self, x: GradedElement) -> GradedElement:
        self._check(x)
        j = x.j
        if j >= self.top or not x.form:
            return self.zero(j + 1)
        if j < self.middle:
            out = self.S.project(self.p, self.model.d(x.form))
        elif j == self.middle:
            out = -partial_plus_minus(self.model, x.form)
        else:
            out = -d_minus(self.model, self.p, x.form, check=False)
        return GradedElement(self.p, self.n, j + 1, out)

    def m2(self, x: GradedElement, y: GradedElement) -> GradedElement:
        self._check(x, y)
        j, k = x.j, y.j
        grading = j + k
        if grading > self.top or not x.form or not y.form:
            return self.zero(grading)
        S = self.S
        if not x.bar and not y.bar:
            if grading <= self.middle:
                out = S.project(self.p, wedge(x.form, y.form))
            else:
                out = self._cross(x.form, j, y.form)
        elif not x.bar:
            sign = -1 if j % 2 else 1
            out = S.star_r(wedge(x.form, S.star_r(y.form))) * sign
        elif not y.bar:
            out = S.star_r(wedge(S.star_r(x.form), y.form))
        else:
            out = Form.zero(self.model.dim)
        return GradedElement(self.p, self.n, grading, out)

    def m3(self, x: GradedElement, y: GradedElement, z: GradedElement) -> GradedElement:
        self._check(x, y, z)
        grading = x.j + y.j + z.j - 1
        if (x.bar or y.bar or z.bar or x.j + y.j + z.j < self.middle + 2 or grading > self.top
                or not (x.form and y.form and z.form)):
            return self.zero(grading)
        S, q = self.S, self.p + 1
        inner = (wedge(x.form, S.L_inverse(wedge(y.form, z.form), q))
                 - wedge(S.L_inverse(wedge(x.form, y.form), q), z.form))
        return GradedElement(self.p, self.n, grading, S.project(self.p, S.star_r(inner)))

    # -- identities ---------------------------------------------------------------

    def leibniz_defect(self, x: GradedElement, y: GradedElement) -> GradedElement:
        """``m1 m2(x,y) - m2(m1 x, y) - (-1)^j m2(x, m1 y)`` (zero when the rule holds)."""
        sign = -1 if x.j % 2 else 1
        return self.m1(self.m2(x, y)) - self.m2(self.m1(x), y) - self.m2(x, self.m1(y)) * sign

    def associator(self, x: GradedElement, y: GradedElement, z: GradedElement) -> GradedElement:
        return self.m2(x, self.m2(y, z)) - self.m2(self.m2(x, y), z)

    def homotopy_defect(self, x: GradedElement, y: GradedElement, z: GradedElement) -> GradedElement:
        """The associator minus the ``m1``/``m3`` terms that should cancel it."""
        si = -1 if x.j % 2 else 1
        sij = -1 if (x.j + y.j) % 2 else 1
        rhs = (self.m1(self.m3(x, y, z)) + self.m3(self.m1(x), y, z)
               + self.m3(x, self.m1(y), z) * si + self.m3(x, y, self.m1(z)) * sij)
        return self.associator(x, y, z) - rhs

    def m4_defect(self, w: GradedElement, x: GradedElement, y: GradedElement, z: GradedElement) -> GradedElement:
        """The five-term ``m2``/``m3`` expression whose vanishing lets ``m4 = 0``."""
        sign = -1 if w.j % 2 else 1
        return (self.m2(self.m3(w, x, y), z) + self.m2(w, self.m3(x, y, z)) * sign
                - self.m3(self.m2(w, x), y, z) + self.m3(w, self.m2(x, y), z)
                - self.m3(w, x, self.m2(y, z)))

    # -- maps to and from de Rham cohomology ----------------------------------------

    def f_map(self, j: int, xi: Form) -> GradedElement:
        """De Rham ``j``-forms into grading ``j``: ``Pi^p`` below the middle, else ``-Pi^p *_r d L^{-(p+1)}``."""
        S = self.S
        if j <= self.middle:
            return GradedElement(self.p, self.n, j, S.project(self.p, xi))
        out = -S.project(self.p, S.star_r(self.model.d(S.L_inverse(xi, self.p + 1))))
        return GradedElement(self.p, self.n, j, out)

    def g_map(self, x: GradedElement) -> Form:
        """Grading ``j`` into de Rham degree ``j - 2p - 1``: ``L^{-(p+1)} d`` or ``*_r``."""
        return self.S.star_r(x.form) if x.bar else self.lower_direct(x.form)

    # -- cohomology --------------------------------------------------------------------

    def slot(self, j: int):
        fc = filtered_complex(self.model, self.p)
        return fc.slot("+", j) if j <= self.middle else fc.slot("-", self.top - j)

    def class_of(self, x: GradedElement) -> list[Fraction]:
        if x.j > self.top:
            return []
        return self.slot(x.j).class_of(x.form)

    def representatives(self, j: int) -> list[GradedElement]:
        return [GradedElement(self.p, self.n, j, f) for f in self.slot(j).representatives]



# -- ring tables ---------------------------------------------------------------------

@dataclass
class RingBlock:
    """Products of representatives at gradings ``(j, k)``: ``products[a][b]`` are target class coordinates."""

    j: int
    k: int
    source_dims: tuple[int, int]
    target_dim: int
    products: list[list[list[Fraction]]]

    @property
    def image_dim(self) -> int:
        vectors = [v for row in self.products for v in row]
        return linalg.rank(vectors, self.target_dim) if vectors and self.target_dim else 0


@dataclass
class RingTable:
    model: str
    p: int
    dims: list[int]
    blocks: dict[tuple[int, int], RingBlock] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def block(self, j: int, k: int) -> RingBlock:
        return self.blocks[(j, k)]

    def product(self, j: int, a: int, k: int, b: int) -> list[Fraction]:
        return self.blocks[(j, k)].products[a][b]


def ring_table(model: Model, p: int, perturbations: int = 1, seed: int = 0) -> RingTable:
    """Class-level multiplication table of ``F^pH``.

    Each product is also recomputed after adding random ``m1``-exact terms to
    both factors; any change of class is recorded as a failure.
    """
    alg = FilteredAlgebra(model, p)
    rng = random.Random(seed)
    dims = [alg.slot(j).dim for j in range(alg.top + 1)]
    table = RingTable(model.name, p, dims)
    reps = {j: alg.representatives(j) for j in range(alg.top + 1)}
    for j in range(alg.top + 1):
        for k in range(alg.top + 1 - j):
            if not dims[j] or not dims[k]:
                continue
            target = dims[j + k]
            products = []
            for a, x in enumerate(reps[j]):
                row = []
                for b, y in enumerate(reps[k]):
                    try:
                        value = alg.class_of(alg.m2(x, y)) if target else []
                    except ValueError as exc:
                        table.failures.append(f"({j},{k}) [{a}]x[{b}]: {exc}")
                        value = [Fraction(0)] * target
                    row.append(value)
                    for _ in range(perturbations if target else 0):
                        x2 = x + alg.m1(alg.random_element(j - 1, rng)) if j else x
                        y2 = y + alg.m1(alg.random_element(k - 1, rng)) if k else y
                        try:
                            moved = alg.class_of(alg.m2(x2, y2))
                        except ValueError as exc:
                            moved = f"not closed ({exc})"
                        if moved != value:
                            table.failures.append(f"({j},{k}) [{a}]x[{b}] depends on the representative")
                products.append(row)
            table.blocks[(j, k)] = RingBlock(j, k, (dims[j], dims[k]), target, products)
    return table


def commutativity_failures(table: RingTable) -> list[str]:
    out = []
    for (j, k), block in table.blocks.items():
        other = table.blocks.get((k, j))
        sign = -1 if (j * k) % 2 else 1
        for a in range(block.source_dims[0]):
            for b in range(block.source_dims[1]):
                if [sign * v for v in other.products[b][a]] != block.products[a][b]:
                    out.append(f"({j},{k}) [{a}]x[{b}]")
    return out


def class_associativity_failures(model: Model, p: int) -> list[str]:
    """Triples of representatives whose two bracketings differ in cohomology."""
    alg = FilteredAlgebra(model, p)
    reps = {j: alg.representatives(j) for j in range(alg.top + 1)}
    out = []
    for i in range(alg.top + 1):
        for j in range(alg.top + 1 - i):
            for k in range(alg.top + 1 - i - j):
                if not alg.slot(i + j + k).dim:
                    continue
                for x in reps[i]:
                    for y in reps[j]:
                        for z in reps[k]:
                            left = alg.class_of(alg.m2(x, alg.m2(y, z)))
                            right = alg.class_of(alg.m2(alg.m2(x, y), z))
                            if left != right:
                                out.append(f"({i},{j},{k})")
    return out


# -- compatibility with the wedge and Massey products ----------------------------------

@dataclass
class CompatibilityReport:
    checked: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def wedge_compatibility(model: Model, p: int) -> CompatibilityReport:
    """``f(xi ^ xi')`` and ``f(xi) x f(xi')`` agree in filtered cohomology."""
    alg = FilteredAlgebra(model, p)
    report = CompatibilityReport()
    for j in range(model.dim + 1):
        for k in range(model.dim + 1 - j):
            if j + k > alg.top or not alg.slot(j + k).dim:
                continue
            for xi in derham_slot(model, j).representatives:
                for xk in derham_slot(model, k).representatives:
                    report.checked += 1
                    try:
                        left = alg.class_of(alg.f_map(j + k, wedge(xi, xk)))
                        right = alg.class_of(alg.m2(alg.f_map(j, xi), alg.f_map(k, xk)))
                    except ValueError as exc:
                        report.failures.append(f"({j},{k}): {exc}")
                        continue
                    if left != right:
                        report.failures.append(f"({j},{k}): {left} != {right}")
    return report


def _primitive_of(model: Model, target: Form, degree: int) -> Form | None:
    """Some ``eta`` of the given degree with ``d eta = target``, or None."""
    if not target:
        return Form.zero(model.dim)
    if degree < 0:
        return None
    matrix = model.d_matrix(degree)
    solution = linalg.solve(matrix, target.to_vector(degree + 1), len(basis(model.dim, degree)))
    return None if solution is None else Form.from_vector(model.dim, degree, solution)


def massey_compatibility(model: Model, p: int) -> CompatibilityReport:
    """``g(A x A')`` equals the Massey product of ``g(A)``, ``g(A')`` modulo their ideal and exact forms."""
    alg = FilteredAlgebra(model, p)
    omega_power = alg.S.omega_power(p + 1)
    report = CompatibilityReport()
    for j in range(alg.top + 1):
        for k in range(alg.top + 1 - j):
            degree = j + k - 2 * p - 1
            if degree < 0 or degree > model.dim:
                continue
            for x in alg.representatives(j):
                for y in alg.representatives(k):
                    gx, gy = alg.g_map(x), alg.g_map(y)
                    eta_x = _primitive_of(model, wedge(omega_power, gx), j)
                    eta_y = _primitive_of(model, wedge(omega_power, gy), k)
                    if eta_x is None or eta_y is None:
                        report.skipped += 1
                        continue
                    report.checked += 1
                    sign = -1 if j % 2 else 1
                    massey = wedge(gx, eta_y) + wedge(eta_x, gy) * sign
                    difference = alg.g_map(alg.m2(x, y)) - massey
                    spanning = [wedge(gx, h).to_vector(degree) for h in derham_slot(model, k).representatives]
                    spanning += [wedge(h, gy).to_vector(degree) for h in derham_slot(model, j).representatives]
                    if degree >= 1:
                        spanning += linalg.transpose(model.d_matrix(degree - 1))
                    if difference and not linalg.span_contains(spanning, difference.to_vector(degree), len(basis(model.dim, degree))):
                        report.failures.append(f"({j},{k}): {difference}")
    return report
