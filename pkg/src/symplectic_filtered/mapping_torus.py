"""Monodromy data, the fibred algebra over a mapping torus, and its pairing invariant.

The four-manifold is ``S^1 x Y`` where ``Y`` is the mapping torus of a surface
map acting on ``H^1`` of the fibre by ``tau``.  Forms are handled through their
principal parts: a base monomial in ``dt, dphi`` times a fibre class (``1``,
an ``H^1`` class, or the area class), with a polynomial coefficient in ``phi``.
Exact correction terms that make such forms periodic are not represented; the
``del-`` value of a non-closed generator is supplied as data instead.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import factorial
from pathlib import Path

import sympy as sp

from . import linalg
from .model import ModelError, parse_coefficient

PHI = sp.Symbol("phi")

# base monomials are bitmasks: bit 0 is dt, bit 1 is dphi
BASE_NAMES = {0: "1", 1: "dt", 2: "dphi", 3: "dt^dphi"}
BASE_CODES = {v: k for k, v in BASE_NAMES.items()}
ONE = "1"
AREA = "area"


class MonodromyError(ModelError):
    """Raised for malformed monodromy input."""


def poly(value=0) -> sp.Poly:
    return sp.Poly(value, PHI, domain=sp.QQ)


def _to_fraction(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def poly_coefficients(p: sp.Poly) -> list[Fraction]:
    """Coefficients from the constant term upwards."""
    return [_to_fraction(c) for c in reversed(p.all_coeffs())]


@lru_cache(maxsize=None)
def f_poly(i: int) -> sp.Poly:
    """``f_i(phi) = phi (phi-1) ... (phi-i+1) / i!``; ``f_0 = 1``."""
    if i < 0:
        raise ValueError("f_i is defined for i >= 0")
    out = poly(1)
    for m in range(i):
        out = out * poly(PHI - m)
    return out * sp.Rational(1, factorial(i))


def shift(p: sp.Poly, by: int) -> sp.Poly:
    """``p(phi + by)``."""
    return poly(p.as_expr().subs(PHI, PHI + by))


# -- monodromy ------------------------------------------------------------------

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class MonodromyData:
    """Action of the monodromy on ``H^1`` of the fibre, with the intersection form.

    Matrices act on column vectors: column ``i`` of ``tau_star`` is the image
    of basis class ``i``.  ``intersection[i][j]`` is the pairing of classes
    ``i`` and ``j`` with the area class normalised to 1.
    """

    name: str
    tau_star: tuple[tuple[int, ...], ...]
    intersection: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    chains: tuple[tuple[Vector, ...], ...] | None = None
    ph2_generators: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.tau_star)

    @property
    def genus(self) -> int:
        return self.rank // 2

    def pairing(self, u, v) -> Fraction:
        J = self.intersection
        return sum((Fraction(u[i]) * J[i][j] * v[j] for i in range(self.rank) for j in range(self.rank)
                    if u[i] and v[j]), Fraction(0))

    def apply(self, v) -> Vector:
        return tuple(sum((Fraction(row[j]) * v[j] for j in range(self.rank)), Fraction(0)) for row in self.tau_star)

    def validate(self) -> None:
        r = self.rank
        if r == 0 or r % 2:
            raise MonodromyError("rank: must be a positive even integer")
        for name, matrix in (("tau_star", self.tau_star), ("intersection", self.intersection)):
            if len(matrix) != r or any(len(row) != r for row in matrix):
                raise MonodromyError(f"{name}: expected a {r}x{r} matrix")
        J = self.intersection
        if any(J[i][j] != -J[j][i] for i in range(r) for j in range(r)):
            raise MonodromyError("intersection: must be skew-symmetric")
        if linalg.rank([[Fraction(x) for x in row] for row in J], r) != r:
            raise MonodromyError("intersection: must be nondegenerate")
        T = [[Fraction(x) for x in row] for row in self.tau_star]
        Jf = [[Fraction(x) for x in row] for row in J]
        if linalg.matmul(linalg.matmul(linalg.transpose(T), Jf), T) != Jf:
            raise MonodromyError("tau_star: does not preserve the intersection form")
        if len(self.labels) != r:
            raise MonodromyError(f"generators: need {r} labels")


def _matrix(doc, key: str, size: int) -> tuple[tuple[int, ...], ...]:
    rows = doc.get(key)
    if not (isinstance(rows, list) and all(isinstance(row, list) for row in rows)):
        raise MonodromyError(f"{key}: expected a list of integer rows")
    for i, row in enumerate(rows):
        if any(isinstance(x, bool) or not isinstance(x, int) for x in row):
            raise MonodromyError(f"{key}[{i}]: entries must be integers")
    if len(rows) != size or any(len(row) != size for row in rows):
        raise MonodromyError(f"{key}: expected a {size}x{size} matrix")
    return tuple(tuple(row) for row in rows)


def monodromy_from_document(doc) -> MonodromyData:
    if not isinstance(doc, dict):
        raise MonodromyError("monodromy: top level must be an object")
    for key in ("rank", "tau_star", "intersection"):
        if key not in doc:
            raise MonodromyError(f"monodromy: missing field {key!r}")
    size = doc["rank"]
    if isinstance(size, bool) or not isinstance(size, int) or size <= 0 or size % 2:
        raise MonodromyError("rank: must be a positive even integer")
    labels = doc.get("generators", [f"c{i + 1}" for i in range(size)])
    if not (isinstance(labels, list) and len(labels) == size and len(set(labels)) == size
            and all(isinstance(x, str) for x in labels)):
        raise MonodromyError(f"generators: need {size} distinct labels")
    chains = None
    if "chains" in doc:
        raw = doc["chains"]
        if not isinstance(raw, list) or not all(isinstance(c, list) and c for c in raw):
            raise MonodromyError("chains: expected a list of non-empty chains")
        built = []
        for ci, chain in enumerate(raw):
            vectors = []
            for j, vec in enumerate(chain):
                where = f"chains[{ci}][{j}]"
                if not isinstance(vec, list) or len(vec) != size:
                    raise MonodromyError(f"{where}: expected {size} coefficients")
                vectors.append(tuple(parse_coefficient(x, where) for x in vec))
            built.append(tuple(vectors))
        chains = tuple(built)
    data = MonodromyData(str(doc.get("name", "monodromy")), _matrix(doc, "tau_star", size),
                         _matrix(doc, "intersection", size), tuple(labels), chains,
                         tuple(doc.get("ph2_generators", ())))
    data.validate()
    return data


def load_monodromy(text: str) -> MonodromyData:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MonodromyError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return monodromy_from_document(doc)


MONODROMY_CORPUS = ("kt", "genus2")


def bundled_monodromy(name: str) -> MonodromyData:
    filename = name if name.endswith(".mono") else f"{name}.mono"
    return load_monodromy((resources.files("symplectic_filtered") / "corpus" / filename).read_text())


def resolve_monodromy(reference: str) -> MonodromyData:
    path = Path(reference)
    if path.is_file():
        return load_monodromy(path.read_text())
    stem = path.name.removesuffix(".mono")
    if stem in MONODROMY_CORPUS:
        return bundled_monodromy(stem)
    raise MonodromyError(f"{reference}: no such file or bundled monodromy")


def identity_monodromy(genus: int) -> MonodromyData:
    """Trivial monodromy on a genus ``g`` surface, basis ``a1..ag, b1..bg``."""
    r = 2 * genus
    tau = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    J = tuple(tuple(1 if j == i + genus else -1 if i == j + genus else 0 for j in range(r)) for i in range(r))
    labels = tuple([f"a{i + 1}" for i in range(genus)] + [f"b{i + 1}" for i in range(genus)])
    return MonodromyData(f"identity genus {genus}", tau, J, labels)


# -- Jordan data ----------------------------------------------------------------

@dataclass(frozen=True)
class JordanInvariants:
    q_plus_p: int
    q_minus_p: int
    chains: tuple[tuple[Vector, ...], ...]

    @property
    def p(self) -> int:
        return (self.q_plus_p - self.q_minus_p) // 2

    @property
    def q(self) -> int:
        return (self.q_plus_p + self.q_minus_p) // 2

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.chains)

    def dimension_table(self) -> dict[str, object]:
        q, p = self.q, self.p
        b1 = q + p + 2
        return {
            "betti": (1, b1, 2 * q + 2 * p + 2, b1, 1),
            "PH1_del+": b1,
            "PH1_del-": b1,
            "PH2_ddL": 3 * q + p + 1,
            "PH2_d+dL": 3 * q + p + 1,
        }


def _shifted(data: MonodromyData) -> list[list[Fraction]]:
    r = data.rank
    return [[Fraction(data.tau_star[i][j]) - int(i == j) for j in range(r)] for i in range(r)]


def kernel_and_image(data: MonodromyData) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Bases of ``ker(tau - 1)`` and ``im(tau - 1)`` as vectors."""
    A = _shifted(data)
    kernel = linalg.nullspace(A, data.rank)
    image = linalg.rref_rows(linalg.transpose(A), data.rank)[0]
    return kernel, image


def _intersect(first, second, size: int) -> list[list[Fraction]]:
    """Basis of the intersection of two spans."""
    if not first or not second:
        return []
    # solve a.first = b.second
    columns = [list(v) for v in first] + [[-x for x in v] for v in second]
    relations = linalg.nullspace(linalg.transpose(columns), len(columns))
    out = []
    for rel in relations:
        vec = [sum((rel[i] * first[i][k] for i in range(len(first))), Fraction(0)) for k in range(size)]
        out.append(vec)
    return linalg.rref_rows(out, size)[0] if out else []


def _jordan_chains(data: MonodromyData) -> tuple[tuple[Vector, ...], ...]:
    """Eigenvalue-1 Jordan chains with ``tau g_j = g_j + g_{j-1}``."""
    P, Jm = sp.Matrix(data.tau_star).jordan_form()
    chains, start = [], 0
    size = data.rank
    while start < size:
        end = start + 1
        while end < size and Jm[end - 1, end] == 1:
            end += 1
        if Jm[start, start] == 1:
            chain = []
            for col in range(start, end):
                entries = [sp.nsimplify(P[row, col]) for row in range(size)]
                if not all(e.is_rational for e in entries):
                    raise MonodromyError("tau_star: eigenvalue-1 chain is not rational")
                chain.append(tuple(_to_fraction(e) for e in entries))
            chains.append(tuple(chain))
        start = end
    return tuple(chains)


def check_chains(data: MonodromyData, chains) -> None:
    """Chains must form a Jordan basis of the generalised 1-eigenspace."""
    size = data.rank
    for ci, chain in enumerate(chains):
        for j, vec in enumerate(chain):
            expected = tuple(a + b for a, b in zip(vec, chain[j - 1])) if j else vec
            if data.apply(vec) != expected:
                raise MonodromyError(f"chains[{ci}][{j}]: tau does not act as a Jordan chain")
    vectors = [list(v) for chain in chains for v in chain]
    if linalg.rank(vectors, size) != len(vectors):
        raise MonodromyError("chains: vectors are linearly dependent")
    kernel, _ = kernel_and_image(data)
    if len(chains) != len(kernel):
        raise MonodromyError("chains: their starts must span ker(tau - 1)")
    A = [[Fraction(x) for x in row] for row in _shifted(data)]
    power = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for _ in range(size):
        power = linalg.matmul(power, A)
    if size - linalg.rank(power, size) != len(vectors):
        raise MonodromyError("chains: not maximal (they miss part of the generalised eigenspace)")


def analyze_monodromy(data: MonodromyData) -> JordanInvariants:
    data.validate()
    kernel, image = kernel_and_image(data)
    both = _intersect(kernel, image, data.rank)
    if (len(kernel) - len(both)) % 2:
        raise ArithmeticError("dim ker - dim(ker ^ im) is odd")
    chains = data.chains if data.chains is not None else _jordan_chains(data)
    check_chains(data, chains)
    return JordanInvariants(len(kernel), len(both), tuple(chains))


def radical_matches(data: MonodromyData) -> bool:
    """``ker ^ im`` of ``tau - 1`` equals the radical of the pairing restricted to the kernel."""
    kernel, image = kernel_and_image(data)
    both = _intersect(kernel, image, data.rank)
    if not kernel:
        return not both
    gram = [[data.pairing(u, v) for v in kernel] for u in kernel]
    radical = [[sum((c * kernel[i][k] for i, c in enumerate(vec)), Fraction(0)) for k in range(data.rank)]
               for vec in linalg.nullspace(gram, len(kernel))]
    r = data.rank
    return linalg.rank(both, r) == linalg.rank(radical, r) == linalg.rank(both + radical, r) if both or radical else True


def orthogonality_failures(data: MonodromyData, samples: int = 50, seed: int = 0, bound: int = 5) -> list:
    """Sampled pairs ``u in ker(tau - 1)``, ``v`` arbitrary with ``(tau v - v) . u != 0``."""
    rng = random.Random(seed)
    kernel, _ = kernel_and_image(data)
    failures = []
    for _ in range(samples):
        weights = [rng.randint(-bound, bound) for _ in kernel]
        u = [sum((w * vec[k] for w, vec in zip(weights, kernel)), Fraction(0)) for k in range(data.rank)]
        v = [Fraction(rng.randint(-bound, bound)) for _ in range(data.rank)]
        moved = [a - b for a, b in zip(data.apply(v), v)]
        if data.pairing(moved, u):
            failures.append((tuple(u), tuple(v)))
    return failures


# -- the fibred algebra ----------------------------------------------------------

def _fiber_degree(fiber) -> int:
    return 0 if fiber == ONE else 2 if fiber == AREA else 1


def _sort_key(key):
    base, fiber = key
    return (base, _fiber_degree(fiber), str(fiber))


@dataclass(frozen=True)
class FiberedForm:
    """Sum of ``P(phi) * base * fibre`` terms.

    Keys are ``(base, fibre)`` with ``base`` a bitmask over ``dt, dphi`` and
    ``fibre`` one of ``"1"``, ``"area"`` or an ``H^1`` basis index.
    """

    rank: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: v for k, v in self.terms.items() if not v.is_zero})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FiberedForm) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, tuple(sorted(((k, str(v.as_expr())) for k, v in self.terms.items()),
                                             key=lambda kv: _sort_key(kv[0])))))

    def _combine(self, other: FiberedForm, sign: int) -> FiberedForm:
        if self.rank != other.rank:
            raise ValueError("fibre rank mismatch")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v * sign if k in out else v * sign
        return FiberedForm(self.rank, out)

    def __add__(self, other: FiberedForm) -> FiberedForm:
        return self._combine(other, 1)

    def __sub__(self, other: FiberedForm) -> FiberedForm:
        return self._combine(other, -1)

    def __neg__(self) -> FiberedForm:
        return FiberedForm(self.rank, {k: -v for k, v in self.terms.items()})

    def scale(self, factor) -> FiberedForm:
        factor = factor if isinstance(factor, sp.Poly) else poly(sp.Rational(str(Fraction(factor))))
        return FiberedForm(self.rank, {k: v * factor for k, v in self.terms.items()})

    def degrees(self) -> set[int]:
        return {bin(base).count("1") + _fiber_degree(fiber) for base, fiber in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("form is not homogeneous")
        return degs.pop()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=_sort_key):
            base, fiber = key
            pieces = [BASE_NAMES[base]] if base else []
            if fiber != ONE:
                pieces.append(fiber if fiber == AREA else f"h{fiber}")
            parts.append(f"({self.terms[key].as_expr()})" + ("*" + "^".join(pieces) if pieces else ""))
        return " + ".join(parts)


class FiberedAlgebra:
    """Wedge, ``d`` and integration on principal parts for one monodromy."""

    def __init__(self, data: MonodromyData, invariants: JordanInvariants | None = None):
        self.data = data
        self.rank = data.rank
        self.invariants = invariants if invariants is not None else analyze_monodromy(data)

    # building blocks
    def form(self, terms: dict) -> FiberedForm:
        return FiberedForm(self.rank, terms)

    def zero(self) -> FiberedForm:
        return self.form({})

    def constant(self, base: int = 0, fiber=ONE, coefficient=1) -> FiberedForm:
        return self.form({(base, fiber): poly(sp.Rational(str(Fraction(coefficient))))})

    def dt(self) -> FiberedForm:
        return self.constant(1)

    def dphi(self) -> FiberedForm:
        return self.constant(2)

    def area(self) -> FiberedForm:
        return self.constant(0, AREA)

    def omega(self) -> FiberedForm:
        return self.constant(3) + self.area()

    def fiber_class(self, vector, coefficient: sp.Poly | None = None) -> FiberedForm:
        c = coefficient if coefficient is not None else poly(1)
        return self.form({(0, i): c * sp.Rational(str(Fraction(x))) for i, x in enumerate(vector) if x})

    def gamma_tilde(self, chain: int, j: int) -> FiberedForm:
        """Principal part ``sum_i f_i(phi) gamma_{j-i}`` of the periodic lift."""
        vectors = self.invariants.chains[chain]
        if not 0 <= j < len(vectors):
            raise IndexError(f"chain {chain} has no element {j}")
        return gamma_tilde_of(self.rank, vectors, j)

    # operations
    def wedge(self, x: FiberedForm, y: FiberedForm) -> FiberedForm:
        out: dict = {}
        for (b1, f1), p1 in x.terms.items():
            d1 = _fiber_degree(f1)
            for (b2, f2), p2 in y.terms.items():
                if b1 & b2:
                    continue
                sign = -1 if (b1 & 2 and b2 & 1) else 1
                if d1 % 2 and bin(b2).count("1") % 2:
                    sign = -sign
                d2 = _fiber_degree(f2)
                if d1 + d2 > 2:
                    continue
                if d1 == 0 or d2 == 0:
                    fiber, scale = (f2 if d1 == 0 else f1), Fraction(1)
                else:
                    fiber, scale = AREA, Fraction(self.data.intersection[f1][f2])
                if not scale:
                    continue
                key = (b1 | b2, fiber)
                value = p1 * p2 * sp.Rational(str(scale * sign))
                out[key] = out[key] + value if key in out else value
        return self.form(out)

    def d(self, x: FiberedForm) -> FiberedForm:
        """``dphi ^ d/dphi`` on coefficients; fibre classes and base monomials are closed."""
        out: dict = {}
        for (base, fiber), p in x.terms.items():
            if base & 2:
                continue
            sign = -1 if base & 1 else 1
            key = (base | 2, fiber)
            value = p.diff(PHI) * sign
            out[key] = out[key] + value if key in out else value
        return self.form(out)

    def integrate(self, x: FiberedForm) -> Fraction:
        """Integral over ``S^1 x Y`` with ``dt ^ dphi ^ area`` of total mass 1."""
        if x and x.degrees() != {4}:
            raise ValueError("only top-degree forms can be integrated")
        p = x.terms.get((3, AREA))
        if p is None:
            return Fraction(0)
        antiderivative = p.integrate()
        return _to_fraction(antiderivative.eval(1) - antiderivative.eval(0))

    def fiber_integral(self, x: FiberedForm) -> sp.Poly:
        """Coefficient of the area class in a pure fibre 2-form, as a polynomial in ``phi``."""
        if any(base for base, _ in x.terms) or x.degrees() - {2}:
            raise ValueError("expected a fibre 2-form")
        return x.terms.get((0, AREA), poly(0))

    def homology_probe(self) -> list[tuple[str, FiberedForm]]:
        """Closed 1-forms spanning ``H^1``: ``dt``, ``dphi`` and each chain start."""
        probes = [("dt", self.dt()), ("dphi", self.dphi())]
        probes += [(f"gt{c}.0", self.gamma_tilde(c, 0)) for c in range(len(self.invariants.chains))]
        return probes


def gamma_tilde_of(rank: int, chain, j: int) -> FiberedForm:
    out: dict = {}
    for i in range(j + 1):
        for k, x in enumerate(chain[j - i]):
            if x:
                value = f_poly(i) * sp.Rational(str(x))
                out[(0, k)] = out[(0, k)] + value if (0, k) in out else value
    return FiberedForm(rank, out)


def d_gamma_formula(algebra: FiberedAlgebra, chain: int, j: int) -> FiberedForm:
    """``dphi ^ sum_{i=1}^{j} (-1)^(i+1)/i gamma~_{j-i}``."""
    total = algebra.zero()
    for i in range(1, j + 1):
        total = total + algebra.gamma_tilde(chain, j - i).scale(Fraction((-1) ** (i + 1), i))
    return algebra.wedge(algebra.dphi(), total)


# -- generator data and the pairing -----------------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    form: FiberedForm
    del_minus: FiberedForm


def _parse_poly(value, where: str) -> sp.Poly:
    if isinstance(value, list):
        coeffs = [parse_coefficient(c, where) for c in value]
        return poly(sum((sp.Rational(c.numerator, c.denominator) * PHI ** k for k, c in enumerate(coeffs)), sp.Integer(0)))
    c = parse_coefficient(value, where)
    return poly(sp.Rational(c.numerator, c.denominator))


def parse_fibered(algebra: FiberedAlgebra, terms, where: str) -> FiberedForm:
    """Parse ``[[coefficient, base, fibre], ...]``.

    ``coefficient`` is a rational or a list of rationals (ascending powers of
    ``phi``); ``base`` is ``1``, ``dt``, ``dphi`` or ``dt^dphi``; ``fibre`` is
    ``1``, ``area``, a basis label, or ``gt<chain>.<j>`` for a periodic lift.
    """
    if not isinstance(terms, list):
        raise MonodromyError(f"{where}: expected a list of terms")
    labels = algebra.data.labels
    total = algebra.zero()
    for pos, term in enumerate(terms):
        here = f"{where}[{pos}]"
        if not (isinstance(term, list) and len(term) == 3):
            raise MonodromyError(f"{here}: a term is [coefficient, base, fibre]")
        coeff = _parse_poly(term[0], here)
        base, fiber = term[1], term[2]
        if base not in BASE_CODES:
            raise MonodromyError(f"{here}: unknown base monomial {base!r}")
        base_form = algebra.constant(BASE_CODES[base])
        if fiber == ONE:
            fiber_form = algebra.constant()
        elif fiber == AREA:
            fiber_form = algebra.area()
        elif fiber in labels:
            fiber_form = algebra.constant(0, labels.index(fiber))
        elif isinstance(fiber, str) and fiber.startswith("gt"):
            try:
                chain, j = (int(x) for x in fiber[2:].split("."))
                fiber_form = algebra.gamma_tilde(chain, j)
            except (ValueError, IndexError) as exc:
                raise MonodromyError(f"{here}: bad lift reference {fiber!r}") from exc
        else:
            raise MonodromyError(f"{here}: unknown fibre class {fiber!r}")
        total = total + algebra.wedge(base_form, fiber_form).scale(coeff)
    return total


def recipe_generators(algebra: FiberedAlgebra) -> list[Generator]:
    """Standard generators of the closed primitive 2-forms: one per recipe slot."""
    alg = algebra
    out = [Generator("dt^dphi - area", alg.constant(3) - alg.area(), alg.zero())]
    chains = alg.invariants.chains
    for c, chain in enumerate(chains):
        out.append(Generator(f"dt^gt{c}.0", alg.wedge(alg.dt(), alg.gamma_tilde(c, 0)), alg.zero()))
    for c, chain in enumerate(chains):
        last = len(chain) - 1
        out.append(Generator(f"dphi^gt{c}.{last}", alg.wedge(alg.dphi(), alg.gamma_tilde(c, last)), alg.zero()))
    for c, chain in enumerate(chains):
        if len(chain) > 1:
            out.append(Generator(f"dt^gt{c}.1", alg.wedge(alg.dt(), alg.gamma_tilde(c, 1)), -alg.gamma_tilde(c, 0)))
    return out


def generator_defects(algebra: FiberedAlgebra, gen: Generator) -> list[str]:
    """Principal-part consistency: primitive, and ``dB = omega ^ del- B``."""
    problems = []
    if gen.form and gen.form.degrees() != {2}:
        problems.append("not a 2-form")
    if algebra.wedge(algebra.omega(), gen.form):
        problems.append("not primitive")
    if gen.del_minus and gen.del_minus.degrees() != {1}:
        problems.append("del- value is not a 1-form")
    if algebra.d(gen.form) != algebra.wedge(algebra.omega(), gen.del_minus):
        problems.append("dB differs from omega ^ (del- B)")
    return problems


def load_generators(algebra: FiberedAlgebra) -> list[Generator]:
    """Generators from the monodromy document, or the standard recipe when none are given."""
    raw = algebra.data.ph2_generators
    if not raw:
        return recipe_generators(algebra)
    out = []
    for pos, entry in enumerate(raw):
        where = f"ph2_generators[{pos}]"
        if not isinstance(entry, dict) or "form" not in entry:
            raise MonodromyError(f"{where}: expected an object with a 'form' term list")
        form = parse_fibered(algebra, entry["form"], f"{where}.form")
        if "del_minus" in entry:
            lowered = parse_fibered(algebra, entry["del_minus"], f"{where}.del_minus")
        elif not algebra.d(form):
            lowered = algebra.zero()
        else:
            raise MonodromyError(f"{where}: not closed and no del_minus value given")
        gen = Generator(str(entry.get("name", f"B{pos}")), form, lowered)
        problems = generator_defects(algebra, gen)
        if problems:
            raise MonodromyError(f"{where}: " + "; ".join(problems))
        out.append(gen)
    return out


@dataclass
class PairingResult:
    probes: list[str]
    generators: list[str]
    products: dict  # (i, j) -> tuple of integrals against the probes
    dim: int
    witnesses: list[tuple[Fraction, ...]]

    def nonzero(self) -> dict:
        return {k: v for k, v in self.products.items() if any(v)}


def product(algebra: FiberedAlgebra, first: Generator, second: Generator) -> FiberedForm:
    """``del- B ^ B' + B ^ del- B'``."""
    return algebra.wedge(first.del_minus, second.form) + algebra.wedge(first.form, second.del_minus)


def pairing_image(data: MonodromyData, generators: list[Generator] | None = None) -> PairingResult:
    """Span of all pairwise products, each read through its integrals against ``H^1``."""
    algebra = FiberedAlgebra(data)
    gens = generators if generators is not None else load_generators(algebra)
    probes = algebra.homology_probe()
    products = {}
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            value = product(algebra, gens[i], gens[j])
            if algebra.d(value):
                raise ArithmeticError(f"product of {gens[i].name} and {gens[j].name} is not closed")
            products[(i, j)] = tuple(algebra.integrate(algebra.wedge(h, value)) for _, h in probes)
    vectors = [list(v) for v in products.values() if any(v)]
    witnesses = [tuple(v) for v in linalg.rref_rows(vectors, len(probes))[0]] if vectors else []
    return PairingResult([name for name, _ in probes], [g.name for g in gens], products,
                         len(witnesses), witnesses)


def pairing_image_dim(data: MonodromyData) -> int:
    return pairing_image(data).dim


# -- cross-check against the cochain-model pipeline ---------------------------------

@dataclass
class CrossCheck:
    rows: list[tuple[str, object, object]]

    @property
    def passed(self) -> bool:
        return all(a == b for _, a, b in self.rows)


def cross_validate(data: MonodromyData, model) -> CrossCheck:
    """Compare monodromy-derived numbers with those of a cochain model of the same manifold."""
    from .ainfty import ring_table
    from .filtered import primitive_cohomologies

    table = analyze_monodromy(data).dimension_table()
    prim = primitive_cohomologies(model)
    n = model.n
    ring = ring_table(model, 0, perturbations=0)
    rows = [
        ("betti", table["betti"], tuple(model.betti)),
        ("PH1_del+", table["PH1_del+"], prim["del+"][1]),
        ("PH1_del-", table["PH1_del-"], prim["del-"][1]),
        ("PH2_ddL", table["PH2_ddL"], prim["ddL"][2]),
        ("PH2_d+dL", table["PH2_d+dL"], prim["d+dL"][2]),
        ("pairing_image_dim", pairing_image_dim(data), ring.block(n, n).image_dim),
    ]
    return CrossCheck(rows)
