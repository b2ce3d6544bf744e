"""Finite cochain models: invariant forms with a differential given on generators."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path

from . import linalg
from .exterior import Form, MultiIndex, basis, basis_position, dimension, wedge
from .sl2 import SymplecticStructure


class ModelError(ValueError):
    """Raised for malformed or invalid model input."""


def parse_coefficient(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ModelError(f"{where}: coefficient must be an integer or a 'p/q' string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelError(f"{where}: bad coefficient {value!r}") from exc


def parse_terms(terms, names: list[str], where: str) -> Form:
    """Parse a term list ``[[coeff, [gen, ...]], ...]`` into a form."""
    if not isinstance(terms, list):
        raise ModelError(f"{where}: expected a list of terms")
    total = Form.zero(len(names))
    for pos, term in enumerate(terms):
        here = f"{where}[{pos}]"
        if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], list)):
            raise ModelError(f"{here}: a term is [coefficient, [generators]]")
        coeff = parse_coefficient(term[0], here)
        indices = []
        for gen in term[1]:
            if gen not in names:
                raise ModelError(f"{here}: unknown generator {gen!r}")
            indices.append(names.index(gen) + 1)
        total = total + Form.monomial(len(names), indices, coeff)
    return total


def format_terms(form: Form, names: list[str]) -> list:
    out = []
    for index, coeff in form:
        value = coeff.numerator if coeff.denominator == 1 else str(coeff)
        out.append([value, [names[i - 1] for i in index]])
    return out


@dataclass(frozen=True)
class ModelSpec:
    name: str
    dim: int
    generator_names: list[str]
    d_rules: dict[str, Form] = field(default_factory=dict)
    omega: Form | None = None

    @classmethod
    def from_document(cls, doc) -> "ModelSpec":
        if not isinstance(doc, dict):
            raise ModelError("model: top level must be an object")
        for key in ("name", "dimension", "generators", "omega"):
            if key not in doc:
                raise ModelError(f"model: missing field {key!r}")
        dim = doc["dimension"]
        if not isinstance(dim, int) or dim <= 0 or dim % 2:
            raise ModelError("dimension: must be a positive even integer")
        names = doc["generators"]
        if not (isinstance(names, list) and all(isinstance(x, str) for x in names)):
            raise ModelError("generators: must be a list of names")
        if len(names) != dim or len(set(names)) != dim:
            raise ModelError(f"generators: need {dim} distinct names")
        rules = doc.get("d", {})
        if not isinstance(rules, dict):
            raise ModelError("d: must map generator names to term lists")
        d_rules = {}
        for gen, terms in rules.items():
            if gen not in names:
                raise ModelError(f"d: unknown generator {gen!r}")
            form = parse_terms(terms, names, f"d.{gen}")
            if not form.is_homogeneous_of(2):
                raise ModelError(f"d.{gen}: the differential of a generator must be a 2-form")
            d_rules[gen] = form
        omega = parse_terms(doc["omega"], names, "omega")
        if not omega.is_homogeneous_of(2):
            raise ModelError("omega: must be a 2-form")
        return cls(str(doc["name"]), dim, list(names), d_rules, omega)

    def to_document(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dim,
            "generators": self.generator_names,
            "d": {g: format_terms(f, self.generator_names) for g, f in self.d_rules.items()},
            "omega": format_terms(self.omega, self.generator_names),
        }


@dataclass
class CohomologyBasis:
    degree: int
    representatives: list[Form]
    quotient: linalg.Quotient

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, form: Form) -> list[Fraction]:
        return self.quotient.coordinates(form.to_vector(self.degree))


class Model:
    """A validated cochain model: ``d^2 = 0``, ``d omega = 0``, ``omega`` nondegenerate."""

    def __init__(self, spec: ModelSpec, source_text: str | None = None):
        self.spec = spec
        self.name = spec.name
        self.dim = spec.dim
        self.n = spec.dim // 2
        self.source_text = source_text
        self._generator_d = {
            spec.generator_names.index(g) + 1: f for g, f in spec.d_rules.items()
        }
        self._d_cache: dict[MultiIndex, Form] = {}
        self._cohomology: dict[int, CohomologyBasis] = {}
        for i in range(1, self.dim + 1):
            dd = self.d(self.d_generator(i))
            if dd:
                raise ModelError(
                    f"d^2 != 0 on generator {spec.generator_names[i - 1]!r}: d(d {spec.generator_names[i - 1]}) = {dd}"
                )
        d_omega = self.d(spec.omega)
        if d_omega:
            raise ModelError(f"omega is not closed: d omega = {d_omega}")
        try:
            self.symplectic = SymplecticStructure(spec.omega)
        except ValueError as exc:
            raise ModelError(f"omega: {exc}") from exc

    @property
    def identity(self) -> str:
        text = self.source_text if self.source_text is not None else json.dumps(self.spec.to_document(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()

    def d_generator(self, i: int) -> Form:
        return self._generator_d.get(i, Form.zero(self.dim))

    def _d_monomial(self, index: MultiIndex) -> Form:
        cached = self._d_cache.get(index)
        if cached is None:
            if not index:
                cached = Form.zero(self.dim)
            else:
                head = Form._trusted(self.dim, {index[:1]: Fraction(1)})
                tail = Form._trusted(self.dim, {index[1:]: Fraction(1)})
                cached = wedge(self.d_generator(index[0]), tail) - wedge(head, self._d_monomial(index[1:]))
            self._d_cache[index] = cached
        return cached

    def d(self, a: Form) -> Form:
        """Exterior derivative: the derivation extending the generator rules."""
        terms: dict = {}
        for index, coeff in a.terms.items():
            for target, value in self._d_monomial(index).terms.items():
                terms[target] = terms.get(target, 0) + coeff * value
        return Form._trusted(self.dim, terms)

    @property
    def omega(self) -> Form:
        return self.spec.omega

    def integrate(self, a: Form) -> Fraction:
        """Coefficient of the top monomial (unit volume normalization)."""
        return a.terms.get(tuple(range(1, self.dim + 1)), Fraction(0))

    def d_matrix(self, k: int) -> list[list[Fraction]]:
        """Matrix of ``d`` from ``k``-forms to ``(k+1)``-forms in monomial bases."""
        source = basis(self.dim, k)
        rows = dimension(self.dim, k + 1)
        positions = basis_position(self.dim, k + 1)
        matrix = [[Fraction(0)] * len(source) for _ in range(rows)]
        for col, index in enumerate(source):
            for target, value in self._d_monomial(index).terms.items():
                matrix[positions[target]][col] = value
        return matrix

    def cohomology(self, k: int) -> CohomologyBasis:
        if k not in self._cohomology:
            size = dimension(self.dim, k)
            if size == 0:
                self._cohomology[k] = CohomologyBasis(k, [], linalg.Quotient([], [], 0))
            else:
                closed = linalg.nullspace(self.d_matrix(k), size)
                exact = linalg.transpose(self.d_matrix(k - 1)) if k >= 1 else []
                quotient = linalg.Quotient(closed, exact, size)
                reps = [Form.from_vector(self.dim, k, v) for v in quotient.representatives]
                self._cohomology[k] = CohomologyBasis(k, reps, quotient)
        return self._cohomology[k]

    @cached_property
    def betti(self) -> tuple[int, ...]:
        return tuple(self.cohomology(k).dim for k in range(self.dim + 1))

    def __repr__(self) -> str:
        return f"Model({self.name!r}, dim={self.dim})"


def load_model(text: str) -> Model:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return Model(ModelSpec.from_document(doc), text)


CORPUS = ("kt", "t4", "t6", "n6", "n6b")


def corpus_path(name: str):
    return resources.files("symplectic_filtered") / "corpus" / name


def bundled_model(name: str) -> Model:
    """Load a bundled model by short name (``kt``, ``t4``, ...)."""
    filename = name if name.endswith(".model") else f"{name}.model"
    return load_model(corpus_path(filename).read_text())


def resolve_model(reference: str) -> Model:
    """A filesystem path if it exists, else a bundled model name."""
    path = Path(reference)
    if path.is_file():
        return load_model(path.read_text())
    stem = path.name.removesuffix(".model")
    if stem in CORPUS:
        return bundled_model(stem)
    raise ModelError(f"{reference}: no such file or bundled model")


def derham_cohomology(model: Model, k: int) -> CohomologyBasis:
    return model.cohomology(k)
