"""Pointwise symbols of the filtered complex and their exactness.

At a nonzero covector the symbol of every operator in the filtered complex is
obtained by replacing ``d`` with wedging by the covector.  After a symplectic
change of frame the covector is ``e1`` and the form is ``e12 + e34 + ...``,
so the symbol sequence is the filtered complex of a constant "model" whose
differential is ``e1 ^ .``.  Ellipticity is exactness of that sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .exterior import Form, basis, wedge
from .filtered import FilteredComplex, partial_minus, partial_plus
from .sl2 import SymplecticStructure


class SymbolData:
    """Darboux space with ``e1 ^ .`` standing in for the exterior derivative."""

    def __init__(self, dim: int):
        if dim < 2 or dim % 2:
            raise ValueError("dimension must be a positive even integer")
        self.dim = dim
        self.n = dim // 2
        self.name = f"symbol{dim}"
        self.symplectic = SymplecticStructure.darboux(dim)
        self.xi = Form.generator(dim, 1)

    def d(self, a: Form) -> Form:
        return wedge(self.xi, a)


@dataclass(frozen=True)
class SymbolPosition:
    label: str
    dim: int
    rank_in: int
    rank_out: int

    @property
    def nullity_out(self) -> int:
        return self.dim - self.rank_out

    @property
    def exact(self) -> bool:
        return self.rank_in == self.nullity_out


@dataclass
class SymbolReport:
    dim: int
    p: int
    positions: list[SymbolPosition] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(pos.exact for pos in self.positions)

    def failures(self) -> list[str]:
        return [pos.label for pos in self.positions if not pos.exact]


def _rank(matrix, ncols: int) -> int:
    return linalg.rank(matrix, ncols) if matrix and ncols else 0


def symbol_exactness(dim: int, p: int) -> SymbolReport:
    """Exactness of the symbol sequence at all ``2(n+p)+2`` positions."""
    if not 2 <= dim <= 8 or dim % 2:
        raise ValueError("symbol checks run for even dimensions 2..8")
    data = SymbolData(dim)
    if not 0 <= p <= data.n:
        raise ValueError(f"filtration degree must lie in 0..{data.n}")
    fc = FilteredComplex(data, p)
    top = fc.top_degree
    # the sequence: top row 0..top, then bottom row top..0
    spaces = [(f"F{p}+{k}", fc.dim(k)) for k in range(top + 1)]
    spaces += [(f"F{p}-{k}", fc.dim(k)) for k in range(top, -1, -1)]
    arrows = list(fc.top_maps) + [fc.middle_map] + [fc.bottom_maps[k] for k in range(top, 0, -1)]
    report = SymbolReport(dim, p)
    for i, (label, size) in enumerate(spaces):
        rank_in = _rank(arrows[i - 1], spaces[i - 1][1]) if i >= 1 else 0
        rank_out = _rank(arrows[i], size) if i < len(arrows) else 0
        report.positions.append(SymbolPosition(label, size, rank_in, rank_out))
    return report


# -- the four-way split of a primitive vector ------------------------------------------

def transverse_primitives(S: SymplecticStructure, s: int) -> list[Form]:
    """Primitive ``s``-forms built from ``e3..e2n`` only."""
    monomials = [m for m in basis(S.dim, s) if 1 not in m and 2 not in m]
    if not monomials:
        return []
    rows = {}
    for col, index in enumerate(monomials):
        image = S.Lambda(Form._trusted(S.dim, {index: Fraction(1)}))
        for target, value in image.terms.items():
            rows.setdefault(target, [Fraction(0)] * len(monomials))[col] = value
    matrix = list(rows.values())
    kernel = linalg.nullspace(matrix, len(monomials)) if matrix else [
        [Fraction(int(i == j)) for j in range(len(monomials))] for i in range(len(monomials))]
    return [Form._trusted(S.dim, {m: c for m, c in zip(monomials, v) if c}) for v in kernel]


def e12_prime(S: SymplecticStructure, beta: Form) -> Form:
    """``e'12 ^ beta``: ``e12 ^ beta`` minus the multiple of ``omega' ^ beta`` making it primitive."""
    if not beta:
        return beta
    s = beta.degree
    if S.n - 1 - s == 0:
        raise ArithmeticError("e'12 is undefined against transverse forms of degree n-1")
    rest = S.omega - Form.monomial(S.dim, (1, 2))
    return wedge(Form.monomial(S.dim, (1, 2)), beta) - wedge(rest, beta) * Fraction(1, S.n - 1 - s)


@dataclass(frozen=True)
class PrimitiveSplit:
    beta1: Form
    beta2: Form
    beta3: Form
    beta4: Form


def _split_pieces(S: SymplecticStructure, l: int):
    e1, e2 = Form.generator(S.dim, 1), Form.generator(S.dim, 2)
    pieces = []
    for slot, s, build in ((0, l - 1, lambda b: wedge(e1, b)), (1, l - 1, lambda b: wedge(e2, b)),
                           (2, l - 2, lambda b: e12_prime(S, b)), (3, l, lambda b: b)):
        if s < 0 or (slot == 2 and S.n - 1 - s <= 0):
            continue
        for beta in transverse_primitives(S, s):
            pieces.append((slot, beta, build(beta)))
    return pieces


def primitive_vector_split(dim: int, mu: Form) -> PrimitiveSplit:
    """Write a primitive ``mu`` as ``e1^b1 + e2^b2 + e'12^b3 + b4`` with transverse primitive ``b``'s."""
    S = SymplecticStructure.darboux(dim)
    if mu.dim != dim:
        raise ValueError("ambient dimension mismatch")
    zero = Form.zero(dim)
    if not mu:
        return PrimitiveSplit(zero, zero, zero, zero)
    l = mu.degree
    if S.Lambda(mu):
        raise ValueError("primitive_vector_split expects a primitive form")
    pieces = _split_pieces(S, l)
    columns = [image.to_vector(l) for _, _, image in pieces]
    rows = linalg.transpose(columns) if columns else []
    solution = linalg.solve(rows, mu.to_vector(l), len(pieces))
    if solution is None:
        raise ArithmeticError("primitive form has no four-way split")
    parts = [zero, zero, zero, zero]
    for (slot, beta, _), c in zip(pieces, solution):
        if c:
            parts[slot] = parts[slot] + beta * c
    return PrimitiveSplit(*parts)


def recombine(dim: int, split: PrimitiveSplit) -> Form:
    S = SymplecticStructure.darboux(dim)
    e1, e2 = Form.generator(dim, 1), Form.generator(dim, 2)
    return wedge(e1, split.beta1) + wedge(e2, split.beta2) + e12_prime(S, split.beta3) + split.beta4


# -- images of the primitive symbols --------------------------------------------------------

def _span_equal(first: list[Form], second: list[Form], degree: int, dim: int) -> bool:
    size = len(basis(dim, degree))
    a = [f.to_vector(degree) for f in first if f]
    b = [f.to_vector(degree) for f in second if f]
    ra, rb = _rank(a, size), _rank(b, size)
    return ra == rb == _rank(a + b, size)


def primitive_image_checks(dim: int) -> dict[str, bool]:
    """Images of the primitive symbols against their split descriptions, degree by degree.

    ``sigma(del+)`` into degree ``l`` is spanned by ``e'12 ^ b`` (``b`` of degree
    ``l-2``) and ``e1 ^ b`` (``b`` of degree ``l-1``); ``sigma(del-)`` into
    degree ``l < n`` by ``b`` (degree ``l``) and ``e1 ^ b`` (degree ``l-1``).
    """
    data = SymbolData(dim)
    S = data.symplectic
    e1 = data.xi
    out = {}
    for l in range(0, data.n + 1):
        plus_image = [partial_plus(data, b) for b in S.primitive_basis(l - 1)] if l >= 1 else []
        minus_image = [partial_minus(data, b) for b in S.primitive_basis(l + 1)]
        prime_part = [e12_prime(S, b) for b in transverse_primitives(S, l - 2)] if l >= 2 and S.n - 1 - (l - 2) > 0 else []
        e1_part = [wedge(e1, b) for b in transverse_primitives(S, l - 1)] if l >= 1 else []
        out[f"del+ into degree {l}"] = _span_equal(plus_image, prime_part + e1_part, l, dim)
        if l < data.n:
            out[f"del- into degree {l}"] = _span_equal(minus_image, transverse_primitives(S, l) + e1_part, l, dim)
    return out
