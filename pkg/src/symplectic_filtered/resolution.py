"""Lefschetz maps on cohomology and executable long exact sequences.

A long exact sequence is described row by row: each row is a short exact
sequence of form spaces laid out on a grid of columns, as in a commutative
diagram whose columns are cochain complexes.  The cohomology sequence lists the
entries of every row left to right.  Consecutive rows are joined by a
connecting map, either given explicitly or computed by the usual diagram chase
(lift through the last horizontal map, apply the column differential, pull
back through the first horizontal map of the next row).  When the next row
has no entry where the chase would land, the connecting map is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import linalg
from .exterior import Form, basis, dimension
from .filtered import Slot, filtered_complex
from .model import Model

FormMap = Callable[[Form], Form]


# -- de Rham slots and Lefschetz maps ------------------------------------------

def derham_slot(model: Model, k: int) -> Slot:
    cache = model.__dict__.setdefault("_derham_slots", {})
    if k not in cache:
        monomials = [Form._trusted(model.dim, {index: Fraction(1)}) for index in basis(model.dim, k)]
        if 0 <= k <= model.dim:
            quotient = model.cohomology(k).quotient
        else:
            quotient = linalg.Quotient([], [], 0)
        cache[k] = Slot(f"H{k}", k, model.dim, monomials, lambda a, k=k: a.to_vector(k) if dimension(model.dim, k) else [],
                        quotient, model.d)
    return cache[k]


def induced_matrix(source: Slot, target: Slot, op: FormMap) -> list[list[Fraction]]:
    """Matrix (rows = target classes) of the map induced on cohomology by ``op``."""
    columns = [target.class_of(op(rep)) if target.dim else [] for rep in source.representatives]
    if not columns:
        return [[] for _ in range(target.dim)]
    return [list(row) for row in zip(*columns)] if target.dim else []


@dataclass(frozen=True)
class LefschetzRecord:
    k: int
    rank: int
    kernel: int
    cokernel: int


@dataclass
class LefschetzAnalysis:
    r: int
    records: dict[int, LefschetzRecord]

    def kernel(self, k: int) -> int:
        return self.records[k].kernel if k in self.records else 0


def lefschetz_matrix(model: Model, r: int, k: int) -> list[list[Fraction]]:
    S = model.symplectic
    return induced_matrix(derham_slot(model, k), derham_slot(model, k + 2 * r), lambda a: S.L(a, r))


def lefschetz_kernel_cokernel(model: Model, r: int, k: int) -> tuple[int, int]:
    """``(dim ker, dim coker)`` of ``L^r: H^k -> H^(k+2r)`` (zero spaces outside 0..2n)."""
    source = derham_slot(model, k).dim
    target = derham_slot(model, k + 2 * r).dim
    rank = linalg.rank(lefschetz_matrix(model, r, k), source) if source and target else 0
    return source - rank, target - rank


def lefschetz_map_analysis(model: Model, r: int) -> LefschetzAnalysis:
    if not 1 <= r <= model.n:
        raise ValueError(f"r must lie in 1..{model.n}")
    records = {}
    for k in range(model.dim + 1):
        kernel, cokernel = lefschetz_kernel_cokernel(model, r, k)
        records[k] = LefschetzRecord(k, model.betti[k] - kernel, kernel, cokernel)
    return LefschetzAnalysis(r, records)


def lefschetz_kernel_classes(model: Model, r: int, k: int) -> list[Form]:
    """Representatives of a basis of ``ker(L^r)`` on ``H^k``."""
    slot = derham_slot(model, k)
    matrix = lefschetz_matrix(model, r, k)
    if not slot.dim:
        return []
    kernel = linalg.nullspace(matrix, slot.dim) if matrix else [
        [Fraction(int(i == j)) for j in range(slot.dim)] for i in range(slot.dim)]
    reps = slot.representatives
    out = []
    for vector in kernel:
        total = Form.zero(model.dim)
        for c, rep in zip(vector, reps):
            total = total + rep * c
        out.append(total)
    return out


# -- long exact sequence engine ----------------------------------------------------

@dataclass
class Row:
    """A short exact row: entries ``(column, slot)`` joined by named horizontal maps."""

    entries: list[tuple[int, Slot]]
    maps: list[tuple[str, FormMap]]
    link: tuple[str, FormMap] | None = None  # explicit connecting map to the next row


@dataclass
class LESReport:
    title: str
    nodes: list[tuple[str, int]] = field(default_factory=list)
    arrows: list[tuple[str, str, str, int]] = field(default_factory=list)
    exact: list[bool] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and all(self.exact)


def _solve_through(source: Slot, target: Slot, op: FormMap, value: Form, what: str) -> Form:
    """A form ``x`` of ``source``'s space with ``op(x) = value`` in ``target``'s space."""
    columns = [target.coords(op(b)) for b in source.basis]
    rhs = target.coords(value)
    rows = [list(r) for r in zip(*columns)] if columns else [[] for _ in rhs]
    solution = linalg.solve(rows, rhs, len(source.basis))
    if solution is None:
        raise ArithmeticError(f"{what}: no preimage in {source.label}")
    return source.form_of(solution)


def _chase(prev: Row, nxt: Row) -> tuple[str, FormMap] | None:
    (col_z, _), (col_y, slot_y) = prev.entries[-1], prev.entries[-2]
    psi = prev.maps[-1][1]
    slot_z = prev.entries[-1][1]
    if len(nxt.entries) < 2 or nxt.entries[0][0] != col_y - 1 or nxt.entries[1][0] != col_y:
        return None
    slot_x, slot_y_next = nxt.entries[0][1], nxt.entries[1][1]
    phi = nxt.maps[0][1]

    def connect(z: Form) -> Form:
        y = _solve_through(slot_y, slot_z, psi, z, "lift")
        dy = slot_y.differential(y)
        return _solve_through(slot_x, slot_y_next, phi, dy, "pull back")

    return "delta", connect


def _check_row(row: Row, report: LESReport, where: str) -> None:
    """Short exactness of a row on the level of forms."""
    slots = [s for _, s in row.entries]
    images = []
    for (name, op), source, target in zip(row.maps, slots, slots[1:]):
        columns = [target.coords(op(b)) for b in source.basis]
        images.append((columns, len(source.basis), len(target.basis)))
    first_cols, first_size, _ = images[0]
    if linalg.rank(first_cols, len(slots[1].basis)) != first_size:
        report.failures.append(f"{where}: first map is not injective")
    last_cols, _, last_size = images[-1]
    if linalg.rank(last_cols, last_size) != last_size:
        report.failures.append(f"{where}: last map is not surjective")
    if len(slots) == 3 and len(slots[0].basis) + len(slots[2].basis) != len(slots[1].basis):
        report.failures.append(f"{where}: dimensions do not add up")


def run_sequence(title: str, rows: list[Row], chase: bool = True, check_rows: bool = True) -> LESReport:
    report = LESReport(title)
    nodes: list[Slot] = []
    matrices: list[list[list[Fraction]]] = []
    names: list[str] = []

    def add_arrow(name: str, op: FormMap | None, source: Slot, target: Slot) -> None:
        if op is None or not source.dim or not target.dim:
            matrix = [[Fraction(0)] * source.dim for _ in range(target.dim)]
        else:
            try:
                matrix = induced_matrix(source, target, op)
            except (ValueError, ArithmeticError) as exc:
                report.failures.append(f"{name}: {source.label} -> {target.label}: {exc}")
                matrix = [[Fraction(0)] * source.dim for _ in range(target.dim)]
        matrices.append(matrix)
        names.append(name)
        report.arrows.append((name, source.label, target.label, linalg.rank(matrix, source.dim) if matrix else 0))

    for i, row in enumerate(rows):
        if check_rows and len(row.entries) > 1:
            _check_row(row, report, f"row {i}")
        for pos, (_, slot) in enumerate(row.entries):
            if nodes:
                if pos > 0:
                    add_arrow(*row.maps[pos - 1], nodes[-1], slot)
                else:
                    prev = rows[i - 1]
                    lands = len(row.entries) >= 2 and row.entries[0][0] == prev.entries[-2][0] - 1
                    if not lands:
                        link = ("0", None)
                    elif chase or prev.link is None:
                        link = _chase(prev, row) or ("0", None)
                    else:
                        link = prev.link
                    add_arrow(link[0], link[1], nodes[-1], slot)
            nodes.append(slot)

    for j, slot in enumerate(nodes):
        incoming = matrices[j - 1] if j >= 1 else None
        outgoing = matrices[j] if j < len(matrices) else None
        rank_in = linalg.rank(incoming, nodes[j - 1].dim) if incoming and nodes[j - 1].dim else 0
        rank_out = linalg.rank(outgoing, slot.dim) if outgoing and slot.dim else 0
        if incoming and outgoing and slot.dim and nodes[j - 1].dim:
            composite = linalg.matmul(outgoing, incoming)
            if any(v for row in composite for v in row):
                report.failures.append(f"composite through {slot.label} is nonzero")
        report.nodes.append((slot.label, slot.dim))
        ok = rank_in + rank_out == slot.dim
        report.exact.append(ok)
        if not ok:
            report.failures.append(f"not exact at {slot.label} (node {j}): in {rank_in}, out {rank_out}, dim {slot.dim}")
    return report


# -- the resolution of the Lefschetz map ---------------------------------------------

def _les_rows(model: Model, r: int) -> list[Row]:
    S, n = model.symplectic, model.n
    p = r - 1
    fc = filtered_complex(model, p)
    H = lambda k: derham_slot(model, k)
    L_r = ("L^r", lambda a: S.L(a, r))
    pi = ("Pi^{r-1}", lambda a: S.project(p, a))
    star = ("*_r", S.star_r)
    down = ("L^{-r}d", lambda a: S.L_inverse(model.d(a), r))
    up = ("Pi^{r-1}*_r d L^{-r}", lambda a: S.project(p, S.star_r(model.d(S.L_inverse(a, r)))))
    rows = []
    for k in range(n + p + 1):
        entries = ([(3, H(k - 2 * r))] if k >= 2 * r else []) + [(4, H(k)), (5, fc.slot("+", k))]
        rows.append(Row(entries, ([L_r] if k >= 2 * r else []) + [pi], down))
    rows.append(Row([(3, H(n - r)), (4, H(n + r))], [L_r], up))
    for m in range(n + p + 1):
        entries = [(2, fc.slot("-", n + p - m)), (3, H(n - r + 1 + m))]
        maps = [star]
        if n + r + 1 + m <= 2 * n:
            entries.append((4, H(n + r + 1 + m)))
            maps.append(L_r)
        rows.append(Row(entries, maps, up))
    return rows


def verify_les(model: Model, r: int, chase: bool = False) -> LESReport:
    """Exactness of the resolution of ``L^r`` at every node.

    Connecting maps are the explicit ones (``L^{-r} d`` and
    ``Pi^{r-1} *_r d L^{-r}``) unless ``chase`` asks for the generic chase.
    """
    if not 1 <= r <= model.n:
        raise ValueError(f"r must lie in 1..{model.n}")
    return run_sequence(f"{model.name}: resolution of L^{r}", _les_rows(model, r), chase=chase)


def _triangle_rows(model: Model, l: int, r: int) -> list[Row]:
    S, n = model.symplectic, model.n
    low, high, mid = filtered_complex(model, l), filtered_complex(model, l + r), filtered_complex(model, r - 1)
    L_r = ("L^r", lambda a: S.L(a, r))
    pi = ("Pi^{r-1}", lambda a: S.project(r - 1, a))
    star = ("Pi^l *_r", lambda a: S.project(l, S.star_r(a)))
    down = (f"L^-{l + 1}", lambda a: S.L_inverse(a, l + 1))
    inclusion = ("iota", lambda a: a)
    rows = []
    for k in range(n + r):
        entries = ([(5, low.slot("+", k - 2 * r))] if k >= 2 * r else []) + [(6, high.slot("+", k)), (7, mid.slot("+", k))]
        rows.append(Row(entries, ([L_r] if k >= 2 * r else []) + [pi]))
    rows.append(Row([(5, low.slot("+", n - r)), (6, high.slot("+", n + r))], [L_r]))
    for m in range(l):
        rows.append(Row([(4, mid.slot("-", n + r - 1 - m)), (5, low.slot("+", n - r + 1 + m)),
                         (6, high.slot("+", n + r + 1 + m))], [star, L_r]))
    rows.append(Row([(4, mid.slot("-", n + r - l - 1)), (5, low.slot("+", n - r + l + 1))], [star]))
    for m in range(r - 1):
        rows.append(Row([(3, high.slot("-", n + r + l - m)), (4, mid.slot("-", n + r - l - 2 - m)),
                         (5, low.slot("+", n - r + l + 2 + m))], [down, star]))
    rows.append(Row([(3, high.slot("-", n + l + 1)), (4, mid.slot("-", n - l - 1))], [down]))
    for k in range(n + l, -1, -1):
        entries = [(2, low.slot("-", k)), (3, high.slot("-", k))]
        maps = [inclusion]
        if k - 2 * l - 2 >= 0:
            entries.append((4, mid.slot("-", k - 2 * l - 2)))
            maps.append(down)
        rows.append(Row(entries, maps))
    return rows


def verify_filtered_triangle(model: Model, l: int, r: int) -> LESReport:
    """Exactness of the sequence relating ``F^l H``, ``F^(l+r) H`` and ``F^(r-1) H``."""
    if l < 0 or r < 1 or l + r > model.n:
        raise ValueError("need l >= 0, r >= 1 and l + r <= n")
    return run_sequence(f"{model.name}: triangle l={l} r={r}", _triangle_rows(model, l, r), chase=True)


# -- dimension formulas -----------------------------------------------------------------

def plus_formula(model: Model, p: int, k: int) -> int:
    """``cok(L^(p+1): H^(k-2p-2) -> H^k) + ker(L^(p+1): H^(k-2p-1) -> H^(k+1))``."""
    return (lefschetz_kernel_cokernel(model, p + 1, k - 2 * p - 2)[1]
            + lefschetz_kernel_cokernel(model, p + 1, k - 2 * p - 1)[0])


def minus_formula(model: Model, p: int, k: int) -> int:
    n2 = model.dim
    return (lefschetz_kernel_cokernel(model, p + 1, n2 - k - 1)[1]
            + lefschetz_kernel_cokernel(model, p + 1, n2 - k)[0])


@dataclass
class FormulaReport:
    model: str
    checks: list[tuple[str, int, int]] = field(default_factory=list)

    def add(self, name: str, computed: int, expected: int) -> None:
        self.checks.append((name, computed, expected))

    @property
    def failures(self) -> list[tuple[str, int, int]]:
        return [c for c in self.checks if c[1] != c[2]]

    @property
    def passed(self) -> bool:
        return not self.failures


def _ker(model, r, k):
    return lefschetz_kernel_cokernel(model, r, k)[0]


def _cok(model, r, k):
    return lefschetz_kernel_cokernel(model, r, k)[1]


def dimension_formula_check(model: Model) -> FormulaReport:
    n, b = model.n, model.betti
    report = FormulaReport(model.name)
    for p in range(n + 1):
        fc = filtered_complex(model, p)
        for k in range(n + p + 1):
            plus, minus = fc.slot("+", k).dim, fc.slot("-", k).dim
            report.add(f"F{p}H+{k} = ker+cok", plus, plus_formula(model, p, k))
            report.add(f"F{p}H-{k} = ker+cok", minus, minus_formula(model, p, k))
            report.add(f"F{p}H+{k} = F{p}H-{k}", plus, minus)
            if k <= 2 * p:
                report.add(f"F{p}H+{k} = b{k}", plus, b[k])
                report.add(f"F{p}H-{k} = b{2 * n - k}", minus, b[2 * n - k])
        if p <= n - 1:
            report.add(f"F{p}H+{2 * p + 1} = b{2 * p + 1}", fc.slot("+", 2 * p + 1).dim, b[2 * p + 1])
            report.add(f"F{p}H-{2 * p + 1} = b{2 * n - 2 * p - 1}", fc.slot("-", 2 * p + 1).dim, b[2 * n - 2 * p - 1])
        report.add(f"index F{p}", fc.index(), 0)
    for r in range(1, n + 1):
        for k in range(2 * n + 1):
            report.add(f"ker L^{r} on H{k} = cok L^{r} into H{2 * n - k}",
                       _ker(model, r, k), _cok(model, r, 2 * n - k - 2 * r))
    slot = lambda p, side, k: filtered_complex(model, p).slot(side, k).dim
    if n == 2:
        report.add("PH2 ddL = ker(L:H1->H3) + cok(L:H0->H2)", slot(0, "+", 2), _ker(model, 1, 1) + _cok(model, 1, 0))
        report.add("PH2 d+dL = ker(L:H2->H4) + cok(L:H1->H3)", slot(0, "-", 2), _ker(model, 1, 2) + _cok(model, 1, 1))
    if n == 3:
        report.add("PH2 del+ = ker(L:H1->H3) + cok(L:H0->H2)", slot(0, "+", 2), _ker(model, 1, 1) + _cok(model, 1, 0))
        report.add("PH3 ddL = ker(L:H2->H4) + cok(L:H1->H3)", slot(0, "+", 3), _ker(model, 1, 2) + _cok(model, 1, 1))
        report.add("PH3 d+dL = ker(L:H3->H5) + cok(L:H2->H4)", slot(0, "-", 3), _ker(model, 1, 3) + _cok(model, 1, 2))
        report.add("PH2 del- = ker(L:H4->H6) + cok(L:H3->H5)", slot(0, "-", 2), _ker(model, 1, 4) + _cok(model, 1, 3))
        report.add("PH2 ddL = ker(L^2:H1->H5) + cok(L^2:H0->H4)", slot(1, "+", 4), _ker(model, 2, 1) + _cok(model, 2, 0))
        report.add("PH2 d+dL = ker(L^2:H2->H6) + cok(L^2:H1->H5)", slot(1, "-", 4), _ker(model, 2, 2) + _cok(model, 2, 1))
    for k in range(n + 1):
        report.add(f"PH{k} ddL = PH{k} d+dL", slot(n - k, "+", 2 * n - k), slot(n - k, "-", 2 * n - k))
    return report
