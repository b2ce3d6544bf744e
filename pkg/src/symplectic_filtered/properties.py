"""Seeded property suites over a model: sl(2) relations, operator identities, A-infinity laws.

Each suite draws random forms or graded elements from a seeded generator and
records the inputs of every sample where an identity fails.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .ainfty import FilteredAlgebra, massey_compatibility, wedge_compatibility
from .exterior import Form, basis
from .filtered import partial_minus, partial_plus
from .model import Model


@dataclass
class SuiteResult:
    name: str
    samples: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        # keep the dump readable when something is badly wrong
        if len(self.failures) < 20:
            self.failures.append(message)


def random_form(model: Model, degree: int, rng: random.Random, density: float = 0.5, bound: int = 3) -> Form:
    terms = {}
    for index in basis(model.dim, degree):
        if rng.random() < density:
            value = rng.randint(-bound, bound)
            if value:
                terms[index] = value
    return Form(model.dim, terms)


def _degree(model: Model, rng: random.Random) -> int:
    return rng.randint(0, model.dim)


# -- form-level identities ---------------------------------------------------------

def sl2_suite(model: Model, samples: int, rng: random.Random) -> SuiteResult:
    """``[Lambda, L] = H``, ``[H, L] = -2L``, ``[H, Lambda] = 2 Lambda`` with ``H = n - k`` on ``k``-forms."""
    S = model.symplectic
    out = SuiteResult("sl2")
    for _ in range(samples):
        k = _degree(model, rng)
        a = random_form(model, k, rng)
        out.samples += 1
        if S.Lambda(S.L(a)) - S.L(S.Lambda(a)) != S.H(a):
            out.fail(f"[Lambda,L] != H on degree {k}: {a}")
        if S.H(S.L(a)) - S.L(S.H(a)) != S.L(a) * -2:
            out.fail(f"[H,L] != -2L on degree {k}: {a}")
        if S.H(S.Lambda(a)) - S.Lambda(S.H(a)) != S.Lambda(a) * 2:
            out.fail(f"[H,Lambda] != 2 Lambda on degree {k}: {a}")
    return out


def dminus_suite(model: Model, samples: int, rng: random.Random) -> SuiteResult:
    """``*_r d *_r = del- + del+ L^{-1}`` on arbitrary forms."""
    S = model.symplectic
    out = SuiteResult("dmsimp")
    for _ in range(samples):
        k = _degree(model, rng)
        a = random_form(model, k, rng)
        out.samples += 1
        left = S.star_r(model.d(S.star_r(a)))
        right = partial_minus(model, a) + partial_plus(model, S.L_inverse(a, 1))
        if left != right:
            out.fail(f"degree {k}: {a}")
    return out


def projection_suite(model: Model, samples: int, rng: random.Random) -> SuiteResult:
    """``1 = Pi^p + L^{p+1} L^{-(p+1)}`` and ``1 = *_r Pi^p *_r + L^{-(p+1)} L^{p+1}``."""
    S = model.symplectic
    out = SuiteResult("relations")
    for _ in range(samples):
        k = _degree(model, rng)
        p = rng.randint(0, model.n)
        a = random_form(model, k, rng)
        out.samples += 1
        if S.project(p, a) + S.L(S.L_inverse(a, p + 1), p + 1) != a:
            out.fail(f"Pi^{p} + L^{p + 1}L^-{p + 1} on degree {k}: {a}")
        if S.star_r(S.project(p, S.star_r(a))) + S.L_inverse(S.L(a, p + 1), p + 1) != a:
            out.fail(f"*Pi^{p}* + L^-{p + 1}L^{p + 1} on degree {k}: {a}")
    return out


# -- A-infinity identities -------------------------------------------------------------

def _algebras(model: Model) -> list[FilteredAlgebra]:
    return [FilteredAlgebra(model, p) for p in range(model.n + 1)]


def _leibniz_case(alg: FilteredAlgebra, j: int, k: int) -> str:
    if j > alg.middle or k > alg.middle:
        return "barred"
    if j + k < alg.middle:
        return "below"
    return "middle" if j + k == alg.middle else "above"


def _pick(rng: random.Random, pools: dict) -> tuple:
    live = [key for key in sorted(pools) if pools[key]]
    return rng.choice(pools[rng.choice(live)])


def leibniz_suite(model: Model, samples: int, rng: random.Random) -> SuiteResult:
    """``m1`` is a graded derivation of ``m2``; samples are spread evenly over the four cases."""
    out = SuiteResult("leibniz")
    algebras = _algebras(model)
    for _ in range(samples):
        alg = rng.choice(algebras)
        pools: dict = {}
        for j in range(alg.top + 1):
            for k in range(alg.top - j):
                pools.setdefault(_leibniz_case(alg, j, k), []).append((j, k))
        j, k = _pick(rng, pools)
        x, y = alg.random_element(j, rng), alg.random_element(k, rng)
        out.samples += 1
        if alg.leibniz_defect(x, y).form:
            out.fail(f"p={alg.p} ({j},{k}) {_leibniz_case(alg, j, k)}: {x.form} | {y.form}")
    return out


def commutativity_suite(model: Model, samples: int, rng: random.Random) -> SuiteResult:
    out = SuiteResult("commutativity")
    algebras = _algebras(model)
    for _ in range(samples):
        alg = rng.choice(algebras)
        j = rng.randint(0, alg.top)
        k = rng.randint(0, alg.top - j)
        x, y = alg.random_element(j, rng), alg.random_element(k, rng)
        sign = -1 if (j * k) % 2 else 1
        out.samples += 1
        if (alg.m2(x, y) - alg.m2(y, x) * sign).form:
            out.fail(f"p={alg.p} ({j},{k}): {x.form} | {y.form}")
    return out


def _triples(alg: FilteredAlgebra, total_max: int) -> list[tuple[int, int, int]]:
    return [(i, j, k) for i in range(alg.top + 1) for j in range(alg.top + 1 - i)
            for k in range(total_max + 1 - i - j)]


def homotopy_suite(model: Model, samples: int, rng: random.Random) -> SuiteResult:
    """Associator of ``m2`` equals the ``m1``/``m3`` correction, biased towards the non-associative range."""
    out = SuiteResult("homotopy")
    algebras = _algebras(model)
    for _ in range(samples):
        alg = rng.choice(algebras)
        pools: dict = {}
        for t in _triples(alg, alg.top):
            unbarred = max(t) <= alg.middle
            pools.setdefault("m3" if unbarred and sum(t) >= alg.middle + 2 else "other", []).append(t)
        i, j, k = _pick(rng, pools)
        x, y, z = (alg.random_element(g, rng) for g in (i, j, k))
        out.samples += 1
        if alg.homotopy_defect(x, y, z).form:
            out.fail(f"p={alg.p} ({i},{j},{k}): {x.form} | {y.form} | {z.form}")
    return out


def associativity_suite(model: Model, samples: int, rng: random.Random) -> SuiteResult:
    """Strict associativity when ``i+j+k <= n+p`` or some factor is barred."""
    out = SuiteResult("associativity")
    algebras = _algebras(model)
    for _ in range(samples):
        alg = rng.choice(algebras)
        pools: dict = {}
        for t in _triples(alg, alg.top):
            if sum(t) <= alg.middle:
                pools.setdefault("low", []).append(t)
            elif max(t) > alg.middle:
                pools.setdefault("barred", []).append(t)
        i, j, k = _pick(rng, pools)
        x, y, z = (alg.random_element(g, rng) for g in (i, j, k))
        out.samples += 1
        if alg.associator(x, y, z).form:
            out.fail(f"p={alg.p} ({i},{j},{k}): {x.form} | {y.form} | {z.form}")
    return out


def m4_suite(model: Model, samples: int, rng: random.Random) -> SuiteResult:
    out = SuiteResult("m4")
    algebras = _algebras(model)
    for _ in range(samples):
        alg = rng.choice(algebras)
        gradings = [rng.randint(0, alg.middle) for _ in range(4)]
        # bias towards quadruples where m3 can be nonzero
        while sum(gradings) < alg.middle + 3 and any(g < alg.middle for g in gradings):
            pos = rng.randrange(4)
            gradings[pos] = min(alg.middle, gradings[pos] + 1)
        if sum(gradings) > alg.top + 1:
            gradings = [rng.randint(0, alg.top) for _ in range(4)]
        w, x, y, z = (alg.random_element(g, rng) for g in gradings)
        out.samples += 1
        if alg.m4_defect(w, x, y, z).form:
            out.fail(f"p={alg.p} {tuple(gradings)}: {w.form} | {x.form} | {y.form} | {z.form}")
    return out


def compatibility_suite(model: Model, samples: int, rng: random.Random, ps: list[int] | None = None) -> SuiteResult:
    """Wedge and Massey compatibility on all pairs of basis classes (deterministic, so ``samples`` is unused)."""
    out = SuiteResult("compatibility")
    for p in ps if ps is not None else range(model.n + 1):
        for label, report in (("wedge", wedge_compatibility(model, p)), ("massey", massey_compatibility(model, p))):
            out.samples += report.checked
            for failure in report.failures:
                out.fail(f"{label} p={p} {failure}")
    return out


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "sl2": sl2_suite,
    "dmsimp": dminus_suite,
    "relations": projection_suite,
    "leibniz": leibniz_suite,
    "commutativity": commutativity_suite,
    "homotopy": homotopy_suite,
    "associativity": associativity_suite,
    "m4": m4_suite,
    "compatibility": compatibility_suite,
}


def run_property_suite(model: Model, name: str, samples: int = 200, seed: int = 0) -> SuiteResult:
    """One suite with its own generator seeded from ``seed`` and the suite name."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    rng = random.Random(f"{seed}:{name}")
    start = time.perf_counter()
    result = SUITES[name](model, samples, rng)
    result.seconds = time.perf_counter() - start
    return result
