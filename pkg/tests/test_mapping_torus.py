import dataclasses
import json
import random
from fractions import Fraction

import pytest
import sympy as sp

from symplectic_filtered.mapping_torus import (PHI, FiberedAlgebra, FiberedForm, MonodromyError,
                                               analyze_monodromy, bundled_monodromy, cross_validate,
                                               d_gamma_formula, f_poly, gamma_tilde_of, identity_monodromy,
                                               load_monodromy, orthogonality_failures, pairing_image,
                                               pairing_image_dim, poly, radical_matches, recipe_generators,
                                               shift)
from symplectic_filtered.model import bundled_model


def test_f_polynomials():
    assert f_poly(0) == poly(1)
    assert f_poly(1) == poly(PHI)
    assert f_poly(2) == poly((PHI**2 - PHI) / 2)
    assert f_poly(3) == poly((PHI**3 - 3 * PHI**2 + 2 * PHI) / 6)
    with pytest.raises(ValueError):
        f_poly(-1)


@pytest.mark.parametrize("i", range(1, 9))
def test_f_identities(i):
    assert f_poly(i).eval(0) == 0
    assert f_poly(i) - shift(f_poly(i), -1) == shift(f_poly(i - 1), -1)
    derivative = sum((f_poly(i - m) * sp.Rational((-1) ** (m + 1), m) for m in range(1, i + 1)), poly(0))
    assert f_poly(i).diff(PHI) == derivative


def long_chain_algebra(length=9):
    # a single Jordan block; the pairing plays no role in d
    rank = length + length % 2
    tau = [[int(i == j or j == i + 1) for j in range(rank)] for i in range(rank)]
    data = identity_monodromy(rank // 2)
    data = dataclasses.replace(data, tau_star=tuple(map(tuple, tau)))
    chain = tuple(tuple(Fraction(int(k == j)) for k in range(rank)) for j in range(length))
    return rank, chain


def test_d_gamma_formula_up_to_eight():
    rank, chain = long_chain_algebra()
    data = identity_monodromy(rank // 2)
    alg = FiberedAlgebra(data)
    alg.invariants = dataclasses.replace(alg.invariants, chains=(chain,))
    assert not alg.d(alg.gamma_tilde(0, 0))
    assert alg.d(alg.gamma_tilde(0, 1)) == alg.wedge(alg.dphi(), alg.gamma_tilde(0, 0))
    third = (alg.gamma_tilde(0, 2) - alg.gamma_tilde(0, 1).scale(Fraction(1, 2))
             + alg.gamma_tilde(0, 0).scale(Fraction(1, 3)))
    assert alg.d(alg.gamma_tilde(0, 3)) == alg.wedge(alg.dphi(), third)
    for j in range(9):
        assert alg.d(alg.gamma_tilde(0, j)) == d_gamma_formula(alg, 0, j)


def random_fibered(alg, rng, rank):
    terms = {}
    for base in range(4):
        for fiber in ["1", "area"] + list(range(rank)):
            if rng.random() < 0.5:
                terms[(base, fiber)] = poly(sum(rng.randint(-3, 3) * PHI**k for k in range(4)))
    return alg.form(terms)


def test_d_squared_and_leibniz():
    data = bundled_monodromy("genus2")
    alg = FiberedAlgebra(data)
    rng = random.Random(2)
    for _ in range(50):
        x, y = random_fibered(alg, rng, 4), random_fibered(alg, rng, 4)
        assert not alg.d(alg.d(x))
        # Leibniz on homogeneous pieces
        for dx in x.degrees():
            xs = alg.form({k: v for k, v in x.terms.items() if FiberedForm(4, {k: v}).degree == dx})
            left = alg.d(alg.wedge(xs, y))
            right = alg.wedge(alg.d(xs), y) + alg.wedge(xs, alg.d(y)).scale((-1) ** dx)
            assert left == right


def test_integration():
    alg = FiberedAlgebra(bundled_monodromy("genus2"))
    assert alg.integrate(alg.wedge(alg.constant(3), alg.area())) == 1
    assert alg.integrate(alg.wedge(alg.dphi(), alg.wedge(alg.dt(), alg.area()))) == -1
    assert alg.integrate(alg.wedge(alg.constant(3), alg.area()).scale(poly(PHI))) == Fraction(1, 2)
    with pytest.raises(ValueError):
        alg.integrate(alg.dt())


def test_genus2_fibre_integrals():
    alg = FiberedAlgebra(bundled_monodromy("genus2"))
    g = alg.gamma_tilde
    assert alg.fiber_integral(alg.wedge(g(0, 0), g(0, 1))) == poly(0)
    assert alg.fiber_integral(alg.wedge(g(0, 0), g(0, 3))) == poly(1)


@pytest.mark.parametrize("name", ["kt", "genus2"])
def test_bundled_invariants(name):
    inv = analyze_monodromy(bundled_monodromy(name))
    assert (inv.q, inv.p) == (1, 0)
    table = inv.dimension_table()
    assert table["betti"] == (1, 3, 4, 3, 1)
    assert table["PH2_ddL"] == table["PH2_d+dL"] == 4
    assert table["PH1_del+"] == table["PH1_del-"] == 3


@pytest.mark.parametrize("genus", [1, 2, 3])
def test_identity_monodromy(genus):
    data = identity_monodromy(genus)
    inv = analyze_monodromy(data)
    assert inv.p == inv.q == genus
    assert inv.dimension_table()["PH2_ddL"] == 4 * genus + 1
    assert pairing_image_dim(data) == 0


def test_identity_genus_one_is_the_four_torus():
    table = analyze_monodromy(identity_monodromy(1)).dimension_table()
    t4 = bundled_model("t4")
    assert table["betti"] == t4.betti
    assert cross_validate(identity_monodromy(1), t4).passed


def test_pairing_images():
    kt = pairing_image(bundled_monodromy("kt"))
    assert kt.dim == 2
    # dphi^gt1 x dt^gt1 is the dphi class, the square of dt^gt1 is twice the dt class
    assert kt.nonzero() == {(2, 3): (1, 0, 0), (3, 3): (0, -2, 0)}
    g2 = pairing_image(bundled_monodromy("genus2"))
    assert g2.dim == 1
    assert g2.witnesses == [(1, 0, 0)]


@pytest.mark.parametrize("name", ["kt", "genus2"])
def test_recipe_generators_match_files(name):
    data = bundled_monodromy(name)
    alg = FiberedAlgebra(data)
    assert pairing_image(data, recipe_generators(alg)).dim == pairing_image_dim(data)


def test_automatic_chains_give_same_invariant():
    data = dataclasses.replace(bundled_monodromy("genus2"), chains=None, ph2_generators=())
    assert analyze_monodromy(data).block_sizes == (4,)
    assert pairing_image_dim(data) == 1


@pytest.mark.parametrize("name", ["kt", "genus2"])
def test_orthogonality(name):
    data = bundled_monodromy(name)
    assert radical_matches(data)
    assert orthogonality_failures(data, samples=100, seed=7) == []


def test_kt_cross_validation():
    check = cross_validate(bundled_monodromy("kt"), bundled_model("kt"))
    assert check.passed, check.rows


def doc(name):
    from importlib import resources
    return json.loads((resources.files("symplectic_filtered") / "corpus" / f"{name}.mono").read_text())


def test_rejects_non_symplectic_monodromy():
    d = doc("genus2")
    d["intersection"] = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    with pytest.raises(MonodromyError, match="preserve"):
        load_monodromy(json.dumps(d))


@pytest.mark.parametrize("patch, message", [
    ({"rank": 3}, "even"),
    ({"tau_star": [[1, 1], [0]]}, "2x2"),
    ({"intersection": [[0, 1], [1, 0]]}, "skew"),
    ({"intersection": [[0, 0], [0, 0]]}, "nondegenerate"),
    ({"chains": [[[0, 1], [1, 0]]]}, "Jordan chain"),
    ({"chains": [[[1, 0]]]}, "maximal"),
    ({"ph2_generators": [{"form": [[1, "dt", "gt0.1"]]}]}, "del_minus"),
    ({"ph2_generators": [{"form": [[1, "dt", "gt0.1"]], "del_minus": [[1, "1", "gt0.0"]]}]}, "differs"),
    ({"ph2_generators": [{"form": [[1, "dt^dphi", "1"]]}]}, "not primitive"),
    ({"ph2_generators": [{"form": [[1, "dz", "1"]]}]}, "base monomial"),
    ({"ph2_generators": [{"form": [[1, "dt", "gt9.0"]]}]}, "lift reference"),
])
def test_rejects_bad_documents(patch, message):
    d = doc("kt")
    d.update(patch)
    with pytest.raises(MonodromyError, match=message):
        data = load_monodromy(json.dumps(d))
        pairing_image(data)


def test_polynomial_coefficients_in_generators():
    d = doc("kt")
    d["ph2_generators"] = [{"form": [[[0, 1], "dt", "a"], [1, "dt", "b"]], "del_minus": [[-1, "1", "a"]]}]
    data = load_monodromy(json.dumps(d))
    # phi*dt^a + dt^b is the lift dt^gt0.1
    assert pairing_image(data).nonzero() == {(0, 0): (0, -2, 0)}
