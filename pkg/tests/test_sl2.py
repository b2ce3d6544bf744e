import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symplectic_filtered import linalg
from symplectic_filtered.exterior import Form, basis, random_form, wedge
from symplectic_filtered.sl2 import SymplecticStructure

S4 = SymplecticStructure.darboux(4)
S6 = SymplecticStructure.darboux(6)


def e(dim, *idx, c=1):
    return Form.monomial(dim, idx, c)


def test_lambda_values_in_four_dimensions():
    assert S4.Lambda(e(4, 1, 2)) == Form.scalar(4, 1)
    assert S4.Lambda(S4.omega) == Form.scalar(4, 2)
    assert not S4.Lambda(e(4, 3))


def test_decomposition_of_e12():
    parts = S4.decompose(e(4, 1, 2))
    assert parts == {0: (e(4, 1, 2) - e(4, 3, 4)) * Fraction(1, 2), 1: Form.scalar(4, Fraction(1, 2))}
    assert not S4.Lambda(parts[0])
    assert S4.recompose(parts) == e(4, 1, 2)


def test_decomposition_of_omega():
    assert S4.decompose(S4.omega) == {1: Form.scalar(4, 1)}


@pytest.mark.parametrize("S", [S4, S6])
def test_primitive_dimensions(S):
    for s in range(S.n + 1):
        expected = comb(S.dim, s) - (comb(S.dim, s - 2) if s >= 2 else 0)
        assert len(S.primitive_basis(s)) == expected
    assert S.primitive_basis(S.n + 1) == []


@pytest.mark.parametrize("S", [S4, S6])
def test_hard_lefschetz_on_forms(S):
    for k in range(S.n + 1):
        matrix = linalg.transpose([S.L(Form(S.dim, {i: 1}), S.n - k).to_vector(2 * S.n - k) for i in basis(S.dim, k)])
        assert linalg.rank(matrix, len(basis(S.dim, k))) == len(basis(S.dim, k))


def test_primitive_forms_are_killed_by_the_right_power():
    for s in range(S6.n + 1):
        for b in S6.primitive_basis(s):
            assert not S6.L(b, S6.n + 1 - s)
            if S6.n - s >= 0 and s <= S6.n:
                assert S6.L(b, S6.n - s)


def test_star_r_on_components():
    # omega^r B_s goes to omega^(n-r-s) B_s
    b = (e(6, 1, 2) - e(6, 3, 4))
    assert S6.star_r(b) == S6.L(b, 1)
    assert S6.star_r(Form.scalar(6, 1)) == S6.omega_power(3)


def test_filtered_coordinates_reject_unfiltered():
    with pytest.raises(ValueError):
        S4.filtered_coordinates(0, S4.omega, 2)


def test_filtered_basis_sizes():
    # p-filtered k-forms: all of them once p >= k/2
    assert len(S6.filtered_basis(1, 2)) == 15
    assert len(S6.filtered_basis(0, 2)) == 14
    # a 4-form in dimension 6 has no r=0 component since s=4 > n
    assert len(S6.filtered_basis(0, 4)) == 0
    assert len(S6.filtered_basis(1, 4)) == 14


def test_darboux_rejects_odd_or_degenerate():
    with pytest.raises(ValueError):
        SymplecticStructure(e(4, 1, 2))
    with pytest.raises(ValueError):
        SymplecticStructure(Form.scalar(4, 1))


seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=6))
def test_sl2_commutators(seed, k):
    a = random_form(seed, 6, k)
    assert S6.Lambda(S6.L(a)) - S6.L(S6.Lambda(a)) == S6.H(a)
    assert S6.H(S6.L(a)) - S6.L(S6.H(a)) == S6.L(a) * -2
    assert S6.H(S6.Lambda(a)) - S6.Lambda(S6.H(a)) == S6.Lambda(a) * 2


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=6))
def test_star_r_is_an_involution(seed, k):
    a = random_form(seed, 6, k)
    assert S6.star_r(S6.star_r(a)) == a


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=6))
def test_symplectic_star_squares_to_one(seed, k):
    a = random_form(seed, 6, k)
    assert S6.star_s(S6.star_s(a)) == a


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=3))
def test_projection_relations(seed, k, p):
    a = random_form(seed, 6, k)
    assert S6.project(p, a) + S6.L(S6.L_inverse(a, p + 1), p + 1) == a
    assert S6.star_r(S6.project(p, S6.star_r(a))) + S6.L_inverse(S6.L(a, p + 1), p + 1) == a
    assert S6.is_filtered(p, S6.project(p, a))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=6))
def test_decomposition_round_trip_and_primitivity(seed, k):
    a = random_form(seed, 6, k)
    parts = S6.decompose(a)
    assert S6.recompose(parts) == a
    assert all(not S6.Lambda(b) for b in parts.values())


def test_non_darboux_omega():
    omega = e(6, 1, 6) + e(6, 2, 5, c=2) + e(6, 3, 4)
    S = SymplecticStructure(omega)
    rng = random.Random(3)
    for k in range(7):
        a = random_form(rng, 6, k)
        assert S.Lambda(S.L(a)) - S.L(S.Lambda(a)) == S.H(a)
        assert S.recompose(S.decompose(a)) == a
