import random

import pytest

from symplectic_filtered import bundled_model
from symplectic_filtered.ainfty import (FilteredAlgebra, GradedElement, class_associativity_failures,
                                        commutativity_failures, massey_compatibility, ring_table,
                                        wedge_compatibility)
from symplectic_filtered.exterior import Form


def e(*idx, c=1):
    return Form.monomial(4, idx, c)


@pytest.fixture(scope="module")
def alg(kt):
    return FilteredAlgebra(kt, 0)


def test_gradings(alg):
    assert (alg.middle, alg.top) == (2, 5)
    x = alg.element(4, e(1))
    assert x.bar and x.form_degree == 1


def test_element_validation(alg):
    with pytest.raises(ValueError):
        alg.element(2, e(1, 2))  # omega component is not 0-filtered
    with pytest.raises(ValueError):
        alg.element(1, e(1, 2))
    with pytest.raises(ValueError):
        alg.element(6, e(1))


def test_kt_middle_products(alg):
    b = alg.element(2, e(1, 4))
    c = alg.element(2, e(2, 4))
    a = alg.element(2, e(1, 2) - e(3, 4))
    assert alg.m2(b, b).form == e(1, c=2)
    assert alg.m2(c, b).form == e(2)
    assert alg.m2(a, b).form == -e(3)
    assert alg.m2(b, b).j == 4


def test_kt_product_classes(alg):
    b = alg.element(2, e(1, 4))
    # -e3 is del- exact, so the third product vanishes in cohomology
    assert alg.class_of(alg.m2(alg.element(2, e(1, 2) - e(3, 4)), b)) == [0, 0, 0]
    assert alg.class_of(alg.m2(b, b)) == [2 * v for v in alg.class_of(alg.element(4, e(1)))]


def test_m1_on_kt(alg):
    assert alg.m1(alg.element(2, e(1, 4))).is_zero()
    assert alg.m1(alg.element(1, e(4))).form == alg.S.project(0, e(2, 3))
    assert alg.m1(alg.element(5, Form.scalar(4, 1))).j == 6


def test_m3_vanishes_outside_its_range(alg):
    x = alg.element(1, e(1))
    assert alg.m3(x, x, x).is_zero()
    assert alg.m3(alg.element(4, e(1)), x, x).is_zero()


def test_adding_mismatched_gradings(alg):
    with pytest.raises(ValueError):
        alg.element(1, e(1)) + alg.element(2, e(1, 3))


def test_lower_matches_direct(n6):
    rng = random.Random(5)
    for p in range(4):
        A = FilteredAlgebra(n6, p)
        for j in range(A.middle + 1):
            x = A.random_element(j, rng)
            assert A.lower(x.form) == A.lower_direct(x.form)


@pytest.mark.parametrize("name", ["kt", "t4"])
def test_ring_table_is_consistent(name):
    model = bundled_model(name)
    for p in range(model.n + 1):
        table = ring_table(model, p, perturbations=2, seed=1)
        assert table.failures == []
        assert commutativity_failures(table) == []


def test_image_dims():
    assert ring_table(bundled_model("kt"), 0).block(2, 2).image_dim == 2
    assert ring_table(bundled_model("t4"), 0).block(2, 2).image_dim == 0


def test_unit(kt):
    for p in range(3):
        A = FilteredAlgebra(kt, p)
        one = A.element(0, Form.scalar(4, 1))
        for j in range(A.top + 1):
            for x in A.representatives(j):
                assert A.m2(one, x).form == x.form


def test_class_associativity(kt):
    for p in range(3):
        assert class_associativity_failures(kt, p) == []


@pytest.mark.parametrize("name", ["kt", "t4"])
def test_compatibility(name):
    model = bundled_model(name)
    for p in range(model.n + 1):
        assert wedge_compatibility(model, p).passed
        report = massey_compatibility(model, p)
        assert report.passed and report.checked > 0


def test_f_map_sign_is_forced(kt, monkeypatch):
    # with the opposite sign past the middle grading the wedge compatibility breaks
    original = FilteredAlgebra.f_map

    def flipped(self, j, xi):
        out = original(self, j, xi)
        return out if j <= self.middle else -out

    monkeypatch.setattr(FilteredAlgebra, "f_map", flipped)
    assert not wedge_compatibility(kt, 0).passed


def test_graded_element_repr():
    x = GradedElement(0, 2, 4, e(1))
    assert "bar" in repr(x)
