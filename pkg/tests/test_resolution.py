import pytest

from symplectic_filtered import CORPUS, bundled_model
from symplectic_filtered.exterior import Form
from symplectic_filtered.filtered import filtered_complex
from symplectic_filtered.resolution import (dimension_formula_check, lefschetz_kernel_classes,
                                            lefschetz_kernel_cokernel, lefschetz_map_analysis,
                                            minus_formula, plus_formula, verify_filtered_triangle,
                                            verify_les)


def test_kt_lefschetz(kt):
    assert lefschetz_kernel_cokernel(kt, 1, 0) == (0, 3)
    assert lefschetz_kernel_cokernel(kt, 1, 1) == (1, 1)
    assert lefschetz_kernel_cokernel(kt, 1, 2) == (3, 0)
    assert lefschetz_kernel_classes(kt, 1, 1) == [Form.generator(4, 3)]


def test_torus_is_hard_lefschetz(t6):
    for r in range(1, 4):
        analysis = lefschetz_map_analysis(t6, r)
        assert analysis.kernel(3 - r) == 0


def test_lefschetz_r_range(kt):
    with pytest.raises(ValueError):
        lefschetz_map_analysis(kt, 0)


def test_kt_formulas(kt):
    # F0H+^2 = cok(L: H0 -> H2) + ker(L: H1 -> H3) = 3 + 1
    assert plus_formula(kt, 0, 2) == 4
    assert minus_formula(kt, 0, 2) == 4


@pytest.mark.parametrize("name", ["kt", "t4"])
def test_les_each_r(name):
    model = bundled_model(name)
    for r in range(1, model.n + 1):
        for chase in (False, True):
            report = verify_les(model, r, chase=chase)
            assert report.passed, report.failures


def test_les_reports_nodes(kt):
    report = verify_les(kt, 1)
    assert len(report.nodes) == len(report.exact) > 0


@pytest.mark.parametrize("name", ["kt", "t4"])
def test_triangles(name):
    model = bundled_model(name)
    for l in range(model.n):
        for r in range(1, model.n - l + 1):
            assert verify_filtered_triangle(model, l, r).passed


def test_triangle_arguments(kt):
    with pytest.raises(ValueError):
        verify_filtered_triangle(kt, 1, 2)


@pytest.mark.parametrize("name", ["kt", "t4", "n6"])
def test_formula_report(name):
    report = dimension_formula_check(bundled_model(name))
    assert report.passed, report.failures


def test_formulas_see_broken_dims(kt, monkeypatch):
    # a tampered cohomology dimension must be caught
    fc = filtered_complex(kt, 0)
    slot = fc.slot("+", 2)
    monkeypatch.setattr(type(slot), "dim", property(lambda self: 99 if self is slot else self.quotient.dim))
    assert not dimension_formula_check(kt).passed
