import random

import pytest

from symplectic_filtered.ainfty import FilteredAlgebra
from symplectic_filtered.properties import SUITES, compatibility_suite, random_form, run_property_suite


@pytest.mark.parametrize("model_name", ["kt", "t4"])
@pytest.mark.parametrize("suite", [s for s in SUITES if s != "compatibility"])
def test_suites_pass(request, model_name, suite):
    model = request.getfixturevalue(model_name)
    result = run_property_suite(model, suite, samples=60, seed=3)
    assert result.samples == 60
    assert result.passed, result.failures


def test_suites_on_a_six_dimensional_nilmanifold(n6):
    for suite in ("leibniz", "homotopy", "associativity", "m4"):
        assert run_property_suite(n6, suite, samples=20, seed=1).passed


def test_compatibility_counts_checks(kt):
    result = compatibility_suite(kt, 0, random.Random(0))
    assert result.passed and result.samples > 0


def test_seeding_is_reproducible(kt):
    a = random_form(kt, 2, random.Random("x"))
    assert a == random_form(kt, 2, random.Random("x"))


def test_unknown_suite(kt):
    with pytest.raises(KeyError):
        run_property_suite(kt, "nope")


def test_broken_product_is_caught(kt, monkeypatch):
    original = FilteredAlgebra.m2

    def skewed(self, x, y):
        out = original(self, x, y)
        return out * 2 if x.j == 1 and y.j == 1 else out

    monkeypatch.setattr(FilteredAlgebra, "m2", skewed)
    assert not run_property_suite(kt, "leibniz", samples=200).passed


def test_failure_list_is_capped():
    from symplectic_filtered.properties import SuiteResult
    r = SuiteResult("x")
    for i in range(50):
        r.fail(str(i))
    assert len(r.failures) == 20 and not r.passed
