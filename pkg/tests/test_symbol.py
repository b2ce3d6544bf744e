from fractions import Fraction

import pytest

from symplectic_filtered.exterior import Form
from symplectic_filtered.sl2 import SymplecticStructure
from symplectic_filtered.symbol import (PrimitiveSplit, e12_prime, primitive_image_checks,
                                        primitive_vector_split, recombine, symbol_exactness,
                                        transverse_primitives)


@pytest.mark.parametrize("dim", [2, 4, 6])
def test_symbol_sequences_are_exact(dim):
    for p in range(dim // 2 + 1):
        report = symbol_exactness(dim, p)
        assert report.passed, report.failures()
        assert len(report.positions) == 2 * (dim // 2 + p) + 2


def test_symbol_argument_checks():
    with pytest.raises(ValueError):
        symbol_exactness(5, 0)
    with pytest.raises(ValueError):
        symbol_exactness(4, 3)


def test_symbol_detects_a_broken_sequence(monkeypatch):
    # a zero middle map leaves the sequence non-exact
    from symplectic_filtered import symbol
    real = symbol.FilteredComplex

    class Broken(real):
        def __init__(self, data, p):
            super().__init__(data, p)
            self.middle_map = [[0] * len(row) for row in self.middle_map]

    monkeypatch.setattr(symbol, "FilteredComplex", Broken)
    assert not symbol_exactness(4, 0).passed


def e(*idx, c=1):
    return Form.monomial(6, idx, c)


def test_splits():
    assert primitive_vector_split(6, e(3)) == PrimitiveSplit(Form.zero(6), Form.zero(6), Form.zero(6), e(3))
    split = primitive_vector_split(6, e(1, 3))
    assert split.beta1 == e(3) and not split.beta4
    S = SymplecticStructure.darboux(6)
    b = S.decompose(e(1, 2))[0]
    split = primitive_vector_split(6, b)
    assert split.beta3 == Form.scalar(6, Fraction(2, 3))  # e12 - omega/3 = 2/3 (e12 - (e34+e56)/2)


def test_split_round_trip():
    S = SymplecticStructure.darboux(6)
    for s in range(4):
        for mu in S.primitive_basis(s):
            assert recombine(6, primitive_vector_split(6, mu)) == mu


def test_e12_prime_is_primitive():
    S = SymplecticStructure.darboux(6)
    for s in range(2):
        for b in transverse_primitives(S, s):
            assert not S.Lambda(e12_prime(S, b))


def test_split_rejects_non_primitive():
    with pytest.raises(ValueError):
        primitive_vector_split(6, e(1, 2))


@pytest.mark.parametrize("dim", [2, 4, 6, 8])
def test_primitive_images(dim):
    assert all(primitive_image_checks(dim).values())


@pytest.mark.slow
def test_symbol_dimension_eight():
    for p in range(5):
        assert symbol_exactness(8, p).passed
