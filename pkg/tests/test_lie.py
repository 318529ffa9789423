from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from virasoro.errors import WindowExhausted
from virasoro.laurent import LaurentPoly
from virasoro.lie import (DiagonalCocycle, VectorField, VirasoroElement, WittElement,
                          jacobi_check, mode_vf_iso_check, vf_bracket, virasoro_bracket,
                          virasoro_cocycle, witt_bracket)
from virasoro.scalars import as_scalar

Lw = WittElement.basis
Lv = VirasoroElement.basis
VIR = virasoro_cocycle(16)


def test_vector_field_bracket():
    z = lambda e, v=1: LaurentPoly.monomial(e, v, "z")  # noqa: E731
    assert vf_bracket(VectorField(z(1)), VectorField(z(2))) == VectorField(z(2))
    assert vf_bracket(VectorField.basis(1), VectorField.basis(-1)) == VectorField.basis(0).scale(2)
    with pytest.raises(ValueError):
        VectorField(LaurentPoly.one("w"))


def test_witt_examples():
    assert witt_bracket(Lw(1), Lw(-1)) == Lw(0).scale(2)
    assert witt_bracket(Lw(3), Lw(5)) == Lw(8).scale(-2)
    assert witt_bracket(Lw(4), Lw(4)).is_zero()
    assert str(witt_bracket(Lw(1), Lw(-1))) == "2*L_0"


def test_mode_vector_field_isomorphism():
    assert mode_vf_iso_check(8)
    assert not mode_vf_iso_check(3, sign=1)


def test_virasoro_examples():
    assert virasoro_bracket(Lv(2), Lv(-2), VIR) == VirasoroElement(Lw(0).scale(4), Fraction(1, 2))
    assert virasoro_bracket(Lv(1), Lv(-1), VIR) == Lv(0).scale(2)
    assert virasoro_bracket(Lv(3), Lv(-3), VIR).central == as_scalar(2)
    c = VirasoroElement.central_unit()
    assert virasoro_bracket(c, Lv(5), VIR).is_zero()
    assert virasoro_bracket(Lv(-4), c, VIR).is_zero()


def test_cocycle_values():
    assert [VIR.f(m) for m in range(-3, 4)] == [as_scalar(x) for x in (-2, Fraction(-1, 2), 0, 0, 0,
                                                                       Fraction(1, 2), 2)]
    assert VIR(2, 3) == as_scalar(0)
    with pytest.raises(WindowExhausted):
        VIR.f(17)
    with pytest.raises(ValueError):
        DiagonalCocycle({0: 1})


elements = st.dictionaries(st.integers(-5, 5), st.integers(-4, 4), max_size=3).map(WittElement)


@given(elements, elements, elements)
@settings(max_examples=60, deadline=None)
def test_witt_is_alternating_and_bilinear(x, y, z):
    assert witt_bracket(x, x).is_zero()
    assert witt_bracket(x, y) == -witt_bracket(y, x)
    assert witt_bracket(x + y, z) == witt_bracket(x, z) + witt_bracket(y, z)


@given(elements, elements)
@settings(max_examples=60, deadline=None)
def test_virasoro_skew_and_central(x, y):
    X, Y = VirasoroElement(x, 3), VirasoroElement(y, -1)
    assert virasoro_bracket(X, Y, VIR) == -virasoro_bracket(Y, X, VIR)
    assert virasoro_bracket(X, VirasoroElement.central_unit(), VIR).is_zero()


def test_jacobi():
    res = jacobi_check(witt_bracket, 6)
    assert res.ok and res.checked > 0 and res.skipped > 0
    assert jacobi_check(lambda x, y: virasoro_bracket(x, y, VIR), 8, basis=Lv)
    m5 = DiagonalCocycle.from_function(lambda m: m ** 5, 8)
    bad = jacobi_check(lambda x, y: virasoro_bracket(x, y, m5), 8, basis=Lv)
    assert not bad
    assert bad.counterexample == (-3, 1, 2)


def test_json():
    el = VirasoroElement(Lw(0).scale(4), Fraction(1, 2))
    assert el.to_json()["central"] == {"0": "1/2"}
    assert VIR.to_json()["2"] == {"0": "1/2"}
