from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from virasoro.distributions import DeltaExpansion, project_pi, realize
from virasoro.fields import (CONST, T, FieldPolynomial, FieldSymbol, FieldTerm, ModeElement,
                             OpeData, h_eigenvalue, mode_bracket_from_ope, mode_exponent,
                             mode_field_bracket, ope_to_distribution, residue_pairing_bracket,
                             tt_ope, weight_bound_check, weight_of)
from virasoro.scalars import C, as_scalar
from virasoro.words import (field_series, split_field, split_series,
                            verify_normal_order_identity, WordSeries)

TT = tt_ope()
t = FieldPolynomial.of(T)


def L(n, coeff=1, central=0):
    return ModeElement({("T", n): coeff} if coeff else {}, central)


def virasoro(m, n):
    central = C * Fraction(m * (m * m - 1), 12) if m + n == 0 else 0
    return L(m + n, m - n, central)


def test_weights():
    assert weight_of(t.derivative()) == 3
    for j, cj in TT.singular.items():
        assert weight_of(cj, pole=j) == 4
    assert weight_of(FieldPolynomial.const(5)) == 0
    assert weight_of(FieldTerm(as_scalar(1), 0, T, 1)) == 1
    with pytest.raises(ValueError):
        weight_of(t + FieldPolynomial.const(1))


def test_ope_validation():
    assert TT.order == 4 and TT.total_weight == 4
    with pytest.raises(ValueError):
        OpeData(T, T, {0: t})
    loose = OpeData(T, T, {0: t}, strict=False)
    assert loose.weight_violations() == [(0, "T(w)", 3)]
    assert TT.display() == "c/2/(z-w)^4 + 2T(w)/(z-w)^2 + ∂T(w)/(z-w)"


def test_ope_to_distribution():
    d = ope_to_distribution(TT)
    assert d.terms == {3: FieldPolynomial.const(C / 2), 1: t.scale(2), 0: t.derivative()}
    assert ope_to_distribution(OpeData(T, T, {})).is_zero()


def test_scalar_ope_round_trip_through_projector():
    x = FieldSymbol("x", 1)
    ope = OpeData(x, x, {1: FieldPolynomial.const(3), 0: FieldPolynomial.const(-2, 1)},
                  strict=False)
    d = DeltaExpansion({j: c.as_laurent() for j, c in ope.singular.items()})
    assert project_pi(realize(d, 8), 3) == d


def test_mode_bracket_examples():
    assert mode_bracket_from_ope(TT, 2, -2) == L(0, 4, C / 2)
    assert mode_bracket_from_ope(TT, 1, -1) == L(0, 2)
    assert mode_bracket_from_ope(TT, 3, 5) == L(8, -2)
    assert str(mode_bracket_from_ope(TT, 2, -2)) == "4*L_0 + c/2"


def test_mode_bracket_matches_virasoro_formula_on_window():
    for m in range(-8, 9):
        for n in range(-8, 9):
            expected = virasoro(m, n)
            assert mode_bracket_from_ope(TT, m, n) == expected
            assert residue_pairing_bracket(TT, m, n) == expected


def test_residue_pairing_central_terms():
    for m in range(-8, 9):
        el = residue_pairing_bracket(TT, m, -m)
        assert el.central == C * Fraction(m * (m - 1) * (m + 1), 12)
        # w**(m+n-1) integrates to something only when m + n = 0
        assert not residue_pairing_bracket(TT, m, 1 - m).central


def test_mode_field_bracket():
    assert mode_field_bracket(TT, -1) == t.derivative()
    assert mode_field_bracket(TT, 0) == t.derivative().times_w(1) + t.scale(2)
    assert not mode_field_bracket(OpeData(T, T, {}), 3)


def test_weight_bound_check():
    assert weight_bound_check(TT)
    bad = OpeData(T, T, {4: FieldPolynomial.const(1)}, strict=False)
    assert not weight_bound_check(bad)
    assert weight_bound_check(OpeData(T, T, {}))
    # a w-dependent top coefficient is outside the hypothesis: vacuously true
    assert weight_bound_check(OpeData(T, T, {4: FieldPolynomial.const(1, 1)}, strict=False))


def test_eigenfield_mode_law():
    for sym in (T, FieldSymbol("a", 1), FieldSymbol("b", 3)):
        for n in range(-6, 7):
            assert h_eigenvalue(sym, n) == -n
            assert mode_exponent(sym, n) == -n - sym.weight


def test_expand_reads_modes():
    series = t.expand(-4, 0)
    # T(w) = sum L_n w**(-n-2): the w**0 coefficient is L_-2
    assert series[0] == L(-2)
    assert series[-4] == L(2)
    dt = t.derivative().expand(-3, -3)
    assert dt[-3] == L(0, -2)


weights = st.integers(0, 3)


@st.composite
def homogeneous_opes(draw):
    a = FieldSymbol("a", draw(weights))
    b = FieldSymbol("b", draw(weights))
    total = a.weight + b.weight
    sing = {}
    for j in range(draw(st.integers(0, 4))):
        terms = []
        for _ in range(draw(st.integers(0, 2))):
            sym = draw(st.sampled_from([a, b, CONST]))
            k = 0 if sym == CONST else draw(st.integers(0, 2))
            # pick the w power that puts the summand at the right weight
            e = sym.weight + k + j + 1 - total
            terms.append(FieldTerm(as_scalar(draw(st.integers(1, 5))), k, sym, e))
        sing[j] = FieldPolynomial(terms)
    return OpeData(a, b, sing)


@given(homogeneous_opes())
@settings(max_examples=50, deadline=None)
def test_weight_conservation(ope):
    for j, cj in ope.singular.items():
        for term in cj.terms:
            assert weight_of(term, pole=j) == ope.total_weight


@given(st.integers(-8, 8), st.integers(-8, 8))
@settings(max_examples=60, deadline=None)
def test_antisymmetry(m, n):
    assert residue_pairing_bracket(TT, m, n) == -residue_pairing_bracket(TT, n, m)
    assert not mode_bracket_from_ope(TT, m, m)


# normal ordering in the free algebra

def test_split_field():
    a = FieldSymbol("a", 1)
    for M in range(1, 6):
        neg, pos = split_field(a, M)
        assert neg + pos == field_series(a, M)
    neg, _ = split_field(a, 4, modes=[-1])
    assert neg.is_zero()


def test_split_commutes_with_derivative():
    s = field_series(FieldSymbol("a", 1), 5)
    neg, pos = split_series(s)
    assert split_series(s.dz()) == (neg.dz(), pos.dz())


def test_normal_order_identities():
    a, b = FieldSymbol("a", 1), FieldSymbol("b", 2)
    for M in range(1, 9):
        assert verify_normal_order_identity(a, b, M)
    assert verify_normal_order_identity(a, a, 6)
    assert verify_normal_order_identity(T, T, 6)


def test_word_series_is_free():
    a, b = FieldSymbol("a", 1), FieldSymbol("b", 1)
    x, y = field_series(a, 1, modes=[0]), field_series(b, 1, "w", modes=[0])
    assert x * y != y * x
    assert (x * y - y * x) == WordSeries({(-1, -1): {(("a", 0), ("b", 0)): 1,
                                                      (("b", 0), ("a", 0)): -1}})
