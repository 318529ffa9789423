from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from virasoro.errors import VariableMismatch
from virasoro.laurent import (LaurentPoly, derivative, gen_binomial, laurent_arithmetic,
                              residue, taylor_about_w)
from virasoro.linalg import nullspace, rank, rref, solve
from virasoro.scalars import C, ONE, ZERO, CentralScalar, as_rational, as_scalar

z = LaurentPoly.monomial(1, 1, "z")
zi = LaurentPoly.monomial(-1, 1, "z")


# scalars

def test_fraction_is_lowest_terms():
    q = as_rational(Fraction(6, -4))
    assert (q.numerator, q.denominator) == (-3, 2)


def test_central_scalar_no_stored_zeros():
    s = CentralScalar({0: 0, 1: Fraction(1, 2), 3: 0})
    assert s.terms == {1: Fraction(1, 2)}
    assert str(s) == "c/2"
    assert not (s - s)


def test_central_scalar_embedding_is_homomorphism():
    for a, b in [(3, 5), (Fraction(1, 3), -2), (0, 7)]:
        assert as_scalar(a) + as_scalar(b) == as_scalar(a + b)
        assert as_scalar(a) * as_scalar(b) == as_scalar(a * b)


def test_central_scalar_products_and_json():
    s = (C + 1) * (C - 1)
    assert s == CentralScalar({2: 1, 0: -1})
    assert CentralScalar.from_json(s.to_json()) == s
    assert s.to_json() == {"0": "-1", "2": "1"}
    assert CentralScalar.from_json("3/4") == as_scalar(Fraction(3, 4))
    with pytest.raises(ValueError):
        (C / 2).constant_value()


scalars = st.builds(lambda a, b, c: CentralScalar({0: a, 1: b, 2: c}),
                    st.fractions(max_denominator=6), st.integers(-4, 4), st.integers(-3, 3))


@given(scalars, scalars, scalars)
@settings(max_examples=60, deadline=None)
def test_central_scalar_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + ZERO == a and a * ONE == a


# Laurent polynomials

def test_arithmetic_examples():
    assert (z + zi) * (z - zi) == LaurentPoly({2: 1, -2: -1}, "z")
    f = z * 3 + zi
    assert laurent_arithmetic(f, LaurentPoly.one("z"), "mul") == f
    assert LaurentPoly.monomial(2, 1, "z") * LaurentPoly.monomial(-2, 3, "z") == LaurentPoly({0: 3}, "z")


def test_variable_mismatch():
    with pytest.raises(VariableMismatch):
        z + LaurentPoly.monomial(1, 1, "w")
    with pytest.raises(VariableMismatch):
        z * LaurentPoly.monomial(1, 1, "w")


def test_divided_derivative_examples():
    w4 = LaurentPoly.monomial(4, 1, "w")
    assert derivative(w4, 2, True) == LaurentPoly.monomial(2, 6, "w")
    assert derivative(LaurentPoly.monomial(-1, 1, "w"), 1, True) == LaurentPoly.monomial(-2, -1, "w")
    assert derivative(LaurentPoly.monomial(2, 1, "w"), 3, True).is_zero()
    assert derivative(w4, 2, False) == LaurentPoly.monomial(2, 12, "w")


def test_residue_examples():
    assert residue(LaurentPoly({2: 1, -1: 3}, "z")) == as_scalar(3)
    assert residue(LaurentPoly.monomial(5, 1, "z")) == ZERO
    assert residue(LaurentPoly({n: 1 for n in range(-4, 5)}, "z")) == ONE


def test_gen_binomial_examples():
    assert gen_binomial(-1, 2) == 1
    assert gen_binomial(3, 3) == 1
    assert gen_binomial(2, 4) == 0
    assert gen_binomial(7, 0) == 1


def test_gen_binomial_pascal():
    for m in range(-20, 21):
        for j in range(1, 9):
            assert gen_binomial(m, j) == gen_binomial(m - 1, j) + gen_binomial(m - 1, j - 1)


def test_gen_binomial_matches_sympy():
    for m in range(-6, 7):
        for j in range(6):
            assert gen_binomial(m, j) == Fraction(str(sympy.binomial(m, j)))


def test_taylor_examples():
    w = lambda e, v=1: LaurentPoly.monomial(e, v, "w")  # noqa: E731
    assert taylor_about_w(3, 3) == [w(3), w(2, 3), w(1, 3), w(0)]
    assert taylor_about_w(0, 2) == [w(0), LaurentPoly(var="w"), LaurentPoly(var="w")]
    for m in range(-5, 6):
        t3 = taylor_about_w(m + 1, 3)[3]
        assert t3 == w(m - 2, Fraction(m * (m * m - 1), 6))


def test_taylor_recombines_to_power():
    for k in range(0, 6):
        terms = taylor_about_w(k, k)
        # compare via sympy: sum t_i(w) (z-w)^i == z^k
        W, Z = sympy.symbols("w z")
        total = sum(sympy.Rational(str(t.coefficient(k - i).constant_value())) * W ** (k - i) * (Z - W) ** i
                    for i, t in enumerate(terms))
        assert sympy.expand(total - Z ** k) == 0


laurents = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(
    lambda d: LaurentPoly(d, "w"))


@given(laurents, laurents)
@settings(max_examples=80, deadline=None)
def test_derivative_is_derivation(f, g):
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


@given(laurents)
@settings(max_examples=80, deadline=None)
def test_residue_of_derivative_vanishes(f):
    assert residue(f.derivative()) == ZERO


@given(laurents, laurents, laurents)
@settings(max_examples=60, deadline=None)
def test_laurent_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert set((f * g).support()) <= {a + b for a in f.support() for b in g.support()}


def test_laurent_json_roundtrip():
    f = LaurentPoly({-2: C / 3, 4: 5}, "w")
    assert LaurentPoly.from_json(f.to_json(), "w") == f


# linear algebra

matrices = st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=5).map(
    lambda rows: (rows, n)))


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_nullspace_matches_sympy(mat):
    rows, n = mat
    ours = nullspace(rows, n)
    ref = sympy.Matrix(rows).nullspace()
    assert len(ours) == len(ref)
    assert rank(rows, n) == sympy.Matrix(rows).rank()
    for v in ours:
        for r in rows:
            assert sum(Fraction(a) * b for a, b in zip(r, v)) == 0


def test_rref_and_solve():
    red, piv, _ = rref([[2, 4], [1, 3]], 2)
    assert piv == [0, 1] and red == [[1, 0], [0, 1]]
    x = solve([[1, 1], [1, -1]], 2, [as_scalar(3), as_scalar(1)], zero=ZERO)
    assert x == [as_scalar(2), as_scalar(1)]
    assert solve([[1, 1], [2, 2]], 2, [ONE, ONE], zero=ZERO) is None
    x = solve([[2]], 1, [C], zero=ZERO)
    assert x == [C / 2]
