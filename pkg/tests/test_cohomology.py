import random
from fractions import Fraction

import pytest

from virasoro.cohomology import (Cochain, basis_one_cochain, build_central_extension,
                                 coboundary, diagonal_cocycle_solve, is_coboundary,
                                 is_cocycle, wedge)
from virasoro.errors import (NotACocycle, UndefinedValue, UnderdeterminedWindow,
                             UnsupportedDegree)
from virasoro.lie import DiagonalCocycle, VirasoroElement, WittElement, virasoro_cocycle
from virasoro.scalars import as_scalar

M = 6


def test_cochain_is_alternating():
    om = Cochain(2, M, {(1, 2): 3})
    assert om.value((2, 1)) == as_scalar(-3)
    assert om.value((4, 4)) == as_scalar(0)
    assert om(WittElement({1: 2}), WittElement.basis(2)) == as_scalar(6)
    with pytest.raises(UndefinedValue):
        om.value((7, 0))
    with pytest.raises(UnsupportedDegree):
        Cochain(4, M)
    with pytest.raises(ValueError):
        Cochain(2, M, {(1, 2, 3): 1})


def test_coboundary_of_zero_mode():
    d = coboundary(basis_one_cochain(0, M))
    for m in range(1, M + 1):
        assert d.value((m, -m)) == as_scalar(-2 * m)
        assert d.value((-m, m)) == as_scalar(2 * m)
    assert d.value((1, 2)) == as_scalar(0)
    assert (1, 6) in d.undefined and not d.is_defined((1, 6))
    assert coboundary(Cochain.zero(0, M)).is_zero()
    assert coboundary(Cochain.zero(1, M)).is_zero()
    with pytest.raises(UnsupportedDegree):
        coboundary(Cochain.zero(3, M))


def test_coboundary_squares_to_zero():
    rng = random.Random(11)
    for degree in (0, 1):
        for _ in range(5):
            assert coboundary(coboundary(Cochain.random(degree, M, rng))).is_zero()


def test_wedge_examples():
    a, b = basis_one_cochain(1, M), basis_one_cochain(2, M)
    ab = wedge(a, b)
    assert ab.value((1, 2)) == as_scalar(1) and ab.value((2, 1)) == as_scalar(-1)
    assert wedge(b, a).value((1, 2)) == as_scalar(-1)
    assert wedge(a, a).is_zero()
    s = Cochain(0, M, {(): 3})
    assert wedge(s, ab).agrees(ab.scale(3))
    with pytest.raises(UnsupportedDegree):
        wedge(ab, ab)


def test_leibniz():
    rng = random.Random(5)
    for p, q in ((1, 1), (0, 1), (1, 0), (0, 2)):
        eta, theta = Cochain.random(p, M, rng), Cochain.random(q, M, rng)
        lhs = coboundary(wedge(eta, theta))
        rhs = wedge(coboundary(eta), theta) + wedge(eta, coboundary(theta)).scale((-1) ** p)
        assert lhs.agrees(rhs)


def test_is_cocycle():
    assert is_cocycle(virasoro_cocycle(M))
    assert is_cocycle(coboundary(basis_one_cochain(3, M)))
    m5 = DiagonalCocycle.from_function(lambda m: m ** 5, M)
    res = is_cocycle(m5)
    assert not res and res.counterexample == (-3, 1, 2) and res.residual == as_scalar(-120)


def test_is_coboundary():
    m1 = DiagonalCocycle.from_function(lambda m: m, M)
    mu = is_coboundary(m1)
    assert mu is not None and mu.value((0,)) == as_scalar(Fraction(-1, 2))
    assert coboundary(mu).agrees(Cochain.from_diagonal(m1, M))
    assert is_coboundary(DiagonalCocycle.from_function(lambda m: m ** 3, M)) is None
    assert is_coboundary(virasoro_cocycle(M)) is None
    assert is_coboundary(Cochain.zero(2, M)).is_zero()


@pytest.mark.parametrize("window", range(4, 13))
def test_diagonal_solve(window):
    rep = diagonal_cocycle_solve(window)
    assert (rep.solution_dimension, rep.coboundary_dimension, rep.quotient_dimension) == (2, 1, 1)
    assert rep.normalized_representative == virasoro_cocycle(window)


def test_solve_small_window():
    with pytest.raises(UnderdeterminedWindow):
        diagonal_cocycle_solve(3)


def test_central_extension():
    ext = build_central_extension(virasoro_cocycle(M))
    assert ext.jacobi.ok
    assert ext.table[(2, -2)] == VirasoroElement(WittElement({0: 4}), Fraction(1, 2))
    zero = build_central_extension(Cochain.zero(2, M))
    assert all(not el.central for el in zero.table.values())
    with pytest.raises(NotACocycle):
        build_central_extension(DiagonalCocycle.from_function(lambda m: m ** 5, M))


def test_relabel_gives_cohomologous_table():
    omega = Cochain.from_diagonal(virasoro_cocycle(M), M)
    mu = basis_one_cochain(0, M) + basis_one_cochain(2, M).scale(3)
    shifted = build_central_extension(omega + coboundary(mu))
    relabelled = build_central_extension(omega).relabel(mu)
    for key, el in shifted.table.items():
        assert relabelled[key] == el
