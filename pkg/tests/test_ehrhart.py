from fractions import Fraction

import pytest

from coulomb_chambers import theories
from coulomb_chambers.arrangement import count_points, count_points_bruteforce
from coulomb_chambers.ehrhart import (FitFailed, QuasiPolynomial, _interpolate, fit, fit_chamber,
                                      minor_lcm, wall_period)

GL2 = theories.gl2_doubled()
CHAMBERS = [(0, 0, -1, -1), (0, 0, -1, 0), (0, 0, 0, 0)]
PRIMES = [5, 7, 11, 13, 17]


def test_interpolate_exact():
    xs = [1, 2, 3, 4]
    ys = [x ** 3 - Fraction(1, 2) * x for x in xs]
    assert _interpolate(xs, ys) == [0, Fraction(-1, 2), 0, 1]


@pytest.mark.parametrize("a", CHAMBERS)
def test_gl2_chambers(a):
    q = fit_chamber(GL2, a, PRIMES)
    assert wall_period(GL2) % q.period == 0
    assert all(v == 0 for v in q.residuals.values())
    for p in PRIMES:
        assert q(p) == count_points_bruteforce(GL2, a, p)


def test_leading_coefficient_chamber_a():
    q = fit_chamber(GL2, CHAMBERS[0], PRIMES)
    assert {c[2] for c in q.coeffs.values()} == {Fraction(9, 25)}


def test_rank_one_linear():
    th = theories.torus(1, [(1,), (-1,)], [Fraction(1, 3), Fraction(1, 5)])
    q = fit_chamber(th, (0, 0), [3, 5, 7, 11])
    assert all(len(c) == 2 for c in q.coeffs.values())
    # delta is scaled by 1/p, so the slope is the length of (-1/3, 2/3) & (-4/5, 1/5)
    assert {c[1] for c in q.coeffs.values()} == {Fraction(8, 15)}


def test_wrong_period_fails():
    with pytest.raises(FitFailed):
        fit(lambda p: count_points(GL2, CHAMBERS[0], p), 2, 1, PRIMES)


def test_periods():
    assert wall_period(theories.cyclic(3)) == 12
    assert minor_lcm(GL2) == 1


def test_rows():
    q = QuasiPolynomial(2, {0: [Fraction(1), Fraction(0)], 1: [Fraction(0), Fraction(1, 2)]})
    assert q(4) == 1 and q(3) == Fraction(3, 2)
    assert q.to_rows() == [["0", "1", "0"], ["1", "0", "1/2"]]
