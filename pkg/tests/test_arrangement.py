import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from coulomb_chambers import theories
from coulomb_chambers.arrangement import (BudgetExceeded, act_chamber, canonical, chamber_of,
                                          count_points, count_points_bruteforce,
                                          enumerate_lambda_bar, facets, generic_witness,
                                          is_nonempty, root_walls, stabilizer, witness)
from coulomb_chambers.lattice import GENERIC, classify, random_generic_point


def _bruteforce_classes_rank1(th, samples=2000):
    """Chambers met by a fine sample of one period, modulo the translation a -> a + g."""
    seen = set()
    for k in range(samples):
        eta = (Fraction(2 * k + 1, 2 * samples),)
        try:
            a = chamber_of(th, eta)
        except Exception:
            continue
        seen.add(tuple(x - a[0] for x in a))
    return seen


@pytest.mark.parametrize("n", range(1, 9))
def test_cyclic_class_count_closed_form(n):
    th = theories.cyclic(n)
    ls = enumerate_lambda_bar(th)
    assert len(ls.reps) == n
    assert len(_bruteforce_classes_rank1(th)) == n
    assert sum(len(facets(th, r)) for r in ls.reps) == 2 * n


def test_abelian_rank2_against_box_scan():
    th = theories.abelian_rank2()
    ls = enumerate_lambda_bar(th)
    # translations realize any (a0, a1); only a2 - a0 - a1 is an invariant
    scan = [a for a in product([0], [0], range(-4, 5)) if is_nonempty(th, a)]
    assert len(ls.reps) == len(scan)


def test_rank_zero_single_class():
    ls = enumerate_lambda_bar(theories.rank_zero())
    assert ls.reps == [()]


def test_gl2_classes():
    th = theories.gl2_doubled()
    ls = enumerate_lambda_bar(th)
    assert len(ls.reps) == 3
    sizes = sorted(len(stabilizer(th, r)) for r in ls.reps)
    assert sizes == [1, 2, 2]


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_lambda_bar(theories.gl2_doubled(), budget=1)


@given(st.integers(0, 10 ** 6))
def test_witness_lies_in_its_chamber(seed):
    rng = random.Random(seed)
    th = theories.gl2_doubled()
    a = chamber_of(th, random_generic_point(th, rng, den=37, box=3))
    assert chamber_of(th, witness(th, a)) == a
    g = generic_witness(th, a)
    assert chamber_of(th, g) == a and classify(th, g) == GENERIC


@given(st.integers(0, 10 ** 6))
def test_canonical_is_orbit_invariant(seed):
    rng = random.Random(seed)
    th = theories.gl2_doubled()
    a = chamber_of(th, random_generic_point(th, rng, den=37, box=3))
    key, w = canonical(th, a)
    assert act_chamber(th, w, a) == key
    for g in th.finite_part():
        assert canonical(th, act_chamber(th, g, a))[0] == key


def test_facet_neighbours_are_adjacent():
    th = theories.gl2_doubled()
    for r in enumerate_lambda_bar(th).reps:
        for f in facets(th, r):
            assert is_nonempty(th, f.neighbor)
            diff = sum(abs(x - y) for x, y in zip(r, f.neighbor))
            assert diff >= 1


def test_root_walls_of_gl2():
    th = theories.gl2_doubled()
    walls = {r: root_walls(th, r) for r in enumerate_lambda_bar(th).reps}
    assert sum(1 for w in walls.values() if w) == 2


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_count_points_matches_bruteforce(p):
    rng = random.Random(p)
    for th in (theories.gl2_doubled(), theories.abelian_rank2(), theories.cyclic(3)):
        for _ in range(4):
            a = chamber_of(th, random_generic_point(th, rng, den=23, box=2))
            assert count_points(th, a, p) == count_points_bruteforce(th, a, p)


def test_empty_chamber_has_no_points():
    th = theories.cyclic(2)
    a = (0, 5)
    assert not is_nonempty(th, a)
    assert count_points(th, a, 7) == 0
