import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coulomb_chambers import theories
from coulomb_chambers.lattice import (AffineWeylElement, ExceptionalPoint, eval_mid,
                                      random_generic_point, random_weyl_element)
from coulomb_chambers.polyrep import (PhiFactors, act_poly, act_weyl_poly, demazure, nvars,
                                      phi_poly, phi_product, phi_triple)
from coulomb_chambers.poly import Poly
from coulomb_chambers.relations import random_poly
from coulomb_chambers.suites import demazure_suite
from coulomb_chambers.words import AffineRoot, MorphismWord, PolyTok, Wall

seeds = st.integers(0, 10 ** 6)


def _crossings_by_scan(th, eta, eta2):
    """Walls strictly between, by scanning integers in a window."""
    out = []
    for i in range(th.d):
        a, b = eval_mid(th, i, eta), eval_mid(th, i, eta2)
        for k in range(-50, 50):
            if b < k < a:
                out.append((i, k))
    return sorted(out)


@given(seeds)
def test_phi_product_matches_scan(seed):
    rng = random.Random(seed)
    th = theories.gl2_doubled()
    eta, eta2 = (random_generic_point(th, rng, den=31, box=3) for _ in range(2))
    assert list(phi_product(th, eta, eta2).pairs) == _crossings_by_scan(th, eta, eta2)


@given(seeds)
def test_phi_multiset_identity(seed):
    rng = random.Random(seed)
    th = theories.abelian_rank2()
    e1, e2, e3 = (random_generic_point(th, rng, den=29, box=3) for _ in range(3))
    lhs = phi_product(th, e1, e2) + phi_product(th, e2, e3)
    rhs = phi_product(th, e1, e3) + phi_triple(th, e1, e2, e3)
    assert lhs.counter() == rhs.counter()


def test_phi_factor_polynomial():
    th = theories.cyclic(1, [Fraction(1, 4)])
    f = PhiFactors.of([(0, 2)]).expand(th)
    x, h = Poly.var(0, 2), Poly.var(1, 2)
    assert f == x + (Fraction(1, 4) - 2) * h


def test_exceptional_point_rejected():
    th = theories.cyclic(2)
    bad = (Fraction(1) - th.matter[0].flavor_offset - th.delta,)
    with pytest.raises(ExceptionalPoint):
        phi_product(th, bad, (Fraction(0),))


@given(seeds)
def test_weyl_action_is_a_ring_map(seed):
    rng = random.Random(seed)
    th = theories.gl2_doubled()
    w = random_weyl_element(th, rng)
    f, g = random_poly(th, rng), random_poly(th, rng)
    assert act_weyl_poly(w, f * g) == act_weyl_poly(w, f) * act_weyl_poly(w, g)
    v = random_weyl_element(th, rng)
    assert act_weyl_poly(w * v, f) == act_weyl_poly(w, act_weyl_poly(v, f))


@given(seeds)
def test_demazure_twisted_leibniz(seed):
    rng = random.Random(seed)
    th = theories.sl3_pure()
    alpha = AffineRoot(th.roots[0], rng.randint(-2, 2))
    f, g = random_poly(th, rng, 3), random_poly(th, rng, 3)
    s = alpha.reflection()
    lhs = demazure(alpha, f * g)
    rhs = demazure(alpha, f) * g + act_weyl_poly(s, f) * demazure(alpha, g)
    assert lhs == rhs


@pytest.mark.parametrize("name", ["sl3_pure", "sl2xsl2_pure", "gl2_doubled"])
def test_demazure_suite(name):
    th = getattr(theories, name)()
    assert all(r.passed for r in demazure_suite(th, seed=3, trials=40))


def test_wall_composition_in_polynomial_rep():
    rng = random.Random(5)
    th = theories.abelian_rank2()
    e1, e2, e3 = (random_generic_point(th, rng, den=29, box=2) for _ in range(3))
    f = random_poly(th, rng)
    two = MorphismWord.build(e1, [Wall(e3, e2), Wall(e2, e1)])
    lhs = act_poly(th, two, f)
    rhs = phi_triple(th, e3, e2, e1).expand(th) * phi_poly(th, e3, e1) * f
    assert lhs == rhs
