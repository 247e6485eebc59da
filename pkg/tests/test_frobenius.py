import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coulomb_chambers import theories
from coulomb_chambers import frobenius as fb
from coulomb_chambers.lattice import random_generic_point
from coulomb_chambers.poly import Poly
from coulomb_chambers.relations import random_poly
from coulomb_chambers.suites import frobenius_suite
from coulomb_chambers.words import MorphismWord, Wall

seeds = st.integers(0, 10 ** 6)
TH = theories.torus(1, [(1,), (1,), (2,)], [0, 1, 0])


def _elem(alg, rng):
    return alg.element([((rng.randint(-2, 2),) * alg.theory.rank, random_poly(alg.theory, rng, 2, 2))
                        for _ in range(2)])


@given(seeds)
def test_structure_constants_match_monopoles(seed):
    # the multiplication rule against normal forms of monopole words over Q
    rng = random.Random(seed)
    th = theories.cyclic(2)
    alg = fb.AbelianAlgebra(th)
    a, b = _elem(alg, rng), _elem(alg, rng)
    lhs = fb.algebra_element_operator(th, alg.mul(a, b))
    rhs = fb.algebra_element_operator(th, a) * fb.algebra_element_operator(th, b)
    assert (lhs + rhs.scale(-1)).is_zero()


@given(seeds)
def test_associative(seed):
    rng = random.Random(seed)
    alg = fb.AbelianAlgebra(theories.abelian_rank2(), 3)
    a, b, c = (_elem(alg, rng) for _ in range(3))
    assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))


@given(seeds, st.sampled_from([2, 3, 5]))
def test_artin_schreier_additive_mod_p(seed, p):
    rng = random.Random(seed)
    f = random_poly(TH, rng, 2).reduce_mod(p)
    g = random_poly(TH, rng, 2).reduce_mod(p)
    assert fb.artin_schreier(f + g, p) == fb.artin_schreier(f, p) + fb.artin_schreier(g, p)


def test_artin_schreier_kills_h():
    h = Poly.var(1, 2, 5)
    assert fb.artin_schreier(h, 5).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("theory", [theories.abelian_rank2, lambda: TH])
def test_suite(p, theory):
    res = frobenius_suite(theory(), p, seed=p, trials=15)
    assert all(r.passed for r in res), [r.to_json() for r in res if not r.passed]


def test_kappa_drops_non_divisible():
    alg = fb.AbelianAlgebra(theories.cyclic(1, [0]), 3, h_zero=True)
    x = Poly.var(0, 2, 3)
    e = alg.element([((3,), x ** 3), ((1,), x), ((0,), x ** 2)])
    assert fb.kappa(e, fb.FrobeniusContext(3), alg) == alg.element([((1,), x)])


def test_nonabelian_rejected():
    with pytest.raises(fb.NonAbelianTheory):
        fb.AbelianAlgebra(theories.gl2_doubled())


def test_quantum_frobenius_scales_objects():
    rng = random.Random(1)
    th = theories.cyclic(2)
    a, b = (random_generic_point(th, rng, den=7, box=1) for _ in range(2))
    w = fb.quantum_frobenius(th, MorphismWord.build(a, [Wall(b, a)]), 3)
    assert w.source == tuple(3 * x for x in a)
    assert w.tokens[0] == Wall(tuple(3 * x for x in b), tuple(3 * x for x in a))


def test_kappa_nonabelian_spanning_form():
    th = theories.gl2_doubled()
    ctx = fb.FrobeniusContext(3)
    x0 = Poly.var(0, 3)
    out = fb.kappa_nonabelian([(1, fb.DressedMonopole((3, 0), x0 ** 3))], ctx, th)
    assert out == [(1, fb.DressedMonopole((1, 0), x0))]
    assert fb.kappa_nonabelian([(1, fb.DressedMonopole((1, 0), x0))], ctx, th) == []
    with pytest.raises(fb.NotInSpanningForm):
        fb.kappa_nonabelian(["junk"], ctx, th)


def test_metadata():
    assert fb.FrobeniusContext(5).metadata() == {"p": 5, "kappa0": "monomial", "weyl_average": False}


def test_offsets_must_be_p_integral():
    th = theories.torus(1, [(1,), (-1,)], [Fraction(1, 3), Fraction(1, 5)])
    with pytest.raises(ValueError, match="integral"):
        fb.AbelianAlgebra(th, 3)
    fb.AbelianAlgebra(th, 7)
