import random
from fractions import Fraction

import pytest

from coulomb_chambers import theories
from coulomb_chambers.category import (NonDominant, degree, equal_oracle, graded_counts,
                                       monopole, normal_form, path_basis)
from coulomb_chambers.lattice import AffineWeylElement, random_generic_point
from coulomb_chambers.poly import Poly
from coulomb_chambers.polyrep import FracVector, act_frac, nvars
from coulomb_chambers.words import MorphismSum, MorphismWord, ObjectMismatch, PolyTok, Wall, Weyl


def test_oracle_routes_agree():
    rng = random.Random(11)
    th = theories.gl2_doubled()
    a, b = (random_generic_point(th, rng, den=13, box=2) for _ in range(2))
    x0 = PolyTok(Poly.var(0, nvars(th)))
    w1 = MorphismWord.build(a, [Wall(b, a), x0])
    w2 = MorphismWord.build(a, [x0, Wall(b, a)])
    assert equal_oracle(th, w1, w2, 2, 1, exhaustive=True).equal


def test_oracle_detects_difference():
    rng = random.Random(12)
    th = theories.abelian_rank2()
    a = random_generic_point(th, rng, den=13, box=2)
    x0 = MorphismWord.build(a, [PolyTok(Poly.var(0, nvars(th)))])
    x1 = MorphismWord.build(a, [PolyTok(Poly.var(1, nvars(th)))])
    res = equal_oracle(th, x0, x1, 2, 1)
    assert not res.equal and res.witness is not None
    assert not equal_oracle(th, x0, x1, 2, 1, exhaustive=True).equal


def test_oracle_rejects_non_parallel():
    th = theories.cyclic(2)
    a, b = (Fraction(1, 3),), (Fraction(-1, 3),)
    with pytest.raises(ObjectMismatch):
        equal_oracle(th, MorphismWord.identity(a), MorphismWord.identity(b))


def test_normal_form_matches_token_action():
    rng = random.Random(13)
    th = theories.gl2_doubled()
    a, b = (random_generic_point(th, rng, den=13, box=2) for _ in range(2))
    w = AffineWeylElement.translate((1, 0))
    word = MorphismWord.build(a, [Weyl(w), Wall(b, a)])
    op = normal_form(th, word)
    v = FracVector.basis(Poly.var(1, nvars(th)), (0, 1))
    assert op.apply(v) == act_frac(th, word, v)


def test_degree_of_walls():
    th = theories.cyclic(1, [Fraction(1, 4)])
    a, b = (Fraction(1, 8),), (Fraction(-17, 8),)
    # crossing two walls in one direction
    assert degree(th, MorphismWord.build(a, [Wall(b, a)])) == 2
    x = PolyTok(Poly.var(0, 2))
    assert degree(th, MorphismWord.build(a, [x, x])) == 4


def test_monopole_products_cyclic():
    th = theories.cyclic(1, [Fraction(1, 4)])
    r1 = monopole(th, (1,))
    rm = monopole(th, (-1,))
    prod = MorphismSum.of((1, rm * r1))
    # r_{-1} r_1 is the crossed-wall factor, a degree one polynomial
    op = normal_form(th, prod)
    (w, c), = op.terms.items()
    assert w.is_identity() and c.as_poly().degree() == 1


def test_monopole_needs_dominant():
    with pytest.raises(NonDominant):
        monopole(theories.gl2_doubled(), (0, 1))


def test_path_basis_counts_cyclic():
    # C^* on C: the endomorphisms of one object form C[u, v] (u, v of degree 1)
    # tensored with C[h] (degree 2), Hilbert series 1/((1-t)^2 (1-t^2))
    th = theories.cyclic(1, [Fraction(1, 4)])
    eta = (Fraction(0),)
    counts = graded_counts(th, path_basis(th, eta, eta, 6))
    series = [sum(d - 2 * k + 1 for k in range(d // 2 + 1)) for d in range(7)]
    assert [counts.get(d, 0) for d in range(7)] == series
