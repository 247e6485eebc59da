import random
from fractions import Fraction

from hypothesis import given, strategies as st

from coulomb_chambers import theories
from coulomb_chambers import pthroot as pr
from coulomb_chambers.lattice import eval_mid, random_generic_point
from coulomb_chambers.suites import pthroot_suite

ROOT = theories.gl2_doubled(delta=Fraction(1, 10))
CTX = pr.PthRootContext(5, (1, 0))


def test_root_and_base_are_inverse():
    base = pr.base_theory(ROOT, 5)
    assert pr.root_theory(base, 5) == ROOT
    assert base.delta == Fraction(1, 2)


@given(st.integers(0, 10 ** 6))
def test_to_base_roundtrip(seed):
    eta = random_generic_point(ROOT, random.Random(seed), den=31, box=2)
    assert pr.from_base(pr.to_base(eta, CTX), CTX) == eta


def test_retention_rule():
    base = pr.base_theory(ROOT, 5)
    # line 0 pairs to 1 with upsilon' = (1, 0), line 1 to 0
    assert pr.retained(base, 0, 6, CTX) and not pr.retained(base, 0, 5, CTX)
    assert pr.retained(base, 1, 5, CTX)
    assert pr.retained(base, 0, 5, pr.PthRootContext(None))


def test_affine_root_scaling():
    from coulomb_chambers.words import AffineRoot
    alpha = AffineRoot(ROOT.roots[0], 1)
    scaled = pr.affine_root_scaled(alpha, CTX)
    eta = (Fraction(3, 2), Fraction(1, 2))  # on the wall alpha = 1
    assert scaled.value(pr.to_base(eta, CTX)) == 0


def test_pthroot_suite_passes():
    res = pthroot_suite(ROOT, CTX, seed=2, trials=30)
    assert all(r.passed for r in res), [r.to_json() for r in res if not r.passed]
    assert next(r for r in res if r.name == "gamma dictionary").trials > 0


def test_pthroot_suite_abelian():
    root = pr.root_theory(theories.abelian_rank2(), 3)
    res = pthroot_suite(root, pr.PthRootContext(3, (0, 1)), seed=5, trials=30)
    assert all(r.passed for r in res)


def test_scaled_picture_counts():
    box = ((Fraction(-123, 100), Fraction(-3, 100)),) * 2
    lines = pr.scaled_picture(ROOT, CTX, box)
    matter = [l for l in lines if l.kind == "matter"]
    roots = [l for l in lines if l.kind == "root"]
    assert len(matter) == 12 and len(roots) == 11
    # a drawn line survives exactly when one of its labels is an integer
    for l in lines:
        vals = [v for _, v in l.labels]
        assert l.retained == any(v.denominator == 1 for v in vals)
