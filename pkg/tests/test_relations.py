import random
import zlib

import pytest

from coulomb_chambers import theories
from coulomb_chambers.relations import NEEDS_ROOTS, RELATIONS, NoInstance, check_relation
from coulomb_chambers.suites import relation_suite

ABELIAN = ["cyclic2", "abelian_rank2"]


def _theory(name):
    return theories.cyclic(2) if name == "cyclic2" else getattr(theories, name)()


@pytest.mark.parametrize("name", sorted(RELATIONS))
@pytest.mark.parametrize("theory", ABELIAN + ["gl2_doubled", "sl3_pure"])
def test_relation_holds(name, theory):
    th = _theory(theory)
    if name in NEEDS_ROOTS and not th.roots:
        pytest.skip("needs roots")
    rng = random.Random(zlib.crc32(f"{name}/{theory}".encode()))
    done = 0
    for _ in range(8):
        try:
            res, _ = check_relation(th, name, rng, max_deg=4, radius=2)
        except NoInstance:
            continue
        done += 1
        assert res.equal, (name, theory, res.witness)
    if done == 0:
        pytest.skip("no instance in this theory")


def test_braid_instances_exist_in_sl3():
    rng = random.Random(0)
    res, _ = check_relation(theories.sl3_pure(), "braid", rng, max_deg=4, radius=2)
    assert res.equal


def test_exhaustive_route_on_walls():
    rng = random.Random(4)
    th = theories.gl2_doubled()
    for name in ("wall-cross1", "triple", "psi2"):
        res, _ = check_relation(th, name, rng, max_deg=2, radius=1, exhaustive=True)
        assert res.equal


def test_corrupted_relation_is_caught():
    res = relation_suite(theories.cyclic(2), seed=1, trials=5, names=["weyl1"], corrupt="weyl1")
    assert not res[0].passed and res[0].counterexamples


def test_suite_is_deterministic():
    a = [r.to_json() for r in relation_suite(theories.abelian_rank2(), 9, 3)]
    b = [r.to_json() for r in relation_suite(theories.abelian_rank2(), 9, 3)]
    assert a == b
