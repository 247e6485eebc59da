"""Ready-made gauge data used by the examples, the CLI fixtures and the test-suite."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lattice import AffineWeylElement, GaugeTheoryData, MatterLine, Root

SWAP = ((0, 1), (1, 0))


def torus(rank: int, weights: Sequence[Sequence[int]], offsets: Sequence,
          flavor: Sequence[Sequence[int]] | None = None, delta=Fraction(1, 2)) -> GaugeTheoryData:
    flavor = flavor or [()] * len(weights)
    lines = tuple(MatterLine(tuple(g), Fraction(f), tuple(fl)) for g, f, fl in zip(weights, offsets, flavor))
    frank = max((len(fl) for fl in flavor), default=0)
    return GaugeTheoryData(rank, lines, delta=Fraction(delta), flavor_rank=frank)


def cyclic(n: int, offsets: Sequence | None = None) -> GaugeTheoryData:
    """C^* acting on C^n with weight one everywhere and distinct offsets mod 1."""
    if offsets is None:
        offsets = [Fraction(i, n) + Fraction(1, 4 * n) for i in range(n)]
    return torus(1, [(1,)] * n, offsets)


def rank_zero() -> GaugeTheoryData:
    return GaugeTheoryData(0, ())


def abelian_rank2() -> GaugeTheoryData:
    """(C^*)^2 on C^3 with weights e1, e2, e1+e2."""
    return torus(2, [(1, 0), (0, 1), (1, 1)], [Fraction(1, 7), Fraction(2, 7), Fraction(3, 11)])


def gl2_doubled(offset=Fraction(3, 5), delta=Fraction(1, 2)) -> GaugeTheoryData:
    """GL(2) on C^2 + C^2; the second copy carries flavor offset ``offset``.

    Lines 0, 1 are the weights x, y of the shifted copy, lines 2, 3 those of
    the unshifted one.  The glide (x, y) -> (y + 1, x) is supplied as a
    length-zero generator.
    """
    off = Fraction(offset)
    lines = (MatterLine((1, 0), off, (1,)), MatterLine((0, 1), off, (1,)),
             MatterLine((1, 0), Fraction(0), (0,)), MatterLine((0, 1), Fraction(0), (0,)))
    root = Root((1, -1), (1, -1), True)
    glide = AffineWeylElement(SWAP, (Fraction(1), Fraction(0)))
    return GaugeTheoryData(2, lines, (root,), (SWAP,), (glide,), Fraction(delta), 1)


def sl3_pure() -> GaugeTheoryData:
    """Root data of SL(3) in coroot coordinates, no matter."""
    a1 = Root((2, -1), (1, 0), True)
    a2 = Root((-1, 2), (0, 1), True)
    a12 = Root((1, 1), (1, 1), False)
    s1 = ((-1, 1), (0, 1))
    s2 = ((1, 0), (1, -1))
    return GaugeTheoryData(2, (), (a1, a2, a12), (s1, s2))


def sl2xsl2_pure() -> GaugeTheoryData:
    a = Root((2, 0), (1, 0), True)
    b = Root((0, 2), (0, 1), True)
    return GaugeTheoryData(2, (), (a, b), (((-1, 0), (0, 1)), ((1, 0), (0, -1))))


# flavored families for the wall-crossing combinatorics

def cstar_c2_flavored() -> GaugeTheoryData:
    """C^* on C^2, the second line moved by a rank-1 flavor."""
    return torus(1, [(1,), (1,)], [Fraction(0), Fraction(1, 3)], [(0,), (1,)])


def cstar_c3_flavored() -> GaugeTheoryData:
    """C^* on C^3 with weights 1, 1, 2 and a rank-2 flavor torus."""
    return torus(1, [(1,), (1,), (2,)], [Fraction(0), Fraction(1, 5), Fraction(1, 7)],
                 [(0, 0), (1, 0), (0, 1)])


def torus2_c3_flavored() -> GaugeTheoryData:
    """(C^*)^2 on C^3, weights e1, e2, e1+e2, flavor moving the last line."""
    return torus(2, [(1, 0), (0, 1), (1, 1)], [Fraction(0), Fraction(0), Fraction(1, 3)],
                 [(0,), (0,), (1,)])


CATALOG = {
    "rank0": rank_zero,
    "abelian_rank2": abelian_rank2,
    "gl2_doubled": gl2_doubled,
    "sl3": sl3_pure,
    "sl2xsl2": sl2xsl2_pure,
    "cstar_c2_flavored": cstar_c2_flavored,
    "cstar_c3_flavored": cstar_c3_flavored,
    "torus2_c3_flavored": torus2_c3_flavored,
}
