"""Quasi-polynomial fits of lattice-point counts in dilated chambers.

For each residue class r mod the period, the count is interpolated by a
polynomial of degree rank through training dilations and then checked on
further dilations; the fit is accepted only if every residual is zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Callable, Sequence

from .arrangement import count_points
from .lattice import GaugeTheoryData


class FitFailed(RuntimeError):
    pass


def _lcm(xs) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


def _det(m) -> Fraction:
    m = [list(map(Fraction, r)) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def wall_period(theory: GaugeTheoryData) -> int:
    """lcm of the denominators of the wall positions f_i (the dilated walls sit at p(a_i - f_i) - delta)."""
    return _lcm(m.flavor_offset.denominator for m in theory.matter)


def minor_lcm(theory: GaugeTheoryData) -> int:
    n = theory.rank
    dets = set()
    for rows in combinations([m.gauge for m in theory.matter], n):
        d = abs(_det(rows))
        if d:
            dets.add(int(d))
    return _lcm(dets) if dets else 1


@dataclass
class QuasiPolynomial:
    period: int
    coeffs: dict          # residue -> [c_0, ..., c_deg]
    residuals: dict = field(default_factory=dict)

    def __call__(self, p: int) -> Fraction:
        return sum((c * p ** k for k, c in enumerate(self.coeffs[p % self.period])), Fraction(0))

    def to_rows(self) -> list[list[str]]:
        return [[str(r)] + [str(c) for c in self.coeffs[r]] for r in sorted(self.coeffs)]


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (low to high) of the polynomial through the points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            den *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / den
    return coeffs


def fit(counter: Callable[[int], int], degree: int, period: int, checks: Sequence[int],
        start: int = 1, extra: int = 2) -> QuasiPolynomial:
    """Fit per residue class from dilations >= start; residuals at ``checks`` and at
    ``extra`` further training dilations per class must vanish."""
    coeffs = {}
    residuals = {}
    for r in range(period):
        first = start + ((r - start) % period)
        xs = [first + period * k for k in range(degree + 1 + extra)]
        ys = [counter(x) for x in xs]
        c = _interpolate(xs[:degree + 1], ys[:degree + 1])
        coeffs[r] = c
        for x, y in zip(xs[degree + 1:], ys[degree + 1:]):
            residuals[x] = y - sum(ci * x ** k for k, ci in enumerate(c))
    q = QuasiPolynomial(period, coeffs)
    for p in checks:
        residuals[p] = counter(p) - q(p)
    q.residuals = residuals
    if any(residuals.values()):
        raise FitFailed(f"nonzero residuals at period {period}")
    return q


def fit_chamber(theory: GaugeTheoryData, a: Sequence[int], checks: Sequence[int],
                delta=None, start: int = 1) -> QuasiPolynomial:
    """Try the wall period first, then the wall period times the lcm of the maximal minors."""
    counter = lambda p: count_points(theory, a, p, delta)
    base = wall_period(theory)
    last = None
    for period in (base, base * minor_lcm(theory)):
        try:
            return fit(counter, theory.rank, period, checks, start)
        except FitFailed as e:
            last = e
    raise last
