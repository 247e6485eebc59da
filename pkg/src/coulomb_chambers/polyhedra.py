"""Exact Fourier-Motzkin elimination over the rationals.

A constraint is ``coeffs . x + const  (> | >= | ==)  0`` with Fraction data.
Systems stay small here (a handful of variables), so plain elimination with
duplicate pruning is fast enough and keeps everything exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Sequence

GT, GE, EQ = ">", ">=", "=="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    const: Fraction
    kind: str = GT

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, x)), self.const)

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.value(x)
        if self.kind == GT:
            return v > 0
        if self.kind == GE:
            return v >= 0
        return v == 0

    def normalized(self) -> "Constraint":
        lead = next((c for c in self.coeffs if c != 0), None)
        if lead is None:
            return self
        s = abs(lead) if self.kind != EQ else lead
        return Constraint(tuple(c / s for c in self.coeffs), self.const / s, self.kind)

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def constraint(coeffs: Iterable, const, kind: str = GT) -> Constraint:
    return Constraint(tuple(Fraction(c) for c in coeffs), Fraction(const), kind)


class Infeasible(Exception):
    pass


def _prune(cons: Iterable[Constraint]) -> list[Constraint]:
    """Drop satisfied constants, keep the tightest constraint per direction."""
    best: dict[tuple, Constraint] = {}
    eqs: dict[tuple, Constraint] = {}
    for c in cons:
        c = c.normalized()
        if c.is_trivial():
            if not c.holds(()):
                raise Infeasible
            continue
        if c.kind == EQ:
            old = eqs.get(c.coeffs)
            if old is not None and old.const != c.const:
                raise Infeasible
            eqs[c.coeffs] = c
            continue
        old = best.get(c.coeffs)
        if old is None or c.const < old.const or (c.const == old.const and c.kind == GT):
            best[c.coeffs] = c
    out = list(eqs.values()) + list(best.values())
    out.sort(key=lambda c: (c.kind, c.coeffs, c.const))
    return out


def _substitute(cons: list[Constraint], k: int, eq: Constraint) -> list[Constraint]:
    # eq: coeffs.x + const == 0 with coeffs[k] != 0; eliminate x_k everywhere
    a = eq.coeffs[k]
    out = []
    for c in cons:
        if c is eq:
            continue
        t = c.coeffs[k] / a
        if t == 0:
            out.append(c)
            continue
        coeffs = tuple(ci - t * ei for ci, ei in zip(c.coeffs, eq.coeffs))
        out.append(Constraint(coeffs, c.const - t * eq.const, c.kind))
    return out


def eliminate(cons: Sequence[Constraint], k: int) -> list[Constraint]:
    """Project out variable ``k``; the result still has full-length coefficient tuples."""
    cons = _prune(cons)
    for c in cons:
        if c.kind == EQ and c.coeffs[k] != 0:
            return _prune(_substitute(cons, k, c))
    pos, neg, rest = [], [], []
    for c in cons:
        a = c.coeffs[k]
        (pos if a > 0 else neg if a < 0 else rest).append(c)
    for p in pos:
        for n in neg:
            sp, sn = 1 / p.coeffs[k], -1 / n.coeffs[k]
            coeffs = tuple(sp * x + sn * y for x, y in zip(p.coeffs, n.coeffs))
            kind = GT if GT in (p.kind, n.kind) else GE
            rest.append(Constraint(coeffs, sp * p.const + sn * n.const, kind))
    return _prune(rest)


def project(cons: Sequence[Constraint], keep: Sequence[int]) -> list[Constraint]:
    nvars = len(cons[0].coeffs) if cons else 0
    out = list(cons)
    for k in range(nvars):
        if k not in keep:
            out = eliminate(out, k)
    return out


def _bounds(cons: Sequence[Constraint], k: int, x: Sequence[Fraction]):
    """Interval for x_k given earlier coordinates fixed and later ones absent."""
    lo = hi = None
    lo_strict = hi_strict = False
    for c in cons:
        a = c.coeffs[k]
        rest = c.const + sum(c.coeffs[j] * x[j] for j in range(len(x)) if j != k)
        if a == 0:
            continue
        b = -rest / a
        if c.kind == EQ:
            if lo is not None and (b < lo or (b == lo and lo_strict)):
                raise Infeasible
            if hi is not None and (b > hi or (b == hi and hi_strict)):
                raise Infeasible
            lo = hi = b
            lo_strict = hi_strict = False
            continue
        strict = c.kind == GT
        if a > 0:
            if lo is None or b > lo or (b == lo and strict):
                lo, lo_strict = b, strict
        else:
            if hi is None or b < hi or (b == hi and strict):
                hi, hi_strict = b, strict
    return lo, lo_strict, hi, hi_strict


def _simpler(a: Fraction, b: Fraction) -> bool:
    return (a.denominator, abs(a), a) < (b.denominator, abs(b), b)


def _simplest_open(lo, hi) -> Fraction:
    # simplest rational strictly inside (lo, hi); None means unbounded
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(0) if hi > 0 else Fraction(-floor(-hi) - 1 if -hi == floor(-hi) else floor(hi))
    if hi is None:
        return Fraction(0) if lo < 0 else Fraction(floor(lo) + 1)
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -_simplest_open(-hi, -lo)
    n = floor(lo)
    if n + 1 < hi:
        return Fraction(n + 1)
    inner_hi = None if lo == n else 1 / (lo - n)
    return n + 1 / _simplest_open(1 / (hi - n), inner_hi)


def simplest_between(lo, lo_strict, hi, hi_strict) -> Fraction:
    """Simplest rational (smallest denominator, then magnitude) in the interval."""
    if lo is not None and hi is not None:
        if lo > hi or (lo == hi and (lo_strict or hi_strict)):
            raise Infeasible
        if lo == hi:
            return Fraction(lo)
    best = _simplest_open(lo, hi)
    for end, strict in ((lo, lo_strict), (hi, hi_strict)):
        if end is not None and not strict and _simpler(Fraction(end), best):
            best = Fraction(end)
    return best


def witness(cons: Sequence[Constraint], nvars: int) -> tuple[Fraction, ...]:
    """A rational point satisfying every constraint; raises Infeasible."""
    stages = [_prune(cons)]
    for k in range(nvars - 1, -1, -1):
        stages.append(eliminate(stages[-1], k))
    # stages[j] has variables 0..nvars-1-j still present
    x = [Fraction(0)] * nvars
    for k in range(nvars):
        system = stages[nvars - 1 - k]
        lo, ls, hi, hs = _bounds(system, k, [x[j] if j < k else Fraction(0) for j in range(nvars)])
        x[k] = simplest_between(lo, ls, hi, hs)
    pt = tuple(x)
    if not all(c.holds(pt) for c in cons):
        raise AssertionError("witness back-substitution failed")
    return pt


def feasible(cons: Sequence[Constraint], nvars: int) -> bool:
    try:
        out = list(cons)
        for k in range(nvars):
            out = eliminate(out, k)
        _prune(out)
        return True
    except Infeasible:
        return False


def variable_range(cons: Sequence[Constraint], nvars: int, k: int):
    """(lo, lo_strict, hi, hi_strict) for x_k over the whole system."""
    sys_k = project(cons, [k])
    return _bounds(sys_k, k, [Fraction(0)] * nvars)
