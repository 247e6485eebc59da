"""Chambers of the unrolled matter arrangement, their classes modulo the affine Weyl
group, facets and adjacency, and lattice-point counts in scaled chambers.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor, gcd
from typing import Sequence

from . import polyhedra as ph
from .lattice import (AffineWeylElement, GaugeTheoryData, InvalidTheory, dot, eval_mid, fvec,
                      mid_values, require_unexceptional, vec_mat, weight_image)

DEFAULT_BUDGET = 100_000


class BudgetExceeded(RuntimeError):
    pass


Chamber = tuple  # floor vector a in Z^d


def chamber_of(theory: GaugeTheoryData, eta: Sequence) -> Chamber:
    require_unexceptional(theory, eta)
    return tuple(floor(v) for v in mid_values(theory, eta))


def chamber_constraints(theory: GaugeTheoryData, a: Sequence[int], delta=None) -> list[ph.Constraint]:
    delta = theory.delta if delta is None else Fraction(delta)
    out = []
    for i, m in enumerate(theory.matter):
        c = m.flavor_offset + delta
        out.append(ph.constraint(m.gauge, c - a[i]))
        out.append(ph.constraint([-g for g in m.gauge], a[i] + 1 - c))
    return out


def is_nonempty(theory: GaugeTheoryData, a: Sequence[int]) -> bool:
    if len(a) != theory.d:
        return False
    return ph.feasible(chamber_constraints(theory, a), theory.rank)


def witness(theory: GaugeTheoryData, a: Sequence[int]) -> tuple[Fraction, ...]:
    """A simple rational interior point of C_a."""
    return ph.witness(chamber_constraints(theory, a), theory.rank)


# -- group action on floor vectors -------------------------------------------


def act_chamber(theory: GaugeTheoryData, w: AffineWeylElement, a: Sequence[int]) -> Chamber:
    """Floor vector of w(C_a)."""
    key = ("perm", w)
    cache = theory._cache.setdefault("act", {})
    if key not in cache:
        inv = w.inverse()
        data = []
        for i, m in enumerate(theory.matter):
            j = weight_image(theory, i, inv)
            # mid_i(w xi) = mid_j(xi) + c  with  g_i M = g_j
            mj = theory.matter[j]
            shift = m.flavor_offset + dot(m.gauge, w.translation) - mj.flavor_offset
            if vec_mat(m.gauge, w.linear) != mj.gauge or shift.denominator != 1:
                raise InvalidTheory("arrangement is not stable under the group element")
            data.append((j, int(shift)))
        cache[key] = data
    return tuple(a[j] + c for j, c in cache[key])


class _Echelon:
    """Integer row echelon form of a lattice with a record of the generating combination."""

    def __init__(self, gens: Sequence[Sequence[int]]):
        rows = [list(r) for r in gens]
        k = len(rows)
        trans = [[int(i == j) for j in range(k)] for i in range(k)]
        d = len(rows[0]) if rows else 0
        basis, btrans, pivots = [], [], []
        r0 = 0
        for col in range(d):
            while True:
                nz = [r for r in range(r0, k) if rows[r][col] != 0]
                if not nz:
                    break
                best = min(nz, key=lambda r: abs(rows[r][col]))
                rows[r0], rows[best] = rows[best], rows[r0]
                trans[r0], trans[best] = trans[best], trans[r0]
                done = True
                for r in range(r0 + 1, k):
                    if rows[r][col]:
                        q = rows[r][col] // rows[r0][col]
                        rows[r] = [x - q * y for x, y in zip(rows[r], rows[r0])]
                        trans[r] = [x - q * y for x, y in zip(trans[r], trans[r0])]
                        if rows[r][col]:
                            done = False
                if done:
                    break
            if r0 < k and rows[r0][col] != 0:
                if rows[r0][col] < 0:
                    rows[r0] = [-x for x in rows[r0]]
                    trans[r0] = [-x for x in trans[r0]]
                basis.append(rows[r0])
                btrans.append(trans[r0])
                pivots.append(col)
                r0 += 1
        self.basis, self.trans, self.pivots = basis, btrans, pivots
        self.ngens = k

    def reduce(self, v: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(canonical coset representative, coefficients c with v - rep = c . gens)."""
        v = list(v)
        coeff = [0] * self.ngens
        for row, tr, p in zip(self.basis, self.trans, self.pivots):
            q = v[p] // row[p]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
                coeff = [c + q * t for c, t in zip(coeff, tr)]
        return tuple(v), tuple(coeff)


def _echelon(theory: GaugeTheoryData) -> _Echelon:
    if "echelon" not in theory._cache:
        gens = [[m.gauge[k] for m in theory.matter] for k in range(theory.rank)]
        theory._cache["echelon"] = _Echelon(gens)
    return theory._cache["echelon"]


def canonical(theory: GaugeTheoryData, a: Sequence[int]):
    """(key, w) with key the canonical member of the orbit of a and w.a = key."""
    ech = _echelon(theory)
    best = None
    for f in theory.finite_part():
        fa = act_chamber(theory, f, a)
        rep, lam = ech.reduce(fa) if theory.rank else (tuple(fa), ())
        cand = (rep, f, lam)
        if best is None or rep < best[0]:
            best = cand
    rep, f, lam = best
    w = AffineWeylElement.translate([-x for x in lam]) * f if theory.rank else f
    return rep, w


def solve_translation(theory: GaugeTheoryData, target: Sequence[int]) -> tuple[int, ...] | None:
    """Integral lambda with G lambda = target, or None."""
    if theory.rank == 0:
        return () if not any(target) else None
    rep, lam = _echelon(theory).reduce(target)
    return tuple(lam) if not any(rep) else None


def stabilizer(theory: GaugeTheoryData, a: Sequence[int]) -> list[AffineWeylElement]:
    """Elements w (one per finite part, translation fixed up to the kernel) with w.a = a."""
    out = []
    for f in theory.finite_part():
        fa = act_chamber(theory, f, a)
        lam = solve_translation(theory, [x - y for x, y in zip(a, fa)])
        if lam is not None:
            out.append(AffineWeylElement.translate(lam) * f if theory.rank else f)
    return out


# -- facets and neighbours -----------------------------------------------------------


def _wall_eq(theory: GaugeTheoryData, i: int, level: int) -> ph.Constraint:
    m = theory.matter[i]
    return ph.constraint(m.gauge, m.flavor_offset + theory.delta - level, ph.EQ)


def _same_hyperplane(c1: ph.Constraint, c2: ph.Constraint) -> bool:
    n1, n2 = c1.normalized(), c2.normalized()
    return n1.coeffs == n2.coeffs and n1.const == n2.const


@dataclass(frozen=True)
class Facet:
    line: int          # representative matter index
    level: int         # the wall mid_line = level
    point: tuple       # rational point in the relative interior
    neighbor: Chamber


def facets(theory: GaugeTheoryData, a: Sequence[int]) -> list[Facet]:
    cache = theory._cache.setdefault("facets", {})
    a = tuple(a)
    if a in cache:
        return cache[a]
    n = theory.rank
    cons = chamber_constraints(theory, a)
    out: list[Facet] = []
    seen: list[ph.Constraint] = []
    for i in range(theory.d):
        if not any(theory.matter[i].gauge):
            continue
        for level, down in ((a[i], True), (a[i] + 1, False)):
            eq = _wall_eq(theory, i, level)
            if any(_same_hyperplane(eq, s) for s in seen):
                continue
            seen.append(eq)
            system = [eq]
            for j in range(theory.d):
                for lv, c in ((a[j], cons[2 * j]), (a[j] + 1, cons[2 * j + 1])):
                    if not _same_hyperplane(_wall_eq(theory, j, lv), eq):
                        system.append(c)
            try:
                q = ph.witness(system, n)
            except ph.Infeasible:
                continue
            # leaving through mid_i = level in the direction that moves mid_i down (or up)
            gi = theory.matter[i].gauge
            nb = list(a)
            for j in range(theory.d):
                v = eval_mid(theory, j, q)
                if v.denominator == 1:
                    gj = theory.matter[j].gauge
                    sgn = dot(gj, gi)
                    moves_down = (sgn > 0) == down
                    nb[j] = int(v) - 1 if moves_down else int(v)
            out.append(Facet(i, level, q, tuple(nb)))
    cache[a] = out
    return out


def neighbors(theory: GaugeTheoryData, a: Sequence[int]) -> list[Chamber]:
    return [f.neighbor for f in facets(theory, a)]


def root_walls(theory: GaugeTheoryData, a: Sequence[int]):
    """Affine root hyperplanes (root index, level) meeting the open chamber C_a."""
    cons = chamber_constraints(theory, a)
    out = []
    for ri, r in enumerate(theory.roots):
        lo, ls, hi, hs = _linear_range(cons, r.covector, theory.rank)
        if lo is None or hi is None:
            raise BudgetExceeded("chamber is unbounded along a root; infinitely many root walls")
        for k in range(floor(lo), floor(hi) + 1):
            if lo < k < hi:
                out.append((ri, k))
    return out


def _linear_range(cons, covector, n):
    """Range of covector . xi over the open polyhedron."""
    # add a new variable t = covector . xi and project onto it
    ext = [ph.Constraint(c.coeffs + (Fraction(0),), c.const, c.kind) for c in cons]
    ext.append(ph.constraint(list(covector) + [-1], 0, ph.EQ))
    return ph.variable_range(ext, n + 1, n)


# -- classes modulo the affine Weyl group ----------------------------------------------


@dataclass
class LambdaSet:
    reps: list
    orbit_map: dict = field(default_factory=dict)  # chamber -> (rep index, w with w.rep = chamber)
    witnesses: list = field(default_factory=list)

    def index(self, theory: GaugeTheoryData, a: Sequence[int]) -> int:
        key, _ = canonical(theory, a)
        return self.reps.index(key)

    def to_json(self) -> dict:
        return {"classes": [{"rep": list(r), "witness": [str(x) for x in w]}
                            for r, w in zip(self.reps, self.witnesses)],
                "chambers": [{"a": list(a), "class": i, "element": w.to_json()}
                             for a, (i, w) in sorted(self.orbit_map.items())]}


def seed_chamber(theory: GaugeTheoryData) -> Chamber:
    eta = fvec([0] * theory.rank)
    step = 0
    while any(v.denominator == 1 for v in mid_values(theory, eta)):
        step += 1
        eta = fvec([Fraction(k + 1, 97 * step + k) for k in range(theory.rank)])
    return chamber_of(theory, eta)


def enumerate_lambda_bar(theory: GaugeTheoryData, pctx=None, budget: int = DEFAULT_BUDGET,
                         keep=None) -> LambdaSet:
    """Breadth-first search over wall crossings, one representative per class.

    ``keep`` optionally filters chambers (used for lattice-point conditions);
    filtered chambers are still traversed so the search stays connected.
    """
    if pctx is not None and keep is None and pctx.finite:
        p = pctx.p
        keep = lambda a: count_points(theory, a, p, delta=pctx.delta_scaled(theory)) > 0
    seed = seed_chamber(theory)
    key0, _ = canonical(theory, seed)
    classes = {key0: 0}
    order = [key0]
    queue = deque([key0])
    visited = 1
    while queue:
        r = queue.popleft()
        for nb in neighbors(theory, r):
            key, _ = canonical(theory, nb)
            if key not in classes:
                visited += 1
                if visited > budget:
                    raise BudgetExceeded(f"more than {budget} chamber classes")
                classes[key] = len(order)
                order.append(key)
                queue.append(key)
    reps = [r for r in order if keep is None or keep(r)]
    ls = LambdaSet(reps)
    for i, r in enumerate(reps):
        ls.orbit_map[r] = (i, AffineWeylElement.identity(theory.rank))
        ls.witnesses.append(witness(theory, r))
    return ls


def record_chamber(theory: GaugeTheoryData, ls: LambdaSet, a: Sequence[int]) -> tuple[int, AffineWeylElement]:
    key, w = canonical(theory, a)
    i = ls.reps.index(key)
    entry = (i, w.inverse())
    ls.orbit_map.setdefault(tuple(a), entry)
    return ls.orbit_map[tuple(a)]


# -- lattice points in scaled chambers ----------------------------------------------------


def _scaled_constraints(theory: GaugeTheoryData, a, p: int, delta) -> list[ph.Constraint]:
    # p a_i < g_i . u + p f_i + delta < p a_i + p
    out = []
    for i, m in enumerate(theory.matter):
        c = p * m.flavor_offset + delta
        out.append(ph.constraint(m.gauge, c - p * a[i]))
        out.append(ph.constraint([-g for g in m.gauge], p * a[i] + p - c))
    return out


def count_points(theory: GaugeTheoryData, a: Sequence[int], p: int, delta=None) -> int:
    """#{u in Z^n : u/p lies in the chamber C'_a of offsets f_i and delta/p}.

    ``delta`` defaults to the theory's own delta.
    """
    delta = theory.delta if delta is None else Fraction(delta)
    cons = _scaled_constraints(theory, a, p, delta)
    n = theory.rank
    if n == 0:
        return int(all(c.holds(()) for c in cons))
    if not ph.feasible(cons, n):
        return 0
    stages = [ph._prune(cons)]
    for k in range(n - 1, 0, -1):
        stages.append(ph.eliminate(stages[-1], k))
    # stages[n-1-k] involves variables 0..k

    def rec(k, prefix):
        system = stages[n - 1 - k]
        pt = list(prefix) + [Fraction(0)] * (n - k)
        try:
            lo, ls, hi, hs = ph._bounds(system, k, pt)
        except ph.Infeasible:
            return 0
        if lo is None or hi is None:
            raise ValueError("chamber is unbounded")
        start = floor(lo) + 1 if ls else -floor(-lo)
        stop = -floor(-hi) - 1 if hs else floor(hi)
        total = 0
        for v in range(start, stop + 1):
            if k == n - 1:
                point = tuple(prefix) + (Fraction(v),)
                total += all(c.holds(point) for c in cons)
            else:
                total += rec(k + 1, tuple(prefix) + (Fraction(v),))
        return total

    return rec(0, ())


def count_points_bruteforce(theory: GaugeTheoryData, a: Sequence[int], p: int, delta=None,
                            radius: int | None = None) -> int:
    """Scan a box large enough to contain the scaled chamber."""
    delta = theory.delta if delta is None else Fraction(delta)
    n = theory.rank
    if radius is None:
        radius = p * (max((abs(x) for x in a), default=0) + 3) * max(1, n) + 2
    total = 0
    for u in product(range(-radius, radius + 1), repeat=n):
        ok = True
        for i, m in enumerate(theory.matter):
            v = dot(m.gauge, u) + p * m.flavor_offset + delta
            if not (p * a[i] < v < p * a[i] + p):
                ok = False
                break
        total += ok
    return total


def validate_length_zero(theory: GaugeTheoryData) -> None:
    """Each length-zero generator must map the fundamental alcove onto itself."""
    n = theory.rank
    pos = [r for r in theory.roots]
    alcove = []
    for r in pos:
        alcove.append(ph.constraint(r.covector, 0))
        alcove.append(ph.constraint([-c for c in r.covector], 1))
    if not alcove:
        return
    for w in theory.length_zero_gens:
        for g in (w, w.inverse()):
            # image of the alcove under g: xi with g^{-1} xi in the alcove
            inv = g.inverse()
            image = []
            for c in alcove:
                cov = vec_mat(c.coeffs, inv.linear)
                image.append(ph.Constraint(tuple(Fraction(x) for x in cov),
                                           c.const + dot(c.coeffs, inv.translation), c.kind))
            for c in image:
                negated = ph.Constraint(tuple(-x for x in c.coeffs), -c.const, ph.GE)
                if ph.feasible(alcove + [negated], n):
                    raise InvalidTheory("length-zero generator does not preserve the fundamental alcove")


def generic_witness(theory: GaugeTheoryData, a: Sequence[int]) -> tuple[Fraction, ...]:
    """A simple interior point of C_a avoiding every affine root wall."""
    from .lattice import classify, GENERIC
    cons = chamber_constraints(theory, a)
    pt = ph.witness(cons, theory.rank)
    for _ in range(4 * len(theory.roots) + 1):
        if classify(theory, pt) == GENERIC:
            return pt
        for r in theory.roots:
            v = dot(r.covector, pt)
            if v.denominator == 1:
                cons.append(ph.constraint(r.covector, -v))
        pt = ph.witness(cons, theory.rank)
    raise AssertionError("could not leave the root walls")
