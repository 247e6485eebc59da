"""Seeded property suites shared by the CLI ``check`` verb and the test-suite.

Each suite returns a list of CheckResult; a check passes when every sampled
instance passes.  Counterexamples are kept as short strings.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import frobenius as fb
from . import pthroot as pr
from .category import equal_oracle
from .lattice import GaugeTheoryData, eval_mid, random_generic_point
from .poly import Poly
from .lattice import AffineWeylElement
from .polyrep import act_weyl_poly, demazure, nvars, phi_product, phi_triple
from .relations import NEEDS_ROOTS, RELATIONS, NoInstance, random_poly
from .words import AffineRoot, MorphismSum, as_sum


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, detail: str) -> None:
        self.failures += 1
        if len(self.counterexamples) < 3:
            self.counterexamples.append(detail)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "trials": self.trials,
                "failures": self.failures, "skipped": self.skipped,
                "counterexamples": self.counterexamples}


def _corrupt(rhs):
    """Negative control: doubles the right-hand side (or adds the lhs when it is zero)."""
    s = as_sum(rhs)
    return MorphismSum(tuple((2 * c, w) for c, w in s.terms))


# -- relations ----------------------------------------------------------------------


def relation_suite(theory: GaugeTheoryData, seed: int, trials: int, max_deg: int = 6,
                   radius: int = 4, names=None, corrupt: str | None = None) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for name in names or RELATIONS:
        res = CheckResult(f"relation:{name}")
        if name in NEEDS_ROOTS and not theory.roots:
            res.skipped = trials
            out.append(res)
            continue
        for _ in range(trials):
            try:
                lhs, rhs = RELATIONS[name](theory, rng)
            except NoInstance:
                res.skipped += 1
                continue
            if corrupt == name:
                rhs = _corrupt(rhs) if as_sum(rhs).terms else as_sum(lhs)
                if not as_sum(rhs).terms:
                    continue
            res.trials += 1
            r = equal_oracle(theory, lhs, rhs, max_deg, radius)
            if not r.equal:
                res.fail(f"{name}: lhs={as_sum(lhs).terms[0][1].to_json() if as_sum(lhs).terms else 0} "
                         f"witness={r.witness!r}")
        out.append(res)
    return out


# -- Demazure operators -----------------------------------------------------------------


def _braid_order(a, b) -> int:
    g = AffineWeylElement.reflection(a) * AffineWeylElement.reflection(b)
    w, m = g, 1
    while not w.is_identity():
        w, m = w * g, m + 1
        if m > 12:
            raise ValueError("reflections generate an infinite dihedral group")
    return m


def demazure_suite(theory: GaugeTheoryData, seed: int, trials: int, max_deg: int = 6) -> list[CheckResult]:
    """d_a d_a = 0, alpha d_a f = f - s_a f and the braid relations between simple roots."""
    rng = random.Random(seed)
    simple = [r for r in theory.roots if r.simple]
    square = CheckResult("demazure square")
    leibniz = CheckResult("demazure definition")
    braid = CheckResult("demazure braid")
    pairs = [(a, b) for i, a in enumerate(simple) for b in simple[i + 1:]]
    orders = {(a, b): _braid_order(a, b) for a, b in pairs}
    for _ in range(trials):
        f = random_poly(theory, rng, max_deg, rng.randint(1, 6))
        level = rng.randint(-2, 2)
        for r in simple:
            alpha = AffineRoot(r, level)
            d = demazure(alpha, f)
            square.trials += 1
            if not demazure(alpha, d).is_zero():
                square.fail(f"{r.covector} level {level} f={f}")
            leibniz.trials += 1
            if d * alpha.poly() != f - act_weyl_poly(alpha.reflection(), f):
                leibniz.fail(f"{r.covector} f={f}")
        for (a, b), m in orders.items():
            lhs, rhs = f, f
            for k in range(m):
                lhs = demazure(a if k % 2 else b, lhs)
                rhs = demazure(b if k % 2 else a, rhs)
            braid.trials += 1
            if lhs != rhs:
                braid.fail(f"{a.covector},{b.covector} m={m} f={f}")
    return [square, leibniz, braid]


# -- Frobenius ----------------------------------------------------------------------


def _random_element(alg: fb.AbelianAlgebra, rng, terms: int = 2, radius: int = 2, deg: int = 2) -> dict:
    th = alg.theory
    return alg.element([(tuple(rng.randint(-radius, radius) for _ in range(th.rank)),
                         random_poly(th, rng, deg, 2)) for _ in range(terms)])


def frobenius_suite(theory: GaugeTheoryData, p: int, seed: int, trials: int) -> list[CheckResult]:
    rng = random.Random(seed)
    if theory.roots:
        res = CheckResult("frobenius:abelian-only")
        res.skipped = 1
        return [res]
    fctx = fb.FrobeniusContext(p)
    a0 = fb.AbelianAlgebra(theory, p, h_zero=True)
    ah = fb.AbelianAlgebra(theory, p, h_zero=False)
    unit = CheckResult("kappa(1)=1", trials=1)
    if fb.kappa(a0.one(), fctx, a0) != a0.one():
        unit.fail("kappa(1) != 1")
    split = CheckResult("kappa(a^p b)=a kappa(b)")
    linear = CheckResult("kappa additive")
    mult = CheckResult("sigma multiplicative")
    for _ in range(trials):
        a, b, c = (_random_element(a0, rng) for _ in range(3))
        split.trials += 1
        lhs = fb.kappa(a0.mul(a0.power(a, p), b), fctx, a0)
        rhs = a0.mul(a, fb.kappa(b, fctx, a0))
        if lhs != rhs:
            split.fail(f"a={a} b={b}")
        linear.trials += 1
        if fb.kappa(a0.add(b, c), fctx, a0) != a0.add(fb.kappa(b, fctx, a0), fb.kappa(c, fctx, a0)):
            linear.fail(f"b={b} c={c}")
        mult.trials += 1
        lhs = fb.sigma(a0, ah, a0.mul(a, b), p)
        rhs = ah.mul(fb.sigma(a0, ah, a, p), fb.sigma(a0, ah, b, p))
        if lhs != rhs:
            mult.fail(f"a={a} b={b}")
    ident = CheckResult("Phi/AS identity")
    for gamma in product(range(-3, 4), repeat=theory.rank):
        if any(abs(sum(x * y for x, y in zip(m.gauge, gamma))) > 3 for m in theory.matter):
            continue
        eta = random_generic_point(theory, rng, den=97, box=1)
        ident.trials += 1
        lhs, rhs = fb.phi_as_identity(theory, eta, gamma, p)
        if lhs != rhs:
            ident.fail(f"gamma={gamma} eta={eta}")
    return [unit, split, linear, mult, ident]


# -- p-th root conventions ------------------------------------------------------------


def _root_factorization(root, base, pctx, eta, eta2, xi, xi2) -> bool:
    """Retained base factors are p times the root-theory factors under x -> p x + upsilon' h,
    and the remaining factors have nonzero constant term mod p."""
    full = phi_product(base, xi, xi2)
    kept = pr.retained_part(base, xi, xi2, pctx)
    rest = pr.phi_hat0(base, xi, xi2, pctx)
    if kept + rest != full:
        return False
    expect = phi_product(root, eta, eta2)
    mapped = [(i, pr.root_index(base, i, n, pctx)) for i, n in kept.pairs]
    if sorted(mapped) != sorted(expect.pairs):
        return False
    nv = nvars(root)
    ups = pctx.base_point(root.rank)
    h = Poly.var(nv - 1, nv)
    imgs = [Poly.var(j, nv) * pctx.p + h * ups[j] for j in range(nv - 1)] + [h]
    for (i, n), pair in zip(kept.pairs, mapped):
        lhs = kept.factor(base, (i, n)).substitute(imgs)
        if lhs != expect.factor(root, pair) * pctx.p:
            return False
    return all(r != 0 for r in pr.unit_residues(base, rest, pctx))


GAMMA_RELATIONS = ("coweight2", "conjugate2", "dot-commute", "psi2", "psiconjugate", "braid")


def pthroot_suite(root: GaugeTheoryData, pctx: pr.PthRootContext, seed: int, trials: int) -> list[CheckResult]:
    rng = random.Random(seed)
    base = pr.base_theory(root, pctx.p)
    scaling = CheckResult("mid scaling")
    split = CheckResult("p-th root factorization")
    triple = CheckResult("Phi multiset identity")
    for _ in range(trials):
        eta = random_generic_point(root, rng, den=97, box=2)
        eta2 = random_generic_point(root, rng, den=89, box=2)
        eta3 = random_generic_point(root, rng, den=83, box=2)
        xi, xi2 = pr.to_base(eta, pctx), pr.to_base(eta2, pctx)
        scaling.trials += 1
        for i in range(root.d):
            if eval_mid(base, i, xi) != pctx.p * eval_mid(root, i, eta) + pctx.pairing(base, i):
                scaling.fail(f"line {i} eta={eta}")
                break
        split.trials += 1
        ok = _root_factorization(root, base, pctx, eta, eta2, xi, xi2)
        if not ok:
            split.fail(f"eta={eta} eta'={eta2}")
        triple.trials += 1
        lhs = phi_product(root, eta, eta2) + phi_product(root, eta2, eta3)
        rhs = phi_product(root, eta, eta3) + phi_triple(root, eta, eta2, eta3)
        if lhs != rhs:
            triple.fail(f"{eta} {eta2} {eta3}")
    gamma = CheckResult("gamma dictionary")
    for name in GAMMA_RELATIONS:
        for _ in range(max(1, trials // len(GAMMA_RELATIONS))):
            try:
                lhs, rhs = RELATIONS[name](root, rng)
            except NoInstance:
                gamma.skipped += 1
                continue
            gamma.trials += 1
            d = pr.gamma_operator(root, lhs, pctx) + pr.gamma_operator(root, rhs, pctx).scale(-1)
            if not d.is_zero():
                gamma.fail(name)
    return [scaling, split, triple, gamma]


# -- Schober combinatorics ----------------------------------------------------------------


def _rand_point(rng, k, den=None):
    den = den or rng.choice([7, 11, 13, 17])
    return tuple(Fraction(rng.randint(-3 * den, 3 * den), den) for _ in range(k))


def schober_suite(theory: GaugeTheoryData, seed: int, trials: int, lattice=None) -> list[CheckResult]:
    from .schober import FaceLattice
    rng = random.Random(seed)
    fl = lattice or FaceLattice(theory)
    k = theory.flavor_rank
    sub = CheckResult("segment subdivision")
    rev = CheckResult("segment reversal")
    mono = CheckResult("crossing parameters increase")
    star = CheckResult("star containment")
    sep = CheckResult("separation bookkeeping")
    const = CheckResult("Lambda constant on open faces")
    for _ in range(trials):
        p1, p3 = _rand_point(rng, k), _rand_point(rng, k)
        if p1 == p3:
            continue
        t = Fraction(rng.randint(1, 30), 31)
        p2 = tuple(a + t * (b - a) for a, b in zip(p1, p3))
        s13 = fl.segment_face_sequence(p1, p3, perturb=True)
        keys = lambda seq: [f.key for f in seq]
        sub.trials += 1
        s12, s23 = fl.segment_face_sequence(p1, p2, perturb=True), fl.segment_face_sequence(p2, p3, perturb=True)
        if keys(s13) != keys(s12) + keys(s23)[1:]:
            sub.fail(f"{p1} {p2} {p3}")
        rev.trials += 1
        if keys(fl.segment_face_sequence(p3, p1, perturb=True)) != keys(s13)[::-1]:
            rev.fail(f"{p1} {p3}")
        mono.trials += 1
        ts = fl.crossing_parameters(p1, p3)
        if any(b <= a for a, b in zip(ts, ts[1:])) or any(not (0 <= x <= 1) for x in ts):
            mono.fail(f"{p1} {p3}")
        # a wall face on the segment and an adjacent open face
        walls = [i for i, f in enumerate(s13) if f.dimension < k]
        if walls:
            i = rng.choice(walls)
            lower, upper = s13[i], s13[i - 1] if i > 0 else s13[i + 1]
            star.trials += 1
            if not fl.is_below(lower, upper) or not fl.lambda_c(upper) <= fl.lambda_c(lower):
                star.fail(f"{lower.key} {upper.key}")
        # colinear triples along the segment
        if len(s13) >= 3:
            i, j = sorted(rng.sample(range(len(s13)), 2))
            c1, c3 = s13[0], s13[-1]
            c2 = s13[rng.randrange(len(s13))]
            sep.trials += 1
            if not fl.colinear(c1, c2, c3):
                sep.fail(f"not colinear {c1.key} {c2.key} {c3.key}")
            else:
                a, b, c = fl.separation(c1, c2), fl.separation(c2, c3), fl.separation(c1, c3)
                walls_all = set(a) | set(b) | set(c)
                ok = all(a.get(w, 0) + b.get(w, 0) == c.get(w, 0) and a.get(w, 0) * b.get(w, 0) >= 0
                         for w in walls_all)
                if c2.dimension == k:
                    ok = ok and fl.separating(c1, c3) == fl.separating(c1, c2) | fl.separating(c2, c3) \
                        and not (fl.separating(c1, c2) & fl.separating(c2, c3))
                if not ok:
                    sep.fail(f"{c1.key} {c2.key} {c3.key}")
        # Lambda sampled at several points of an open face
        f0 = s13[0]
        const.trials += 1
        base_set = fl.lambda_at(f0)
        for _ in range(2):
            q = tuple(x + Fraction(rng.randint(-5, 5), 10007) for x in f0.witness)
            if fl.key_of(q) == f0.key:
                from .schober import lambda_real
                if lambda_real(theory, q) != base_set:
                    const.fail(f"{f0.key} at {q}")
                    break
    return [sub, rev, mono, star, sep, const]
