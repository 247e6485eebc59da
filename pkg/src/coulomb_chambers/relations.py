"""Random instances of the defining relations among y_w, r, u_alpha and polynomials.

Each generator returns ``(lhs, rhs)`` as words or sums of words with common
endpoints, ready for ``equal_oracle``.
"""
from __future__ import annotations

from fractions import Fraction
import math
from math import floor
from typing import Callable

from .category import equal_oracle
from .lattice import (AffineWeylElement, GaugeTheoryData, Root, classify, dot, eval_mid, fvec,
                      random_generic_point, random_weyl_element, GENERIC)
from .poly import Poly
from .polyrep import (act_weyl_poly, demazure, nvars, phi_poly, phi_product, phi_triple)
from .words import (AffineRoot, Demazure, MorphismSum, MorphismWord, PolyTok, Wall, Weyl)


class NoInstance(Exception):
    """The theory admits no configuration for this relation."""


def _word(source, tokens) -> MorphismWord:
    return MorphismWord.build(source, tokens)


def random_linear(theory: GaugeTheoryData, rng, with_h: bool = True) -> Poly:
    coeffs = [rng.randint(-3, 3) for _ in range(theory.rank)]
    coeffs.append(rng.randint(-3, 3) if with_h else 0)
    if not any(coeffs):
        coeffs[0 if theory.rank else -1] = 1
    return Poly.linear(coeffs)


def random_poly(theory: GaugeTheoryData, rng, max_deg: int = 3, terms: int = 4) -> Poly:
    nv = nvars(theory)
    out = Poly.zero(nv)
    for _ in range(terms):
        d = rng.randint(0, max_deg)
        e = [0] * nv
        for _ in range(d):
            e[rng.randrange(nv)] += 1
        out = out + Poly.monomial(e, rng.randint(-4, 4))
    return out


def _point(theory, rng):
    return random_generic_point(theory, rng, den=rng.choice([7, 11, 13, 97]), box=2)


def dot_commute(theory, rng):
    a, b = _point(theory, rng), _point(theory, rng)
    mu = PolyTok(random_linear(theory, rng))
    return _word(b, [mu, Wall(a, b)]), _word(b, [Wall(a, b), mu])


def weyl1(theory, rng):
    eta = _point(theory, rng)
    zeta = [rng.randint(-2, 2) for _ in range(theory.rank)]
    mu = random_linear(theory, rng)
    t, ti = AffineWeylElement.translate(zeta), AffineWeylElement.translate([-z for z in zeta])
    lin = mu.linear_coeffs()
    pairing = dot(zeta, lin[:-1])
    h = Poly.var(theory.rank, nvars(theory))
    rhs = mu - h * pairing
    return _word(eta, [Weyl(t), PolyTok(mu), Weyl(ti)]), _word(eta, [PolyTok(rhs)])


def wall_cross1(theory, rng):
    a, b, c = (_point(theory, rng) for _ in range(3))
    lhs = _word(c, [Wall(a, b), Wall(b, c)])
    trip = phi_triple(theory, a, b, c).expand(theory)
    return lhs, _word(c, [PolyTok(trip), Wall(a, c)])


def coweight2(theory, rng):
    eta = _point(theory, rng)
    w1, w2 = random_weyl_element(theory, rng), random_weyl_element(theory, rng)
    return _word(eta, [Weyl(w1), Weyl(w2)]), _word(eta, [Weyl(w1 * w2)])


def conjugate2(theory, rng):
    a, b = _point(theory, rng), _point(theory, rng)
    w = random_weyl_element(theory, rng)
    lhs = _word(w(a), [Weyl(w), Wall(b, a), Weyl(w.inverse())])
    return lhs, _word(w(a), [Wall(w(b), w(a))])


def weyl2(theory, rng):
    eta = _point(theory, rng)
    w = random_weyl_element(theory, rng)
    mu = random_poly(theory, rng)
    lhs = _word(eta, [Weyl(w), PolyTok(mu), Weyl(w.inverse())])
    return lhs, _word(eta, [PolyTok(act_weyl_poly(w, mu))])


# -- relations with Demazure tokens ----------------------------------------------


def _same_matter_chamber(theory, a, b) -> bool:
    return not len(phi_product(theory, a, b)) and not len(phi_product(theory, b, a))


def _parallel_matter(theory, root: Root) -> bool:
    cov = root.covector
    neg = tuple(-c for c in cov)
    return any(m.gauge in (cov, neg) for m in theory.matter)


def demazure_pair(theory: GaugeTheoryData, rng, tries: int = 400):
    """(alpha, eta) with eta generic and s_alpha eta in the same matter chamber."""
    roots = [r for r in theory.roots if not _parallel_matter(theory, r)]
    if not roots:
        raise NoInstance("no usable root")
    for _ in range(tries):
        r = rng.choice(roots)
        if rng.random() < 0.5:
            r = -r
        eta = _point(theory, rng)
        v = dot(r.covector, eta)
        k = floor(v) + rng.choice([0, 1])
        alpha = AffineRoot(r, k)
        s_eta = alpha.reflection()(eta)
        if _same_matter_chamber(theory, eta, s_eta):
            return alpha, eta
    raise NoInstance("no chamber meets a root wall")


def _u(alpha: AffineRoot, eta) -> Demazure:
    return Demazure(alpha, fvec(eta), alpha.reflection()(eta))


def psi2(theory, rng):
    alpha, eta = demazure_pair(theory, rng)
    s_eta = alpha.reflection()(eta)
    return _word(eta, [_u(alpha, s_eta), _u(alpha, eta)]), MorphismSum.zero()


def braid(theory, rng):
    """Alternating Demazure words of length m for two roots generating a rank-2 system."""
    simple = [r for r in theory.roots if r.simple]
    if len(simple) < 2:
        raise NoInstance("need two simple roots")
    i, j = rng.sample(range(len(simple)), 2)
    ka, kb = rng.randint(-1, 1), rng.randint(-1, 1)
    a, b = AffineRoot(simple[i], ka), AffineRoot(simple[j], kb)
    pairing = dot(a.root.covector, b.root.coroot) * dot(b.root.covector, a.root.coroot)
    m = {0: 2, 1: 3, 2: 4, 3: 6}[pairing]
    eta = _point(theory, rng)

    def alternating(first, second):
        tokens, obj = [], eta
        for step in range(m):
            root = first if step % 2 == 0 else second
            tok = _u(root, obj)
            tokens.insert(0, tok)
            obj = tok.target
        return _word(eta, tokens)

    return alternating(a, b), alternating(b, a)


def psiconjugate(theory, rng):
    alpha, eta = demazure_pair(theory, rng)
    w = random_weyl_element(theory, rng)
    s_eta = alpha.reflection()(eta)
    lhs = _word(w(eta), [Weyl(w), _u(alpha, eta), Weyl(w.inverse())])
    return lhs, _word(w(eta), [_u(alpha.transformed(w), w(eta))])


def psipoly(theory, rng):
    alpha, eta = demazure_pair(theory, rng)
    s = alpha.reflection()
    mu = random_linear(theory, rng)
    u = _u(alpha, eta)
    lhs = MorphismSum.of((1, _word(eta, [u, PolyTok(mu)])),
                         (-1, _word(eta, [PolyTok(act_weyl_poly(s, mu)), u])))
    rhs = _word(eta, [Wall(s(eta), eta), PolyTok(demazure(alpha, mu))])
    return lhs, rhs


def rotation_configuration(theory: GaugeTheoryData, rng, tries: int = 400):
    """Six sector points around a point where a root wall meets a matter wall.

    Returns (alpha, eta, e1p, e1m, e2p, e2m, eta3) such that the two routes
    eta -> e1p -u-> e1m -> eta3 and eta -> e2p -u-> e2m -> eta3 pass on
    opposite sides of the centre and eta3 is eta rotated by 180 degrees.
    """
    roots = [r for r in theory.roots if not _parallel_matter(theory, r)]
    if theory.rank != 2 or not roots or not theory.d:
        raise NoInstance("needs rank 2 with a root wall and matter")
    for _ in range(tries):
        r = rng.choice(roots)
        i = rng.randrange(theory.d)
        g = theory.matter[i].gauge
        k, n = rng.randint(-1, 1), rng.randint(-1, 2)
        a0, a1 = r.covector
        det = a0 * g[1] - a1 * g[0]
        if det == 0:
            continue
        b = n - theory.matter[i].flavor_offset - theory.delta
        c = (Fraction(k * g[1] - a1 * b, det), Fraction(a0 * b - g[0] * k, det))
        alpha = AffineRoot(r, k)
        s = alpha.reflection()
        covs = {tuple(r.covector)}
        covs |= {m.gauge for j, m in enumerate(theory.matter) if eval_mid(theory, j, c).denominator == 1}
        prim = set()
        for cv in covs:
            sign = 1 if (cv[0], cv[1]) > (0, 0) else -1
            prim.add((sign * cv[0], sign * cv[1]))
        if len(prim) != 3:
            continue
        rays = []
        for cv in prim:
            d = (-cv[1], cv[0])
            rays += [d, (-d[0], -d[1])]
        rays.sort(key=lambda d: math.atan2(d[1], d[0]))
        root_dirs = {(-a1, a0), (a1, -a0)}
        eps = Fraction(1, 64)
        for _shrink in range(12):
            reps = [tuple(c[j] + eps * (rays[t][j] + rays[(t + 1) % 6][j]) for j in range(2))
                    for t in range(6)]
            if all(classify(theory, p) == GENERIC for p in reps) and all(
                    len(phi_product(theory, reps[t], reps[(t + 1) % 6]))
                    + len(phi_product(theory, reps[(t + 1) % 6], reps[t])) <= 1 for t in range(6)):
                break
            eps /= 4
        else:
            continue
        # sector t lies between rays t and t+1; pairs across the root wall share a root ray
        a = next(t for t in range(6) if rays[(t + 1) % 6] in root_dirs)
        if rng.random() < 0.5:
            eta_i, e1p_i, e2p_i = (a + 2) % 6, (a + 1) % 6, (a + 3) % 6
        else:
            eta_i, e1p_i, e2p_i = (a + 5) % 6, a, (a + 4) % 6
        eta = reps[eta_i]
        e1p, e2p = reps[e1p_i], reps[e2p_i]
        e1m, e2m = s(e1p), s(e2p)
        eta3 = tuple(2 * c[j] - eta[j] for j in range(2))
        return alpha, eta, e1p, e1m, e2p, e2m, eta3
    raise NoInstance("no root wall meets a matter wall")


def triple(theory, rng):
    alpha, eta, e1p, e1m, e2p, e2m, eta3 = rotation_configuration(theory, rng)
    s = alpha.reflection()
    lhs = MorphismSum.of(
        (1, _word(eta, [Wall(eta3, e1m), _u(alpha, e1p), Wall(e1p, eta)])),
        (-1, _word(eta, [Wall(eta3, e2m), _u(alpha, e2p), Wall(e2p, eta)])))
    prod = phi_poly(theory, e1p, eta) * act_weyl_poly(s, phi_poly(theory, eta, e1m))
    rhs = _word(eta, [PolyTok(demazure(alpha, prod)), Wall(eta3, s(eta)), Weyl(s)])
    return lhs, rhs


RELATIONS: dict[str, Callable] = {
    "dot-commute": dot_commute,
    "weyl1": weyl1,
    "wall-cross1": wall_cross1,
    "coweight2": coweight2,
    "conjugate2": conjugate2,
    "weyl2": weyl2,
    "psi2": psi2,
    "braid": braid,
    "psiconjugate": psiconjugate,
    "psipoly": psipoly,
    "triple": triple,
}

NEEDS_ROOTS = {"psi2", "braid", "psiconjugate", "psipoly", "triple"}


def check_relation(theory, name: str, rng, **oracle_kw):
    lhs, rhs = RELATIONS[name](theory, rng)
    return equal_oracle(theory, lhs, rhs, **oracle_kw), (lhs, rhs)
