"""Morphism words: grading, the twisted-operator normal form, and the equality oracle.

Every word acts on the fraction module as a finite sum  sum_w c_w * w  with
c_w rational functions and w in the affine Weyl group; this is the normal
form used by the oracle.  ``act_frac`` in polyrep applies tokens one at a
time and serves as the independent route.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import floor
from typing import Iterable, Sequence

from .lattice import (AffineWeylElement, GaugeTheoryData, eval_mid, fvec, dot,
                      require_unexceptional)
from .poly import Poly, RatFunc
from .polyrep import (FracVector, act_weyl_poly, nvars, phi_poly, phi_product,
                      weyl_images, _lam_image, _check_demazure)
from .words import (Demazure, MorphismSum, MorphismWord, ObjectMismatch, PolyTok, Wall,
                    Weyl, as_sum, compose, endpoints)

EQUAL = "equal_up_to_truncation"
DIFFERENT = "different"


class NonDominant(ValueError):
    pass


class NonInvariantDressing(ValueError):
    pass


# -- grading ------------------------------------------------------------------


def degree(theory: GaugeTheoryData, word: MorphismWord) -> int:
    total = 0
    for tok in word.tokens:
        if isinstance(tok, Wall):
            total += len(phi_product(theory, tok.target, tok.source))
            total += len(phi_product(theory, tok.source, tok.target))
        elif isinstance(tok, Demazure):
            total -= 2
        elif isinstance(tok, PolyTok):
            if tok.f.is_zero():
                continue
            if not tok.f.is_homogeneous():
                raise ValueError("inhomogeneous polynomial token")
            total += 2 * tok.f.degree()
    return total


# -- normal form ----------------------------------------------------------------


class Operator:
    """sum_w c_w w, acting by f[t^lam] -> sum_w c_w (w.f) [t^{w lam}]."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict | None = None):
        self.rank = rank
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @staticmethod
    def identity(rank: int) -> "Operator":
        return Operator(rank, {AffineWeylElement.identity(rank): RatFunc.from_poly(Poly.one(rank + 1))})

    def __mul__(self, other: "Operator") -> "Operator":
        out: dict = {}
        for w1, c1 in self.terms.items():
            imgs = None if w1.is_identity() else weyl_images(w1)
            for w2, c2 in other.terms.items():
                c = c1 * (c2 if imgs is None else c2.twist(imgs))
                w = w1 * w2
                out[w] = out[w] + c if w in out else c
        return Operator(self.rank, out)

    def __add__(self, other: "Operator") -> "Operator":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return Operator(self.rank, out)

    def scale(self, s) -> "Operator":
        return Operator(self.rank, {w: c * Fraction(s) for w, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def apply(self, v: FracVector) -> FracVector:
        out: dict = {}
        for w, c in self.terms.items():
            imgs = None if w.is_identity() else weyl_images(w)
            for lam, f in v.coeffs.items():
                key = lam if imgs is None else _lam_image(w, lam)
                val = c * (f if imgs is None else f.twist(imgs))
                out[key] = out[key] + val if key in out else val
        return FracVector(out)


def token_operator(theory: GaugeTheoryData, tok) -> Operator:
    n = theory.rank
    one = Poly.one(n + 1)
    e = AffineWeylElement.identity(n)
    if isinstance(tok, Weyl):
        return Operator(n, {tok.w: RatFunc.from_poly(one)})
    if isinstance(tok, Wall):
        return Operator(n, {e: RatFunc.from_poly(phi_poly(theory, tok.target, tok.source))})
    if isinstance(tok, PolyTok):
        return Operator(n, {e: RatFunc.from_poly(tok.f)})
    _check_demazure(theory, tok)
    return demazure_operator(n, tok.alpha)


def demazure_operator(rank: int, alpha) -> Operator:
    """(1/alpha) e - (1/alpha) s_alpha."""
    inv_a = RatFunc.from_poly(Poly.one(rank + 1)).divide_linear(alpha.poly())
    return Operator(rank, {AffineWeylElement.identity(rank): inv_a, alpha.reflection(): -inv_a})


def normal_form(theory: GaugeTheoryData, word) -> Operator:
    total = Operator(theory.rank)
    for coeff, w in as_sum(word).terms:
        w.validate()
        op = Operator.identity(theory.rank)
        for tok in w.tokens:
            op = op * token_operator(theory, tok)
        total = total + op.scale(coeff)
    return total


# -- oracle -----------------------------------------------------------------------


def monomials(nv: int, max_deg: int) -> list[Poly]:
    out = []
    for d in range(max_deg + 1):
        for combo in combinations_with_replacement(range(nv), d):
            e = [0] * nv
            for j in combo:
                e[j] += 1
            out.append(Poly.monomial(e))
    return out


def truncated_basis(theory: GaugeTheoryData, max_deg: int = 6, radius: int = 4):
    """Basis vectors m [t^lam], |lam|_inf <= radius, deg m <= max_deg."""
    lams = list(product(range(-radius, radius + 1), repeat=theory.rank))
    for m in monomials(nvars(theory), max_deg):
        for lam in lams:
            yield FracVector.basis(m, lam)


@dataclass
class OracleResult:
    verdict: str
    witness: FracVector | None = None
    detail: str = ""

    @property
    def equal(self) -> bool:
        return self.verdict == EQUAL


def _apply_sum(theory, word, v: FracVector) -> FracVector:
    from .polyrep import act_frac
    out = FracVector()
    for c, w in as_sum(word).terms:
        out = out + act_frac(theory, w, v).scale(c)
    return out


def equal_oracle(theory: GaugeTheoryData, w1, w2, max_deg: int = 6, radius: int = 4,
                 exhaustive: bool = False) -> OracleResult:
    """Compare two parallel words (or sums) through the fraction representation.

    The difference of the normal forms is applied to the truncated basis; if
    it is the zero operator every basis vector is killed at once.  With
    ``exhaustive`` both words are also pushed through ``act_frac`` token by
    token on every basis vector.
    """
    e1, e2 = endpoints(w1), endpoints(w2)
    if e1 is not None and e2 is not None and e1 != e2:
        raise ObjectMismatch("words have different endpoints")
    delta = normal_form(theory, w1) + normal_form(theory, w2).scale(-1)
    if exhaustive:
        for v in truncated_basis(theory, max_deg, radius):
            if not (_apply_sum(theory, w1, v) - _apply_sum(theory, w2, v)).is_zero():
                return OracleResult(DIFFERENT, v, "token-by-token images differ")
            if not delta.apply(v).is_zero():
                raise AssertionError("normal form disagrees with the token action")
        return OracleResult(EQUAL)
    if delta.is_zero():
        return OracleResult(EQUAL)
    for v in truncated_basis(theory, max_deg, radius):
        if not delta.apply(v).is_zero():
            return OracleResult(DIFFERENT, v)
    return OracleResult(EQUAL, None, "difference vanishes on the truncated basis only")


# -- spanning words ---------------------------------------------------------------


def _translations_up_to(theory: GaugeTheoryData, radius: int):
    for lam in product(range(-radius, radius + 1), repeat=theory.rank):
        for f in theory.finite_part():
            yield AffineWeylElement.translate(lam) * f


def path_basis(theory: GaugeTheoryData, eta, eta_prime, deg_bound: int,
               radius: int | None = None) -> list[MorphismWord]:
    """Words m * y_w * r(w^{-1} eta', eta) of degree <= deg_bound from eta to eta'."""
    eta, eta_prime = fvec(eta), fvec(eta_prime)
    require_unexceptional(theory, eta, eta_prime)
    radius = deg_bound + 1 if radius is None else radius
    n = theory.rank
    mons = [m for m in monomials(nvars(theory), deg_bound // 2)]
    out = []
    seen = set()
    for w in _translations_up_to(theory, radius):
        mid = w.inverse()(eta_prime)
        if mid in seen:
            continue
        seen.add(mid)
        wall = Wall(mid, eta)
        base = MorphismWord.build(eta, [Weyl(w), wall] if not w.is_identity() else [wall])
        if mid == eta:
            base = MorphismWord.build(eta, [Weyl(w)] if not w.is_identity() else [])
        d0 = degree(theory, base)
        for m in mons:
            d = d0 + 2 * m.degree()
            if d > deg_bound:
                continue
            word = base if m == Poly.one(n + 1) else MorphismWord.build(eta, [PolyTok(m)] + list(base.tokens))
            out.append(word)
    out.sort(key=lambda wd: (degree(theory, wd), repr(wd.to_json())))
    return out


def graded_counts(theory: GaugeTheoryData, words: Iterable[MorphismWord]) -> dict[int, int]:
    out: dict[int, int] = {}
    for wd in words:
        d = degree(theory, wd)
        out[d] = out.get(d, 0) + 1
    return out


def _epsilon(theory: GaugeTheoryData, lam: Sequence) -> Fraction:
    """A rational step so small that -eps*lam and 0 lie in the same open matter chamber
    and see the same side of every root wall not through 0."""
    bound = Fraction(1)
    for i, m in enumerate(theory.matter):
        s = abs(dot(m.gauge, lam))
        if s:
            v = eval_mid(theory, i, [0] * theory.rank)
            gap = min(v - floor(v), floor(v) + 1 - v)
            bound = min(bound, gap / s)
    for r in theory.roots:
        s = abs(dot(r.covector, lam))
        if s:
            bound = min(bound, Fraction(1, s))
    return bound / 2


def monopole(theory: GaugeTheoryData, lam: Sequence[int], f: Poly | None = None) -> MorphismWord:
    """Dressed monopole at the origin; for tori this is f * y_lam * r(-lam, 0)."""
    n = theory.rank
    lam = tuple(int(x) for x in lam)
    f = Poly.one(n + 1) if f is None else f
    zero = fvec([0] * n)
    require_unexceptional(theory, zero)
    dress = [] if f == Poly.one(n + 1) else [PolyTok(f)]
    if not any(lam):
        return MorphismWord.build(zero, dress)
    neg = fvec(-x for x in lam)
    y = Weyl(AffineWeylElement.translate(lam))
    if not theory.roots:
        return MorphismWord.build(zero, dress + [y, Wall(neg, zero)])
    for r in theory.roots:
        if r.simple and dot(r.covector, lam) < 0:
            raise NonDominant(f"{lam} is not dominant")
    for r in theory.roots:
        if dot(r.covector, lam) == 0:
            s = AffineWeylElement.reflection(r)
            if act_weyl_poly(s, f) != f:
                raise NonInvariantDressing("dressing is not invariant under the stabilizer")
    eps = _epsilon(theory, lam)
    near = fvec(-eps * x for x in lam)
    return MorphismWord.build(zero, [y, Wall(neg, near)] + dress + [Wall(near, zero)])
