"""Phi products, Demazure operators and the two representations of the generators.

Polynomials live in Q[x_0..x_{n-1}, h] (or F_p[...]).  An element w of the
affine Weyl group acts on (x, h) by x -> Mx + h*t and on polynomials by
(w.f)(z) = f(w^{-1} z).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Sequence

from .lattice import (AffineWeylElement, GaugeTheoryData, Root, eval_mid, fvec,
                      require_unexceptional)
from .poly import Poly, RatFunc
from .words import AffineRoot, Demazure, MorphismWord, PolyTok, Wall, Weyl, ObjectMismatch


def nvars(theory: GaugeTheoryData) -> int:
    return theory.rank + 1


def h_poly(theory: GaugeTheoryData, mod: int | None = None) -> Poly:
    return Poly.var(theory.rank, nvars(theory), mod)


def x_poly(theory: GaugeTheoryData, j: int, mod: int | None = None) -> Poly:
    return Poly.var(j, nvars(theory), mod)


def linear_poly(theory: GaugeTheoryData, covector: Sequence, h_coeff=0, mod=None) -> Poly:
    return Poly.linear(tuple(covector) + (h_coeff,), mod)


def phi_plus(theory: GaugeTheoryData, i: int, mod: int | None = None) -> Poly:
    m = theory.matter[i]
    return linear_poly(theory, m.gauge, m.flavor_offset, mod)


def weyl_images(w: AffineWeylElement, mod: int | None = None) -> list[Poly]:
    """Images of x_0..x_{n-1}, h under f -> w.f (substitute w^{-1})."""
    inv = w.inverse()
    n = w.rank
    imgs = [Poly.linear(tuple(inv.linear[j]) + (inv.translation[j],), mod) for j in range(n)]
    imgs.append(Poly.var(n, n + 1, mod))
    return imgs


def act_weyl_poly(w: AffineWeylElement, f: Poly) -> Poly:
    if w.is_identity():
        return f
    return f.substitute(weyl_images(w, f.mod))


def _as_affine(alpha) -> AffineRoot:
    return alpha if isinstance(alpha, AffineRoot) else AffineRoot(alpha, 0)


def demazure(alpha, f: Poly) -> Poly:
    """(f - s_alpha f) / alpha, exact."""
    a = _as_affine(alpha)
    num = f - act_weyl_poly(a.reflection(), f)
    q = num.div_linear(a.poly(f.mod))
    if q is None:
        raise ArithmeticError("Demazure numerator not divisible by the root")
    return q


# -- Phi products -----------------------------------------------------------


@dataclass(frozen=True)
class PhiFactors:
    """Multiset of pairs (i, n), each standing for phi_i^+ - n h."""

    pairs: tuple = ()

    @staticmethod
    def of(pairs: Iterable[tuple[int, int]]) -> "PhiFactors":
        return PhiFactors(tuple(sorted(pairs)))

    def counter(self) -> Counter:
        return Counter(self.pairs)

    def __add__(self, other: "PhiFactors") -> "PhiFactors":
        return PhiFactors.of(self.pairs + other.pairs)

    def __sub__(self, other: "PhiFactors") -> "PhiFactors":
        c = self.counter()
        c.subtract(other.counter())
        if any(v < 0 for v in c.values()):
            raise ValueError("not a sub-multiset")
        return PhiFactors.of(c.elements())

    def __len__(self) -> int:
        return len(self.pairs)

    def factor(self, theory: GaugeTheoryData, pair, mod=None, h_value=None) -> Poly:
        i, n = pair
        m = theory.matter[i]
        hc = m.flavor_offset - n
        p = linear_poly(theory, m.gauge, hc, mod)
        if h_value is not None:
            p = p.specialize(theory.rank, h_value)
        return p

    def expand(self, theory: GaugeTheoryData, mod=None, h_value=None) -> Poly:
        out = Poly.one(nvars(theory), mod)
        for pair in self.pairs:
            out = out * self.factor(theory, pair, mod, h_value)
        return out


def _crossed(lo: Fraction, hi: Fraction) -> range:
    """Integers n with lo < n < hi (lo, hi non-integral or strict anyway)."""
    start = floor(lo) + 1
    stop = -floor(-hi)  # ceil
    return range(start, max(start, stop))


def phi_product(theory: GaugeTheoryData, eta: Sequence, eta_prime: Sequence) -> PhiFactors:
    """(i, n) with phi_i^mid(eta) > n > phi_i^mid(eta')."""
    require_unexceptional(theory, eta, eta_prime)
    pairs = []
    for i in range(theory.d):
        v, vp = eval_mid(theory, i, eta), eval_mid(theory, i, eta_prime)
        pairs += [(i, n) for n in _crossed(vp, v)]
    return PhiFactors.of(pairs)


def phi_triple(theory: GaugeTheoryData, eta, eta_prime, eta_dbl) -> PhiFactors:
    """Hyperplanes crossed twice by eta -> eta' -> eta''."""
    require_unexceptional(theory, eta, eta_prime, eta_dbl)
    pairs = []
    for i in range(theory.d):
        a = eval_mid(theory, i, eta)
        b = eval_mid(theory, i, eta_prime)
        c = eval_mid(theory, i, eta_dbl)
        pairs += [(i, n) for n in _crossed(b, min(a, c))]
        pairs += [(i, n) for n in _crossed(max(a, c), b)]
    return PhiFactors.of(pairs)


def phi_poly(theory: GaugeTheoryData, eta, eta_prime, mod=None) -> Poly:
    return phi_product(theory, eta, eta_prime).expand(theory, mod)


# -- polynomial representation ---------------------------------------------


def _check_demazure(theory: GaugeTheoryData, tok: Demazure) -> None:
    a = tok.alpha
    vs, vt = a.value(tok.source), a.value(tok.target)
    if vs == 0 or vt == 0 or (vs > 0) == (vt > 0):
        raise ObjectMismatch("Demazure token does not cross its root wall")
    if len(phi_product(theory, tok.source, tok.target)) or len(phi_product(theory, tok.target, tok.source)):
        raise ObjectMismatch("Demazure token endpoints lie in different matter chambers")
    for i in range(theory.d):
        g = theory.matter[i].gauge
        cov = a.root.covector
        if any(g) and (g == cov or tuple(-c for c in g) == cov):
            raise ObjectMismatch("a matter hyperplane family is parallel to the root wall")


def act_poly(theory: GaugeTheoryData, word: MorphismWord, f: Poly, source=None) -> Poly:
    """Apply a word to f sitting on the word's source object."""
    if source is not None and fvec(source) != word.source:
        raise ObjectMismatch("polynomial sits on a different object")
    obj = word.source
    for tok in reversed(word.tokens):
        if isinstance(tok, Weyl):
            f = act_weyl_poly(tok.w, f)
            obj = tok.w(obj)
        elif isinstance(tok, Wall):
            if fvec(tok.source) != obj:
                raise ObjectMismatch("wall token does not start here")
            f = phi_poly(theory, tok.target, tok.source, f.mod) * f
            obj = fvec(tok.target)
        elif isinstance(tok, Demazure):
            if fvec(tok.source) != obj:
                raise ObjectMismatch("Demazure token does not start here")
            _check_demazure(theory, tok)
            f = demazure(tok.alpha, f)
            obj = fvec(tok.target)
        else:
            f = tok.f * f
    return f


# -- fraction representation -------------------------------------------------


class FracVector:
    """Finitely supported lambda -> rational function, lambda an integer coweight."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not v.is_zero()}

    @staticmethod
    def basis(f: Poly, lam: Sequence[int]) -> "FracVector":
        return FracVector({tuple(int(x) for x in lam): RatFunc.from_poly(f)})

    def __add__(self, other: "FracVector") -> "FracVector":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return FracVector(out)

    def scale(self, c) -> "FracVector":
        return FracVector({k: v * c for k, v in self.coeffs.items()})

    def __sub__(self, other: "FracVector") -> "FracVector":
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (self - other).is_zero()

    def collapse(self) -> RatFunc | None:
        """Forget lambda: the map intertwining with the polynomial representation."""
        total = None
        for v in self.coeffs.values():
            total = v if total is None else total + v
        return total

    def __repr__(self) -> str:
        return "FracVector(" + ", ".join(f"{k}: {v}" for k, v in sorted(self.coeffs.items())) + ")"


def _lam_image(w: AffineWeylElement, lam: tuple) -> tuple:
    img = w(lam)
    if any(Fraction(x).denominator != 1 for x in img):
        raise ValueError("group element does not preserve the coweight lattice")
    return tuple(int(x) for x in img)


def act_frac(theory: GaugeTheoryData, word: MorphismWord, v: FracVector) -> FracVector:
    """Token-by-token action on the fraction-field module."""
    n = nvars(theory)
    for tok in reversed(word.tokens):
        out: dict = {}

        def put(key, val):
            out[key] = out[key] + val if key in out else val

        if isinstance(tok, Weyl):
            imgs = weyl_images(tok.w)
            for lam, f in v.coeffs.items():
                put(_lam_image(tok.w, lam), f.twist(imgs))
        elif isinstance(tok, Wall):
            phi = phi_poly(theory, tok.target, tok.source)
            for lam, f in v.coeffs.items():
                put(lam, f * phi)
        elif isinstance(tok, Demazure):
            _check_demazure(theory, tok)
            a = tok.alpha.poly()
            s = tok.alpha.reflection()
            imgs = weyl_images(s)
            for lam, f in v.coeffs.items():
                put(lam, f.divide_linear(a))
                put(_lam_image(s, lam), -(f.twist(imgs).divide_linear(a)))
        else:
            for lam, f in v.coeffs.items():
                put(lam, f * tok.f)
        v = FracVector(out)
    return v
