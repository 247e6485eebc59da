"""Quantum Frobenius, the Artin-Schreier map and Frobenius splittings.

The abelian Coulomb algebra is modelled in the basis f r_lam (f a polynomial in
x and h, lam a cocharacter) with

    r_lam g   = (t_lam . g) r_lam
    r_lam r_mu = (t_{lam+mu} . Phi(-lam-mu, -mu, 0)) r_{lam+mu}

which is what the monopole words  r_lam = y_lam r(-lam, 0)  satisfy in the
fraction representation (see ``algebra_element_operator`` for the cross-check).
Coefficients live in Q or in F_p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .category import Operator, monopole, normal_form
from .lattice import AffineWeylElement, GaugeTheoryData, fvec
from .poly import Poly, RatFunc
from .polyrep import act_weyl_poly, nvars, phi_plus, phi_product, phi_triple
from .words import MorphismWord, PolyTok, Wall, Weyl


class NonAbelianTheory(ValueError):
    pass


class NotInSpanningForm(ValueError):
    pass


def _h(nv: int, mod=None) -> Poly:
    return Poly.var(nv - 1, nv, mod)


def artin_schreier(f: Poly, p: int) -> Poly:
    """f^p - h^(p-1) f."""
    if f.is_zero():
        return f
    return f ** p - _h(f.nvars, f.mod) ** (p - 1) * f


def frobenius_poly(f: Poly, p: int) -> Poly:
    """The ring map x_j -> AS(x_j); h goes to AS(h) = 0."""
    nv = f.nvars
    imgs = [artin_schreier(Poly.var(j, nv, f.mod), p) for j in range(nv)]
    return f.substitute(imgs)


def _require_abelian(theory: GaugeTheoryData) -> None:
    if theory.roots:
        raise NonAbelianTheory("quantum Frobenius is implemented for tori only")


# -- the abelian algebra -----------------------------------------------------------


class AbelianAlgebra:
    """Elements are dicts lam -> Poly meaning sum_lam f_lam r_lam."""

    def __init__(self, theory: GaugeTheoryData, mod: int | None = None, h_zero: bool = False):
        _require_abelian(theory)
        if mod is not None:
            bad = [m.flavor_offset for m in theory.matter if m.flavor_offset.denominator % mod == 0]
            if bad:
                raise ValueError(f"offsets {bad} are not {mod}-integral")
        self.theory = theory
        self.mod = mod
        self.h_zero = h_zero
        self.nv = nvars(theory)
        self._cache: dict = {}

    def _clean(self, f: Poly) -> Poly:
        if self.mod is not None and f.mod is None:
            f = f.reduce_mod(self.mod)
        if self.h_zero:
            f = f.specialize(self.nv - 1, 0)
        return f

    def element(self, pairs) -> dict:
        out: dict = {}
        for lam, f in pairs:
            lam = tuple(int(x) for x in lam)
            f = self._clean(f)
            out[lam] = out[lam] + f if lam in out else f
        return {k: v for k, v in out.items() if not v.is_zero()}

    def one(self) -> dict:
        return self.element([((0,) * self.theory.rank, Poly.one(self.nv))])

    def _translate(self, lam, g: Poly) -> Poly:
        if self.h_zero or not any(lam):
            return g
        return act_weyl_poly(AffineWeylElement.translate(lam), g)

    def structure(self, lam, mu) -> Poly:
        """The coefficient c with r_lam r_mu = c r_{lam+mu}."""
        key = (lam, mu)
        if key not in self._cache:
            s = tuple(a + b for a, b in zip(lam, mu))
            neg_s, neg_mu = fvec(-x for x in s), fvec(-x for x in mu)
            zero = fvec([0] * len(lam))
            phi = phi_triple(self.theory, neg_s, neg_mu, zero).expand(self.theory, self.mod)
            self._cache[key] = self._clean(self._translate(s, phi))
        return self._cache[key]

    def mul(self, a: dict, b: dict) -> dict:
        out = []
        for (lam, f), (mu, g) in product(a.items(), b.items()):
            s = tuple(x + y for x, y in zip(lam, mu))
            out.append((s, f * self._clean(self._translate(lam, g)) * self.structure(lam, mu)))
        return self.element(out)

    def add(self, a: dict, b: dict) -> dict:
        return self.element(list(a.items()) + list(b.items()))

    def scale(self, a: dict, c) -> dict:
        return self.element([(k, v * c) for k, v in a.items()])

    def power(self, a: dict, k: int) -> dict:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out


def algebra_element_operator(theory: GaugeTheoryData, elem: dict) -> Operator:
    """Normal form of sum f_lam * y_lam r(-lam, 0) over Q, for cross-checking ``mul``."""
    total = Operator(theory.rank)
    for lam, f in elem.items():
        total = total + normal_form(theory, monopole(theory, lam, f))
    return total


# -- quantum Frobenius ------------------------------------------------------------------


def sigma(alg_src: AbelianAlgebra, alg_dst: AbelianAlgebra, elem: dict, p: int) -> dict:
    """f r_nu -> sigma(f) r_{p nu}, from the h = 0 algebra into the quantized one."""
    return alg_dst.element([(tuple(p * x for x in lam), frobenius_poly(alg_dst._clean(f), p))
                            for lam, f in elem.items()])


def quantum_frobenius(theory: GaugeTheoryData, word: MorphismWord, p: int) -> MorphismWord:
    """Token-wise: polynomials go through x_j -> AS(x_j), y_nu to y_{p nu} and every
    object eta to p eta, so r_nu = y_nu r(-nu, 0) goes to r_{p nu}."""
    _require_abelian(theory)
    tokens = []
    for tok in word.tokens:
        if isinstance(tok, PolyTok):
            tokens.append(PolyTok(frobenius_poly(tok.f, p)))
        elif isinstance(tok, Weyl):
            if not tok.w.is_translation():
                raise NonAbelianTheory("only translations occur for tori")
            tokens.append(Weyl(AffineWeylElement.translate([p * x for x in tok.w.translation])))
        elif isinstance(tok, Wall):
            tokens.append(Wall(tuple(p * x for x in tok.target), tuple(p * x for x in tok.source)))
        else:
            raise NonAbelianTheory("Demazure tokens do not occur for tori")
    return MorphismWord.build(tuple(p * x for x in word.source), tokens)


def phi_as_identity(theory: GaugeTheoryData, eta: Sequence, gamma: Sequence[int], p: int) -> tuple[Poly, Poly]:
    """Both sides of  Phi(eta + p gamma, eta) = prod AS(phi_i^+)^max(phi_i(gamma), 0)  mod p."""
    eta = fvec(eta)
    moved = tuple(e + p * g for e, g in zip(eta, gamma))
    lhs = phi_product(theory, moved, eta).expand(theory, p)
    rhs = Poly.one(nvars(theory), p)
    for i, m in enumerate(theory.matter):
        k = sum(a * b for a, b in zip(m.gauge, gamma))
        if k > 0:
            rhs = rhs * artin_schreier(phi_plus(theory, i, p), p) ** k
    return lhs, rhs


# -- Frobenius splittings -------------------------------------------------------------------


@dataclass(frozen=True)
class FrobeniusContext:
    p: int
    weyl_average: bool = False
    splitting: str = "monomial"

    def metadata(self) -> dict:
        return {"p": self.p, "kappa0": self.splitting, "weyl_average": self.weyl_average}


def kappa0(f: Poly, p: int) -> Poly:
    """The monomial splitting: x^m -> x^(m/p) when p divides every exponent, else 0."""
    out = {}
    for e, c in f.terms.items():
        if all(k % p == 0 for k in e):
            out[tuple(k // p for k in e)] = c
    return Poly(f.nvars, out, f.mod)


def kappa0_averaged(f: Poly, p: int, group: Sequence[AffineWeylElement]) -> Poly:
    """(1/|W|) sum_w w kappa0(w^-1 f); needs p prime to |W|."""
    if len(group) % p == 0:
        raise ValueError("cannot average over a group of order divisible by p")
    total = Poly.zero(f.nvars, f.mod)
    for w in group:
        total = total + act_weyl_poly(w, kappa0(act_weyl_poly(w.inverse(), f), p))
    return total * Fraction(1, len(group))


def kappa(elem: dict, fctx: FrobeniusContext, alg: AbelianAlgebra) -> dict:
    """f r_lam -> kappa0(f) r_{lam/p} if p | lam, else 0 (h = 0, coefficients in F_p)."""
    p = fctx.p
    return alg.element([(tuple(x // p for x in lam), kappa0(f, p))
                        for lam, f in elem.items() if all(x % p == 0 for x in lam)])


@dataclass(frozen=True)
class DressedMonopole:
    lam: tuple
    f: Poly


def kappa_nonabelian(elem, fctx: FrobeniusContext, theory: GaugeTheoryData):
    """On a combination [(coeff, DressedMonopole)], m_lam(f) -> m_{lam/p}(kappa0 f) if p | lam."""
    p = fctx.p
    group = theory.finite_part() if fctx.weyl_average else None
    out = []
    for item in elem:
        if not (isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], DressedMonopole)):
            raise NotInSpanningForm(repr(item))
        c, m = item
        if any(x % p for x in m.lam):
            continue
        k = kappa0_averaged(m.f, p, group) if group else kappa0(m.f, p)
        if not k.is_zero():
            out.append((c, DressedMonopole(tuple(x // p for x in m.lam), k)))
    return out
