"""p-th root conventions: scaling of level slices, retained walls, the invertible
part of Phi, and the token dictionary into the completed category at a base point.

A *root* theory has offsets f_i and constant delta/p; its *base* theory has
offsets p f_i and delta.  The point eta of the root slice goes to
eta_p + upsilon' = p eta + upsilon' in the base slice, and

    mid_base_i(p eta + upsilon') = p mid_root_i(eta) + <g_i, upsilon'>.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from .lattice import AffineWeylElement, GaugeTheoryData, MatterLine, dot, fvec
from .poly import Poly
from .polyrep import PhiFactors, phi_product
from .words import AffineRoot, Demazure, MorphismWord, PolyTok, Wall, Weyl


@dataclass(frozen=True)
class PthRootContext:
    """p = None stands for the real (infinite) mode with no retention filter."""

    p: int | None
    upsilon: tuple = ()                   # integral gauge vector upsilon'
    line_offsets: tuple | None = None     # <phi_i^+, upsilon'> per line; default g_i . upsilon'

    @property
    def finite(self) -> bool:
        return self.p is not None

    def base_point(self, rank: int) -> tuple:
        return fvec(self.upsilon) if self.upsilon else fvec([0] * rank)

    def pairing(self, theory: GaugeTheoryData, i: int) -> int:
        if self.line_offsets is not None:
            return int(self.line_offsets[i])
        return int(dot(theory.matter[i].gauge, self.base_point(theory.rank)))

    def delta_scaled(self, theory: GaugeTheoryData) -> Fraction:
        return theory.delta / self.p if self.finite else theory.delta


def root_theory(base: GaugeTheoryData, p: int) -> GaugeTheoryData:
    lines = tuple(MatterLine(m.gauge, m.flavor_offset / p, m.flavor) for m in base.matter)
    return GaugeTheoryData(base.rank, lines, base.roots, base.weyl_gens, base.length_zero_gens,
                           base.delta / p, base.flavor_rank)


def base_theory(root: GaugeTheoryData, p: int) -> GaugeTheoryData:
    lines = tuple(MatterLine(m.gauge, m.flavor_offset * p, m.flavor) for m in root.matter)
    return GaugeTheoryData(root.rank, lines, root.roots, root.weyl_gens, root.length_zero_gens,
                           root.delta * p, root.flavor_rank)


def scale_up(eta: Sequence, p: int) -> tuple:
    return tuple(p * Fraction(x) for x in eta)


def scale_down(xi: Sequence, p: int) -> tuple:
    return tuple(Fraction(x) / p for x in xi)


def to_base(eta: Sequence, pctx: PthRootContext) -> tuple:
    """eta -> eta_p + upsilon'."""
    ups = pctx.base_point(len(eta))
    return tuple(pctx.p * Fraction(x) + u for x, u in zip(eta, ups))


def from_base(xi: Sequence, pctx: PthRootContext) -> tuple:
    ups = pctx.base_point(len(xi))
    return tuple((Fraction(x) - u) / pctx.p for x, u in zip(xi, ups))


def retained(theory: GaugeTheoryData, i: int, n: int, pctx: PthRootContext) -> bool:
    if not pctx.finite:
        return True
    return (n - pctx.pairing(theory, i)) % pctx.p == 0


def phi_hat0(base: GaugeTheoryData, xi, xi_prime, pctx: PthRootContext) -> PhiFactors:
    full = phi_product(base, xi, xi_prime)
    return PhiFactors.of(pr for pr in full.pairs if not retained(base, pr[0], pr[1], pctx))


def retained_part(base: GaugeTheoryData, xi, xi_prime, pctx: PthRootContext) -> PhiFactors:
    full = phi_product(base, xi, xi_prime)
    return PhiFactors.of(pr for pr in full.pairs if retained(base, pr[0], pr[1], pctx))


def root_index(theory: GaugeTheoryData, i: int, n: int, pctx: PthRootContext) -> int:
    """n_{1/p}: the root-theory wall matching a retained base wall."""
    return (n - pctx.pairing(theory, i)) // pctx.p


def unit_residues(base: GaugeTheoryData, factors: PhiFactors, pctx: PthRootContext) -> list[int]:
    """Constant terms mod p of the factors after centring at upsilon'."""
    return [(pctx.pairing(base, i) - n) % pctx.p for i, n in factors.pairs]


def weyl_scaled(w: AffineWeylElement, pctx: PthRootContext) -> AffineWeylElement:
    return w.scaled(pctx.p, pctx.base_point(w.rank))


def affine_root_scaled(alpha: AffineRoot, pctx: PthRootContext) -> AffineRoot:
    """The affine root whose wall is the image of alpha's wall under eta -> eta_p + upsilon'."""
    ups = pctx.base_point(len(alpha.root.covector))
    level = pctx.p * alpha.level + dot(alpha.root.covector, ups)
    if Fraction(level).denominator != 1:
        raise ValueError("base point is not integral")
    return AffineRoot(alpha.root, int(level))


def shift_poly(f: Poly, pctx: PthRootContext) -> Poly:
    """mu -> mu - <mu, upsilon'> (homogenised with h)."""
    n = f.nvars - 1
    ups = pctx.base_point(n)
    h = Poly.var(n, n + 1, f.mod)
    imgs = [Poly.var(j, n + 1, f.mod) - h * ups[j] for j in range(n)] + [h]
    return f.substitute(imgs)


@dataclass
class GammaImage:
    word: MorphismWord
    denominators: list  # one PhiFactors per wall token, in token order


def gamma_translate(root: GaugeTheoryData, word: MorphismWord, pctx: PthRootContext) -> GammaImage:
    base = base_theory(root, pctx.p)
    tokens, dens = [], []
    for tok in word.tokens:
        if isinstance(tok, Wall):
            a, b = to_base(tok.target, pctx), to_base(tok.source, pctx)
            tokens.append(Wall(a, b))
            dens.append(phi_hat0(base, a, b, pctx))
        elif isinstance(tok, Weyl):
            tokens.append(Weyl(weyl_scaled(tok.w, pctx)))
        elif isinstance(tok, Demazure):
            tokens.append(Demazure(affine_root_scaled(tok.alpha, pctx),
                                   to_base(tok.source, pctx), to_base(tok.target, pctx)))
        else:
            tokens.append(PolyTok(shift_poly(tok.f, pctx)))
    return GammaImage(MorphismWord.build(to_base(word.source, pctx), tokens), dens)


def gamma_operator(root: GaugeTheoryData, word, pctx: PthRootContext):
    """Normal form of the translated word with every wall divided by its Phi-hat-0."""
    from .category import Operator, demazure_operator, token_operator
    from .words import as_sum
    base = base_theory(root, pctx.p)
    total = Operator(root.rank)
    for c, w in as_sum(word).terms:
        img = gamma_translate(root, w, pctx)
        op = Operator.identity(root.rank)
        walls = iter(img.denominators)
        for tok in img.word.tokens:
            if isinstance(tok, Demazure):
                # walls between the base endpoints may be non-retained, hence invertible
                # after completion, so the operator is taken without the chamber check
                t = demazure_operator(root.rank, tok.alpha)
            else:
                t = token_operator(base, tok)
            if isinstance(tok, Wall):
                dens_i = next(walls)
                e = AffineWeylElement.identity(root.rank)
                val = t.terms[e]
                for pair in dens_i.pairs:
                    val = val.divide_linear(dens_i.factor(base, pair))
                t = Operator(root.rank, {e: val})
            op = op * t
        total = total + op.scale(c)
    return total


# -- the picture of scaled hyperplanes ------------------------------------------------


@dataclass(frozen=True)
class DrawnLine:
    kind: str            # "matter" or "root"
    labels: tuple        # ((line index, mid value), ...) or (("alpha", value),)
    retained: bool


def scaled_picture(root: GaugeTheoryData, pctx: PthRootContext, box: Sequence[tuple]) -> list[DrawnLine]:
    """Images of all base matter and root walls meeting the open box, with retention.

    Each geometric matter line lists every matter function constant on it
    together with its value; a line is kept when one of those walls is
    retained.  An affine root wall alpha = k/p is kept when p divides k.
    """
    p = pctx.p
    base = base_theory(root, p)
    rank = root.rank
    lines: dict = {}
    for i, m in enumerate(root.matter):
        lo, hi = _range_on_box(m.gauge, box)
        off = m.flavor_offset + root.delta
        # mid_root = g.eta + off takes values in (1/p)Z on the drawn walls
        for k in range(floor(p * (lo + off)) - 1, floor(p * (hi + off)) + 2):
            v = Fraction(k, p)
            c = v - off
            if not (lo < c < hi):
                continue
            n = k + pctx.pairing(base, i)  # base wall index for this root-slice value
            key = _line_key(m.gauge, c)
            lines.setdefault(key, []).append((i, v, retained(base, i, n, pctx)))
    out = []
    for key in sorted(lines):
        entries = lines[key]
        out.append(DrawnLine("matter", tuple((i, v) for i, v, _ in sorted(entries)),
                             any(r for _, _, r in entries)))
    for r in root.roots:
        lo, hi = _range_on_box(r.covector, box)
        for k in range(floor(p * lo) - 1, floor(p * hi) + 2):
            v = Fraction(k, p)
            if lo < v < hi:
                keep = k % p == 0
                out.append(DrawnLine("root", (("alpha", v),), keep))
    return out


def _range_on_box(cov, box):
    lo = sum(min(c * a, c * b) for c, (a, b) in zip(cov, box))
    hi = sum(max(c * a, c * b) for c, (a, b) in zip(cov, box))
    return Fraction(lo), Fraction(hi)


def _line_key(cov, c):
    # normalise cov . x = c so that parallel coincident lines share a key
    lead = next(x for x in cov if x)
    return (tuple(Fraction(x, lead) for x in cov), Fraction(c) / lead)
