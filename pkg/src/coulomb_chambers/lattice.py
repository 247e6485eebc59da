"""Gauge data: matter weights with flavor offsets, roots, and the affine Weyl group.

Points of the level-1 slice are tuples of Fractions.  Matter lines are indexed
from 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

Vec = tuple  # tuple of Fraction or int
Matrix = tuple  # tuple of integer row tuples


class ExceptionalPoint(ValueError):
    """A point lies on an unrolled matter hyperplane."""


class InvalidTheory(ValueError):
    pass


def fvec(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def mat_vec(m: Matrix, v: Sequence):
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Sequence, m: Matrix):
    n = len(m[0]) if m else 0
    return tuple(sum((v[i] * m[i][j] for i in range(len(m))), 0) for j in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b)) if b else []
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def int_inverse(m: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix (exact Gauss-Jordan)."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise InvalidTheory("singular linear part")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in inv for x in row):
        raise InvalidTheory("linear part is not invertible over the integers")
    return tuple(tuple(int(x) for x in row) for row in inv)


@dataclass(frozen=True)
class AffineWeylElement:
    """x -> linear . x + translation on the level-1 slice."""

    linear: Matrix
    translation: tuple[Fraction, ...]

    @staticmethod
    def identity(n: int) -> "AffineWeylElement":
        return AffineWeylElement(identity_matrix(n), fvec([0] * n))

    @staticmethod
    def translate(lam: Sequence) -> "AffineWeylElement":
        return AffineWeylElement(identity_matrix(len(lam)), fvec(lam))

    @staticmethod
    def linear_map(m: Matrix) -> "AffineWeylElement":
        m = tuple(tuple(int(x) for x in row) for row in m)
        return AffineWeylElement(m, fvec([0] * len(m)))

    @staticmethod
    def reflection(root: "Root", level: int = 0) -> "AffineWeylElement":
        """Reflection in the affine hyperplane root(x) = level."""
        n = len(root.covector)
        m = tuple(tuple(int(i == j) - root.coroot[i] * root.covector[j] for j in range(n))
                  for i in range(n))
        return AffineWeylElement(m, fvec(level * c for c in root.coroot))

    @property
    def rank(self) -> int:
        return len(self.translation)

    def __call__(self, eta: Sequence) -> tuple[Fraction, ...]:
        return tuple(Fraction(v) + t for v, t in zip(mat_vec(self.linear, eta), self.translation))

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        lin = mat_mul(self.linear, other.linear)
        tr = tuple(a + b for a, b in zip(mat_vec(self.linear, other.translation), self.translation))
        return AffineWeylElement(lin, fvec(tr))

    def inverse(self) -> "AffineWeylElement":
        inv = int_inverse(self.linear)
        tr = tuple(-x for x in mat_vec(inv, self.translation))
        return AffineWeylElement(inv, fvec(tr))

    def is_identity(self) -> bool:
        return self == AffineWeylElement.identity(self.rank)

    def is_translation(self) -> bool:
        return self.linear == identity_matrix(self.rank)

    def scaled(self, p: int, base: Sequence = None) -> "AffineWeylElement":
        """x -> p*w((x - base)/p) + base, the level-p twin of w."""
        base = fvec(base) if base is not None else fvec([0] * self.rank)
        shift = tuple(b - v for b, v in zip(base, mat_vec(self.linear, base)))
        tr = tuple(p * t + s for t, s in zip(self.translation, shift))
        return AffineWeylElement(self.linear, fvec(tr))

    def to_json(self) -> dict:
        return {"linear": [list(r) for r in self.linear],
                "translation": [str(t) for t in self.translation]}


def act(w: AffineWeylElement, eta: Sequence) -> tuple[Fraction, ...]:
    return w(eta)


@dataclass(frozen=True)
class MatterLine:
    gauge: tuple[int, ...]
    flavor_offset: Fraction
    flavor: tuple[int, ...] = ()  # weight on the flavor torus, used when the flavor varies


@dataclass(frozen=True)
class Root:
    covector: tuple[int, ...]
    coroot: tuple[int, ...]
    simple: bool = True

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.covector), tuple(-c for c in self.coroot), self.simple)


@dataclass(frozen=True)
class GaugeTheoryData:
    rank: int
    matter: tuple[MatterLine, ...]
    roots: tuple[Root, ...] = ()
    weyl_gens: tuple[Matrix, ...] = ()
    length_zero_gens: tuple[AffineWeylElement, ...] = ()
    delta: Fraction = Fraction(1, 2)
    flavor_rank: int = 0
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        self.validate()

    @property
    def d(self) -> int:
        return len(self.matter)

    def validate(self) -> None:
        n = self.rank
        if not (0 < self.delta < 1):
            raise InvalidTheory("delta must lie strictly between 0 and 1")
        for m in self.matter:
            if len(m.gauge) != n:
                raise InvalidTheory("matter covector has the wrong length")
            if m.flavor and len(m.flavor) != self.flavor_rank:
                raise InvalidTheory("flavor weight has the wrong length")
        for r in self.roots:
            if len(r.covector) != n or len(r.coroot) != n:
                raise InvalidTheory("root data has the wrong length")
            if dot(r.covector, r.coroot) != 2:
                raise InvalidTheory("root does not pair to 2 with its coroot")
        idn = identity_matrix(n)
        weights = sorted(m.gauge for m in self.matter)
        for s in self.weyl_gens:
            if len(s) != n or any(len(row) != n for row in s):
                raise InvalidTheory("weyl generator has the wrong shape")
            if mat_mul(s, s) != idn:
                raise InvalidTheory("weyl generator is not an involution")
            if sorted(vec_mat(g, s) for g in weights) != weights:
                raise InvalidTheory("matter weights are not Weyl invariant")
        for w in self.length_zero_gens:
            int_inverse(w.linear)

    def flavor_weight(self, i: int) -> tuple[int, ...]:
        return self.matter[i].flavor or (0,) * self.flavor_rank

    def at_flavor(self, psi: Sequence) -> "GaugeTheoryData":
        """Same theory with offsets f_i + <flavor_i, psi>."""
        psi = fvec(psi)
        lines = tuple(MatterLine(m.gauge, m.flavor_offset + dot(self.flavor_weight(i), psi), m.flavor)
                      for i, m in enumerate(self.matter))
        return GaugeTheoryData(self.rank, lines, self.roots, self.weyl_gens,
                               self.length_zero_gens, self.delta, self.flavor_rank)

    def with_delta(self, delta) -> "GaugeTheoryData":
        return GaugeTheoryData(self.rank, self.matter, self.roots, self.weyl_gens,
                               self.length_zero_gens, Fraction(delta), self.flavor_rank)

    def perturbed(self) -> "GaugeTheoryData":
        """delta = 1/2 + 1/(2N) with N above every denominator in the data."""
        dens = [m.flavor_offset.denominator for m in self.matter] + [self.delta.denominator]
        for w in self.length_zero_gens:
            dens += [t.denominator for t in w.translation]
        N = 2 * max(dens) + 1
        return self.with_delta(Fraction(1, 2) + Fraction(1, 2 * N))

    # -- finite part of the extended affine Weyl group --------------------

    def finite_part(self) -> tuple[AffineWeylElement, ...]:
        """Coset representatives of the extended affine Weyl group modulo Z^n translations.

        Translations are reduced into [0,1)^n, so the list is finite.
        """
        if "finite" in self._cache:
            return self._cache["finite"]
        n = self.rank
        gens = [AffineWeylElement.linear_map(s) for s in self.weyl_gens] + list(self.length_zero_gens)
        start = AffineWeylElement.identity(n)
        seen = {start: None}
        frontier = [start]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = _reduce_mod_lattice(s * g)
                    if h not in seen:
                        seen[h] = None
                        nxt.append(h)
            frontier = nxt
            if len(seen) > 10000:
                raise InvalidTheory("finite Weyl part is not finite")
        out = tuple(sorted(seen, key=_element_key))
        self._cache["finite"] = out
        return out

    def simple_reflections(self) -> tuple[AffineWeylElement, ...]:
        return tuple(AffineWeylElement.linear_map(s) for s in self.weyl_gens)


def _reduce_mod_lattice(w: AffineWeylElement) -> AffineWeylElement:
    tr = tuple(t - (t.numerator // t.denominator) for t in w.translation)
    return AffineWeylElement(w.linear, fvec(tr))


def _element_key(w: AffineWeylElement):
    return (w.linear != identity_matrix(w.rank), w.linear, w.translation)


def eval_mid(theory: GaugeTheoryData, i: int, eta: Sequence) -> Fraction:
    """phi_i^mid at a level-1 point: g_i . eta + f_i + delta."""
    if not 0 <= i < theory.d:
        raise IndexError(f"matter index {i} out of range")
    m = theory.matter[i]
    return dot(m.gauge, fvec(eta)) + m.flavor_offset + theory.delta


def mid_values(theory: GaugeTheoryData, eta: Sequence) -> tuple[Fraction, ...]:
    return tuple(eval_mid(theory, i, eta) for i in range(theory.d))


GENERIC, UNEXCEPTIONAL, EXCEPTIONAL = "generic", "unexceptional", "exceptional"


def classify(theory: GaugeTheoryData, eta: Sequence) -> str:
    if any(v.denominator == 1 for v in mid_values(theory, eta)):
        return EXCEPTIONAL
    eta = fvec(eta)
    if any(Fraction(dot(r.covector, eta)).denominator == 1 for r in theory.roots):
        return UNEXCEPTIONAL
    return GENERIC


def is_unexceptional(theory: GaugeTheoryData, eta: Sequence) -> bool:
    return classify(theory, eta) != EXCEPTIONAL


def require_unexceptional(theory: GaugeTheoryData, *points: Sequence) -> None:
    for eta in points:
        if classify(theory, eta) == EXCEPTIONAL:
            raise ExceptionalPoint(f"{tuple(str(x) for x in eta)} lies on a matter hyperplane")


def weight_image(theory: GaugeTheoryData, i: int, w: AffineWeylElement) -> int:
    """Index j with g_i . M = g_j and f_j = f_i + g_i . t modulo Z (first match)."""
    m = theory.matter[i]
    target = vec_mat(m.gauge, w.linear)
    shift = m.flavor_offset + dot(m.gauge, w.translation)
    for j, other in enumerate(theory.matter):
        if other.gauge == target and (shift - other.flavor_offset).denominator == 1:
            return j
    raise InvalidTheory("arrangement is not stable under the group element")


def root_orbit_closed(theory: GaugeTheoryData) -> bool:
    """Every matter covector composed with a simple reflection is again a matter covector."""
    covs = [m.gauge for m in theory.matter]
    for r in theory.roots:
        s = AffineWeylElement.reflection(r).linear
        for g in covs:
            if vec_mat(g, s) not in covs:
                return False
    return True


def random_point(rng, n: int, den: int = 997, box: int = 3) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-box * den, box * den), den) for _ in range(n))


def random_generic_point(theory: GaugeTheoryData, rng, den: int = 997, box: int = 3):
    while True:
        eta = random_point(rng, theory.rank, den, box)
        if classify(theory, eta) == GENERIC:
            return eta


def random_weyl_element(theory: GaugeTheoryData, rng, radius: int = 2) -> AffineWeylElement:
    fin = theory.finite_part()
    lam = [rng.randint(-radius, radius) for _ in range(theory.rank)]
    return AffineWeylElement.translate(lam) * fin[rng.randrange(len(fin))]


def lattice_box(n: int, radius: int):
    return product(range(-radius, radius + 1), repeat=n)
