"""Walls in flavor space where the set of nonempty chambers jumps, the faces they cut
out, the sets Lambda_C over stars of faces, segments, colinearity and separation.

A wall family is  {psi : L.psi in v0 + s Z}  with L a primitive integer covector.
Families are found by projecting the joint (xi, psi) chamber systems onto psi and
keeping the genuine facets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import floor, gcd
from typing import Sequence

from . import polyhedra as ph
from .arrangement import enumerate_lambda_bar
from .lattice import GaugeTheoryData, dot, fvec


class DegenerateSegment(ValueError):
    pass


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    a, b = abs(Fraction(a)), abs(Fraction(b))
    if a == 0:
        return b
    if b == 0:
        return a
    den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    return Fraction(gcd(int(a * den), int(b * den)), den)


def _primitive(coeffs: Sequence[Fraction]) -> tuple[tuple[int, ...], Fraction]:
    """(L, c) with L primitive integral, first nonzero entry positive, coeffs = c L."""
    den = reduce(lambda x, y: x * y // gcd(x, y), (Fraction(c).denominator for c in coeffs), 1)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    lead = next(x for x in ints if x)
    sign = 1 if lead > 0 else -1
    L = tuple(sign * x // g for x in ints)
    return L, Fraction(sign * g, den)


@dataclass(frozen=True)
class WallFamily:
    covector: tuple      # L, primitive integral
    offset: Fraction     # v0 in [0, spacing)
    spacing: Fraction

    def value(self, psi: Sequence) -> Fraction:
        return dot(self.covector, psi)

    def position(self, psi: Sequence) -> tuple[str, int]:
        """("on", k) on the wall L.psi = v0 + k s, else ("in", k) strictly between k and k+1."""
        t = (self.value(psi) - self.offset) / self.spacing
        k = floor(t)
        return ("on", k) if t == k else ("in", k)

    def level(self, k: int) -> Fraction:
        return self.offset + k * self.spacing

    def translate_by(self, e: Sequence[int]) -> "WallFamily":
        v = (self.offset + dot(self.covector, e)) % self.spacing
        return WallFamily(self.covector, v, self.spacing)

    def to_json(self) -> dict:
        return {"covector": list(self.covector), "offset": str(self.offset), "spacing": str(self.spacing)}


def _joint_system(theory: GaugeTheoryData, a: Sequence[int]) -> list[ph.Constraint]:
    n, k = theory.rank, theory.flavor_rank
    out = []
    for i, m in enumerate(theory.matter):
        row = list(m.gauge) + list(theory.flavor_weight(i))
        c = m.flavor_offset + theory.delta
        out.append(ph.constraint(row, c - a[i]))
        out.append(ph.constraint([-x for x in row], a[i] + 1 - c))
    return out


def _genuine_facets(cons: list[ph.Constraint], nvars: int) -> list[ph.Constraint]:
    out = []
    for c in cons:
        if c.is_trivial() or not any(c.coeffs):
            continue
        eq = ph.Constraint(c.coeffs, c.const, ph.EQ)
        n0 = c.normalized()
        rest = [d for d in cons if not (d.normalized().coeffs == n0.coeffs and d.normalized().const == n0.const)]
        try:
            ph.witness([eq] + rest, nvars)
        except ph.Infeasible:
            continue
        out.append(c)
    return out


def circuit_hyperplanes(theory: GaugeTheoryData, box: int = 2) -> list[WallFamily]:
    """Wall families where some chamber C_a degenerates, from chambers with |a_i| <= box."""
    n, k = theory.rank, theory.flavor_rank
    if k < 1:
        raise ValueError("flavor rank must be positive")
    keep = list(range(n, n + k))
    levels: dict = {}
    for a in product(range(-box, box + 1), repeat=theory.d):
        try:
            proj = [ph.Constraint(c.coeffs[n:], c.const, c.kind)
                    for c in ph.project(_joint_system(theory, a), keep)]
        except ph.Infeasible:
            continue
        if not ph.feasible(proj, k):
            continue
        for c in _genuine_facets(proj, k):
            L, scale = _primitive(c.coeffs)
            # c.coeffs . psi + c.const = 0  <=>  L . psi = -c.const / scale
            levels.setdefault(L, set()).add(-c.const / scale)
    out = []
    for L in sorted(levels):
        vals = sorted(levels[L])
        step = Fraction(0)
        for v in vals[1:]:
            step = _frac_gcd(step, v - vals[0])
        if step == 0:
            step = Fraction(1)
        out.append(WallFamily(L, vals[0] % step, step))
    return out


# -- faces -----------------------------------------------------------------------------


def lambda_real(theory: GaugeTheoryData, psi: Sequence) -> frozenset:
    """Classes of nonempty chambers at flavor psi."""
    return frozenset(enumerate_lambda_bar(theory.at_flavor(psi)).reps)


@dataclass
class FlavorFace:
    key: tuple                       # one ("on"|"in", k) per family
    equalities: tuple                # ((family index, k), ...)
    dimension: int
    witness: tuple
    lambda_c: frozenset | None = None

    def to_json(self) -> dict:
        return {"key": [list(x) for x in self.key], "equalities": [list(e) for e in self.equalities],
                "dimension": self.dimension, "witness": [str(x) for x in self.witness],
                "lambda_c": sorted(list(x) for x in self.lambda_c) if self.lambda_c is not None else None}


def _rank(rows: list[tuple]) -> int:
    rows = [list(map(Fraction, r)) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def _face_constraints(fams: list[WallFamily], key: tuple) -> list[ph.Constraint]:
    out = []
    for fam, (kind, k) in zip(fams, key):
        if kind == "on":
            out.append(ph.constraint(fam.covector, -fam.level(k), ph.EQ))
        else:
            out.append(ph.constraint(fam.covector, -fam.level(k)))
            out.append(ph.constraint([-x for x in fam.covector], fam.level(k + 1)))
    return out


class FaceLattice:
    """Lazy face structure of the circuit arrangement of one theory."""

    def __init__(self, theory: GaugeTheoryData, families: list[WallFamily] | None = None):
        self.theory = theory
        self.families = circuit_hyperplanes(theory) if families is None else families
        self._lambda: dict = {}

    def key_of(self, psi: Sequence) -> tuple:
        return tuple(f.position(psi) for f in self.families)

    def _make(self, key: tuple, witness: tuple) -> FlavorFace:
        eqs = tuple((j, k) for j, (kind, k) in enumerate(key) if kind == "on")
        rank = _rank([self.families[j].covector for j, _ in eqs])
        return FlavorFace(key, eqs, self.theory.flavor_rank - rank, witness)

    def face_of(self, psi: Sequence, with_lambda: bool = True) -> FlavorFace:
        psi = fvec(psi)
        face = self._make(self.key_of(psi), psi)
        if with_lambda:
            face.lambda_c = self.lambda_c(face)
        return face

    def face_from_key(self, key: tuple) -> FlavorFace | None:
        try:
            w = ph.witness(_face_constraints(self.families, key), self.theory.flavor_rank)
        except ph.Infeasible:
            return None
        return self._make(key, w)

    def lambda_at(self, face: FlavorFace) -> frozenset:
        if face.key not in self._lambda:
            self._lambda[face.key] = lambda_real(self.theory, face.witness)
        return self._lambda[face.key]

    def star(self, face: FlavorFace) -> list[FlavorFace]:
        """Faces whose closure contains ``face`` (including itself)."""
        choices = []
        for kind, k in face.key:
            choices.append([(kind, k)] if kind == "in" else [("on", k), ("in", k - 1), ("in", k)])
        out = []
        for key in product(*choices):
            f = face if key == face.key else self.face_from_key(key)
            if f is not None:
                out.append(f)
        return out

    def lambda_c(self, face: FlavorFace) -> frozenset:
        out: set = set()
        for f in self.star(face):
            out |= self.lambda_at(f)
        return frozenset(out)

    def is_below(self, lower: FlavorFace, upper: FlavorFace) -> bool:
        """lower <= upper: lower lies in the closure of upper."""
        return any(f.key == upper.key for f in self.star(lower))

    # -- segments ------------------------------------------------------------------

    def crossing_parameters(self, psi1, psi2) -> list[Fraction]:
        psi1, psi2 = fvec(psi1), fvec(psi2)
        ts = set()
        for fam in self.families:
            v1, v2 = fam.value(psi1), fam.value(psi2)
            if v1 == v2:
                continue
            lo, hi = min(v1, v2), max(v1, v2)
            for k in range(floor((lo - fam.offset) / fam.spacing), floor((hi - fam.offset) / fam.spacing) + 1):
                lv = fam.level(k)
                if lo <= lv <= hi:
                    ts.add((lv - v1) / (v2 - v1))
        return sorted(ts)

    def segment_face_sequence(self, psi1, psi2, perturb: bool = False) -> list[FlavorFace]:
        psi1, psi2 = fvec(psi1), fvec(psi2)
        for fam in self.families:
            v1, v2 = fam.value(psi1), fam.value(psi2)
            if v1 == v2 and fam.position(psi1)[0] == "on":
                if not perturb:
                    raise DegenerateSegment("segment lies inside a wall")
                shift = fvec(Fraction(1, 997 + 13 * j) for j in range(len(psi1)))
                return self.segment_face_sequence(tuple(a + b for a, b in zip(psi1, shift)),
                                                  tuple(a + b for a, b in zip(psi2, shift)), perturb)
        ts = [t for t in self.crossing_parameters(psi1, psi2)]
        pts = [Fraction(0)]
        for t in ts:
            if t > pts[-1]:
                pts.append((pts[-1] + t) / 2)
            pts.append(t)
        if pts[-1] < 1:
            pts.append((pts[-1] + 1) / 2)
        pts.append(Fraction(1))
        seq: list[FlavorFace] = []
        for t in pts:
            q = tuple(a + t * (b - a) for a, b in zip(psi1, psi2))
            f = self._make(self.key_of(q), q)
            if not seq or seq[-1].key != f.key:
                seq.append(f)
        return seq

    # -- colinearity and separation -----------------------------------------------

    def colinear(self, c1: FlavorFace, c2: FlavorFace, c3: FlavorFace) -> bool:
        """Is there a line meeting c1, c2, c3 in this order?

        With p2 = (1-t) p1 + t p3 and u = (1-t) p1, v = t p3 the conditions are
        linear in (u, v, t)."""
        k = self.theory.flavor_rank
        nv = 2 * k + 1
        cons = [ph.constraint([0] * (2 * k) + [1], 0), ph.constraint([0] * (2 * k) + [-1], 1)]
        for c in _face_constraints(self.families, c1.key):
            # a.p1 + b (>,=) 0 with p1 = u / (1 - t):  a.u + b - b t
            cons.append(ph.Constraint(tuple(c.coeffs) + (0,) * k + (-c.const,), c.const, c.kind))
        for c in _face_constraints(self.families, c3.key):
            cons.append(ph.Constraint((0,) * k + tuple(c.coeffs) + (c.const,), Fraction(0), c.kind))
        for c in _face_constraints(self.families, c2.key):
            cons.append(ph.Constraint(tuple(c.coeffs) * 2 + (0,), c.const, c.kind))
        return ph.feasible(cons, nv)

    def side(self, face: FlavorFace, wall: tuple) -> int:
        j, lvl = wall
        kind, k = face.key[j]
        if kind == "on":
            return (k > lvl) - (k < lvl)
        return 1 if k >= lvl else -1

    def walls_between(self, c1: FlavorFace, c2: FlavorFace) -> list[tuple]:
        """Walls (family, level) on which the two faces do not lie on the same closed side."""
        out = []
        for j, ((k1, a), (k2, b)) in enumerate(zip(c1.key, c2.key)):
            lo, hi = min(a, b) - 1, max(a, b) + 2
            for lvl in range(lo, hi):
                if self.side(c1, (j, lvl)) != self.side(c2, (j, lvl)):
                    out.append((j, lvl))
        return out

    def separation(self, c1: FlavorFace, c2: FlavorFace) -> dict:
        """Signed half-steps: wall -> side(c2) - side(c1)."""
        return {w: self.side(c2, w) - self.side(c1, w) for w in self.walls_between(c1, c2)}

    def separating(self, c1: FlavorFace, c2: FlavorFace) -> set:
        """Walls having the two faces strictly on opposite sides."""
        return {w for w in self.walls_between(c1, c2) if self.side(c1, w) * self.side(c2, w) < 0}

    def export_box(self, box: Sequence[tuple], samples: int = 3) -> str:
        """JSON of the faces met by a grid of segments inside the box."""
        k = self.theory.flavor_rank
        faces: dict = {}
        grid = [[lo + (hi - lo) * Fraction(2 * i + 1, 2 * samples) for i in range(samples)] for lo, hi in box]
        pts = list(product(*grid))
        for p1, p2 in zip(pts, pts[1:]):
            for f in self.segment_face_sequence(p1, p2, perturb=True):
                faces.setdefault(f.key, f)
        out = []
        for key in sorted(faces):
            f = faces[key]
            f.lambda_c = self.lambda_c(f)
            out.append(f.to_json())
        return json.dumps({"families": [f.to_json() for f in self.families], "faces": out},
                          indent=2, sort_keys=True) + "\n"
