"""Generator tokens and composable morphism words.

A word lists its tokens the way a composite is written: the rightmost token
acts first.  ``Wall(target, source)`` is r(target, source), a morphism from
``source`` to ``target``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .lattice import AffineWeylElement, Root, dot, fvec
from .poly import Poly


class ObjectMismatch(ValueError):
    pass


@dataclass(frozen=True)
class AffineRoot:
    """The affine root alpha - level*delta, vanishing where alpha(x) = level."""

    root: Root
    level: int = 0

    def value(self, eta: Sequence) -> Fraction:
        return dot(self.root.covector, fvec(eta)) - self.level

    def poly(self, mod: int | None = None) -> Poly:
        return Poly.linear(tuple(self.root.covector) + (-self.level,), mod)

    def reflection(self) -> AffineWeylElement:
        return AffineWeylElement.reflection(self.root, self.level)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(-self.root, -self.level)

    def transformed(self, w: AffineWeylElement) -> "AffineRoot":
        """The affine root vanishing on w(H) where H is this root's hyperplane."""
        from .lattice import int_inverse, mat_vec, vec_mat
        inv = int_inverse(w.linear)
        cov = vec_mat(self.root.covector, inv)
        cor = mat_vec(w.linear, self.root.coroot)
        level = Fraction(self.level) + dot(cov, w.translation)
        if level.denominator != 1:
            raise ValueError("image hyperplane is not an integral affine root wall")
        return AffineRoot(Root(tuple(int(c) for c in cov), tuple(int(c) for c in cor),
                               self.root.simple), int(level))


@dataclass(frozen=True)
class Weyl:
    w: AffineWeylElement


@dataclass(frozen=True)
class Wall:
    target: tuple
    source: tuple


@dataclass(frozen=True)
class Demazure:
    alpha: AffineRoot
    source: tuple
    target: tuple


@dataclass(frozen=True)
class PolyTok:
    f: Poly


Token = Union[Weyl, Wall, Demazure, PolyTok]


def token_target(tok: Token, source: tuple) -> tuple:
    if isinstance(tok, Weyl):
        return tok.w(source)
    if isinstance(tok, (Wall, Demazure)):
        if tuple(tok.source) != tuple(source):
            raise ObjectMismatch(f"token expects source {tok.source}, got {source}")
        return tuple(tok.target)
    return tuple(source)


@dataclass(frozen=True)
class MorphismWord:
    source: tuple
    target: tuple
    tokens: tuple = ()

    @staticmethod
    def build(source: Sequence, tokens: Sequence[Token]) -> "MorphismWord":
        obj = fvec(source)
        for tok in reversed(tokens):
            obj = fvec(token_target(tok, obj))
        return MorphismWord(fvec(source), obj, tuple(tokens))

    @staticmethod
    def identity(obj: Sequence) -> "MorphismWord":
        return MorphismWord(fvec(obj), fvec(obj), ())

    def objects(self) -> list[tuple]:
        """Objects visited, starting at the source."""
        obj = self.source
        out = [obj]
        for tok in reversed(self.tokens):
            obj = fvec(token_target(tok, obj))
            out.append(obj)
        return out

    def validate(self) -> None:
        if self.objects()[-1] != self.target:
            raise ObjectMismatch("word does not end at its target")

    def __mul__(self, other: "MorphismWord") -> "MorphismWord":
        return compose(self, other)

    def to_json(self) -> list:
        out = []
        for tok in self.tokens:
            if isinstance(tok, Weyl):
                out.append({"y": tok.w.to_json()})
            elif isinstance(tok, Wall):
                out.append({"r": [[str(x) for x in tok.target], [str(x) for x in tok.source]]})
            elif isinstance(tok, Demazure):
                out.append({"u": {"root": list(tok.alpha.root.covector), "level": tok.alpha.level,
                                  "source": [str(x) for x in tok.source],
                                  "target": [str(x) for x in tok.target]}})
            else:
                out.append({"poly": tok.f.to_str()})
        return out


def compose(g: MorphismWord, f: MorphismWord) -> MorphismWord:
    """g after f."""
    if tuple(g.source) != tuple(f.target):
        raise ObjectMismatch(f"cannot compose: {g.source} != {f.target}")
    return MorphismWord.build(f.source, tuple(g.tokens) + tuple(f.tokens))


@dataclass(frozen=True)
class MorphismSum:
    """Rational linear combination of parallel words."""

    terms: tuple  # of (Fraction, MorphismWord)

    @staticmethod
    def of(*pairs) -> "MorphismSum":
        return MorphismSum(tuple((Fraction(c), w) for c, w in pairs))

    @staticmethod
    def zero() -> "MorphismSum":
        return MorphismSum(())

    def __add__(self, other: "MorphismSum") -> "MorphismSum":
        return MorphismSum(self.terms + as_sum(other).terms)

    def __sub__(self, other: "MorphismSum") -> "MorphismSum":
        return self + MorphismSum(tuple((-c, w) for c, w in as_sum(other).terms))


def as_sum(x) -> MorphismSum:
    if isinstance(x, MorphismSum):
        return x
    return MorphismSum(((Fraction(1), x),))


def endpoints(x) -> tuple | None:
    s = as_sum(x)
    if not s.terms:
        return None
    ends = {(w.source, w.target) for _, w in s.terms}
    if len(ends) != 1:
        raise ObjectMismatch("summands are not parallel")
    return ends.pop()
