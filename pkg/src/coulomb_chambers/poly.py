"""Sparse polynomials in x_0..x_{n-1}, h and fractions with linear denominators.

Coefficients are Fractions (characteristic 0) or ints reduced mod p.  The last
variable is always the equivariant parameter h.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence


class Poly:
    __slots__ = ("nvars", "mod", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None, mod: int | None = None):
        self.nvars = nvars
        self.mod = mod
        clean = {}
        if terms:
            for e, c in terms.items():
                c = self._coerce(c)
                if c:
                    clean[e] = c
        self.terms = clean

    # -- construction -----------------------------------------------------

    def _coerce(self, c):
        if self.mod is None:
            return Fraction(c)
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, self.mod) % self.mod
        return int(c) % self.mod

    @classmethod
    def const(cls, c, nvars: int, mod: int | None = None) -> "Poly":
        return cls(nvars, {(0,) * nvars: c}, mod)

    @classmethod
    def zero(cls, nvars: int, mod: int | None = None) -> "Poly":
        return cls(nvars, {}, mod)

    @classmethod
    def one(cls, nvars: int, mod: int | None = None) -> "Poly":
        return cls.const(1, nvars, mod)

    @classmethod
    def var(cls, j: int, nvars: int, mod: int | None = None) -> "Poly":
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): 1}, mod)

    @classmethod
    def linear(cls, coeffs: Sequence, mod: int | None = None) -> "Poly":
        """sum coeffs[j] * var_j; len(coeffs) is the number of variables."""
        n = len(coeffs)
        terms = {}
        for j, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = c
        return cls(n, terms, mod)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1, mod: int | None = None) -> "Poly":
        return cls(len(exps), {tuple(exps): c}, mod)

    def _new(self, terms) -> "Poly":
        p = Poly.__new__(Poly)
        p.nvars, p.mod, p.terms = self.nvars, self.mod, terms
        return p

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.nvars, self.mod)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        out = dict(self.terms)
        m = self.mod
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if m is not None:
                v %= m
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        m = self.mod
        return self._new({e: (-c % m if m else -c) for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = self._coerce(other)
            if not c:
                return self._new({})
            m = self.mod
            return self._new({e: (v * c % m if m else v * c) for e, v in self.terms.items()})
        out: dict = {}
        m = self.mod
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if m is not None:
            out = {e: c % m for e, c in out.items()}
        return self._new({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.one(self.nvars, self.mod)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = self._lift(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def linear_coeffs(self) -> tuple:
        """Coefficients of a homogeneous linear polynomial, one per variable."""
        out = [0] * self.nvars
        for e, c in self.terms.items():
            if sum(e) != 1:
                raise ValueError("not a homogeneous linear form")
            out[e.index(1)] = c
        return tuple(out)

    # -- substitution -----------------------------------------------------

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace variable j by images[j] everywhere."""
        powers: list[dict[int, Poly]] = [dict() for _ in range(self.nvars)]

        def power(j: int, k: int) -> Poly:
            cache = powers[j]
            if k not in cache:
                cache[k] = images[j] ** k
            return cache[k]

        target = images[0].nvars if images else self.nvars
        out = Poly.zero(target, self.mod)
        for e, c in self.terms.items():
            term = Poly.const(c, target, self.mod)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            out = out + term
        return out

    def specialize(self, j: int, value) -> "Poly":
        """Set variable j to a constant, keeping the variable slot."""
        out: dict = {}
        value = self._coerce(value)
        m = self.mod
        for e, c in self.terms.items():
            k = e[j]
            f = c * value ** k if k else c
            e2 = e[:j] + (0,) + e[j + 1:]
            out[e2] = out.get(e2, 0) + f
        if m is not None:
            out = {e: c % m for e, c in out.items()}
        return self._new({e: c for e, c in out.items() if c})

    def reduce_mod(self, p: int) -> "Poly":
        return Poly(self.nvars, self.terms, p)

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t = t * v ** k
            total = total + t
        if self.mod is not None:
            total %= self.mod
        return total

    # -- exact division by a linear form ----------------------------------

    def div_linear(self, lin: "Poly") -> "Poly | None":
        """Quotient by a linear polynomial if exact, else None."""
        coeffs = lin.linear_coeffs()
        v = max(j for j, c in enumerate(coeffs) if c)
        cv = coeffs[v]
        m = self.mod
        inv = pow(cv, -1, m) if m else 1 / Fraction(cv)
        rem = dict(self.terms)
        quot: dict = {}
        while True:
            lead = None
            for e in rem:
                if e[v] and (lead is None or e[v] > lead[v] or (e[v] == lead[v] and e > lead)):
                    lead = e
            if lead is None:
                break
            c = rem[lead] * inv
            if m:
                c %= m
            qe = lead[:v] + (lead[v] - 1,) + lead[v + 1:]
            quot[qe] = quot.get(qe, 0) + c
            for j, a in enumerate(coeffs):
                if not a:
                    continue
                e = list(qe)
                e[j] += 1
                e = tuple(e)
                val = rem.get(e, 0) - c * a
                if m:
                    val %= m
                if val:
                    rem[e] = val
                else:
                    rem.pop(e, None)
        if rem:
            return None
        return self._new({e: c for e, c in quot.items() if c})

    # -- printing ---------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{j}" for j in range(self.nvars - 1)] + ["h"]
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self.to_str()})"


def linear_key(lin: Poly) -> tuple[tuple[int, ...], Fraction]:
    """Primitive integer direction with positive leading entry, and the scale back."""
    coeffs = [Fraction(c) for c in lin.linear_coeffs()]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g == 0:
        raise ZeroDivisionError("zero linear form")
    lead = next(c for c in ints if c)
    sign = 1 if lead > 0 else -1
    key = tuple(sign * c // g for c in ints)
    scale = Fraction(sign * g, den)  # lin = scale * key
    return key, scale


def poly_from_key(key: Sequence[int], mod: int | None = None) -> Poly:
    return Poly.linear(key, mod)


class DivisionByZeroFunction(ZeroDivisionError):
    pass


class RatFunc:
    """numerator / prod(L_k^e_k) with L_k primitive linear forms (characteristic 0)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Mapping[tuple, int] | None = None):
        self.num = num
        self.den = {k: e for k, e in (den or {}).items() if e}
        if num.is_zero():
            self.den = {}

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, {})

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _den_poly(self, keys: Mapping[tuple, int]) -> Poly:
        out = Poly.one(self.nvars)
        for k, e in keys.items():
            out = out * poly_from_key(k) ** e
        return out

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc.from_poly(self.num._lift(other))
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = max(den.get(k, 0), e)
        a = self.num * self._den_poly({k: den[k] - self.den.get(k, 0) for k in den})
        b = other.num * other._den_poly({k: den[k] - other.den.get(k, 0) for k in den})
        return RatFunc(a + b, den).reduced()

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc.from_poly(self.num._lift(other))
        return self + (-other)

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, Poly):
            return RatFunc(self.num * other, self.den).reduced()
        if not isinstance(other, RatFunc):
            return RatFunc(self.num * other, self.den)
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = den.get(k, 0) + e
        return RatFunc(self.num * other.num, den).reduced()

    __rmul__ = __mul__

    def divide_linear(self, lin: Poly) -> "RatFunc":
        if lin.is_zero():
            raise DivisionByZeroFunction("division by the zero linear form")
        key, scale = linear_key(lin)
        den = dict(self.den)
        den[key] = den.get(key, 0) + 1
        return RatFunc(self.num * (1 / scale), den).reduced()

    def reduced(self) -> "RatFunc":
        num, den = self.num, dict(self.den)
        for k in list(den):
            lin = poly_from_key(k)
            while den[k]:
                q = num.div_linear(lin)
                if q is None:
                    break
                num, den[k] = q, den[k] - 1
        return RatFunc(num, den)

    def twist(self, images: Sequence[Poly]) -> "RatFunc":
        """Apply the linear substitution variable_j -> images[j]."""
        num = self.num.substitute(images)
        den: dict = {}
        for k, e in self.den.items():
            img = poly_from_key(k).substitute(images)
            key, scale = linear_key(img)
            den[key] = den.get(key, 0) + e
            num = num * (1 / scale) ** e
        return RatFunc(num, den)

    def as_poly(self) -> Poly | None:
        return self.num if not self.den else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            other = RatFunc.from_poly(self.num._lift(other))
        return (self - other).is_zero()

    def __hash__(self):
        r = self.reduced()
        return hash((frozenset(r.num.terms.items()), frozenset(r.den.items())))

    def __repr__(self) -> str:
        if not self.den:
            return f"RatFunc({self.num.to_str()})"
        den = "*".join(f"({poly_from_key(k).to_str()})^{e}" for k, e in sorted(self.den.items()))
        return f"RatFunc(({self.num.to_str()}) / {den})"


def expand_product(factors: Iterable[Poly], nvars: int, mod: int | None = None) -> Poly:
    out = Poly.one(nvars, mod)
    for f in factors:
        out = out * f
    return out
