"""The flat input format read by the command line tool.

One directive per line, ``#`` starts a comment.  Scalars are integers or
fractions like ``3/5``; ``|`` separates fields and ``;`` separates matrix rows.

    rank 2
    delta 1/2
    flavor_rank 1
    matter 1 0 | 3/5 | 1          # gauge covector | flavor offset | flavor weight
    root 1 -1 | 1 -1 | simple     # covector | coroot | simple or nonsimple
    weyl 0 1 ; 1 0                # a Weyl generator, rows
    length_zero 0 1 ; 1 0 | 1 0   # linear part | translation
    prime 5                       # or inf
    upsilon 1 0
    flavor 1/3                    # evaluate the flavor at this point
    chamber 0 0 -1 -1
    primes 5 7 11 13 17
    box -2 2 ; -2 2               # one lo hi pair per flavor coordinate
    corrupt weyl1                 # negative control for the relation suite
    suite relations

``matter``, ``root``, ``weyl`` and ``length_zero`` may repeat; every other key
appears at most once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import validate_length_zero
from .lattice import AffineWeylElement, GaugeTheoryData, InvalidTheory, MatterLine, Root


class ParseError(ValueError):
    pass


REPEATED = {"matter", "root", "weyl", "length_zero"}
SINGLE = {"rank", "delta", "flavor_rank", "prime", "upsilon", "flavor", "chamber",
          "primes", "box", "corrupt", "suite"}


@dataclass
class InputSpec:
    theory: GaugeTheoryData
    prime: int | None = None
    upsilon: tuple = ()
    chamber: tuple | None = None
    primes: tuple = ()
    box: tuple | None = None
    corrupt: str | None = None
    suite: str | None = None
    extra: dict = field(default_factory=dict)


def _frac(tok: str, where: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: not a rational number: {tok!r}") from None


def _int(tok: str, where: str) -> int:
    v = _frac(tok, where)
    if v.denominator != 1:
        raise ParseError(f"{where}: expected an integer, got {tok!r}")
    return int(v)


def _ints(text: str, where: str) -> tuple[int, ...]:
    return tuple(_int(t, where) for t in text.split())


def _fracs(text: str, where: str) -> tuple[Fraction, ...]:
    return tuple(_frac(t, where) for t in text.split())


def _matrix(text: str, where: str) -> tuple:
    rows = tuple(_ints(r, where) for r in text.split(";"))
    if any(len(r) != len(rows) for r in rows):
        raise ParseError(f"{where}: matrix is not square")
    return rows


def _fields(text: str, lo: int, hi: int, where: str) -> list[str]:
    parts = [p.strip() for p in text.split("|")]
    if not lo <= len(parts) <= hi:
        raise ParseError(f"{where}: expected {lo} to {hi} fields separated by '|'")
    return parts


def parse_text(text: str) -> InputSpec:
    single: dict = {}
    matter, roots, weyl, lzero = [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"line {lineno} ({key})"
        if key in SINGLE:
            if key in single:
                raise ParseError(f"{where}: duplicate key")
            single[key] = (rest, where)
        elif key == "matter":
            f = _fields(rest, 2, 3, where)
            flav = _ints(f[2], where) if len(f) == 3 else ()
            matter.append(MatterLine(_ints(f[0], where), _frac(f[1], where), flav))
        elif key == "root":
            f = _fields(rest, 2, 3, where)
            simple = True
            if len(f) == 3:
                if f[2] not in ("simple", "nonsimple"):
                    raise ParseError(f"{where}: third field must be simple or nonsimple")
                simple = f[2] == "simple"
            roots.append(Root(_ints(f[0], where), _ints(f[1], where), simple))
        elif key == "weyl":
            weyl.append(_matrix(rest, where))
        elif key == "length_zero":
            f = _fields(rest, 2, 2, where)
            lzero.append(AffineWeylElement(_matrix(f[0], where), _fracs(f[1], where)))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")

    if "rank" not in single:
        raise ParseError("missing key: rank")
    rank = _int(*single["rank"])
    if rank < 0:
        raise ParseError("rank must be nonnegative")

    def get(key, conv, default=None):
        return conv(*single[key]) if key in single else default

    delta = get("delta", _frac, Fraction(1, 2))
    frank = get("flavor_rank", _int, max((len(m.flavor) for m in matter), default=0))
    try:
        theory = GaugeTheoryData(rank, tuple(matter), tuple(roots), tuple(weyl), tuple(lzero),
                                 delta, frank)
        validate_length_zero(theory)
        if "flavor" in single:
            psi = _fracs(*single["flavor"])
            if len(psi) != frank:
                raise ParseError("flavor vector has the wrong length")
            theory = theory.at_flavor(psi)
    except InvalidTheory as e:
        raise ParseError(f"invalid theory: {e}") from None

    prime = None
    if "prime" in single:
        text_p, where = single["prime"]
        prime = None if text_p in ("inf", "infinity") else _int(text_p, where)
        if prime is not None and prime < 2:
            raise ParseError(f"{where}: prime must be at least 2")
    spec = InputSpec(theory, prime)
    spec.upsilon = get("upsilon", _ints, ())
    if spec.upsilon and len(spec.upsilon) != rank:
        raise ParseError("upsilon has the wrong length")
    spec.chamber = get("chamber", _ints)
    if spec.chamber is not None and len(spec.chamber) != theory.d:
        raise ParseError("chamber needs one integer per matter line")
    spec.primes = get("primes", _ints, ())
    if "box" in single:
        text_b, where = single["box"]
        pairs = [_fracs(r, where) for r in text_b.split(";")]
        if any(len(pr) != 2 or pr[0] >= pr[1] for pr in pairs):
            raise ParseError(f"{where}: each box row needs lo < hi")
        spec.box = tuple(tuple(pr) for pr in pairs)
    spec.corrupt = single["corrupt"][0] if "corrupt" in single else None
    spec.suite = single["suite"][0] if "suite" in single else None
    return spec


def parse_file(path: str) -> InputSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    return parse_text(text)
