"""The quiver of the noncommutative resolution: nodes from chamber classes, arrows from
matter-wall adjacencies, loops from root walls, and relations instantiated up to a
degree bound.

Every letter of the quiver is also realized as a morphism word between fixed generic
objects (one per node), so any emitted relation can be handed to ``equal_oracle``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .arrangement import (DEFAULT_BUDGET, act_chamber, canonical, enumerate_lambda_bar,
                          facets, generic_witness, root_walls, stabilizer)
from .category import Operator, normal_form
from .lattice import AffineWeylElement, GaugeTheoryData, dot
from .poly import Poly
from .polyrep import act_weyl_poly, demazure, nvars, phi_poly
from .words import AffineRoot, Demazure, MorphismSum, MorphismWord, PolyTok, Wall, Weyl

DEFAULT_DEG_BOUND = 4

# weights used for the degree bound; loops carry -2 in the category grading, so the
# bound uses their absolute value
WEIGHT = {"arrow": 1, "loop": 2, "dot": 2, "stab": 0}


@dataclass
class Node:
    index: int
    rep: tuple                   # canonical floor vector
    obj: tuple                   # generic point used as the object
    stabilizer: list             # AffineWeylElements fixing the chamber

    def descriptor(self) -> str:
        return f"S_h x| Stab(order {len(self.stabilizer)})"


@dataclass
class Arrow:
    index: int
    source: int
    target: int
    line: int                    # matter line of the wall crossed
    level: int
    neighbor: tuple              # the actual adjacent chamber
    element: AffineWeylElement   # w with w.neighbor = rep of target
    reverse: int = -1
    twist: int = -1              # stabilizer index at the target aligning the reverse arrow


@dataclass
class Loop:
    index: int
    node: int
    root: int
    level: int


@dataclass
class Quiver:
    theory: GaugeTheoryData
    nodes: list
    arrows: list
    loops: list
    relations: list = field(default_factory=list)
    deg_bound: int | None = None

    def arrows_between(self, i: int, j: int) -> list:
        return [a for a in self.arrows if a.source == i and a.target == j]


# -- construction -------------------------------------------------------------------


def _orbit_key(theory, stab, chamber):
    return min(tuple(act_chamber(theory, g, chamber)) for g in stab)


def _hyperplane_key(alpha: AffineRoot):
    cov = tuple(alpha.root.covector)
    lead = next(c for c in cov if c)
    s = 1 if lead > 0 else -1
    return (tuple(s * c for c in cov), s * alpha.level)


def build_quiver(theory: GaugeTheoryData, pctx=None, budget: int = DEFAULT_BUDGET) -> Quiver:
    ls = enumerate_lambda_bar(theory, pctx, budget)
    nodes = [Node(i, r, generic_witness(theory, r), stabilizer(theory, r)) for i, r in enumerate(ls.reps)]
    index = {n.rep: n.index for n in nodes}
    arrows: list[Arrow] = []
    for node in nodes:
        seen = set()
        for fc in sorted(facets(theory, node.rep), key=lambda f: (f.line, f.level)):
            key = _orbit_key(theory, node.stabilizer, fc.neighbor)
            if key in seen:
                continue
            seen.add(key)
            rep, w = canonical(theory, fc.neighbor)
            if rep not in index:
                continue  # neighbour filtered out by the lattice-point condition
            arrows.append(Arrow(len(arrows), node.index, index[rep], fc.line, fc.level,
                                tuple(fc.neighbor), w))
    for a in arrows:
        back = act_chamber(theory, a.element, nodes[a.source].rep)
        tgt = nodes[a.target]
        key = _orbit_key(theory, tgt.stabilizer, back)
        for b in arrows:
            if b.source == a.target and b.target == a.source and \
                    _orbit_key(theory, tgt.stabilizer, b.neighbor) == key:
                a.reverse = b.index
                a.twist = next(k for k, g in enumerate(tgt.stabilizer)
                               if tuple(act_chamber(theory, g, back)) == b.neighbor)
                break
    loops: list[Loop] = []
    for node in nodes:
        seen = set()
        for ri, k in root_walls(theory, node.rep):
            alpha = AffineRoot(theory.roots[ri], k)
            key = min(_hyperplane_key(alpha.transformed(g)) for g in node.stabilizer)
            if key in seen:
                continue
            seen.add(key)
            loops.append(Loop(len(loops), node.index, ri, k))
    return Quiver(theory, nodes, arrows, loops)


# -- letters and their realizations ---------------------------------------------------


@dataclass(frozen=True)
class Letter:
    kind: str      # arrow, loop, dot, stab
    index: int     # arrow/loop index, coordinate for dots, stabilizer index
    node: int      # source node
    target: int

    def name(self) -> str:
        if self.kind == "arrow":
            return f"a{self.index}"
        if self.kind == "loop":
            return f"l{self.index}"
        if self.kind == "dot":
            return f"x{self.index}@{self.node}"
        return f"s{self.index}@{self.node}"


def arrow_letter(q: Quiver, a: Arrow) -> Letter:
    return Letter("arrow", a.index, a.source, a.target)


def loop_letter(q: Quiver, lp: Loop) -> Letter:
    return Letter("loop", lp.index, lp.node, lp.node)


def dot_letter(node: int, t: int) -> Letter:
    return Letter("dot", t, node, node)


def stab_letter(node: int, k: int) -> Letter:
    return Letter("stab", k, node, node)


def letter_weight(letter: Letter) -> int:
    return WEIGHT[letter.kind]


def _loop_parts(q: Quiver, lp: Loop):
    node = q.nodes[lp.node]
    alpha = AffineRoot(q.theory.roots[lp.root], lp.level)
    s = alpha.reflection()
    return node.obj, alpha, s


def realize(q: Quiver, letter: Letter) -> MorphismWord:
    """The morphism word of a letter, from the object of its source node."""
    th = q.theory
    if letter.kind == "dot":
        eta = q.nodes[letter.node].obj
        return MorphismWord.build(eta, [PolyTok(Poly.var(letter.index, nvars(th)))])
    if letter.kind == "stab":
        eta = q.nodes[letter.node].obj
        g = q.nodes[letter.node].stabilizer[letter.index]
        return MorphismWord.build(eta, [Wall(eta, g(eta)), Weyl(g)])
    if letter.kind == "loop":
        eta, alpha, s = _loop_parts(q, q.loops[letter.index])
        return MorphismWord.build(eta, [Weyl(s), Demazure(alpha, eta, s(eta))])
    a = q.arrows[letter.index]
    eta, goal = q.nodes[a.source].obj, q.nodes[a.target].obj
    beta = generic_witness(th, a.neighbor)
    moved = a.element(beta)
    return MorphismWord.build(eta, [Wall(goal, moved), Weyl(a.element), Wall(beta, eta)])


# -- path-form relations --------------------------------------------------------------


Path = tuple  # letters, rightmost acts first; () needs an explicit node


@dataclass
class PathTerm:
    coeff: Fraction
    hpow: int
    letters: Path


@dataclass
class Relation:
    schema: str
    source: int
    target: int
    lhs: list          # PathTerms
    rhs: list
    weight: int

    def terms(self) -> list:
        return self.lhs + [PathTerm(-t.coeff, t.hpow, t.letters) for t in self.rhs]

    def to_json(self) -> dict:
        def side(ts):
            return [{"coeff": str(t.coeff), "h": t.hpow, "path": [l.name() for l in t.letters]}
                    for t in ts]
        return {"schema": self.schema, "source": self.source, "target": self.target,
                "lhs": side(self.lhs), "rhs": side(self.rhs), "weight": self.weight}


def _linear_terms(f: Poly, node: int) -> list[PathTerm]:
    """A linear form in x and h as path terms at a node."""
    n = f.nvars - 1
    coeffs = [Fraction(0)] * (n + 1)
    c0 = Fraction(0)
    for e, c in f.terms.items():
        if sum(e) == 0:
            c0 = Fraction(c)
        elif sum(e) == 1:
            coeffs[e.index(1)] = Fraction(c)
        else:
            raise ValueError("not an affine linear form")
    out = [PathTerm(coeffs[t], 0, (dot_letter(node, t),)) for t in range(n) if coeffs[t]]
    if coeffs[n]:
        out.append(PathTerm(coeffs[n], 1, ()))
    if c0:
        out.append(PathTerm(c0, 0, ()))
    return out


def _term_of_operator(q: Quiver, op: Operator, node: int) -> list[PathTerm] | None:
    """Express a node endomorphism operator sum_w c_w w as path terms, if it is
    linear in x and h on the identity and stabilizer parts."""
    out = []
    for w, c in sorted(op.terms.items(), key=lambda kv: repr(kv[0].to_json())):
        f = c.as_poly()
        if f is None or f.degree() > 1:
            return None
        if w.is_identity():
            out += _linear_terms(f, node)
            continue
        stab = q.nodes[node].stabilizer
        k = next((i for i, g in enumerate(stab) if g == w), None)
        if k is None:
            return None
        out += [PathTerm(t.coeff, t.hpow, t.letters + (stab_letter(node, k),))
                for t in _linear_terms(f, node)]
    return out


def emit_relations(q: Quiver, deg_bound: int = DEFAULT_DEG_BOUND) -> list[Relation]:
    """Instances of every relation schema whose weight is at most ``deg_bound``."""
    th = q.theory
    n = th.rank
    rels: list[Relation] = []

    def add(schema, src, tgt, lhs, rhs):
        w = max([sum(letter_weight(l) for l in t.letters) for t in lhs + rhs] + [0])
        if w <= deg_bound:
            rels.append(Relation(schema, src, tgt, lhs, rhs, w))

    for node in q.nodes:
        for s, t in product(range(n), repeat=2):
            if s < t:
                xs, xt = dot_letter(node.index, s), dot_letter(node.index, t)
                add("dots-commute", node.index, node.index,
                    [PathTerm(Fraction(1), 0, (xs, xt))], [PathTerm(Fraction(1), 0, (xt, xs))])
    for a in q.arrows:
        al = arrow_letter(q, a)
        winv = a.element.inverse()
        for t in range(n):
            # mu y_w = y_w (w^-1 . mu)
            moved = act_weyl_poly(winv, Poly.var(t, nvars(th)))
            rhs = [PathTerm(c.coeff, c.hpow, (al,) + c.letters) for c in _linear_terms(moved, a.source)]
            add("dot-passing", a.source, a.target,
                [PathTerm(Fraction(1), 0, (dot_letter(a.target, t), al))], rhs)
        if a.reverse >= 0:
            b = q.arrows[a.reverse]
            g = q.nodes[a.target].stabilizer[a.twist]
            path = (arrow_letter(q, b), al) if g.is_identity() else \
                (arrow_letter(q, b), stab_letter(a.target, a.twist), al)
            terms = _term_of_operator(q, normal_form(th, compose_letters(q, path)), a.source)
            if terms is None:
                raise AssertionError("round trip is not a linear node endomorphism")
            add("round-trip", a.source, a.source, [PathTerm(Fraction(1), 0, path)], terms)
    for lp in q.loops:
        ll = loop_letter(q, lp)
        add("loop-square", lp.node, lp.node, [PathTerm(Fraction(1), 0, (ll, ll))], [])
        eta, alpha, s = _loop_parts(q, lp)
        k = next(i for i, g in enumerate(q.nodes[lp.node].stabilizer) if g == s)
        for t in range(n):
            # l mu = mu l + y_s d_alpha(mu)
            x = Poly.var(t, nvars(th))
            rhs = [PathTerm(Fraction(1), 0, (dot_letter(lp.node, t), ll))]
            d = demazure(alpha, x)
            c0 = Fraction(d.evaluate([0] * d.nvars)) if not d.is_zero() else Fraction(0)
            if c0:
                rhs.append(PathTerm(c0, 0, (stab_letter(lp.node, k),)))
            add("loop-dot", lp.node, lp.node, [PathTerm(Fraction(1), 0, (ll, dot_letter(lp.node, t)))], rhs)
    q.relations = rels
    q.deg_bound = deg_bound
    return rels


def compose_letters(q: Quiver, letters: Sequence[Letter], node: int | None = None) -> MorphismWord:
    """Realize a path (rightmost letter first) as one word."""
    if not letters:
        return MorphismWord.identity(q.nodes[node].obj)
    tokens: list = []
    for l in reversed(letters):
        tokens = list(realize(q, l).tokens) + tokens
    return MorphismWord.build(q.nodes[letters[-1].node].obj, tokens)


def realize_terms(q: Quiver, terms: Sequence[PathTerm], node: int) -> MorphismSum:
    th = q.theory
    h = Poly.var(th.rank, nvars(th))
    out = MorphismSum.zero()
    for t in terms:
        src = t.letters[-1].node if t.letters else node
        word = compose_letters(q, t.letters, src)
        if t.hpow:
            word = MorphismWord.build(word.source, [PolyTok(h ** t.hpow)] + list(word.tokens))
        out = out + MorphismSum.of((t.coeff, word))
    return out


def realize_relation(q: Quiver, rel: Relation) -> tuple[MorphismSum, MorphismSum]:
    return realize_terms(q, rel.lhs, rel.source), realize_terms(q, rel.rhs, rel.source)


# -- graded dimensions of the truncated quotient ----------------------------------------


def _paths(q: Quiver, weight: int, letters: list[Letter]) -> list[tuple]:
    """All composable paths (node, letters) of exactly the given weight."""
    out = []

    # build from the right: the rightmost letter starts at some node
    def extend(path, w):
        if w == weight:
            out.append(path)
            return
        end = path[0].target
        for l in letters:
            lw = letter_weight(l)
            if l.node == end and w + lw <= weight:
                extend((l,) + path, w + lw)

    if weight == 0:
        return [((), nd.index) for nd in q.nodes]
    for l in letters:
        lw = letter_weight(l)
        if 0 < lw <= weight:
            extend((l,), lw)
    return [(p, p[-1].node) for p in out]


def _rank(rows: list[dict]) -> int:
    """Rank of sparse rational row vectors."""
    pivots: dict = {}
    r = 0
    for row in rows:
        row = {k: Fraction(v) for k, v in row.items() if v}
        while row:
            k = min(row)
            if k not in pivots:
                pivots[k] = row
                r += 1
                break
            piv = pivots[k]
            c = row[k] / piv[k]
            for kk, vv in piv.items():
                nv = row.get(kk, 0) - c * vv
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
    return r


def graded_dimensions(q: Quiver, relations: Sequence[Relation], max_weight: int) -> list[int]:
    """dim of (path algebra / ideal of the relations) in each weight, at h = 0.

    Only positive-weight letters are used (arrows, loops and dots); stabilizer
    letters must not occur in the relations.
    """
    n = q.theory.rank
    letters = [arrow_letter(q, a) for a in q.arrows] + [loop_letter(q, l) for l in q.loops]
    letters += [dot_letter(nd.index, t) for nd in q.nodes for t in range(n)]
    by_weight = {w: _paths(q, w, letters) for w in range(max_weight + 1)}
    homog = []
    for rel in relations:
        ts = [t for t in rel.terms() if t.hpow == 0]
        if any(l.kind == "stab" for t in ts for l in t.letters):
            raise ValueError("stabilizer letters are not supported here")
        if ts:
            homog.append((rel, ts))
    dims = []
    for w in range(max_weight + 1):
        basis = {p: i for i, p in enumerate(by_weight[w])}
        rows = []
        for rel, ts in homog:
            rw = sum(letter_weight(l) for l in ts[0].letters)
            if rw > w:
                continue
            for lw in range(w - rw + 1):
                rws = w - rw - lw
                lefts = by_weight[lw]
                rights = by_weight[rws]
                for (lp, lnode), (rp, rnode) in product(lefts, rights):
                    # lp after rel after rp
                    if rp and rp[0].target != rel.source:
                        continue
                    if not rp and rnode != rel.source:
                        continue
                    if lp and lp[-1].node != rel.target:
                        continue
                    if not lp and lnode != rel.target:
                        continue
                    row: dict = {}
                    for t in ts:
                        path = lp + t.letters + rp
                        idx = basis.get((path, rnode if not path else path[-1].node))
                        if idx is None:
                            raise AssertionError("relation term is not a path")
                        row[idx] = row.get(idx, 0) + t.coeff
                    rows.append(row)
        dims.append(len(basis) - _rank(rows))
    return dims


# -- exports -----------------------------------------------------------------------


def _rep_str(rep) -> str:
    return "(" + ",".join(str(x) for x in rep) + ")"


def export_dot(q: Quiver) -> str:
    lines = ["digraph quiver {"]
    for nd in q.nodes:
        lines.append(f'  n{nd.index} [label="{nd.index} {_rep_str(nd.rep)}\\n|Stab|={len(nd.stabilizer)}"];')
    for a in q.arrows:
        lines.append(f'  n{a.source} -> n{a.target} [label="a{a.index}: phi{a.line}={a.level}"];')
    for lp in q.loops:
        lines.append(f'  n{lp.node} -> n{lp.node} [style=dashed, label="l{lp.index}: alpha{lp.root}={lp.level}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(q: Quiver) -> dict:
    return {
        "nodes": [{"index": nd.index, "rep": list(nd.rep), "object": [str(x) for x in nd.obj],
                   "stabilizer": [g.to_json() for g in nd.stabilizer], "ring": nd.descriptor()}
                  for nd in q.nodes],
        "arrows": [{"index": a.index, "source": a.source, "target": a.target, "line": a.line,
                    "level": a.level, "reverse": a.reverse} for a in q.arrows],
        "loops": [{"index": lp.index, "node": lp.node, "root": lp.root, "level": lp.level}
                  for lp in q.loops],
        "relations": [r.to_json() for r in q.relations],
        "degree_bound": q.deg_bound,
        "complete": False,
    }


def export_json(q: Quiver) -> str:
    return json.dumps(to_json_dict(q), indent=2, sort_keys=True) + "\n"
