import json

import pytest

from coulomb_chambers import theories
from coulomb_chambers.category import equal_oracle
from coulomb_chambers.quiver import (build_quiver, emit_relations, export_dot, export_json,
                                     graded_dimensions, realize_relation)


@pytest.mark.parametrize("n", range(2, 7))
def test_cyclic_shape(n):
    q = build_quiver(theories.cyclic(n))
    assert len(q.nodes) == n and len(q.arrows) == 2 * n and not q.loops
    for a in q.arrows:
        assert q.arrows[a.reverse].reverse == a.index
        assert q.arrows[a.reverse].source == a.target
    # the underlying graph is a cycle through all nodes
    adj = {nd.index: sorted(a.target for a in q.arrows if a.source == nd.index) for nd in q.nodes}
    seen, cur, prev = [0], 0, None
    for _ in range(n - 1):
        nxt = next(t for t in adj[cur] if t != prev and (t not in seen or n == 2))
        prev, cur = cur, nxt
        seen.append(cur)
    assert sorted(set(seen)) == list(range(n))
    assert cur in adj[0]


def test_gl2_shape():
    q = build_quiver(theories.gl2_doubled())
    assert len(q.nodes) == 3
    mult = {}
    for a in q.arrows:
        key = frozenset((a.source, a.target))
        mult[key] = mult.get(key, 0) + 1
    assert sorted(mult.values()) == [4, 4]  # two arrows each way on two edges
    loops = sorted(lp.node for lp in q.loops)
    assert len(loops) == 2
    trivial = [nd.index for nd in q.nodes if len(nd.stabilizer) == 1]
    assert trivial and set(trivial).isdisjoint(loops)
    middle = trivial[0]
    assert all(middle in k for k in mult)


@pytest.mark.parametrize("theory", [lambda: theories.cyclic(3), theories.gl2_doubled])
def test_emitted_relations_hold(theory):
    th = theory()
    q = build_quiver(th)
    rels = emit_relations(q, 4)
    assert rels and all(r.weight <= 4 for r in rels)
    schemas = {r.schema for r in rels}
    assert {"dot-passing", "round-trip"} <= schemas
    for rel in rels:
        lhs, rhs = realize_relation(q, rel)
        assert equal_oracle(th, lhs, rhs, 2, 2).equal, rel.to_json()


def test_degree_bound_truncates():
    q = build_quiver(theories.gl2_doubled())
    small = emit_relations(q, 2)
    big = emit_relations(q, 4)
    assert len(small) < len(big)
    assert all(r.weight <= 2 for r in small)


@pytest.mark.parametrize("n", [2, 3])
def test_graded_dimensions_cyclic(n):
    # the preprojective algebra of the cyclic quiver has dimension n (d + 1) in path length d
    q = build_quiver(theories.cyclic(n))
    rels = emit_relations(q, 4)
    assert graded_dimensions(q, rels, 4) == [n * (d + 1) for d in range(5)]


def test_exports_are_deterministic():
    outs = []
    for _ in range(2):
        q = build_quiver(theories.gl2_doubled())
        emit_relations(q)
        outs.append((export_dot(q), export_json(q)))
    assert outs[0] == outs[1]
    dot, js = outs[0]
    assert dot.startswith("digraph quiver {") and dot.count("->") == 10
    data = json.loads(js)
    assert data["complete"] is False and data["degree_bound"] == 4
    assert len(data["nodes"]) == 3 and len(data["arrows"]) == 8 and len(data["loops"]) == 2
