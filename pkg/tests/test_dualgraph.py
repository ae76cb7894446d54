from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellfib.dualgraph import (
    EDP_CHAIN,
    IntersectionGraph,
    ade_decomposition,
    ade_graph,
    ade_type,
    almost_minimal_graph,
    canonical_type_check,
    component_count,
    edp_chain_graph,
    format_igr,
    fundamental_cycle,
    fundamental_genus,
    is_negative_definite,
    is_negative_semidefinite,
    isomorphic,
    kodaira_template,
    parse_igr,
    parse_kodaira,
    recognize,
    smith_group,
)
from ellfib.errors import ParseError, RejectionError

from .oracles.e8 import CARTAN

KODAIRA = ["I1", "I2", "I3", "I7", "II", "III", "IV", "I0*", "I1*", "I4*", "IV*", "III*", "II*"]
ADE = ["A1", "A2", "A5", "D4", "D5", "D9", "E6", "E7", "E8"]


@pytest.mark.parametrize("label", KODAIRA)
def test_fiber_class_is_in_the_kernel(label):
    tpl = kodaira_template(label)
    G = tpl.graph
    M = G.matrix()
    assert G.size == component_count(label)
    assert all(sum(M[i][j] * tpl.mult[j] for j in range(G.size)) == 0 for i in range(G.size))
    assert is_negative_semidefinite(G)
    assert tpl.mult[0] == 1


@given(st.sampled_from([k for k in KODAIRA if k not in ("I1", "II")]), st.data())
def test_fiber_minus_a_simple_component_is_definite(label, data):
    tpl = kodaira_template(label)
    v = data.draw(st.sampled_from(tpl.simple_components()))
    rest = [i for i in range(tpl.m) if i != v]
    assert is_negative_definite(tpl.graph.subgraph(rest))


@pytest.mark.parametrize("label", ADE)
def test_ade_graphs(label):
    G = ade_graph(label)
    assert is_negative_definite(G)
    assert ade_type(G) == label
    assert fundamental_genus(G) == 0


def test_e8_cartan_matches_oracle():
    M = ade_graph("E8").matrix()
    assert sorted(sorted(row) for row in M) == sorted(sorted(-x for x in row) for row in CARTAN)


def test_smith_groups_of_a_chains():
    for n in range(1, 8):
        d = smith_group(ade_graph(f"A{n}"))
        assert d[-1] == n + 1 and all(x == 1 for x in d[:-1])


def test_recognize_fibers_and_edp_chain():
    for label in ["I5", "I2*", "IV*", "III*", "II*"]:
        assert recognize(kodaira_template(label).graph) == label
    assert recognize(edp_chain_graph()) == EDP_CHAIN


def test_ade_decomposition():
    G = kodaira_template("I12").graph
    assert ade_decomposition(G, range(1, 12, 2)) == ["A1"] * 6
    G = kodaira_template("IV*").graph
    assert ade_decomposition(G, (3, 4, 5, 6)) == ["D4"]
    assert ade_decomposition(G, (0, 1, 2, 6)) == ["A1"] * 4
    assert ade_decomposition(kodaira_template("I2*").graph, [0, 2, 3, 4, 5]) == ["A5"]


def test_almost_minimal_graphs():
    assert almost_minimal_graph("II").self_int == (-1,)
    assert almost_minimal_graph("II").kinds == ("cusp",)
    assert almost_minimal_graph("III").self_int == (-3, -2)
    assert almost_minimal_graph("IV").self_int == (-3, -2, -2)


def test_cuspidal_vertex_has_genus_one():
    G = IntersectionGraph((-1,), (), ("cusp",))
    assert fundamental_cycle(G) == (1,)
    assert fundamental_genus(G) == 1


def test_fundamental_cycle_rejects_indefinite_and_disconnected():
    with pytest.raises(RejectionError):
        fundamental_cycle(kodaira_template("I3").graph)
    with pytest.raises(RejectionError):
        fundamental_cycle(IntersectionGraph((-2, -2)))


def _cycle(n):
    return IntersectionGraph((-2,) * n, tuple((i, (i + 1) % n, 1) for i in range(n)))


def test_canonical_type_examples():
    res = canonical_type_check(_cycle(7), [1] * 7)
    assert res and res.label == "I7"
    star = kodaira_template("I0*")
    res = canonical_type_check(star.graph, star.mult)
    assert res.ok and res.label == "I0*" and not res.allowed and not res
    one = kodaira_template("I1*")
    assert canonical_type_check(one.graph, one.mult)
    assert canonical_type_check(kodaira_template("IV*").graph, kodaira_template("IV*").mult)


def test_canonical_type_rejections():
    star = kodaira_template("I1*")
    bad = list(star.mult)
    bad[2] = 1
    assert not canonical_type_check(star.graph, bad).ok
    assert not canonical_type_check(ade_graph("D4"), [1, 2, 1, 1]).ok
    assert not canonical_type_check(_cycle(4), [1, 0, 1, 0]).ok
    assert not canonical_type_check(_cycle(4), [2, 2, 2, 2]).ok


def test_canonical_type_is_invariant_under_relabeling():
    G = _cycle(5)
    perm = [3, 0, 4, 1, 2]
    H = IntersectionGraph(G.self_int, tuple((perm[i], perm[j], m) for i, j, m in G.edges))
    assert isomorphic(G, H)
    assert canonical_type_check(H, [1] * 5).label == "I5"


def test_igr_roundtrip():
    G = kodaira_template("III").graph
    H, mult = parse_igr(format_igr(G, (1, 1)))
    assert H == G and mult == (1, 1)


def test_igr_errors():
    with pytest.raises(ParseError):
        parse_igr("vertices = 2\nself = -2")
    with pytest.raises(ParseError):
        parse_igr("vertices = 2\nself = -2 -2\nedges = 0~1")
    with pytest.raises(ParseError):
        parse_kodaira("I*3")
