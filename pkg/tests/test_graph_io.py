from fractions import Fraction

import pytest

from anchorcross import gio
from anchorcross.fixtures import figure_1b, random_tiny_weighted_graph
from anchorcross.graph import (CnfFormula, PPInstance, WeightedMultigraph,
                               expand_weights, validate_pp)
from anchorcross.omega import OmegaPoly, W
from anchorcross.solver import crossing_number_exact


def test_no_loops():
    g = WeightedMultigraph()
    with pytest.raises(ValueError):
        g.add_edge("x", "x", 1)


def test_nonpositive_weight_rejected():
    g = WeightedMultigraph()
    with pytest.raises(ValueError):
        g.add_edge("x", "y", W(3, -1))


def test_expand_weights_single_edge():
    g = WeightedMultigraph()
    g.add_edge("a", "b", 3)
    out = expand_weights(g, 2)
    assert len(out.edges) == 3
    assert all(e.weight == OmegaPoly.const(1) for e in out.edges)
    assert set(out.vertices) == {"a", "b"}


def test_expand_weights_identity_on_unit():
    g = random_tiny_weighted_graph(4, max_weight=1)
    out = expand_weights(g, 5)
    assert len(out.edges) == len(g.edges)


def test_expand_weights_rejects_fractional():
    g = WeightedMultigraph()
    g.add_edge("a", "b", W(1, Fraction(1, 2)))
    with pytest.raises(ValueError) as err:
        expand_weights(g, 3)
    assert "a-b" in str(err.value)


def test_expand_preserves_crossing_number_on_k4_minus():
    g = WeightedMultigraph()
    for u, v in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]:
        g.add_edge(u, v, 2)
    r1 = crossing_number_exact(g)
    r2 = crossing_number_exact(expand_weights(g, 2))
    assert r1.value == r2.value == OmegaPoly.zero()


def test_graph_roundtrip():
    inst = figure_1b()
    text = gio.serialize_graph(inst)
    back = gio.parse_graph(text)
    assert isinstance(back, PPInstance)
    assert back.anchors == inst.anchors
    assert back.part1 == inst.part1 and back.part2 == inst.part2
    assert len(back.graph.edges) == len(inst.graph.edges)
    assert gio.serialize_graph(back) == text


def test_parse_empty_graph():
    g = gio.parse_graph('{"vertices": [], "edges": []}')
    assert isinstance(g, WeightedMultigraph)
    assert not g.vertices and not g.edges


def test_parse_error_reports_field():
    with pytest.raises(gio.ParseError):
        gio.parse_graph('{"vertices": [{"id": "a"}], "edges": [{"u": "a"}]}')


def test_fig1b_fixture_shape():
    inst = figure_1b()
    assert len(inst.anchors) == 4
    assert validate_pp(inst).valid


def test_dimacs_basic():
    phi = gio.parse_dimacs("p cnf 2 1\n1 -2 0\n")
    assert phi.num_vars == 2
    assert phi.clauses == ((1, -2),)


def test_dimacs_comments_and_multiline():
    phi = gio.parse_dimacs("c hi\np cnf 3 2\n1 2 0 -3\n1 0\n")
    assert phi.clauses == ((1, 2), (-3, 1))


def test_dimacs_errors():
    with pytest.raises(gio.ParseError):
        gio.parse_dimacs("1 2 0\n")
    with pytest.raises(gio.ParseError):
        gio.parse_dimacs("p cnf 1 1\n2 0\n")


def test_dimacs_roundtrip():
    phi = CnfFormula(3, ((1, -2), (3,)))
    assert gio.parse_dimacs(gio.serialize_dimacs(phi)) == phi


def test_validate_pp_cross_part_edge():
    g = WeightedMultigraph()
    g.add_edge("a", "b", 1)
    inst = PPInstance.build(g, ("a", "b"), {"a"}, {"b"})
    rep = validate_pp(inst)
    assert any("cross-part" in v for v in rep.violations)


def test_validate_pp_interleaved_part_not_anchored_planar():
    g = WeightedMultigraph()
    g.add_edge("u1", "u2", 1)
    g.add_edge("u3", "u4", 1)
    g.add_vertex("z")
    inst = PPInstance.build(g, ("u1", "u3", "u2", "u4"),
                            {"u1", "u2", "u3", "u4"}, {"z"})
    rep = validate_pp(inst)
    assert any("anchored planar" in v for v in rep.violations)
