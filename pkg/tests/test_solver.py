import random

import pytest

from anchorcross.fixtures import (figure_1a, figure_1b,
                                  random_pp_with_two_anchor_part,
                                  random_tiny_weighted_graph)
from anchorcross.graph import AnchoredInstance, WeightedMultigraph, expand_weights
from anchorcross.omega import OmegaPoly, W
from anchorcross.planarity import augment_anchored
from anchorcross.solver import (Planarization, anchored_crossing_number_exact,
                                crossing_number_exact, decide_crossing_le,
                                derived_graph, drawing_weight, min_cut,
                                pp_special_case, verify_drawing)

from oracles import brute_force_crossing_number


def complete(n):
    g = WeightedMultigraph()
    vs = ["v%d" % i for i in range(n)]
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            g.add_edge(u, v, 1)
    return g


def small_random(seed, max_edges=8):
    rng = random.Random(seed)
    n = rng.randrange(4, 7)
    vs = ["v%d" % i for i in range(n)]
    g = WeightedMultigraph()
    for v in vs:
        g.add_vertex(v)
    pairs = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]]
    rng.shuffle(pairs)
    for u, v in pairs[:rng.randrange(n - 1, max_edges + 1)]:
        g.add_edge(u, v, 1)
    return g


# -- drawing weight and verification ------------------------------------------------


def test_drawing_weight_empty():
    g = complete(4)
    assert drawing_weight(g, Planarization({})) == OmegaPoly.zero()


def test_drawing_weight_one_crossing():
    g = WeightedMultigraph()
    e1 = g.add_edge("a", "b", W(41) - W(40))
    e2 = g.add_edge("c", "d", W(49))
    p = Planarization({e1: (e2,), e2: (e1,)})
    assert drawing_weight(g, p) == W(90) - W(89)


def test_verify_rejects_double_crossing():
    g = WeightedMultigraph()
    e1 = g.add_edge("a", "b", 1)
    e2 = g.add_edge("c", "d", 1)
    p = Planarization({e1: (e2, e2), e2: (e1, e1)})
    assert not verify_drawing(g, p)


def test_verify_rejects_adjacent_crossing():
    g = WeightedMultigraph()
    e1 = g.add_edge("a", "b", 1)
    e2 = g.add_edge("a", "c", 1)
    p = Planarization({e1: (e2,), e2: (e1,)})
    assert not verify_drawing(g, p)


def test_verify_rejects_forbidden_crossing():
    g = WeightedMultigraph()
    e1 = g.add_edge("a", "b", 1, forbidden=True)
    e2 = g.add_edge("c", "d", 1)
    p = Planarization({e1: (e2,), e2: (e1,)})
    assert not verify_drawing(g, p)


def test_verify_rejects_asymmetric_records():
    g = WeightedMultigraph()
    e1 = g.add_edge("a", "b", 1)
    e2 = g.add_edge("c", "d", 1)
    assert not verify_drawing(g, Planarization({e1: (e2,)}))


def test_verify_rejects_zero_crossing_k5():
    g = complete(5)
    assert not verify_drawing(g, Planarization({}))


def test_solver_witness_self_consistency():
    g = complete(5)
    res = crossing_number_exact(g)
    assert res.status == "optimal"
    assert res.value == OmegaPoly.const(1)
    assert verify_drawing(g, res.witness)
    assert drawing_weight(g, res.witness) == res.value


# -- exact solver ---------------------------------------------------------------------


def test_planar_graph_is_zero():
    res = crossing_number_exact(complete(4))
    assert res.value == OmegaPoly.zero()


def test_k6_is_three():
    res = crossing_number_exact(complete(6))
    assert res.value == OmegaPoly.const(3)


def test_decide():
    g = complete(5)
    assert not decide_crossing_le(g, 0)
    assert decide_crossing_le(g, 1)
    assert decide_crossing_le(complete(4), 0)


def test_budget_verdict():
    res = crossing_number_exact(complete(6), budget=OmegaPoly.const(2))
    assert res.status == "above_budget"


def test_resource_cap_reports_unknown():
    res = crossing_number_exact(complete(6), node_cap=0)
    assert res.status == "unknown"
    assert res.value is None


def test_forced_weighted_crossing_product():
    # two weighted edges forced to cross via interleaved anchors
    g = WeightedMultigraph()
    g.add_edge("u1", "u2", 2)
    g.add_edge("u3", "u4", 3)
    inst = AnchoredInstance(g, ("u1", "u3", "u2", "u4"))
    res = anchored_crossing_number_exact(inst)
    assert res.value == OmegaPoly.const(6)


def test_matches_enumeration_oracle_on_randoms():
    for seed in range(12):
        g = small_random(seed)
        res = crossing_number_exact(g)
        expected = brute_force_crossing_number(g)
        assert res.value == OmegaPoly.const(expected), "seed %d" % seed


def test_monotone_under_edge_deletion():
    for seed in (1, 7, 13):
        g = small_random(seed)
        base = crossing_number_exact(g).value
        h = WeightedMultigraph()
        for v in g.vertices.values():
            h.add_vertex(v.id)
        for e in g.edges[:-1]:
            h.add_edge(e.u, e.v, e.weight)
        less = crossing_number_exact(h).value
        assert less.cmp_large_omega(base) <= 0


def test_weighted_equals_expanded():
    for seed in range(8):
        g = random_tiny_weighted_graph(seed, max_edges=8, max_weight=3)
        r1 = crossing_number_exact(g)
        r2 = crossing_number_exact(expand_weights(g, 2))
        assert r1.value == r2.value, "seed %d" % seed


def test_anchored_figure_values():
    assert anchored_crossing_number_exact(figure_1a()).value == OmegaPoly.const(2)
    assert anchored_crossing_number_exact(figure_1b().base).value == OmegaPoly.const(4)


def test_anchored_planar_instance_is_zero():
    g = WeightedMultigraph()
    g.add_edge("a", "b", 1)
    res = anchored_crossing_number_exact(AnchoredInstance(g, ("a", "b")))
    assert res.value == OmegaPoly.zero()


# -- min cut ---------------------------------------------------------------------------


def test_min_cut_two_paths():
    g = WeightedMultigraph()
    g.add_edge("s", "x", 1)
    g.add_edge("x", "t", 1)
    g.add_edge("s", "y", 1)
    g.add_edge("y", "t", 1)
    assert min_cut(g, "s", "t") == OmegaPoly.const(2)


def test_min_cut_single_heavy_edge():
    g = WeightedMultigraph()
    g.add_edge("s", "t", W(5))
    assert min_cut(g, "s", "t") == W(5)


def test_min_cut_disconnected():
    g = WeightedMultigraph()
    g.add_edge("s", "x", 1)
    g.add_vertex("t")
    assert min_cut(g, "s", "t") == OmegaPoly.zero()


def test_min_cut_fig1b_part1():
    inst = figure_1b()
    part = inst.part_instance(1)
    assert min_cut(part.graph, "a1", "a2") == OmegaPoly.const(2)


def test_min_cut_weighted_bottleneck():
    g = WeightedMultigraph()
    g.add_edge("s", "m", W(2))
    g.add_edge("m", "t", W(1) + 1)
    g.add_edge("s", "t", 3)
    assert min_cut(g, "s", "t") == W(1) + 4


# -- the closed-form special case --------------------------------------------------------


def test_pp_special_one_anchor_part_is_zero():
    g = WeightedMultigraph()
    g.add_edge("a", "x", 1)
    g.add_edge("b", "c", 1)
    inst = __import__("anchorcross.graph", fromlist=["PPInstance"]).PPInstance.build(
        g, ("a", "b", "c"), {"a", "x"}, {"b", "c"})
    assert pp_special_case(inst) == OmegaPoly.zero()


def test_pp_special_fig1b():
    assert pp_special_case(figure_1b()) == OmegaPoly.const(4)


def test_pp_special_declines_three_anchor_sides():
    from anchorcross.frame import FrameParams, build_frame
    f = build_frame(FrameParams(2))
    assert pp_special_case(f.instance) is None


def test_pp_special_matches_solver_on_randoms():
    for seed in range(15):
        inst = random_pp_with_two_anchor_part(seed, max_edges_per_part=8)
        formula = pp_special_case(inst)
        res = anchored_crossing_number_exact(inst.base, time_cap=60)
        assert res.status == "optimal", "seed %d" % seed
        assert res.value == formula, "seed %d" % seed
