import pytest

from anchorcross.fixtures import random_toy_pp_for_pipeline
from anchorcross.graph import PPInstance, WeightedMultigraph
from anchorcross.omega import OmegaPoly
from anchorcross.planarity import is_planar
from anchorcross.solver import (anchored_crossing_number_exact,
                                crossing_number_exact, verify_drawing)
from anchorcross.transform import (add_multicycle, almost_planar_instance,
                                   build_wall, choose_and_subdivide, default_m)


def test_wall_shapes_exhaustive():
    for h in range(1, 7):
        for l in range(4, 13, 2):
            w = build_wall(h, l)
            g = w.graph
            assert len(g.vertices) == h * l
            rungs = sum(1 for i in range(1, h) for j in range(1, l + 1)
                        if (i + j) % 2 == 1)
            assert len(g.edges) == h * l + rungs
            ok, _ = is_planar(g)
            assert ok
            degs = {v: g.degree(v) for v in g.vertices}
            assert max(degs.values()) <= 3
            if h >= 2:
                # degree-2 vertices sit on the outer cycles only, alternating
                low = {v for v, d in degs.items() if d == 2}
                assert low == {("%s_%d_%d" % ("w", i, j))
                               for i in (1, h) for j in range(1, l + 1)
                               if (i + j) % 2 == 0}
            assert len(w.outer_ports) == l // 2


def test_wall_rejects_odd_length():
    with pytest.raises(ValueError):
        build_wall(2, 5)


def two_triangle_instance():
    g = WeightedMultigraph()
    for u, v in [("a1", "a2"), ("a2", "a3"), ("a3", "a1")]:
        g.add_edge(u, v, 1)
    for u, v in [("b1", "b2"), ("b2", "b3"), ("b3", "b1")]:
        g.add_edge(u, v, 1)
    return PPInstance.build(g, ("a1", "b1", "a2", "b2", "a3", "b3"),
                            {"a1", "a2", "a3"}, {"b1", "b2", "b3"})


def test_multicycle_count_and_planarity():
    inst = two_triangle_instance()
    g0 = add_multicycle(inst, m=default_m(inst))
    rings = [e for e in g0.edges if e.label == "ring"]
    assert len(rings) == 6
    ok, _ = is_planar(g0)
    assert ok


def test_multicycle_rejects_small_m_without_scaled():
    inst = two_triangle_instance()
    with pytest.raises(ValueError):
        add_multicycle(inst, m=3)
    add_multicycle(inst, m=3, scaled=True)


def test_subdivision_preserves_anchored_value():
    for seed in (2, 3, 9):
        inst = random_toy_pp_for_pipeline(seed)
        before = anchored_crossing_number_exact(inst.base).value
        v1, v2, inst2, split = choose_and_subdivide(inst)
        assert v1 in inst2.part1 and v2 in inst2.part2
        after = anchored_crossing_number_exact(inst2.base).value
        assert before == after, "seed %d" % seed


def test_pipeline_on_trivial_pp():
    # both parts single edges between two anchors, non-interleaved
    g = WeightedMultigraph()
    g.add_edge("a1", "a2", 1)
    g.add_edge("b1", "b2", 1)
    inst = PPInstance.build(g, ("a1", "a2", "b1", "b2"),
                            {"a1", "a2"}, {"b1", "b2"})
    api = almost_planar_instance(inst, m=3, h=2, scaled=True)
    res = crossing_number_exact(api.with_extra_edge(),
                                initial_witness=api.witness)
    assert res.value == OmegaPoly.zero()


def test_pipeline_matches_anchored_value():
    for seed in (3, 5, 11):
        inst = random_toy_pp_for_pipeline(seed)
        res = anchored_crossing_number_exact(inst.base)
        cra = int(res.value.eval(2))
        api = almost_planar_instance(inst, m=2 * cra + 1, h=2 * cra + 2,
                                     scaled=True)
        ok, _ = is_planar(api.graph)
        assert ok
        assert api.witness is None or verify_drawing(api.with_extra_edge(),
                                                     api.witness)
        res2 = crossing_number_exact(api.with_extra_edge(),
                                     initial_witness=api.witness,
                                     time_cap=240)
        assert res2.status == "optimal"
        assert res2.value == res.value, "seed %d" % seed


def test_pipeline_degree_bound():
    inst = random_toy_pp_for_pipeline(11)
    res = anchored_crossing_number_exact(inst.base)
    cra = int(res.value.eval(2))
    api = almost_planar_instance(inst, m=2 * cra + 1, h=2 * cra + 2,
                                 scaled=True)
    over = [v for v in api.graph.vertices if api.graph.degree(v) > 3]
    protected = set(api.source.part_anchors(api.source.part1))
    assert len(over) <= 3
    assert set(over) <= protected | {"sub1", "sub2"} - {"sub1", "sub2"}
    # the extra edge's endpoints stay degree 2 until it is added
    assert api.graph.degree(api.u) == 2 and api.graph.degree(api.v) == 2


def test_pipeline_rejects_violated_scaled_inequalities():
    inst = random_toy_pp_for_pipeline(11)  # cr_A = 2 here
    with pytest.raises(ValueError):
        almost_planar_instance(inst, m=3, h=6, scaled=True)
    with pytest.raises(ValueError):
        almost_planar_instance(inst, m=5, h=4, scaled=True)
