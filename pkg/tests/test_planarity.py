import itertools

import pytest

from anchorcross.fixtures import figure_1a, figure_1b
from anchorcross.frame import FrameParams, build_frame
from anchorcross.graph import AnchoredInstance, WeightedMultigraph
from anchorcross.planarity import (augment_anchored, faces, is_anchored_planar,
                                   is_planar, strip_augmentation)

from oracles import exhaustive_rotation_planar


def complete(n):
    g = WeightedMultigraph()
    vs = ["v%d" % i for i in range(n)]
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            g.add_edge(u, v, 1)
    return g


def test_k4_planar_with_verified_witness():
    ok, rs = is_planar(complete(4))
    assert ok
    fl = faces(rs, complete(4))
    assert len(fl) == 4  # Euler: 4 - 6 + f = 2


def test_k5_not_planar():
    ok, rs = is_planar(complete(5))
    assert not ok and rs is None


def test_frame_red_part_is_planar():
    f = build_frame(FrameParams(2))
    red = f.instance.part_instance(1)
    ok, _ = is_planar(red.graph)
    assert ok


def test_faces_triangle():
    g = WeightedMultigraph()
    g.add_edge("a", "b", 1)
    g.add_edge("b", "c", 1)
    g.add_edge("c", "a", 1)
    ok, rs = is_planar(g)
    assert ok and len(faces(rs, g)) == 2


def test_faces_tree():
    g = WeightedMultigraph()
    g.add_edge("a", "b", 1)
    g.add_edge("b", "c", 1)
    g.add_edge("b", "d", 1)
    ok, rs = is_planar(g)
    assert ok and len(faces(rs, g)) == 1


def test_parallel_edges_planarity():
    g = WeightedMultigraph()
    g.add_edge("a", "b", 1)
    g.add_edge("a", "b", 1)
    g.add_edge("a", "b", 1)
    ok, rs = is_planar(g)
    assert ok
    assert len(faces(rs, g)) == 3


def test_augment_three_anchors_counts():
    g = WeightedMultigraph()
    for v in ("x", "y", "z"):
        g.add_vertex(v)
    a = AnchoredInstance(g, ("x", "y", "z"))
    aug = augment_anchored(a)
    assert len(aug.vertices) == 4  # one hub
    assert len(aug.edges) == 6  # 3 cycle + 3 spokes
    assert all(e.forbidden for e in aug.edges)


def test_augment_one_anchor_degenerate():
    g = WeightedMultigraph()
    g.add_vertex("x")
    aug = augment_anchored(AnchoredInstance(g, ("x",)))
    assert len(aug.vertices) == 2 and len(aug.edges) == 1


def test_augment_strip_roundtrip():
    inst = figure_1a()
    aug = augment_anchored(inst)
    back = strip_augmentation(aug)
    assert set(back.vertices) == set(inst.graph.vertices)
    assert len(back.edges) == len(inst.graph.edges)


def test_fig1a_augmented_nonplanar():
    ok, _ = is_planar(augment_anchored(figure_1a()))
    assert not ok


def test_anchored_planar_path():
    g = WeightedMultigraph()
    g.add_edge("a", "b", 1)
    g.add_edge("b", "c", 1)
    assert is_anchored_planar(AnchoredInstance(g, ("a", "c")))


def test_anchored_interleaved_edges_not_planar():
    g = WeightedMultigraph()
    g.add_edge("u1", "u2", 1)
    g.add_edge("u3", "u4", 1)
    assert not is_anchored_planar(AnchoredInstance(g, ("u1", "u3", "u2", "u4")))


def test_fig1b_parts_anchored_planar():
    inst = figure_1b()
    assert is_anchored_planar(inst.part_instance(1))
    assert is_anchored_planar(inst.part_instance(2))


def test_nonplanar_verdicts_match_exhaustive_rotations():
    # every rotation system of K5 and K33 fails the Euler test
    assert not exhaustive_rotation_planar(complete(5))
    g = WeightedMultigraph()
    for i in range(3):
        for j in range(3):
            g.add_edge("a%d" % i, "b%d" % j, 1)
    assert not exhaustive_rotation_planar(g)
    # and a planar one passes
    assert exhaustive_rotation_planar(complete(4))


def test_anchored_equals_solver_verdict_on_small_instances():
    from anchorcross.solver import anchored_crossing_number_exact
    from anchorcross.omega import OmegaPoly
    import random

    rng = random.Random(5)
    for _ in range(10):
        g = WeightedMultigraph()
        n = rng.randrange(3, 6)
        vs = ["v%d" % i for i in range(n)]
        for v in vs:
            g.add_vertex(v)
        pairs = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]]
        rng.shuffle(pairs)
        for u, v in pairs[:rng.randrange(2, min(8, len(pairs)) + 1)]:
            g.add_edge(u, v, 1)
        anchors = tuple(rng.sample(vs, rng.randrange(1, n + 1)))
        inst = AnchoredInstance(g, anchors)
        res = anchored_crossing_number_exact(inst)
        assert is_anchored_planar(inst) == (res.value == OmegaPoly.zero())
