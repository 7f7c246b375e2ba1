"""Small reference instances and seeded random generators.

figure_1a / figure_1b are the two introductory anchored examples: a planar
graph whose anchored crossing number is 2, and a disjoint pair of anchored
planar graphs whose anchored crossing number is 4 (= 2 x 2 by the min-cut
product rule).
"""

from __future__ import annotations

import random
from typing import Optional

from .graph import AnchoredInstance, PPInstance, WeightedMultigraph
from .planarity import is_anchored_planar


def figure_1a() -> AnchoredInstance:
    """Planar graph, four anchors, anchored crossing number 2."""
    g = WeightedMultigraph()
    for a in ("a1", "a2", "a3", "a4"):
        g.add_vertex(a)
    for v in ("v1", "v2", "v3", "v4", "v5", "v6"):
        g.add_vertex(v)
    for u, v in [("a1", "v1"), ("v1", "v2"), ("v2", "a1"),
                 ("a2", "v1"), ("v2", "a2"),
                 ("a3", "v3"), ("v3", "v4"), ("v4", "a3"),
                 ("a4", "v3"), ("v4", "a4"),
                 ("v1", "v3"), ("v3", "v5"), ("v5", "v6"),
                 ("v6", "v2"), ("v2", "v4")]:
        g.add_edge(u, v, 1)
    # anchors counterclockwise around the disk boundary
    return AnchoredInstance(g, ("a1", "a3", "a4", "a2"))


def figure_1b() -> PPInstance:
    """Union of two anchored planar graphs with interleaved anchor pairs;
    anchored crossing number 4."""
    g = WeightedMultigraph()
    part1 = ["a1", "a2"] + ["v%d" % i for i in range(1, 9)]
    part2 = ["a3", "a4"] + ["w%d" % i for i in range(1, 7)]
    for v in part1 + part2:
        g.add_vertex(v)
    for u, v in [("a1", "v1"), ("v1", "v3"), ("v4", "v2"), ("v2", "a1"),
                 ("a1", "v5"), ("v5", "v3"), ("v3", "v4"), ("v4", "v5"),
                 ("a2", "v7"), ("v7", "v8"), ("v8", "a2"), ("a2", "v6"),
                 ("v3", "v7"), ("v4", "v8")]:
        g.add_edge(u, v, 1)
    for u, v in [("a3", "w1"), ("w1", "w3"), ("w3", "w2"), ("w2", "a3"),
                 ("a3", "w3"),
                 ("a4", "w4"), ("w4", "w5"), ("w5", "a4"), ("a4", "w6"),
                 ("w6", "w4"), ("w6", "w5"),
                 ("w3", "w4"), ("w2", "w5")]:
        g.add_edge(u, v, 1)
    return PPInstance.build(g, ("a1", "a3", "a2", "a4"), part1, part2)


def _random_anchored_planar_part(rng: random.Random, prefix: str,
                                 n_anchors: int, max_edges: int,
                                 max_weight: int) -> tuple[WeightedMultigraph, list[str]]:
    """A connected outerplanar-ish part: a path through the anchors with
    random chords and pendants, kept anchored planar by construction."""
    anchors = ["%sa%d" % (prefix, i) for i in range(n_anchors)]
    g = WeightedMultigraph()
    spine = list(anchors)
    extra = rng.randrange(0, 3)
    for i in range(extra):
        spine.insert(rng.randrange(1, len(spine)), "%sv%d" % (prefix, i))
    for v in spine:
        g.add_vertex(v)
    edges = 0
    for u, v in zip(spine, spine[1:]):
        g.add_edge(u, v, rng.randrange(1, max_weight + 1))
        edges += 1
    # nested chords keep the part drawable with the spine on the boundary
    while edges < max_edges and rng.random() < 0.6:
        i = rng.randrange(0, len(spine) - 1)
        j = rng.randrange(i + 1, len(spine))
        if j - i >= 2 or rng.random() < 0.5:
            g.add_edge(spine[i], spine[j], rng.randrange(1, max_weight + 1))
            edges += 1
    return g, anchors


def random_pp_with_two_anchor_part(seed: int, max_edges_per_part: int = 10,
                                   max_weight: int = 3) -> PPInstance:
    """Seeded PP instance whose first part has exactly two anchors; used by
    the special-case-vs-solver equivalence suites."""
    rng = random.Random(seed)
    g1, anch1 = _random_anchored_planar_part(rng, "p", 2, max_edges_per_part,
                                             max_weight)
    n2 = rng.choice([2, 3, 4])
    g2, anch2 = _random_anchored_planar_part(rng, "q", n2, max_edges_per_part,
                                             max_weight)
    g = WeightedMultigraph()
    for src in (g1, g2):
        for vx in src.vertices.values():
            g.add_vertex(vx.id, vx.label, vx.color)
        for e in src.edges:
            g.add_edge(e.u, e.v, e.weight)
    # interleave: split part2's anchors into two nonempty-ish groups around
    # part1's two anchors (sometimes one group is empty: value 0 cases)
    split = rng.randrange(0, n2 + 1)
    cyclic = [anch1[0]] + anch2[:split] + [anch1[1]] + anch2[split:]
    inst = PPInstance.build(g, cyclic, set(g1.vertices), set(g2.vertices))
    part1 = inst.part_instance(1)
    part2 = inst.part_instance(2)
    assert is_anchored_planar(part1) and is_anchored_planar(part2)
    return inst


def random_tiny_weighted_graph(seed: int, max_edges: int = 8,
                               max_weight: int = 3) -> WeightedMultigraph:
    """Seeded small weighted graph for the weighted/expanded equivalence suite."""
    rng = random.Random(seed)
    n = rng.randrange(4, 7)
    vs = ["t%d" % i for i in range(n)]
    g = WeightedMultigraph()
    for v in vs:
        g.add_vertex(v)
    pairs = [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:]]
    rng.shuffle(pairs)
    m = rng.randrange(n - 1, max_edges + 1)
    for u, v in pairs[:m]:
        g.add_edge(u, v, rng.randrange(1, max_weight + 1))
    return g


def random_toy_pp_for_pipeline(seed: int) -> Optional[PPInstance]:
    """Tiny PP instances with small anchored crossing number used by the
    almost-planar pipeline suite.  Both parts are stars whose anchors
    interleave; centers may exceed degree 3 so the blow-up has work to do."""
    rng = random.Random(seed)
    k1 = rng.choice([2, 3, 3, 4])
    k2 = rng.choice([2, 3, 3, 4])
    g = WeightedMultigraph()
    p1 = ["c1"] + ["x%d" % i for i in range(k1)]
    p2 = ["c2"] + ["y%d" % i for i in range(k2)]
    for v in p1 + p2:
        g.add_vertex(v)
    for i in range(k1):
        g.add_edge("c1", "x%d" % i, 1)
    for i in range(k2):
        g.add_edge("c2", "y%d" % i, 1)
    order: list[str] = []
    xs = ["x%d" % i for i in range(k1)]
    ys = ["y%d" % i for i in range(k2)]
    while xs or ys:
        pool = [p for p in ("x", "y") if (xs if p == "x" else ys)]
        p = rng.choice(pool)
        order.append(xs.pop() if p == "x" else ys.pop())
    inst = PPInstance.build(g, order, p1, p2)
    return inst
