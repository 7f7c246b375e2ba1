"""Anchored-to-almost-planar transformation.

Pipeline: subdivide one anchor-incident edge per part at a shared face of
the pasted drawing (the two new vertices become the endpoints of the extra
edge), ring the anchors with a heavy multicycle, embed with the first part
flipped outside the ring, and blow every unprotected vertex of degree over
three into a cylindrical wall.  The result is planar, has at most three
vertices of degree over three (the protected anchors), and adding the
weight-1 edge between the two subdivision vertices produces an instance
whose crossing number equals the anchored crossing number of the source --
verified exactly on desk-scale inputs in scaled mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import AnchoredInstance, PPInstance, WeightedMultigraph
from .omega import OmegaPoly
from .planarity import (HalfEdge, RotationSystem, augment_anchored, faces,
                        is_planar)
from .solver import anchored_crossing_number_exact


@dataclass
class Wall:
    """Cylindrical cubic grid: h stacked cycles of even length l with rungs
    between consecutive cycles wherever level + position is odd."""

    height: int
    length: int
    graph: WeightedMultigraph
    outer_ports: list[str]  # degree-2 vertices of the outer cycle, in order


def build_wall(h: int, l: int, prefix: str = "w") -> Wall:
    if h < 1:
        raise ValueError("wall height must be at least 1")
    if l < 4 or l % 2 != 0:
        raise ValueError("wall length must be even and at least 4")
    g = WeightedMultigraph()
    name = lambda i, j: "%s_%d_%d" % (prefix, i, j)
    for i in range(1, h + 1):
        for j in range(1, l + 1):
            g.add_vertex(name(i, j))
    for i in range(1, h + 1):
        for j in range(1, l + 1):
            g.add_edge(name(i, j), name(i, j % l + 1), 1)
    for i in range(1, h):
        for j in range(1, l + 1):
            if (i + j) % 2 == 1:
                g.add_edge(name(i, j), name(i + 1, j), 1)
    # outer-cycle degree-2 vertices: no rung at (1, j), i.e. 1 + j even
    ports = [name(1, j) for j in range(1, l + 1) if (1 + j) % 2 == 0]
    return Wall(h, l, g, ports)


def add_multicycle(inst: PPInstance, m: int,
                   scaled: bool = False) -> WeightedMultigraph:
    """The source graph plus a cycle of weight-m edges through all anchors
    in their cyclic order.  Without the scaled marker, m must meet the
    worst-case default 2 |E(H1)| |E(H2)|."""
    anchors = inst.anchors
    if len(anchors) < 3:
        raise ValueError("multicycle needs at least 3 anchors")
    e1 = sum(1 for e in inst.graph.edges
             if e.u in inst.part1 and e.v in inst.part1)
    e2 = len(inst.graph.edges) - e1
    if not scaled and m < 2 * e1 * e2:
        raise ValueError("m=%d below the default bound %d; pass scaled=True "
                         "for desk-scale experiments" % (m, 2 * e1 * e2))
    g = inst.graph.copy()
    for i, a in enumerate(anchors):
        b = anchors[(i + 1) % len(anchors)]
        g.add_edge(a, b, m, label="ring")
    return g


def default_m(inst: PPInstance) -> int:
    e1 = sum(1 for e in inst.graph.edges
             if e.u in inst.part1 and e.v in inst.part1)
    e2 = len(inst.graph.edges) - e1
    return 2 * e1 * e2


# -- joint embeddings from per-part drawings ---------------------------------------


def part_drawing(inst: PPInstance, which: int) -> RotationSystem:
    """An anchored planar drawing of one part, as the rotation system of its
    disk augmentation."""
    part = inst.part_instance(which)
    ok, rs = is_planar(augment_anchored(part))
    if not ok:
        raise ValueError("part %d is not anchored planar" % which)
    return rs


def _part_edge_map(inst: PPInstance, which: int) -> list[int]:
    """Full-graph edge ids of the part's edges, in the construction order
    used by part_instance."""
    part = inst.part1 if which == 1 else inst.part2
    return [e.eid for e in inst.graph.edges if e.u in part and e.v in part]


def _aug_info(part: AnchoredInstance, rs: RotationSystem, g_aug):
    """Split each anchor's rotation into (cycle-prev end, cycle-next end,
    spoke end, interior ends in cyclic order between next and prev)."""
    n = len(part.anchors)
    out = {}
    for idx, a in enumerate(part.anchors):
        nxt = part.anchors[(idx + 1) % n] if n >= 2 else None
        prv = part.anchors[(idx - 1) % n] if n >= 2 else None
        rot = rs.rotations[a]
        kinds = {}
        for he in rot:
            e = g_aug.edge(he[0])
            other = e.other(a)
            if e.label == "disk-spoke":
                kinds[he] = "spoke"
            elif e.label == "disk-cycle":
                kinds[he] = "next" if other == nxt else "prev"
                if n == 2:
                    # digon: disambiguate the two parallel boundary edges
                    kinds[he] = None
            else:
                kinds[he] = "interior"
        if n == 2:
            cyc = [he for he in rot if kinds[he] is None]
            kinds[cyc[0]] = "next"
            kinds[cyc[1]] = "prev"
        out[a] = (rot, kinds)
    return out


def joint_embedding(inst: PPInstance,
                    d1: Optional[RotationSystem] = None,
                    d2: Optional[RotationSystem] = None):
    """Planar rotation system of the full disk augmentation in which each
    part is drawn per its given drawing.  Orientations of the parts are not
    recorded in a rotation system, so consistent reflections are tried
    until the joint system passes the Euler check."""
    d1 = d1 or part_drawing(inst, 1)
    d2 = d2 or part_drawing(inst, 2)
    g_full = augment_anchored(inst.base)
    parts = []
    for which, d in ((1, d1), (2, d2)):
        part = inst.part_instance(which)
        g_aug = augment_anchored(part)
        emap = _part_edge_map(inst, which)
        parts.append((part, d, g_aug, emap))

    full_cycle: dict[str, dict[str, HalfEdge]] = {}
    n = len(inst.anchors)
    for idx, a in enumerate(inst.anchors):
        nxt = inst.anchors[(idx + 1) % n]
        prv = inst.anchors[(idx - 1) % n]
        ends: dict[str, HalfEdge] = {}
        for e in g_full.edges:
            if a not in (e.u, e.v):
                continue
            end = 0 if e.u == a else 1
            if e.label == "disk-spoke":
                ends["spoke"] = (e.eid, end)
            elif e.label == "disk-cycle":
                other = e.other(a)
                if other == nxt and "next" not in ends:
                    ends["next"] = (e.eid, end)
                elif other == prv:
                    ends.setdefault("prev", (e.eid, end))
        full_cycle[a] = ends
    hub = "__disk__hub"
    spoke_order = []
    for a in inst.anchors:
        eid, end = full_cycle[a]["spoke"]
        spoke_order.append((eid, 1 - end))

    def attempt(flip1: bool, flip2: bool, flip_hub: bool):
        rotations: dict[str, tuple[HalfEdge, ...]] = {}
        for (part, d, g_aug, emap), flip in zip(parts, (flip1, flip2)):
            info = _aug_info(part, d, g_aug)
            for v in part.graph.vertices:
                rot = d.rotations[v]
                if v not in part.anchors:
                    mapped = tuple((emap[h[0]], h[1]) for h in rot)
                    rotations[v] = tuple(reversed(mapped)) if flip else mapped
                    continue
                rot, kinds = info[v]
                if flip:
                    rot = tuple(reversed(rot))
                # rotate so the sequence starts at the boundary-next end
                start = next(i for i, he in enumerate(rot)
                             if kinds[he] == ("prev" if flip else "next"))
                seq = rot[start:] + rot[:start]
                mapped = [full_cycle[v]["next"]]
                for he in seq[1:]:
                    kind = kinds[he]
                    if kind == "interior":
                        mapped.append((emap[he[0]], he[1]))
                    elif kind == "spoke":
                        mapped.append(full_cycle[v]["spoke"])
                    else:
                        mapped.append(full_cycle[v]["prev"])
                rotations[v] = tuple(mapped)
        rotations[hub] = tuple(reversed(spoke_order)) if flip_hub \
            else tuple(spoke_order)
        rs = RotationSystem(rotations)
        try:
            faces(rs, g_full)
        except ValueError:
            return None
        return rs

    for flip1 in (False, True):
        for flip2 in (False, True):
            for flip_hub in (False, True):
                rs = attempt(flip1, flip2, flip_hub)
                if rs is not None:
                    return rs, g_full
    raise ValueError("part drawings do not assemble into a planar disk drawing")


def choose_and_subdivide(inst: PPInstance,
                         d1: Optional[RotationSystem] = None,
                         d2: Optional[RotationSystem] = None):
    """Subdivide one anchor-incident edge of each part where the two parts
    share a face of an optimal pasted drawing; returns (v1, v2, new
    instance).  Subdivision keeps the anchored crossing number unchanged.

    The pasted drawing is the exact solver's optimal witness (on inputs
    with rigid parts this is the paste of the given part drawings, which
    remain the authority for the later flipped embedding); its derived
    planarization supplies the face structure.
    """
    from .solver import derived_graph_with_origin

    res = anchored_crossing_number_exact(inst.base)
    if res.status != "optimal":
        raise ValueError("could not solve the source instance exactly")
    g_aug = augment_anchored(inst.base)
    derived, origin = derived_graph_with_origin(g_aug, res.witness)
    ok, rs = is_planar(derived)
    if not ok:
        raise AssertionError("optimal witness has a nonplanar derivation")
    fl = faces(rs, derived)
    anchors = set(inst.anchors)

    def anchor_incident(orig_eid: int, part: frozenset) -> bool:
        e = g_aug.edge(orig_eid)
        if e.label in ("disk-cycle", "disk-spoke"):
            return False
        if not (e.u in part and e.v in part):
            return False
        return e.u in anchors or e.v in anchors

    first_seg: dict[int, int] = {}
    for deid in sorted(origin):
        first_seg.setdefault(origin[deid], deid)
    pick = None
    for face in fl.faces:
        segs = sorted({he[0] for he in face})
        cand1 = [d for d in segs if anchor_incident(origin[d], inst.part1)]
        cand2 = [d for d in segs if anchor_incident(origin[d], inst.part2)]
        if cand1 and cand2:
            d1_, d2_ = min(cand1, key=lambda d: (origin[d], d)),                 min(cand2, key=lambda d: (origin[d], d))
            pick = (origin[d1_], d1_ - first_seg[origin[d1_]],
                    origin[d2_], d2_ - first_seg[origin[d2_]])
            break
    if pick is None:
        raise ValueError(
            "no face of the pasted drawing holds anchor-incident edges of "
            "both parts; candidate faces: %d" % len(fl))
    e1, rank1, e2, rank2 = pick
    g = inst.graph
    out = WeightedMultigraph()
    for vx in g.vertices.values():
        out.add_vertex(vx.id, vx.label, vx.color)
    out.add_vertex("sub1")
    out.add_vertex("sub2")
    # the augmented graph shares edge ids with the original for the
    # non-augmentation edges, so e1/e2 index the original edge list
    for e in g.edges:
        if e.eid == e1:
            out.add_edge(e.u, "sub1", e.weight, e.label)
            out.add_edge("sub1", e.v, e.weight, e.label)
        elif e.eid == e2:
            out.add_edge(e.u, "sub2", e.weight, e.label)
            out.add_edge("sub2", e.v, e.weight, e.label)
        else:
            out.add_edge(e.u, e.v, e.weight, e.label, e.forbidden)
    inst2 = PPInstance.build(out, inst.anchors,
                             set(inst.part1) | {"sub1"},
                             set(inst.part2) | {"sub2"},
                             inst.allow_shared_anchors)
    split = {"witness": res.witness, "value": res.value,
             "splits": {e1: rank1, e2: rank2}}
    return "sub1", "sub2", inst2, split


def flipped_embedding(inst: PPInstance, g0: WeightedMultigraph,
                      d1: Optional[RotationSystem] = None,
                      d2: Optional[RotationSystem] = None) -> RotationSystem:
    """Planar rotation system of graph-plus-ring with the second part (and
    the ring) drawn inside and the first part flipped out of the ring."""
    d1 = d1 or part_drawing(inst, 1)
    d2 = d2 or part_drawing(inst, 2)
    ring_of: dict[str, dict[str, HalfEdge]] = {}
    n = len(inst.anchors)
    for idx, a in enumerate(inst.anchors):
        nxt = inst.anchors[(idx + 1) % n]
        prv = inst.anchors[(idx - 1) % n]
        ends: dict[str, HalfEdge] = {}
        for e in g0.edges:
            if e.label != "ring" or a not in (e.u, e.v):
                continue
            end = 0 if e.u == a else 1
            other = e.other(a)
            if other == nxt and "next" not in ends:
                ends["next"] = (e.eid, end)
            elif other == prv:
                ends.setdefault("prev", (e.eid, end))
        ring_of[a] = ends
    parts = []
    for which, d in ((1, d1), (2, d2)):
        part = inst.part_instance(which)
        g_aug = augment_anchored(part)
        emap = _part_edge_map(inst, which)
        parts.append((part, d, g_aug, emap))

    def attempt(flip1: bool, flip2: bool):
        rotations: dict[str, tuple[HalfEdge, ...]] = {}
        for pos, (part, d, g_aug, emap) in enumerate(parts):
            flip = flip1 if pos == 0 else flip2
            outside = pos == 0  # the first part rides outside the ring
            info = _aug_info(part, d, g_aug)
            for v in part.graph.vertices:
                if v not in part.anchors:
                    rot = d.rotations[v]
                    mapped = tuple((emap[h[0]], h[1]) for h in rot)
                    rotations[v] = tuple(reversed(mapped)) if flip else mapped
                    continue
                rot, kinds = info[v]
                if flip:
                    rot = tuple(reversed(rot))
                start = next(i for i, he in enumerate(rot)
                             if kinds[he] == ("prev" if flip else "next"))
                seq = rot[start:] + rot[:start]
                interior = [(emap[he[0]], he[1]) for he in seq
                            if kinds[he] == "interior"]
                if outside:
                    rotations[v] = tuple([ring_of[v]["next"],
                                          ring_of[v]["prev"]] + interior)
                else:
                    rotations[v] = tuple([ring_of[v]["next"]] + interior
                                         + [ring_of[v]["prev"]])
        rs = RotationSystem(rotations)
        try:
            faces(rs, g0)
        except ValueError:
            return None
        return rs

    for flip1 in (False, True):
        for flip2 in (False, True):
            rs = attempt(flip1, flip2)
            if rs is not None:
                return rs
    raise ValueError("no flipped planar embedding assembles from the part "
                     "drawings")


def blow_up(g0: WeightedMultigraph, rs: RotationSystem,
            protected: set[str], h: int) -> WeightedMultigraph:
    """Replace every unprotected vertex of degree d > 3 by a wall of height
    h and length 2d, attaching the former edge ends to the outer cycle's
    degree-2 vertices in the rotation order."""
    to_blow = {v for v in g0.vertices
               if v not in protected and g0.degree(v) > 3}
    out = WeightedMultigraph()
    for vx in g0.vertices.values():
        if vx.id not in to_blow:
            out.add_vertex(vx.id, vx.label, vx.color)
    port_of: dict[HalfEdge, str] = {}
    for v in sorted(to_blow):
        d = g0.degree(v)
        wall = build_wall(h, 2 * d, prefix="wall_%s" % v)
        for vx in wall.graph.vertices.values():
            out.add_vertex(vx.id)
        for e in wall.graph.edges:
            out.add_edge(e.u, e.v, 1, label="wall")
        for he, port in zip(rs.rotations[v], wall.outer_ports):
            port_of[he] = port
    edge_map: dict[int, int] = {}
    for e in g0.edges:
        u = port_of.get((e.eid, 0), e.u)
        v = port_of.get((e.eid, 1), e.v)
        edge_map[e.eid] = out.add_edge(u, v, e.weight, e.label, e.forbidden)
    return out, edge_map


@dataclass
class AlmostPlanarInstance:
    graph: WeightedMultigraph
    u: str
    v: str
    source: PPInstance
    m: int
    h: int
    scaled: bool
    witness: Optional[object] = None  # Planarization of graph + extra edge
    source_value: Optional[OmegaPoly] = None

    def with_extra_edge(self) -> WeightedMultigraph:
        g = self.graph.copy()
        g.add_edge(self.u, self.v, 1, label="extra")
        return g


def almost_planar_instance(inst: PPInstance,
                           d1: Optional[RotationSystem] = None,
                           d2: Optional[RotationSystem] = None,
                           m: Optional[int] = None,
                           h: Optional[int] = None,
                           scaled: bool = False) -> AlmostPlanarInstance:
    """Full pipeline: subdivide at a shared face, ring the anchors, embed
    with the first part flipped out, blow up the high-degree vertices.

    Scaled mode accepts small m and h for desk-scale verification but
    re-checks the inequalities m/2 > cr_A and h/2 > cr_A exactly and
    rejects the run if they fail.
    """
    if scaled:
        if m is None or h is None:
            raise ValueError("scaled mode needs explicit m and h")
        res = anchored_crossing_number_exact(inst.base)
        cra = res.value
        if not (cra * 2).cmp_large_omega(m) < 0:
            raise ValueError("scaled m=%d violates m/2 > cr_A = %r" % (m, cra))
        if not (cra * 2).cmp_large_omega(h) < 0:
            raise ValueError("scaled h=%d violates h/2 > cr_A = %r" % (h, cra))
    v1, v2, inst2, split = choose_and_subdivide(inst, d1, d2)
    # the split edges invalidate the given rotation systems; recompute on
    # the subdivided instance (the drawings' shapes are preserved)
    mm = m if m is not None else default_m(inst2)
    g0 = add_multicycle(inst2, mm, scaled=scaled)
    rs = flipped_embedding(inst2, g0)
    hh = h if h is not None else len(g0.edges) ** 2
    protected = set(inst2.part_anchors(inst2.part1))
    g, edge_map = blow_up(g0, rs, protected, hh)
    ok, _ = is_planar(g)
    if not ok:
        raise AssertionError("pipeline produced a nonplanar graph")
    witness = _transfer_witness(inst, inst2, split, g0, g, edge_map, v1, v2)
    return AlmostPlanarInstance(g, v1, v2, inst, mm, hh, scaled, witness,
                                split["value"])


def _transfer_witness(inst: PPInstance, inst2: PPInstance, split: dict,
                      g0: WeightedMultigraph, g: WeightedMultigraph,
                      edge_map: dict[int, int], v1: str, v2: str):
    """Map the source's optimal anchored witness through subdivision, ring,
    and blow-up onto graph-plus-extra-edge: the pasted drawing keeps every
    crossing on the surviving edge images, leaves the ring and walls
    uncrossed, and draws the extra edge inside its shared face."""
    from .solver import Planarization, verify_drawing

    old_witness = split["witness"]
    splits = split["splits"]
    g_aug = augment_anchored(inst.base)
    # old augmented edge id -> position(s) in the subdivided instance
    # (non-augmentation edges keep their relative order)
    orig_edges = [e.eid for e in g_aug.edges if e.label not in
                  ("disk-cycle", "disk-spoke")]
    new_of: dict[int, list[int]] = {}
    cursor = 0
    for old_eid in orig_edges:
        if old_eid in splits:
            new_of[old_eid] = [cursor, cursor + 1]
            cursor += 2
        else:
            new_of[old_eid] = [cursor]
            cursor += 1
    # inst2's edges map to g0 by identity (ring edges appended after), then
    # through the blow-up's edge map
    final_of: dict[int, list[int]] = {
        k: [edge_map[x] for x in v] for k, v in new_of.items()}
    crossings: dict[int, list[int]] = {}
    for old_eid, partners in old_witness.crossings.items():
        if not partners:
            continue
        images = final_of[old_eid]
        if old_eid in splits:
            r = splits[old_eid]
            halves = [partners[:r], partners[r:]]
        else:
            halves = [partners]
        for image_eid, part_list in zip(images, halves):
            mapped = []
            for q in part_list:
                q_imgs = final_of[q]
                if q in splits:
                    # the partner edge is split: the crossing sits on the
                    # half whose own list contains old_eid
                    rq = splits[q]
                    qp = old_witness.crossings[q]
                    mapped.append(final_of[q][0 if qp.index(old_eid) < rq
                                              else 1])
                else:
                    mapped.append(q_imgs[0])
            if mapped:
                crossings[image_eid] = mapped
    giu = g.copy()
    giu.add_edge(v1, v2, 1, label="extra")
    w = Planarization({k: tuple(v) for k, v in crossings.items()})
    if not verify_drawing(giu, w):
        return None
    return w
