"""Planarity testing, rotation systems, faces, anchored planarity.

The planarity verdict comes from networkx's left-right test; the witness is
converted to a rotation system over our edge ids and re-verified through
Euler's formula, so a wrong embedding cannot slip through.  Anchored
planarity goes through the disk augmentation: a cycle through the anchors in
the prescribed order plus a hub adjacent to every anchor, all flagged
forbidden.  The augmented graph is planar iff the instance has a disk
drawing with the anchors in that cyclic order (up to reflection, which does
not change the anchored crossing number).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .graph import AnchoredInstance, WeightedMultigraph

# Half-edge: (edge id, end index) where end 0 sits at edge.u and end 1 at edge.v.
HalfEdge = tuple[int, int]


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of incident half-edges around every vertex."""

    rotations: dict[str, tuple[HalfEdge, ...]]

    def check_wellformed(self, g: WeightedMultigraph) -> None:
        seen: set[HalfEdge] = set()
        for vid, order in self.rotations.items():
            for (eid, end) in order:
                e = g.edge(eid)
                at = e.u if end == 0 else e.v
                if at != vid:
                    raise ValueError("half-edge (%d,%d) listed at wrong vertex %s"
                                     % (eid, end, vid))
                if (eid, end) in seen:
                    raise ValueError("half-edge (%d,%d) listed twice" % (eid, end))
                seen.add((eid, end))
        want = {(e.eid, end) for e in g.edges for end in (0, 1)}
        if seen != want:
            raise ValueError("rotation system does not cover every edge end")


@dataclass(frozen=True)
class FaceList:
    """Facial walks of an embedding; each walk is a tuple of half-edges."""

    faces: tuple[tuple[HalfEdge, ...], ...]

    def __len__(self) -> int:
        return len(self.faces)


def _connected_components(g: WeightedMultigraph) -> int:
    parent = {v: v for v in g.vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in g.vertices})


def faces(rs: RotationSystem, g: WeightedMultigraph) -> FaceList:
    """Trace facial walks and assert Euler's formula v - e + f = 1 + c."""
    rs.check_wellformed(g)
    index: dict[HalfEdge, int] = {}
    for vid, order in rs.rotations.items():
        for i, he in enumerate(order):
            index[he] = i
    # next half-edge along a face: twin of he, then rotate one step at its vertex
    out_faces: list[tuple[HalfEdge, ...]] = []
    visited: set[HalfEdge] = set()
    vertex_of: dict[HalfEdge, str] = {}
    for vid, order in rs.rotations.items():
        for he in order:
            vertex_of[he] = vid
    for start in sorted(index):
        if start in visited:
            continue
        walk: list[HalfEdge] = []
        he = start
        while he not in visited:
            visited.add(he)
            walk.append(he)
            eid, end = he
            twin = (eid, 1 - end)
            v = vertex_of[twin]
            order = rs.rotations[v]
            i = index[twin]
            he = order[(i + 1) % len(order)]
        out_faces.append(tuple(walk))
    f = len(out_faces)
    v_count = len(g.vertices)
    e_count = len(g.edges)
    c = _connected_components(g)
    if v_count - e_count + f != 1 + c:
        raise ValueError("embedding fails Euler check: v=%d e=%d f=%d c=%d"
                         % (v_count, e_count, f, c))
    return FaceList(tuple(out_faces))


def _to_networkx_simple(g: WeightedMultigraph):
    """Simple nx graph for planarity: parallel edges beyond the first are
    subdivided through helper nodes so the verdict and embedding carry back."""
    G = nx.Graph()
    for v in g.vertices:
        G.add_node(("v", v))
    seen_pair: set[tuple[str, str]] = set()
    helpers: dict[int, object] = {}
    for e in g.edges:
        key = (min(e.u, e.v), max(e.u, e.v))
        if key in seen_pair or G.has_edge(("v", e.u), ("v", e.v)):
            h = ("h", e.eid)
            helpers[e.eid] = h
            G.add_edge(("v", e.u), h)
            G.add_edge(h, ("v", e.v))
        else:
            seen_pair.add(key)
            G.add_edge(("v", e.u), ("v", e.v), eid=e.eid)
    return G, helpers


def is_planar(g: WeightedMultigraph) -> tuple[bool, Optional[RotationSystem]]:
    """Planarity verdict plus, when planar, an Euler-verified rotation system."""
    if not g.vertices:
        return True, RotationSystem({})
    G, helpers = _to_networkx_simple(g)
    ok, emb = nx.check_planarity(G)
    if not ok:
        return False, None
    # map each nx edge back to (eid, end-at-this-node)
    direct: dict[tuple, tuple[int, int]] = {}
    for e in g.edges:
        h = helpers.get(e.eid)
        if h is None:
            direct[(("v", e.u), ("v", e.v))] = (e.eid, 0)
            direct[(("v", e.v), ("v", e.u))] = (e.eid, 1)
        else:
            direct[(("v", e.u), h)] = (e.eid, 0)
            direct[(("v", e.v), h)] = (e.eid, 1)
    rotations: dict[str, tuple[HalfEdge, ...]] = {}
    for v in g.vertices:
        node = ("v", v)
        order: list[HalfEdge] = []
        if emb.degree(node):
            for nb in emb.neighbors_cw_order(node):
                order.append(direct[(node, nb)])
        rotations[v] = tuple(order)
    rs = RotationSystem(rotations)
    faces(rs, g)  # raises if the witness is inconsistent
    return True, rs


def kuratowski_subgraph(g: WeightedMultigraph) -> Optional[set[int]]:
    """Edge ids of a Kuratowski subdivision when g is nonplanar, else None."""
    G, helpers = _to_networkx_simple(g)
    ok, cex = nx.check_planarity(G, counterexample=True)
    if ok:
        return None
    eids: set[int] = set()
    helper_nodes = {h: eid for eid, h in helpers.items()}
    for a, b in cex.edges():
        if a in helper_nodes:
            eids.add(helper_nodes[a])
        elif b in helper_nodes:
            eids.add(helper_nodes[b])
        else:
            eids.add(G[a][b]["eid"])
    return eids


_AUG_PREFIX = "__disk__"


def augment_anchored(a: AnchoredInstance) -> WeightedMultigraph:
    """Realize the disk: add a forbidden cycle through the anchors in the
    prescribed cyclic order and a forbidden hub adjacent to every anchor."""
    if not a.anchors:
        raise ValueError("augmentation needs at least one anchor")
    g = a.graph.copy()
    hub = _AUG_PREFIX + "hub"
    if hub in g.vertices:
        raise ValueError("graph already contains augmentation vertices")
    g.add_vertex(hub, label="disk-hub")
    n = len(a.anchors)
    if n >= 2:
        # n == 2 yields a digon: two parallel boundary edges, which is intended
        for i, v in enumerate(a.anchors):
            w = a.anchors[(i + 1) % n]
            g.add_edge(v, w, 1, label="disk-cycle", forbidden=True)
    for v in a.anchors:
        g.add_edge(hub, v, 1, label="disk-spoke", forbidden=True)
    return g


def strip_augmentation(g: WeightedMultigraph) -> WeightedMultigraph:
    """Inverse of augment_anchored on its output (structural round-trip)."""
    out = WeightedMultigraph()
    for vx in g.vertices.values():
        if not vx.id.startswith(_AUG_PREFIX):
            out.add_vertex(vx.id, vx.label, vx.color)
    for e in g.edges:
        if e.label in ("disk-cycle", "disk-spoke"):
            continue
        out.add_edge(e.u, e.v, e.weight, e.label, e.forbidden)
    return out


def is_anchored_planar(a: AnchoredInstance) -> bool:
    """True iff the instance has a crossing-free drawing in the disk with the
    anchors on the boundary in the prescribed cyclic order."""
    if not a.anchors:
        ok, _ = is_planar(a.graph)
        return ok
    ok, _ = is_planar(augment_anchored(a))
    return ok
