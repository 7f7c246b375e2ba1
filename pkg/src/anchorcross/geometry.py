"""Exact rational polyline layouts and crossing extraction.

The gadget modules build drawings by assigning every vertex a rational
point and every edge a polyline; this module turns such a layout into a
Planarization by computing all pairwise transversal intersections with
exact arithmetic, checking general position (no touching, no point shared
by three curves, no curve through a foreign vertex) and ordering each
edge's crossings by the exact position along its polyline.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .graph import WeightedMultigraph
from .solver import Planarization

Point = tuple[Fraction, Fraction]


def P(x, y) -> Point:
    return (Fraction(x), Fraction(y))


class LayoutError(ValueError):
    pass


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    if _orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segment_intersection(a: Point, b: Point, c: Point, d: Point):
    """Proper transversal intersection point of open segments, or None.

    Raises LayoutError on any degenerate contact (collinear overlap,
    endpoint touching the other segment's interior): layouts must be in
    general position so every contact is an honest crossing.
    """
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 == 0 and o2 == 0:
        # collinear: contact is fine only at shared endpoints
        allowed = {a, b} & {c, d}
        if len(allowed) >= 2:
            raise LayoutError("identical collinear segments %r-%r and %r-%r"
                              % (a, b, c, d))
        contacts = ([p for p in (c, d) if _on_segment(a, b, p)]
                    + [p for p in (a, b) if _on_segment(c, d, p)])
        if all(p in allowed for p in contacts):
            return None
        raise LayoutError("collinear overlap between segments %r-%r and %r-%r"
                          % (a, b, c, d))
    if o1 != o2 and o3 != o4:
        if 0 in (o1, o2, o3, o4):
            # an endpoint lies on the other segment: endpoint-to-endpoint
            # contact is handled by the caller; interior touching is a bug
            touches = {p for p in (a, b) if _on_segment(c, d, p)}
            touches |= {p for p in (c, d) if _on_segment(a, b, p)}
            if touches <= ({a, b} & {c, d}):
                return None
            raise LayoutError("segment endpoint touches another segment: %r-%r / %r-%r"
                              % (a, b, c, d))
        # solve for the crossing point exactly
        x1, y1 = a
        x2, y2 = b
        x3, y3 = c
        x4, y4 = d
        den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
        tx = ((x1 * y2 - y1 * x2) * (x3 - x4) - (x1 - x2) * (x3 * y4 - y3 * x4))
        ty = ((x1 * y2 - y1 * x2) * (y3 - y4) - (y1 - y2) * (x3 * y4 - y3 * x4))
        return (tx / den, ty / den)
    return None


class Layout:
    """Vertex positions and edge polylines over a weighted multigraph."""

    def __init__(self, g: WeightedMultigraph):
        self.g = g
        self.pos: dict[str, Point] = {}
        self.routes: dict[int, list[Point]] = {}

    def place(self, vid: str, x, y) -> None:
        self.pos[vid] = P(x, y)

    def route(self, eid: int, waypoints: Sequence[tuple] = ()) -> None:
        """Polyline for an edge: endpoint positions plus interior waypoints."""
        e = self.g.edge(eid)
        pts = [self.pos[e.u]] + [P(x, y) for (x, y) in waypoints] + [self.pos[e.v]]
        self.routes[eid] = pts

    def auto_route_straight(self) -> None:
        """Straight segments for every edge not routed explicitly."""
        for e in self.g.edges:
            if e.eid not in self.routes:
                self.route(e.eid)

    def _check_vertex_clearance(self) -> None:
        ids = list(self.pos)
        if len(set(self.pos.values())) != len(ids):
            seen: dict[Point, str] = {}
            for v, p in self.pos.items():
                if p in seen:
                    raise LayoutError("vertices %s and %s share point %r"
                                      % (seen[p], v, p))
                seen[p] = v
        for eid, pts in self.routes.items():
            e = self.g.edge(eid)
            ends = {self.pos[e.u], self.pos[e.v]}
            for a, b in zip(pts, pts[1:]):
                for vid, p in self.pos.items():
                    if p in ends:
                        continue
                    if _on_segment(a, b, p):
                        raise LayoutError("edge %d passes through vertex %s"
                                          % (eid, vid))

    def planarization(self) -> Planarization:
        """All pairwise crossings with exact ranks along each polyline."""
        self.auto_route_straight()
        self._check_vertex_clearance()
        # position of a crossing along a polyline: (segment index, point)
        per_edge: dict[int, list[tuple[tuple, int]]] = {e.eid: []
                                                        for e in self.g.edges}
        edges = self.g.edges
        boxes = {}
        for e in edges:
            pts = self.routes[e.eid]
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            boxes[e.eid] = (min(xs), max(xs), min(ys), max(ys))
        seen_points: dict[Point, tuple[int, int]] = {}
        for i, e in enumerate(edges):
            be = boxes[e.eid]
            for f in edges[i + 1:]:
                bf = boxes[f.eid]
                if be[1] < bf[0] or bf[1] < be[0] or be[3] < bf[2] or bf[3] < be[2]:
                    continue
                shared = {e.u, e.v} & {f.u, f.v}
                hits: list[tuple[Point, int, int]] = []
                pe = self.routes[e.eid]
                pf = self.routes[f.eid]
                for si, (a, b) in enumerate(zip(pe, pe[1:])):
                    for sj, (c, d) in enumerate(zip(pf, pf[1:])):
                        pt = _segment_intersection(a, b, c, d)
                        if pt is None:
                            continue
                        if any(pt == self.pos[v] for v in shared):
                            continue  # meeting at a common endpoint
                        hits.append((pt, si, sj))
                if not hits:
                    continue
                if shared:
                    raise LayoutError(
                        "adjacent edges %d and %d cross at %r"
                        % (e.eid, f.eid, hits[0][0]))
                if len(hits) > 1:
                    raise LayoutError(
                        "edges %d and %d cross %d times (good drawings cross once)"
                        % (e.eid, f.eid, len(hits)))
                pt, si, sj = hits[0]
                if pt in seen_points:
                    raise LayoutError(
                        "three curves meet at %r (edges %r and (%d,%d))"
                        % (pt, seen_points[pt], e.eid, f.eid))
                seen_points[pt] = (e.eid, f.eid)
                per_edge[e.eid].append(((si, pt), f.eid))
                per_edge[f.eid].append(((sj, pt), e.eid))
        crossings: dict[int, tuple[int, ...]] = {}
        for eid, hits in per_edge.items():
            if not hits:
                continue
            pts = self.routes[eid]

            def along(key):
                (si, pt), _partner = key
                a = pts[si]
                # order by segment index, then by exact parameter on it
                dx, dy = pt[0] - a[0], pt[1] - a[1]
                return (si, abs(dx) + abs(dy))

            hits.sort(key=along)
            crossings[eid] = tuple(partner for _pos, partner in hits)
        return Planarization(crossings)
