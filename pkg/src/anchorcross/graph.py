"""Weighted multigraphs, anchored instances, PP instances, CNF formulas.

Parallel edges are represented by weights by default; explicit parallel
edges appear only after expand_weights.  Edges carrying the forbidden flag
model structure that no drawing may cross (the disk augmentation); solvers
never assign crossings to them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .omega import OmegaPoly, PolyLike


@dataclass(frozen=True)
class Vertex:
    id: str
    label: Optional[str] = None
    color: Optional[str] = None  # "red" / "blue" / None; cosmetic only


@dataclass(frozen=True)
class Edge:
    eid: int
    u: str
    v: str
    weight: OmegaPoly
    label: Optional[str] = None
    forbidden: bool = False

    def other(self, x: str) -> str:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise KeyError("%r is not an endpoint of edge %d" % (x, self.eid))

    def touches(self, other: "Edge") -> bool:
        """Shared endpoint (adjacent in the good-drawing sense)."""
        return self.u in (other.u, other.v) or self.v in (other.u, other.v)


class WeightedMultigraph:
    """Loop-free multigraph with positive (at large omega) edge weights."""

    def __init__(self) -> None:
        self._vertices: dict[str, Vertex] = {}
        self._edges: list[Edge] = []

    # -- construction -----------------------------------------------------------

    def add_vertex(self, vid: str, label: Optional[str] = None,
                   color: Optional[str] = None) -> str:
        if vid not in self._vertices:
            self._vertices[vid] = Vertex(vid, label, color)
        return vid

    def add_edge(self, u: str, v: str, weight: PolyLike = 1,
                 label: Optional[str] = None, forbidden: bool = False) -> int:
        if u == v:
            raise ValueError("loops are not allowed (edge %r-%r)" % (u, v))
        w = OmegaPoly.coerce(weight)
        if not w.is_positive_large_omega():
            raise ValueError("edge %r-%r has non-positive weight %r" % (u, v, w))
        self.add_vertex(u)
        self.add_vertex(v)
        eid = len(self._edges)
        self._edges.append(Edge(eid, u, v, w, label, forbidden))
        return eid

    def copy(self) -> "WeightedMultigraph":
        g = WeightedMultigraph()
        g._vertices = dict(self._vertices)
        g._edges = list(self._edges)
        return g

    # -- access -----------------------------------------------------------------

    @property
    def vertices(self) -> dict[str, Vertex]:
        return self._vertices

    @property
    def edges(self) -> list[Edge]:
        return self._edges

    def edge(self, eid: int) -> Edge:
        return self._edges[eid]

    def degree(self, vid: str) -> int:
        return sum(1 for e in self._edges if vid in (e.u, e.v))

    def incident(self, vid: str) -> list[Edge]:
        return [e for e in self._edges if vid in (e.u, e.v)]

    def total_weight(self) -> OmegaPoly:
        return sum((e.weight for e in self._edges), OmegaPoly.zero())

    def __repr__(self) -> str:
        return "WeightedMultigraph(%d vertices, %d edges)" % (
            len(self._vertices), len(self._edges))


@dataclass(frozen=True)
class AnchoredInstance:
    """A graph plus a cyclic sequence of distinct anchor vertices."""

    graph: WeightedMultigraph
    anchors: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.anchors)) != len(self.anchors):
            raise ValueError("anchor sequence has repeats")
        missing = [a for a in self.anchors if a not in self.graph.vertices]
        if missing:
            raise ValueError("anchors not in graph: %r" % (missing,))


@dataclass(frozen=True)
class PPInstance:
    """Anchored instance split into two vertex-disjoint anchored-planar parts.

    With allow_shared_anchors the parts may meet in anchor vertices only
    (the five-anchor variant).
    """

    base: AnchoredInstance
    part1: frozenset[str]
    part2: frozenset[str]
    allow_shared_anchors: bool = False

    @staticmethod
    def build(graph: WeightedMultigraph, anchors: Sequence[str],
              part1: Iterable[str], part2: Iterable[str],
              allow_shared_anchors: bool = False) -> "PPInstance":
        return PPInstance(AnchoredInstance(graph, tuple(anchors)),
                          frozenset(part1), frozenset(part2),
                          allow_shared_anchors)

    @property
    def graph(self) -> WeightedMultigraph:
        return self.base.graph

    @property
    def anchors(self) -> tuple[str, ...]:
        return self.base.anchors

    def part_anchors(self, part: frozenset[str]) -> tuple[str, ...]:
        """Anchors of one part, in the induced cyclic order."""
        return tuple(a for a in self.base.anchors if a in part)

    def part_instance(self, which: int) -> AnchoredInstance:
        part = self.part1 if which == 1 else self.part2
        g = WeightedMultigraph()
        for vid in part:
            vx = self.graph.vertices[vid]
            g.add_vertex(vx.id, vx.label, vx.color)
        for e in self.graph.edges:
            if e.u in part and e.v in part:
                g.add_edge(e.u, e.v, e.weight, e.label, e.forbidden)
        return AnchoredInstance(g, self.part_anchors(part))


@dataclass(frozen=True)
class CnfFormula:
    """CNF with 1-based variables; a literal is +v or -v."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for cl in self.clauses:
            if not cl:
                raise ValueError("empty clause")
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError("literal %d out of range" % lit)

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        for cl in self.clauses:
            if not any(assignment.get(abs(l), False) == (l > 0) for l in cl):
                return False
        return True


def expand_weights(g: WeightedMultigraph, omega: int) -> WeightedMultigraph:
    """Replace each edge of evaluated integer weight t by t parallel unit edges."""
    out = WeightedMultigraph()
    for vx in g.vertices.values():
        out.add_vertex(vx.id, vx.label, vx.color)
    for e in g.edges:
        val = e.weight.eval(omega)
        if val.denominator != 1 or val <= 0:
            raise ValueError(
                "edge %d (%s-%s) evaluates to non-positive-integer weight %s at omega=%d"
                % (e.eid, e.u, e.v, val, omega))
        for _ in range(int(val)):
            out.add_edge(e.u, e.v, 1, e.label, e.forbidden)
    return out


@dataclass
class PPReport:
    """Diagnostics from validate_pp; empty violations means valid."""

    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_pp(inst: PPInstance) -> PPReport:
    """Check the PP invariants: partition, no cross-part edges, and anchored
    planarity of each part with its induced anchor subsequence."""
    from .planarity import is_anchored_planar  # deferred: avoids import cycle

    report = PPReport()
    g = inst.graph
    inter = inst.part1 & inst.part2
    if inter:
        if not inst.allow_shared_anchors:
            report.violations.append("parts intersect: %s" % sorted(inter))
        elif not inter <= set(inst.anchors):
            report.violations.append(
                "parts intersect outside the anchors: %s"
                % sorted(inter - set(inst.anchors)))
    uncovered = set(g.vertices) - (inst.part1 | inst.part2)
    if uncovered:
        report.violations.append("vertices in neither part: %s" % sorted(uncovered))
    for e in g.edges:
        in1 = e.u in inst.part1 and e.v in inst.part1
        in2 = e.u in inst.part2 and e.v in inst.part2
        if not (in1 or in2):
            report.violations.append(
                "cross-part edge %d (%s-%s)" % (e.eid, e.u, e.v))
    if report.violations:
        return report
    for which in (1, 2):
        part = inst.part_instance(which)
        if part.anchors and not is_anchored_planar(part):
            report.violations.append("part%d is not anchored planar" % which)
    return report
