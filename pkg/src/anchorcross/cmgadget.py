"""The refined SAT-to-anchored-crossing reduction and its frame composition.

The construction is frozen as follows.  A padded formula has k variables
and k-1 clauses; odd-index variables are dummies held true, even clause
slots are dummy clauses satisfied by the first variable.  The blue part is
a grid of k columns (three verticals each: L, M, R) by k-1 rows (three
horizontals each: B, M, T); the M-row edge inside a column is one lighter
(w^2 - 1) on the side encoding a literal of that column's variable in that
row's clause.  The west wall (column 1's L line) is heavy above each M
line and the east wall (column k's R line) heavy below it, so clause paths
enter low and leave high; switching corridors through a lighter edge is
possible exactly at a true literal's column.  The heavy path runs along
the grid diagonal with one subdivision vertex per visited subgrid and
finishes across the top; in any anchored drawing it crosses each red path
once, clause paths in weight w-1 edges.

The red part is the path family the reduction demands: clause paths
a_j -> a_{3k+1-j} (interior w-1, ends w), the special path a_k -> a_{2k+1}
(all w), and variable pairs a_{k+i} -> a_{4k+1-i} (all w), pairwise
edge-disjoint, meeting in shared vertices so that every interior vertex
lies on both families.

Composed with the frame, the red anchors are identified with the center
path's interior vertices and the heavy path's ends with the frame's; the
certificate offset is gamma(k) - (3k omega^52 - k omega^48).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .frame import Frame, FrameParams, build_frame, gamma
from .geometry import Layout
from .graph import CnfFormula, PPInstance, WeightedMultigraph
from .omega import OmegaPoly, PolyLike, W
from .solver import Planarization, drawing_weight


# -- padding ------------------------------------------------------------------------


@dataclass(frozen=True)
class Padding:
    """Slot map of a padded formula: k variables (odd = dummy), k-1 clauses
    (even slots = dummy clauses containing the first variable)."""

    k: int
    var_slot: dict[int, int]     # original var -> even slot
    clause_slot: dict[int, int]  # original clause index (1-based) -> odd slot


def pad_formula(phi: CnfFormula,
                k: Optional[int] = None) -> tuple[CnfFormula, Padding]:
    """Equisatisfiable formula with k variables and k-1 clauses.

    Original variables move to even slots and original clauses to odd
    slots; dummies fill the rest.  Dummy variables appear only positively
    (in dummy clauses), so holding them true never hurts; dummy clauses
    contain the first dummy variable, hence are satisfied at column one and
    take the upper routing everywhere past it.
    """
    if not phi.clauses:
        raise ValueError("formula must have at least one clause")
    n, m = phi.num_vars, len(phi.clauses)
    k_min = max(2 * n, 2 * m, 2)
    if k is None:
        k = k_min
    if k < k_min:
        raise ValueError("k=%d too small: need at least %d" % (k, k_min))
    var_slot = {v: 2 * v for v in range(1, n + 1)}
    clause_slot = {j: 2 * j - 1 for j in range(1, m + 1)}
    clauses: list[tuple[int, ...]] = []
    for slot in range(1, k):
        if slot % 2 == 1 and slot // 2 + 1 <= m:
            orig = phi.clauses[slot // 2]
            clauses.append(tuple(
                var_slot[abs(l)] * (1 if l > 0 else -1) for l in orig))
        else:
            clauses.append((1,))  # dummy clause: the first dummy variable
    return CnfFormula(k, tuple(clauses)), Padding(k, var_slot, clause_slot)


# -- coordinates shared with the frame -------------------------------------------------


def _ax(k: int, m: int) -> int:
    """x of anchor a_m; identical to the frame's center-path interiors."""
    if m <= 2 * k:
        return -(13 + 25 * (2 * k + 1 - m))
    return 13 + 25 * (m - 2 * k)


def _lane(k: int, j: int) -> Fraction:
    """Row j's middle height."""
    return Fraction(100 + 10 * (k - j))


# -- the blue grid ----------------------------------------------------------------------


@dataclass
class GridBundle:
    """Blue grid as an edge list; materialized into the instance graph only
    after the heavy path's subdivisions are spliced in."""

    k: int
    w: OmegaPoly
    nodes: list[str]
    edges: list[tuple[str, str, OmegaPoly, str]]
    pos: dict[str, tuple[Fraction, Fraction]]
    dash_side: dict[tuple[int, int], Optional[str]]
    heavy: Optional[dict] = None

    def node(self, i: int, c: str, j: int, r: str) -> str:
        return "g_%d%s_%d%s" % (i, c, j, r)


def build_grid(padded: CnfFormula, w: PolyLike) -> GridBundle:
    """Blue grid with literal-encoding lighter middle edges and the heavy
    entry/exit walls."""
    w = OmegaPoly.coerce(w)
    k = padded.num_vars
    w2, w4 = w ** 2, w ** 4
    nodes: list[str] = []
    pos: dict[str, tuple[Fraction, Fraction]] = {}
    vx: dict[tuple[int, str], int] = {}
    for i in range(1, k + 1):
        x = _ax(k, k + i)
        vx[(i, "L")], vx[(i, "M")], vx[(i, "R")] = x - 6, x, x + 6
    hy: dict[tuple[int, str], Fraction] = {}
    for j in range(1, k):
        y = _lane(k, j)
        hy[(j, "B")], hy[(j, "M")], hy[(j, "T")] = y - 3, y, y + 3
    for i in range(1, k + 1):
        for c in ("L", "M", "R"):
            for j in range(1, k):
                for r in ("B", "M", "T"):
                    vid = "g_%d%s_%d%s" % (i, c, j, r)
                    nodes.append(vid)
                    pos[vid] = (Fraction(vx[(i, c)]), hy[(j, r)])
    dash_side: dict[tuple[int, int], Optional[str]] = {}
    for j in range(1, k):
        cl = padded.clauses[j - 1]
        for i in range(1, k + 1):
            dash_side[(j, i)] = ("L" if i in cl else
                                 "R" if -i in cl else None)
    edges: list[tuple[str, str, OmegaPoly, str]] = []
    name = lambda i, c, j, r: "g_%d%s_%d%s" % (i, c, j, r)
    for i in range(1, k + 1):
        for c in ("L", "M", "R"):
            chain = [name(i, c, j, r)
                     for j in range(k - 1, 0, -1) for r in ("B", "M", "T")]
            for u, v in zip(chain, chain[1:]):
                weight = w2
                ju, ru = u.split("_")[2][:-1], u.split("_")[2][-1]
                jv, rv = v.split("_")[2][:-1], v.split("_")[2][-1]
                if i == 1 and c == "L" and ju == jv and (ru, rv) == ("M", "T"):
                    weight = w4  # west wall: entering high is expensive
                if i == k and c == "R" and ju == jv and (ru, rv) == ("B", "M"):
                    weight = w4  # east wall: leaving low is expensive
                edges.append((u, v, weight, "grid-v"))
    for j in range(1, k):
        for r in ("B", "M", "T"):
            chain = [name(i, c, j, r)
                     for i in range(1, k + 1) for c in ("L", "M", "R")]
            for u, v in zip(chain, chain[1:]):
                weight = w2
                if r == "T" and j == 1:
                    weight = w4  # thick topmost line
                if r == "M":
                    iu, cu = int(u.split("_")[1][:-1]), u.split("_")[1][-1]
                    iv, cv = int(v.split("_")[1][:-1]), v.split("_")[1][-1]
                    if iu == iv and (cu, cv) == ("L", "M") \
                            and dash_side[(j, iu)] == "L":
                        weight = w2 - 1
                    if iu == iv and (cu, cv) == ("M", "R") \
                            and dash_side[(j, iu)] == "R":
                        weight = w2 - 1
                edges.append((u, v, weight, "grid-h"))
    return GridBundle(k, w, nodes, edges, pos, dash_side)


def diagonal_route(k: int) -> list[dict]:
    """Visit plan for the heavy path: subgrids (column i, row i) from the
    bottom-right end of the diagonal upward; odd columns use the sideways
    pattern (their dummy variable pair sits on the left), even columns the
    upward pattern (their dummy clause runs on top)."""
    return [{"col": i, "row": i, "pattern": "side" if i % 2 else "up"}
            for i in range(k - 1, 0, -1)]


def insert_heavy_path(grid: GridBundle, route: list[dict]) -> GridBundle:
    """New grid bundle with the heavy path added: endpoints bp (boundary,
    low center) and b (boundary, top center), one subdivision vertex per
    visited subgrid, all path edges of weight w^12 and edge-disjoint from
    the grid."""
    k, w = grid.k, grid.w
    w12 = w ** 12
    nodes = list(grid.nodes) + ["bp", "b"]
    edges = list(grid.edges)
    pos = dict(grid.pos)
    pos["bp"] = (Fraction(0), Fraction(60))
    pos["b"] = (Fraction(0), Fraction(400))
    seq: list[str] = ["bp"]
    subdivisions: list[dict] = []

    def subdivide(u: str, v: str, mid: str, midpos) -> None:
        for idx, (a, bb, weight, label) in enumerate(edges):
            if {a, bb} == {u, v}:
                del edges[idx]
                edges.insert(idx, (u, mid, weight, label))
                edges.insert(idx + 1, (mid, v, weight, label))
                nodes.append(mid)
                pos[mid] = midpos
                return
        raise KeyError("no grid edge %s-%s" % (u, v))

    for step in route:
        i = step["col"]
        if step["row"] != i:
            raise ValueError("route must follow the diagonal")
        x = Fraction(_ax(k, k + i))
        y = _lane(k, i)
        n1 = grid.node(i, "R", i, "B")
        sv = "rs_%d" % i
        if step["pattern"] == "side":
            n2 = grid.node(i, "M", i, "B")
            subdivide(grid.node(i, "L", i, "M"), grid.node(i, "M", i, "M"),
                      sv, (x - 5, y))
            subdivisions.append({"vertex": sv, "kind": "H", "col": i})
        elif step["pattern"] == "up":
            n2 = grid.node(i, "R", i, "M")
            subdivide(grid.node(i, "M", i, "M"), grid.node(i, "M", i, "T"),
                      sv, (x, y + 2))
            subdivisions.append({"vertex": sv, "kind": "V", "col": i})
        else:
            raise ValueError("unknown pattern %r" % step["pattern"])
        seq += [n1, n2, sv, grid.node(i, "L", i, "T")]
    seq.append("b")
    redges = [(u, v, w12, "R") for u, v in zip(seq, seq[1:])]
    heavy = {"vertices": seq, "subdivisions": subdivisions,
             "edge_pairs": [(u, v) for u, v, _, _ in redges]}
    return GridBundle(k, w, nodes, edges + redges, pos,
                      dict(grid.dash_side), heavy)


# -- the full instance ----------------------------------------------------------------


@dataclass
class CmInstance:
    instance: PPInstance
    features: dict
    padded: CnfFormula
    padding: Padding
    w: OmegaPoly
    grid: GridBundle

    @property
    def k(self) -> int:
        return self.padding.k

    @property
    def graph(self) -> WeightedMultigraph:
        return self.instance.graph


def build_cm_instance(phi: CnfFormula, w: PolyLike,
                      k: Optional[int] = None) -> CmInstance:
    """Pad the formula, build the grid, insert the heavy path, and attach
    the red path family."""
    padded, padding = pad_formula(phi, k)
    w = OmegaPoly.coerce(w)
    kk = padding.k
    grid = insert_heavy_path(build_grid(padded, w), diagonal_route(kk))

    g = WeightedMultigraph()
    features: dict = {"k": kk, "w": w}
    # blue side
    for vid in grid.nodes:
        g.add_vertex(vid, color="blue")
    grid_eids: list[int] = []
    heavy_eids: list[int] = []
    heavy_pairs = set(map(frozenset, grid.heavy["edge_pairs"]))
    for u, v, weight, label in grid.edges:
        eid = g.add_edge(u, v, weight, label=label)
        if label == "R":
            heavy_eids.append(eid)
        else:
            grid_eids.append(eid)
    features["R"] = {"vertices": grid.heavy["vertices"], "edges": heavy_eids,
                     "subdivisions": grid.heavy["subdivisions"]}
    features["grid_edges"] = grid_eids
    features["b"] = "b"
    features["bp"] = "bp"
    # red side
    for m in range(1, 4 * kk + 1):
        g.add_vertex("a_%d" % m, color="red")
    for i in range(1, kk + 1):
        g.add_vertex("mq2_%d" % i, color="red")
        g.add_vertex("mq3_%d" % i, color="red")
        for j in range(1, kk):
            g.add_vertex("mg2_%d_%d" % (j, i), color="red")
            g.add_vertex("mg3_%d_%d" % (j, i), color="red")
    q_paths: list[dict] = []
    for j in range(1, kk):  # clause paths
        dummy = j % 2 == 0
        seq = ["a_%d" % j]
        for i in range(1, kk + 1):
            seq += ["mg2_%d_%d" % (j, i), "mg3_%d_%d" % (j, i)]
        seq.append("a_%d" % (3 * kk + 1 - j))
        eids = []
        for t, (u, v) in enumerate(zip(seq, seq[1:])):
            if t in (0, len(seq) - 2):
                wt = w  # end edges
            elif u.startswith("mg2") and v.startswith("mg3"):
                wt = w - 1  # inside a column: the jumpable edge
            else:
                # between columns: dummy clauses stay light so the heavy
                # path meets them cheaply wherever it enters their row;
                # original clauses carry w here, which keeps their
                # column-transit cost independent of the variable's side
                wt = w - 1 if dummy else w
            eids.append(g.add_edge(u, v, wt, label="Q1_%d" % j))
        q_paths.append({"name": "Q1_%d" % j, "family": "Q1", "index": j,
                        "vertices": seq, "edges": eids})
    seq = ["a_%d" % kk]  # the special path
    for i in range(1, kk + 1):
        seq += ["mq2_%d" % i, "mq3_%d" % i]
    seq.append("a_%d" % (2 * kk + 1))
    eids = [g.add_edge(u, v, w, label="Q1_%d" % kk)
            for u, v in zip(seq, seq[1:])]
    q_paths.append({"name": "Q1_%d" % kk, "family": "Q1", "index": kk,
                    "vertices": seq, "edges": eids})
    for i in range(1, kk + 1):  # variable pairs
        for fam, mq, mg in (("Q2", "mq2", "mg2"), ("Q3", "mq3", "mg3")):
            seq = ["a_%d" % (kk + i), "%s_%d" % (mq, i)]
            for j in range(kk - 1, 0, -1):
                seq.append("%s_%d_%d" % (mg, j, i))
            seq.append("a_%d" % (4 * kk + 1 - i))
            eids = [g.add_edge(u, v, w, label="%s_%d" % (fam, i))
                    for u, v in zip(seq, seq[1:])]
            q_paths.append({"name": "%s_%d" % (fam, i), "family": fam,
                            "index": i, "vertices": seq, "edges": eids})
    features["Q"] = q_paths
    features["A1"] = ["a_%d" % m for m in range(1, 4 * kk + 1)]

    anchors = (["a_%d" % m for m in range(1, 2 * kk + 1)] + ["bp"]
               + ["a_%d" % m for m in range(2 * kk + 1, 4 * kk + 1)] + ["b"])
    red = {v for v in g.vertices if g.vertices[v].color == "red"}
    blue = {v for v in g.vertices if g.vertices[v].color == "blue"}
    inst = PPInstance.build(g, anchors, red, blue)
    return CmInstance(inst, features, padded, padding, w, grid)


# -- per-assignment drawings ---------------------------------------------------------


def _clause_states(ci: CmInstance, assign: dict[int, bool]) -> list[list[str]]:
    """states[j-1][i-1] in lower/jump/upper; unsatisfied clauses stay lower
    and switch corridors in the gap before the last column."""
    k = ci.k
    out = []
    for j in range(1, k):
        cl = ci.padded.clauses[j - 1]
        sat_at = None
        for i in range(1, k + 1):
            if (i in cl and assign.get(i, False)) or \
                    (-i in cl and not assign.get(i, True)):
                sat_at = i
                break
        row = []
        for i in range(1, k + 1):
            if sat_at is None:
                row.append("lower" if i < k else "upper")  # wall switch in gap
            elif i < sat_at:
                row.append("lower")
            elif i == sat_at:
                row.append("jump")
            else:
                row.append("upper")
        out.append(row)
    return out


def full_assignment(ci: CmInstance,
                    original: Optional[dict[int, bool]] = None) -> dict[int, bool]:
    """Assignment on padded slots: dummies true, originals as given (default
    true)."""
    original = original or {}
    assign = {}
    for slot in range(1, ci.k + 1):
        if slot % 2 == 1:
            assign[slot] = True
        else:
            orig = slot // 2
            assign[slot] = original.get(orig, True)
    return assign


def assignment_layout(ci: CmInstance, assign: dict[int, bool]) -> Layout:
    """Exact layout of the instance following the routing semantics: pair i
    descends in its column's left faces when slot i is true, right faces
    otherwise; clause paths jump at their first true literal's column, or
    switch corridors in the last gap when unsatisfied."""
    k, w = ci.k, ci.w
    g = ci.graph
    lay = Layout(g)
    states = _clause_states(ci, assign)

    def ax(m):
        return _ax(k, m)

    for m in range(1, 4 * k + 1):
        lay.place("a_%d" % m, ax(m), 0)
    for vid, (x, y) in ci.grid.pos.items():
        lay.place(vid, x, y)
    side_x: dict[tuple[int, int], Fraction] = {}  # (family 2/3, col) -> stem x
    for i in range(1, k + 1):
        x = Fraction(ax(k + i))
        if assign[i]:
            side_x[(2, i)] = x - 4
            side_x[(3, i)] = x - 2
        else:
            side_x[(2, i)] = x + 2
            side_x[(3, i)] = x + 4
        lay.place("mq2_%d" % i, x - 2, 100)
        lay.place("mq3_%d" % i, x + 2, 100)
        for j in range(1, k):
            lane = _lane(k, j)
            dy = Fraction(-3, 2) if states[j - 1][i - 1] == "lower" \
                else Fraction(3, 2)
            lay.place("mg2_%d_%d" % (j, i), side_x[(2, i)],
                      lane + (Fraction(-3, 2) if states[j - 1][i - 1]
                              in ("lower", "jump") else Fraction(3, 2)))
            lay.place("mg3_%d_%d" % (j, i), side_x[(3, i)], lane + dy
                      if states[j - 1][i - 1] != "jump" else lane + Fraction(3, 2))

    edge_at = {}
    for e in g.edges:
        edge_at.setdefault((e.u, e.v), e.eid)
        edge_at.setdefault((e.v, e.u), e.eid)

    # clause paths
    for j in range(1, k):
        lane = _lane(k, j)
        low, high = lane - Fraction(3, 2), lane + Fraction(3, 2)
        path = next(q for q in ci.features["Q"]
                    if q["family"] == "Q1" and q["index"] == j)
        seq, eids = path["vertices"], path["edges"]
        lay.route(eids[0], [(ax(j), low)])  # ascend west, enter low
        st = states[j - 1]
        for i in range(1, k):
            # edge mg3_{j,i} -> mg2_{j,i+1}: across the gap between columns
            eid = edge_at[("mg3_%d_%d" % (j, i), "mg2_%d_%d" % (j, i + 1))]
            lvl_a = high if st[i - 1] in ("jump", "upper") else low
            lvl_b = low if st[i] in ("lower", "jump") else high
            if lvl_a == lvl_b:
                lay.route(eid)
            else:
                gapx = Fraction(ax(k + i + 1) - 12)  # wall switch in the gap
                lay.route(eid, [(gapx - 2, lvl_a), (gapx + 2, lvl_b)])
        drop = 8 + 2 * (k - j)
        low_y = 62 + Fraction(3 * (k + 1 - j), 10)
        lay.route(eids[-1], [(drop, high), (drop, low_y),
                             (ax(3 * k + 1 - j), low_y)])
    # the special path
    path = next(q for q in ci.features["Q"]
                if q["family"] == "Q1" and q["index"] == k)
    eids = path["edges"]
    lay.route(eids[0], [(ax(k), 100)])
    lay.route(eids[-1], [(8, 100), (8, Fraction(623, 10)),
                         (ax(2 * k + 1), Fraction(623, 10))])
    # variable pairs
    for i in range(1, k + 1):
        for famnum, fam in ((2, "Q2"), (3, "Q3")):
            path = next(q for q in ci.features["Q"]
                        if q["family"] == fam and q["index"] == i)
            eids = path["edges"]
            sx = side_x[(famnum, i)]
            ceiling = (10 * k + 98 + 4 * (k + 1 - i)) - (0 if famnum == 2 else 2)
            bxp = ax(4 * k + 1 - i) + (2 if famnum == 2 else -2)
            lay.route(eids[-1], [(sx, ceiling), (bxp, ceiling), (bxp, 20)])
    # the heavy path
    rseq = ci.features["R"]["vertices"]
    reids = ci.features["R"]["edges"]
    first_col = k - 1
    entry_x = Fraction(_ax(k, k + first_col) + 6)
    lay.route(reids[0], [(0, 103), (entry_x, 103)])
    idx = 1
    for step in diagonal_route(k):
        i = step["col"]
        x = Fraction(_ax(k, k + i))
        lane = _lane(k, i)
        if step["pattern"] == "side":
            # (R,B)->(M,B): dip below the line; (M,B)->rs: through the
            # lower face; rs->(L,T): out the upper-left corner.  When the
            # clause runs high, the subdivision vertex draws near the
            # column middle so the exit leg crosses the light edge between
            # the meets.
            upper = states[i - 1][i - 1] == "upper"
            lay.place("rs_%d" % i, x - 1 if upper else x - 5, lane)
            lay.route(reids[idx], [(x + 3, lane - 4)])
            lay.route(reids[idx + 1])
            lay.route(reids[idx + 2])
        else:
            lay.route(reids[idx], [(x + 7, lane - Fraction(3, 2))])
            lay.route(reids[idx + 1])
            lay.route(reids[idx + 2])
        idx += 3
        if i > 1:
            lay.route(reids[idx])  # transit diagonal, straight
            idx += 1
    xl = Fraction(_ax(k, k + 1) - 6)
    lay.route(reids[-1], [(xl - 2, _lane(k, 1) + 5), (xl - 2, 395), (-1, 395)])
    return lay


def assignment_drawing(ci: CmInstance, assign: dict[int, bool]) -> Planarization:
    return assignment_layout(ci, assign).planarization()


def red_blue_crossing_weight(ci: CmInstance, p: Planarization) -> OmegaPoly:
    """Total weight of crossings between the red path family and the blue
    grid (heavy path excluded): the quantity the routing semantics move."""
    g = ci.graph
    heavy = set(ci.features["R"]["edges"])
    total = OmegaPoly.zero()
    for a, b in p.pairs():
        ca, cb = g.vertices[g.edge(a).u].color, g.vertices[g.edge(b).u].color
        if {ca, cb} == {"red", "blue"}:
            blue_eid = a if ca == "blue" else b
            if blue_eid not in heavy:
                total = total + g.edge(a).weight * g.edge(b).weight
    return total


def heavy_red_crossing_weight(ci: CmInstance, p: Planarization) -> OmegaPoly:
    """Total weight of crossings between the heavy path and the red family."""
    g = ci.graph
    heavy = set(ci.features["R"]["edges"])
    total = OmegaPoly.zero()
    for a, b in p.pairs():
        if (a in heavy) != (b in heavy):
            other = b if a in heavy else a
            if g.vertices[g.edge(other).u].color == "red":
                total = total + g.edge(a).weight * g.edge(b).weight
    return total


# -- the structure checker ---------------------------------------------------------------


@dataclass
class CheckReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def theorem21_check(ci: CmInstance) -> CheckReport:
    """Structural properties of the reduction instance:

    (a) the declared path family exists with the required endpoints and
        weights, is pairwise edge-disjoint, and every interior red vertex
        lies on one path of each family (anchors lie on their own family's
        paths) -- the checkable reading of the spanning conditions;
    (b) the heavy path runs between the two extra anchors, placed between
        a_{4k}/a_1 and between a_{2k}/a_{2k+1} in the cyclic order, with
        every edge of weight at least w^12;
    (c) weight caps: red and non-heavy blue at most w^4, heavy path at most
        w^12 + w^4;
    plus anchored planarity of both parts.
    """
    v: list[str] = []
    g = ci.graph
    k, w = ci.k, ci.w
    w4, w12 = w ** 4, w ** 12

    def path_ok(q: dict, start: str, end: str) -> bool:
        seq = q["vertices"]
        if seq[0] != start or seq[-1] != end:
            v.append("(a) %s endpoints %s..%s, expected %s..%s"
                     % (q["name"], seq[0], seq[-1], start, end))
            return False
        for eid, (x, y) in zip(q["edges"], zip(seq, seq[1:])):
            e = g.edge(eid)
            if {e.u, e.v} != {x, y}:
                v.append("(a) %s is not a path in the graph" % q["name"])
                return False
        return True

    by_name = {q["name"]: q for q in ci.features["Q"]}
    for j in range(1, k):
        q = by_name.get("Q1_%d" % j)
        if q is None:
            v.append("(a) missing clause path %d" % j)
            continue
        if path_ok(q, "a_%d" % j, "a_%d" % (3 * k + 1 - j)):
            for t, eid in enumerate(q["edges"]):
                e = g.edge(eid)
                if t in (0, len(q["edges"]) - 1):
                    if e.weight != w:
                        v.append("(a) end-edge weight of %s is %r, expected %r"
                                 % (q["name"], e.weight, w))
                elif e.weight.cmp_large_omega(w - 1) < 0:
                    v.append("(a) interior of %s lighter than w-1" % q["name"])
    q = by_name.get("Q1_%d" % k)
    if q is None or not path_ok(q, "a_%d" % k, "a_%d" % (2 * k + 1)):
        v.append("(a) special path malformed")
    elif any(g.edge(eid).weight.cmp_large_omega(w) < 0 for eid in q["edges"]):
        v.append("(a) special path lighter than w")
    for i in range(1, k + 1):
        for fam in ("Q2", "Q3"):
            q = by_name.get("%s_%d" % (fam, i))
            if q is None or not path_ok(q, "a_%d" % (k + i),
                                        "a_%d" % (4 * k + 1 - i)):
                v.append("(a) pair path %s_%d malformed" % (fam, i))
            elif any(g.edge(eid).weight.cmp_large_omega(w) < 0
                     for eid in q["edges"]):
                v.append("(a) pair path %s_%d lighter than w" % (fam, i))
    used: dict[int, str] = {}
    for q in ci.features["Q"]:
        for eid in q["edges"]:
            if eid in used and used[eid] != q["name"]:
                v.append("(a) paths %s and %s share edge %d"
                         % (used[eid], q["name"], eid))
            used[eid] = q["name"]
    # spanning: every interior red vertex on both families, every red
    # vertex on at least one path
    on_f1: set[str] = set()
    on_f2: set[str] = set()
    for q in ci.features["Q"]:
        tgt = on_f1 if q["family"] == "Q1" else on_f2
        tgt.update(q["vertices"])
    anchors = set(ci.features["A1"])
    for vid in g.vertices:
        if g.vertices[vid].color != "red":
            continue
        if vid in anchors:
            if vid not in on_f1 | on_f2:
                v.append("(a) anchor %s on no path" % vid)
        elif vid not in on_f1 or vid not in on_f2:
            v.append("(a) interior vertex %s not on both families (spanning)"
                     % vid)
    # (b): heavy path placement and weight
    feat = ci.features["R"]
    rseq = feat["vertices"]
    bname, bpname = ci.features["b"], ci.features["bp"]
    ends = {rseq[0], rseq[-1]}
    if ends != {bname, bpname}:
        v.append("(b) heavy path endpoints %s, expected {%s, %s}"
                 % (sorted(ends), bname, bpname))
    cyc = list(ci.instance.anchors)
    n = len(cyc)

    def between(x, left, right):
        i = cyc.index(left)
        out = []
        while True:
            i = (i + 1) % n
            if cyc[i] == right:
                return x in out
            out.append(cyc[i])

    if not between(bpname, "a_%d" % (2 * k), "a_%d" % (2 * k + 1)):
        v.append("(b) %s not between a_%d and a_%d" % (bpname, 2 * k, 2 * k + 1))
    if not between(bname, "a_%d" % (4 * k), "a_1"):
        v.append("(b) %s not between a_%d and a_1" % (bname, 4 * k))
    for eid, (x, y) in zip(feat["edges"], zip(rseq, rseq[1:])):
        e = g.edge(eid)
        if {e.u, e.v} != {x, y}:
            v.append("(b) heavy path is not a path in the graph")
            break
        if e.weight.cmp_large_omega(w12) < 0:
            v.append("(b) heavy edge %d lighter than w^12" % eid)
    # (c): caps
    heavy = set(feat["edges"])
    for e in g.edges:
        red = g.vertices[e.u].color == "red"
        if e.eid in heavy:
            if e.weight.cmp_large_omega(w12 + w4) > 0:
                v.append("(c) heavy edge %d above w^12 + w^4" % e.eid)
        elif e.weight.cmp_large_omega(w4) > 0:
            v.append("(c) %s edge %d above w^4"
                     % ("red" if red else "blue", e.eid))
    # anchored planarity of the parts
    from .planarity import is_anchored_planar
    for which in (1, 2):
        part = ci.instance.part_instance(which)
        if not is_anchored_planar(part):
            v.append("part %d is not anchored planar" % which)
    return CheckReport(v)


FAULT_KINDS = ("weight", "endpoint", "disjointness", "spanning", "cap")


def inject_fault(ci: CmInstance, kind: str) -> CmInstance:
    """A structurally broken copy for checker tests."""
    import copy

    bad = copy.deepcopy(ci)
    g = bad.graph
    if kind == "weight":
        q = next(x for x in bad.features["Q"] if x["name"] == "Q1_1")
        eid = q["edges"][0]
        e = g.edge(eid)
        g.edges[eid] = replace(e, weight=bad.w - 1)
    elif kind == "endpoint":
        # reroute the heavy path's last hop away from its anchor
        feat = bad.features["R"]
        wrong = bad.grid.node(1, "M", 1, "T")
        last = feat["edges"][-1]
        e = g.edge(last)
        inner = e.u if e.v == "b" else e.v
        g.edges[last] = replace(e, u=inner, v=wrong)
        feat["vertices"] = feat["vertices"][:-1] + [wrong]
    elif kind == "disjointness":
        q2 = next(x for x in bad.features["Q"] if x["name"] == "Q2_1")
        q3 = next(x for x in bad.features["Q"] if x["name"] == "Q3_1")
        q3["edges"] = [q2["edges"][0]] + q3["edges"][1:]
        q3["vertices"] = [q2["vertices"][0], q2["vertices"][1]] + q3["vertices"][2:]
    elif kind == "spanning":
        # subdivide a pair path's interior edge: the new vertex lies on one
        # family only
        q = next(x for x in bad.features["Q"] if x["name"] == "Q2_1")
        eid = q["edges"][1]
        e = g.edge(eid)
        g.add_vertex("stray", color="red")
        g.edges[eid] = replace(e, v="stray")
        new_eid = g.add_edge("stray", e.v, e.weight, label=e.label)
        q["edges"] = q["edges"][:1] + [eid, new_eid] + q["edges"][2:]
        q["vertices"] = q["vertices"][:2] + ["stray"] + q["vertices"][2:]
    elif kind == "cap":
        eid = bad.features["grid_edges"][0]
        e = g.edge(eid)
        g.edges[eid] = replace(e, weight=bad.w ** 5)
    else:
        raise ValueError("unknown fault %r" % kind)
    return bad


# -- composition -----------------------------------------------------------------------


def shift_constant(k: int, w: PolyLike) -> OmegaPoly:
    """Exact optimum offset that inserting the heavy path adds to the plain
    reduction: (2k+1) w^13 + (k-1)(w-1) w^12."""
    if k < 2:
        raise ValueError("k must be at least 2")
    w = OmegaPoly.coerce(w)
    return (w ** 13) * (2 * k + 1) + (w - 1) * (w ** 12) * (k - 1)


@dataclass
class ComposedInstance:
    instance: PPInstance
    frame: Frame
    cm: CmInstance
    certificate_offset: OmegaPoly
    rename: dict[str, str]
    identify_r0_b0: bool


def certificate_offset(k: int) -> OmegaPoly:
    """gamma(k) - (3k omega^52 - k omega^48): the exact additive constant
    between the composed optimum and the embedded instance's optimum."""
    return gamma(k) - (W(52, 3 * k) - W(48, k))


def compose_with_frame(ci: CmInstance, omega_check: Optional[int] = None,
                       identify_r0_b0: bool = False) -> ComposedInstance:
    """Union of the frame and the reduction instance with the crossing-path
    family and the heavy path identified: red anchors a_m become the center
    path's interior vertices, bp becomes the frame's c2 and b its d2.

    The instance's w must be omega^4.  With a concrete omega_check the
    precondition omega > m^2 (m = simplified edge count) is enforced.
    """
    k = ci.k
    if ci.w != W(4):
        raise ValueError("composition requires the instance built at w = omega^4")
    frame = build_frame(FrameParams(k))
    fg = frame.graph

    # drop the frame's canonical crossing paths and its single heavy edge
    drop_vertices = set()
    drop_edges = set()
    for q in frame.features["Q"]:
        drop_vertices.update(x for x in q["vertices"]
                             if not x.startswith("r0_"))
        drop_edges.update(q["edges"])
    for e in fg.edges:
        if e.label == "R":
            drop_edges.add(e.eid)

    rename = {"bp": "c2", "b": "d2"}
    for m in range(1, 4 * k + 1):
        rename["a_%d" % m] = "r0_%d" % m

    g = WeightedMultigraph()
    for vx in fg.vertices.values():
        if vx.id not in drop_vertices:
            g.add_vertex(vx.id, vx.label, vx.color)
    frame_edge_map: dict[int, int] = {}
    for e in fg.edges:
        if e.eid in drop_edges:
            continue
        frame_edge_map[e.eid] = g.add_edge(e.u, e.v, e.weight, e.label,
                                           e.forbidden)
    cg = ci.graph
    cm_vertex_map: dict[str, str] = {}
    for vx in cg.vertices.values():
        nid = rename.get(vx.id, vx.id)
        cm_vertex_map[vx.id] = nid
        if nid not in g.vertices:
            g.add_vertex(nid, vx.label, vx.color)
    cm_edge_map: dict[int, int] = {}
    for e in cg.edges:
        cm_edge_map[e.eid] = g.add_edge(cm_vertex_map[e.u], cm_vertex_map[e.v],
                                        e.weight, e.label, e.forbidden)

    m_simple = len({frozenset((e.u, e.v)) for e in g.edges})
    if omega_check is not None and omega_check <= m_simple ** 2:
        raise ValueError("omega must exceed m^2 = %d for this instance"
                         % m_simple ** 2)

    anchors: tuple[str, ...]
    if identify_r0_b0:
        merged = WeightedMultigraph()
        for vx in g.vertices.values():
            if vx.id != "b0":
                merged.add_vertex(vx.id, vx.label, vx.color)
        for e in g.edges:
            u = "r0" if e.u == "b0" else e.u
            v = "r0" if e.v == "b0" else e.v
            merged.add_edge(u, v, e.weight, e.label, e.forbidden)
        g = merged
        anchors = ("r2", "b4", "r4", "d1", "r0")
        red = {v for v in g.vertices if g.vertices[v].color == "red"}
        blue = {v for v in g.vertices
                if g.vertices[v].color == "blue"} | {"r0"}
        inst = PPInstance.build(g, anchors, red, blue,
                                allow_shared_anchors=True)
    else:
        anchors = ("r2", "b4", "r4", "d1", "r0", "b0")
        red = {v for v in g.vertices if g.vertices[v].color == "red"}
        blue = {v for v in g.vertices if g.vertices[v].color == "blue"}
        inst = PPInstance.build(g, anchors, red, blue)
    return ComposedInstance(inst, frame, ci, certificate_offset(k), rename,
                            identify_r0_b0)


def pasted_layout(comp: ComposedInstance,
                  assign: Optional[dict[int, bool]] = None) -> Layout:
    """The composed drawing: the frame's normal layout with the embedded
    instance drawn inside the gadget region (its exits dive through the
    upper blue path to the identified anchors)."""
    ci = comp.cm
    k = ci.k
    assign = assign if assign is not None else full_assignment(ci)
    inner = assignment_layout(ci, assign)
    g = comp.instance.graph
    lay = Layout(g)
    frame_lay = comp.frame.layout
    fg = comp.frame.graph

    rn = comp.rename
    cg = ci.graph
    present = set(g.vertices)
    for vid, pt in frame_lay.pos.items():
        if vid in present:
            lay.pos[vid] = pt
    for vid, pt in inner.pos.items():
        nid = rn.get(vid, vid)
        if nid in present and nid not in lay.pos:
            lay.pos[nid] = pt
    # edges keep their routes (matched by endpoints, label, and weight)
    by_sig: dict[tuple, list[int]] = {}
    for e in g.edges:
        by_sig.setdefault((e.u, e.v, e.label, e.weight), []).append(e.eid)

    def claim(u, v, label, weight):
        lst = by_sig.get((u, v, label, weight)) or by_sig.get(
            (v, u, label, weight))
        if not lst:
            raise KeyError("composed edge %s-%s (%s) missing" % (u, v, label))
        return lst.pop(0)

    for e in fg.edges:
        if e.label in ("R",) or e.label is None:
            continue
        if e.label.startswith(("Q1", "Q2", "Q3")):
            continue
        eid = claim(e.u, e.v, e.label, e.weight)
        pts = frame_lay.routes.get(e.eid)
        way = [(p[0], p[1]) for p in pts[1:-1]] if pts else []
        lay.route(eid, way)
    for e in cg.edges:
        u, v = rn.get(e.u, e.u), rn.get(e.v, e.v)
        eid = claim(u, v, e.label, e.weight)
        pts = inner.routes.get(e.eid)
        way = [(p[0], p[1]) for p in pts[1:-1]] if pts else []
        lay.route(eid, way)
    return lay


def pasted_drawing(comp: ComposedInstance,
                   assign: Optional[dict[int, bool]] = None) -> Planarization:
    return pasted_layout(comp, assign).planarization()
