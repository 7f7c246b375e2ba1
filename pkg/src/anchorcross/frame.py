"""The 3+3-anchor frame gadget.

build_frame constructs the two-part anchored instance (red: center path P0,
cycle C0, rungs and straps, plus the canonical crossing-path family Q;
blue: paths P1 and P2, the heavy middle edge, the vertical family, the
heavy path R and the top arc) together with an exact rational layout of its
normal drawing.  gamma(k) is the closed-form optimum; gamma_plus(k) the
rigidity slack.  perturbation_penalty rebuilds the layout with one
catalogued slide applied and reports the exact weight increase.

The omega-power weight schedules follow the construction exactly; the
normal drawing reproduces gamma(k) on every coefficient of exponent >= 52.
The only residue sits at omega^48: the canonical crossing-path family has
k-1 paths of weight w-1 rather than the k the closed form charges for, so
the drawing weighs exactly gamma(k) + omega^48.  The counting oracle
reports this residue instead of hiding it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .geometry import Layout
from .graph import PPInstance, WeightedMultigraph
from .omega import OmegaPoly, W
from .solver import Planarization, drawing_weight


@dataclass(frozen=True)
class FrameParams:
    k: int
    omega: Union[str, int] = "symbolic"

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("frame parameter k must be at least 2")
        if isinstance(self.omega, int):
            if self.omega < 2:
                raise ValueError("concrete omega must be at least 2")
            if self.omega % (5 * (5 * self.k + 7)) != 0:
                raise ValueError(
                    "concrete omega must be a multiple of 5*(5k+7) so every "
                    "weight evaluates to an integer")
        elif self.omega != "symbolic":
            raise ValueError("omega must be 'symbolic' or an integer")


@dataclass
class Frame:
    params: FrameParams
    instance: PPInstance
    features: dict
    layout: Layout

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def graph(self) -> WeightedMultigraph:
        return self.instance.graph


# -- weight schedules -------------------------------------------------------------


def p0_weight(k: int, i: int) -> OmegaPoly:
    """Center-path edge weight at distance i from the middle edge (i = 0),
    one half; the other half mirrors it."""
    if not 0 <= i <= 2 * k + 1:
        raise IndexError("p0 position out of range")
    return W(41) + W(30, Fraction(i * (i + 1), 5 * k + 7))


def p1_weight(k: int, i: int) -> OmegaPoly:
    """Lower blue path edge weight at distance i from its middle vertex."""
    if not 0 <= i <= 2 * k + 1:
        raise IndexError("p1 position out of range")
    w = W(49) + W(30, Fraction(i * (i + 2), 5 * k + 7))
    if i > k:
        w = w + W(35, Fraction(2, 5))
    return w


def p2_weight(k: int, i: int) -> OmegaPoly:
    """Upper blue path edge weight at distance i from its middle vertex
    (edges 0..k inner, k+1..2k outer)."""
    if not 0 <= i <= 2 * k:
        raise IndexError("p2 position out of range")
    if i <= k:
        return W(38)
    return W(38) + W(35, Fraction(4, 5))


def c1(k: int) -> Fraction:
    """Coefficient of omega^65 in the optimum: the normal drawing's exact
    total there (2k straps against the 2/5-weighted sections plus the two
    omega^35 verticals against the center path's (k+1)(k+2) edges)."""
    return Fraction(30 * k * k + 58 * k + 20, 5 * (5 * k + 7))


def c2(k: int) -> Fraction:
    """Coefficient of omega^60 in the optimum (both halves of the
    strap-versus-path double sum)."""
    return Fraction(2 * (16 * k ** 3 + 39 * k * k + 20 * k), 3 * (5 * k + 7))


def gamma(k: int) -> OmegaPoly:
    """Closed-form optimal crossing weight of the frame, symbolic in omega."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return (W(90, 2) - W(89) + W(79, 4 * k + 2) + W(76, 2) - W(75)
            + W(71, 4 * k) + W(65, c1(k)) + W(60, c2(k))
            + W(52, 3 * k) - W(48, k) + W(42, 6 * k)
            + W(39, Fraction(12 * k, 5)))


def gamma_plus(k: int) -> OmegaPoly:
    """Rigidity slack: drawings within gamma_plus are shaped like the
    normal drawing outside the crossing-path family."""
    return gamma(k) + W(34) - W(30) - OmegaPoly.const(1)


# -- construction -------------------------------------------------------------------


def _mirror_positions(k: int):
    """Shared x-coordinates of the construction (right half; left mirrors)."""
    # center-path interior vertices sit at 13 + 25i, the lower/upper blue
    # vertices at 25i - 5; every vertical keeps 7+ units of clearance
    return {
        "p0": lambda i: 13 + 25 * i,          # i = 1..2k right interiors
        "blue": lambda i: 25 * i - 5,          # i-th blue vertical position
    }


def build_frame(params: FrameParams) -> Frame:
    """The frame instance plus its normal-drawing layout."""
    k = params.k
    g = WeightedMultigraph()
    lay = Layout(g)
    F: dict = {"k": k}

    def add(vid, x, y, color):
        g.add_vertex(vid, color=color)
        lay.place(vid, x, y)
        return vid

    # ---- red center path P0 (y = 0) --------------------------------------------
    p0_names = (["r0"] + ["r0_%d" % j for j in range(1, 2 * k + 1)]
                + ["r1", "r3"] + ["r0_%d" % j for j in range(2 * k + 1, 4 * k + 1)]
                + ["r4"])
    xs: dict[str, int] = {}
    add("r1", -13, 0, "red")
    add("r3", 13, 0, "red")
    xs["r1"], xs["r3"] = -13, 13
    for i in range(1, 2 * k + 1):
        xs["r0_%d" % (2 * k + i)] = 13 + 25 * i
        add("r0_%d" % (2 * k + i), 13 + 25 * i, 0, "red")
        xs["r0_%d" % (2 * k + 1 - i)] = -(13 + 25 * i)
        add("r0_%d" % (2 * k + 1 - i), -(13 + 25 * i), 0, "red")
    xs["r4"] = 13 + 25 * (2 * k + 1)
    xs["r0"] = -xs["r4"]
    add("r4", xs["r4"], 0, "red")
    add("r0", xs["r0"], 0, "red")
    p0_eids = []
    # right-half distances: edge i joins position i-1 and i outward from r1r3
    def p0_dist(u, v):
        a, b = sorted((xs[u], xs[v]))
        # distance index: 0 for the middle edge, else by outward position
        if (u, v) in (("r1", "r3"), ("r3", "r1")):
            return 0
        m = max(abs(a), abs(b))
        return (m - 13) // 25 + (0 if m == 13 else 0)

    for u, v in zip(p0_names, p0_names[1:]):
        hi = max(abs(xs[u]), abs(xs[v]))
        dist = 0 if hi == 13 else (hi - 13) // 25
        p0_eids.append(g.add_edge(u, v, p0_weight(k, dist), label="P0"))
    F["P0"] = p0_names

    # ---- red cycle C0 and rungs --------------------------------------------------
    add("r2", 0, -200 - 20 * k, "red")
    add("r1p", -10, -100, "red")
    add("r3p", 10, -100, "red")
    for i in range(1, 2 * k + 1):
        add("s0_%d" % (2 * k + i), i, -100 - 10 * i, "red")
        add("s0_%d" % (2 * k + 1 - i), -i, -100 - 10 * i, "red")
    c0_names = (["r2"] + ["s0_%d" % j for j in range(1, 2 * k + 1)]
                + ["r1p", "r3p"]
                + ["s0_%d" % j for j in range(2 * k + 1, 4 * k + 1)] + ["r2"])
    c0_eids = [g.add_edge(u, v, W(49), label="C0")
               for u, v in zip(c0_names, c0_names[1:])]
    F["C0"] = c0_names[:-1]
    rung1 = g.add_edge("r1", "r1p", W(41) - W(40), label="rung")
    rung3 = g.add_edge("r3", "r3p", W(41) - W(40), label="rung")
    red_straps = {}
    for i in range(1, 2 * k + 1):
        m = 2 * k + i
        eid = g.add_edge("r0_%d" % m, "s0_%d" % m, W(30), label="strap-red")
        lay.route(eid, [(13 + 25 * i, -100 - 10 * i)])
        red_straps[m] = eid
        m2 = 2 * k + 1 - i
        eid = g.add_edge("r0_%d" % m2, "s0_%d" % m2, W(30), label="strap-red")
        lay.route(eid, [(-(13 + 25 * i), -100 - 10 * i)])
        red_straps[m2] = eid

    # ---- blue lower path P1 (y = -60) ---------------------------------------------
    add("b2", 0, -60, "blue")
    bx: dict[str, int] = {"b2": 0}
    right_p1 = ["b2"]
    for i in range(1, k + 1):
        right_p1.append("b0_%d" % (2 * k + i))
    right_p1.append("b3")
    for i in range(1, k + 1):
        right_p1.append("b0_%d" % (3 * k + i))
    right_p1.append("b4")
    left_p1 = ["b2"]
    for i in range(1, k + 1):
        left_p1.append("b0_%d" % (2 * k + 1 - i))
    left_p1.append("b1")
    for i in range(1, k + 1):
        left_p1.append("b0_%d" % (k + 1 - i))
    left_p1.append("b0")
    for pos, name in enumerate(right_p1[1:], start=1):
        bx[name] = 25 * pos - 5
        add(name, 25 * pos - 5, -60, "blue")
    for pos, name in enumerate(left_p1[1:], start=1):
        bx[name] = -(25 * pos - 5)
        add(name, -(25 * pos - 5), -60, "blue")
    p1_eids = []
    for names in (right_p1, left_p1):
        for pos, (u, v) in enumerate(zip(names, names[1:])):
            p1_eids.append(g.add_edge(u, v, p1_weight(k, pos), label="P1"))
    F["P1"] = list(reversed(left_p1)) + right_p1[1:]

    # ---- blue upper path P2 (y = 60) -----------------------------------------------
    add("c2", 0, 60, "blue")
    cx: dict[str, int] = {"c2": 0}
    right_p2 = ["c2"]
    for i in range(1, k + 1):
        right_p2.append("c0_%d" % (2 * k + i))
    right_p2.append("c3")
    for i in range(1, k + 1):
        right_p2.append("c0_%d" % (3 * k + i))
    left_p2 = ["c2"]
    for i in range(1, k + 1):
        left_p2.append("c0_%d" % (2 * k + 1 - i))
    left_p2.append("c1")
    for i in range(1, k + 1):
        left_p2.append("c0_%d" % (k + 1 - i))
    for pos, name in enumerate(right_p2[1:], start=1):
        cx[name] = 25 * pos - 5
        add(name, 25 * pos - 5, 60, "blue")
    for pos, name in enumerate(left_p2[1:], start=1):
        cx[name] = -(25 * pos - 5)
        add(name, -(25 * pos - 5), 60, "blue")
    p2_eids = []
    for names in (right_p2, left_p2):
        for pos, (u, v) in enumerate(zip(names, names[1:])):
            p2_eids.append(g.add_edge(u, v, p2_weight(k, pos), label="P2"))
    F["P2"] = list(reversed(left_p2)) + right_p2[1:]

    # ---- blue verticals ---------------------------------------------------------------
    b2c2 = g.add_edge("b2", "c2", W(48) + W(38, 2) - W(34), label="mid")
    b1c1 = g.add_edge("b1", "c1", W(35), label="side")
    b3c3 = g.add_edge("b3", "c3", W(35), label="side")
    blue_straps = {}
    for m in list(range(1, 4 * k + 1)):
        bu = "b0_%d" % m
        cu = "c0_%d" % m
        blue_straps[m] = g.add_edge(bu, cu, W(30), label="strap-blue")

    # ---- heavy path R and the top arc ----------------------------------------------
    add("d2", 0, 400, "blue")
    add("d0", -(50 * k + 40), 400, "blue")
    add("d4", 50 * k + 40, 400, "blue")
    add("d1", 0, 500, "blue")
    r_eid = g.add_edge("c2", "d2", W(48), label="R")
    F["R"] = ["c2", "d2"]
    top_eids = [
        g.add_edge("c0_1", "d0", W(49), label="top"),
        g.add_edge("d0", "d1", W(49), label="top"),
        g.add_edge("d0", "d2", W(49), label="top"),
        g.add_edge("d1", "d2", W(49), label="top"),
        g.add_edge("d1", "d4", W(49), label="top"),
        g.add_edge("d2", "d4", W(49), label="top"),
        g.add_edge("d4", "c0_%d" % (4 * k), W(49), label="top"),
    ]

    # ---- the canonical crossing-path family Q -----------------------------------------
    # Levels of the a_i -> a_{3k+1-i} paths and the overpass heights of the
    # a_{k+j} -> a_{4k+1-j} pairs; meets are shared vertices.
    def ax(m: int) -> int:
        return xs["r0_%d" % m]

    y1 = {i: 100 + 10 * (k - i) for i in range(1, k + 1)}
    y2q2 = {j: 10 * k + 98 + 4 * (k + 1 - j) for j in range(1, k + 1)}
    y2q3 = {j: y2q2[j] - 2 for j in range(1, k + 1)}
    for j in range(1, k + 1):
        for i in range(1, k + 1):
            add("m2_%d_%d" % (j, i), ax(k + j) - 2, y1[i], "red")
            add("m3_%d_%d" % (j, i), ax(k + j) + 2, y1[i], "red")
    for i in range(1, k + 1):
        add("qv_%d" % i, 5, y1[i], "red")

    q_paths = []
    for i in range(1, k + 1):
        end = 2 * k + 1 if i == k else 3 * k + 1 - i
        seq = ["r0_%d" % i]
        for j in range(1, k + 1):
            seq += ["m2_%d_%d" % (j, i), "m3_%d_%d" % (j, i)]
        seq += ["qv_%d" % i, "r0_%d" % end]
        interior = W(4) - 1 if i < k else W(4)
        eids = []
        for t, (u, v) in enumerate(zip(seq, seq[1:])):
            wt = W(4) if t in (0, len(seq) - 2) else interior
            eid = g.add_edge(u, v, wt, label="Q1_%d" % i)
            eids.append(eid)
        # routing: the first edge ascends at the left anchor; the last edge
        # runs from qv to above the right anchor, then drops
        lay.route(eids[0], [(ax(i), y1[i])])
        lay.route(eids[-1], [(ax(end), y1[i])])
        q_paths.append({"name": "Q1_%d" % i, "vertices": seq, "edges": eids,
                        "kind": "level", "level": y1[i]})
    for j in range(1, k + 1):
        start = k + j
        end = 4 * k + 1 - j
        for fam, dx, ceiling in (("Q2", -2, y2q2[j]), ("Q3", 2, y2q3[j])):
            mpref = "m2" if fam == "Q2" else "m3"
            seq = (["r0_%d" % start]
                   + ["%s_%d_%d" % (mpref, j, i) for i in range(k, 0, -1)]
                   + ["r0_%d" % end])
            eids = []
            for t, (u, v) in enumerate(zip(seq, seq[1:])):
                eid = g.add_edge(u, v, W(4), label="%s_%d" % (fam, j))
                eids.append(eid)
            lay.route(eids[-1], [(ax(start) + dx, ceiling),
                                 (ax(end) - dx, ceiling),
                                 (ax(end) - dx, 20)])
            q_paths.append({"name": "%s_%d" % (fam, j), "vertices": seq,
                            "edges": eids, "kind": "overpass",
                            "level": ceiling})
    F["Q"] = q_paths
    F["anchors_red"] = ["r0", "r2", "r4"]
    F["anchors_blue"] = ["b0", "d1", "b4"]

    red = {v for v in g.vertices if g.vertices[v].color == "red"}
    blue = {v for v in g.vertices if g.vertices[v].color == "blue"}
    inst = PPInstance.build(g, ("r2", "b4", "r4", "d1", "r0", "b0"), red, blue)
    return Frame(params, inst, F, lay)


def normal_drawing(frame: Frame) -> Planarization:
    """The canonical optimal-shape drawing, extracted from the layout."""
    return frame.layout.planarization()


def normal_drawing_weight(frame: Frame) -> OmegaPoly:
    return drawing_weight(frame.graph, normal_drawing(frame))


def counting_report(frame: Frame) -> dict:
    """Counting oracle: exact residue of the normal drawing against the
    closed form, split into the documented omega^48 ambiguity and anything
    else (which callers should treat as an error)."""
    k = frame.k
    total = normal_drawing_weight(frame)
    residue = total - gamma(k)
    documented = {e: c for e, c in residue.terms if e == 48}
    other = {e: c for e, c in residue.terms if e != 48}
    return {
        "k": k,
        "normal_weight": total,
        "gamma": gamma(k),
        "residue": residue,
        "residue_at_48": documented.get(48, Fraction(0)),
        "unexplained": other,
        "crossings": normal_drawing(frame).crossing_count(),
    }


# -- perturbations ----------------------------------------------------------------------


CATALOGUE = ("vertex_slide_left", "vertex_slide_right", "b3c3_slide_left",
             "b3c3_slide_right", "strap_hop_left", "strap_hop_right", "null")


def _perturbed_layout(frame: Frame, move: str, i: Optional[int]) -> Layout:
    """Rebuild the frame layout with one right-half slide applied."""
    k = frame.k
    base = build_frame(frame.params)  # fresh layout to mutate
    lay = base.layout
    g = base.graph

    def strap_eid(m: int) -> int:
        for e in g.edges:
            if e.label == "strap-red" and "r0_%d" % m in (e.u, e.v):
                return e.eid
        raise KeyError(m)

    if move == "null":
        return lay
    if move in ("vertex_slide_left", "vertex_slide_right", "b3c3_slide_left",
                "b3c3_slide_right"):
        if move == "b3c3_slide_right":
            i = k
            new_x = 25 * k + 24
        elif move == "b3c3_slide_left":
            i = k + 1
            new_x = 25 * (k + 1) - 9
        elif move == "vertex_slide_left":
            if i is None or not 1 <= i <= 2 * k or i == k + 1:
                raise ValueError("vertex_slide_left needs i in 1..2k, i != k+1")
            new_x = 25 * i - 9
        else:
            if i is None or not 1 <= i <= 2 * k - 1 or i == k:
                raise ValueError("vertex_slide_right needs i in 1..2k-1, i != k")
            new_x = 25 * i + 24
        m = 2 * k + i
        vid = "r0_%d" % m
        lay.place(vid, new_x, 0)
        lay.route(strap_eid(m), [(new_x, -100 - 10 * i)])
        # crossing paths attached at this anchor keep their vertical drops
        for q in base.features["Q"]:
            eids = q["edges"]
            verts = q["vertices"]
            if verts[0] == vid and q["kind"] == "level":
                lay.route(eids[0], [(new_x, q["level"])])
            if verts[-1] == vid and q["kind"] == "level":
                lay.route(eids[-1], [(new_x, q["level"])])
            if verts[-1] == vid and q["kind"] == "overpass":
                start_x = lay.pos[verts[0]][0]
                dx = -2 if q["name"].startswith("Q2") else 2
                lay.route(eids[-1], [(start_x + dx, q["level"]),
                                     (Fraction(new_x) - dx, q["level"]),
                                     (Fraction(new_x) - dx, 20)])
            if verts[0] == vid and q["kind"] == "overpass":
                raise AssertionError("pairs start on the left half only")
        return lay
    if move in ("strap_hop_left", "strap_hop_right"):
        if i is None or not 1 <= i <= 2 * k:
            raise ValueError("strap hops need i in 1..2k")
        if move == "strap_hop_left" and i == k + 1:
            raise ValueError("hopping left across the heavy vertical is the "
                             "b3c3 case")
        if move == "strap_hop_right" and i == k:
            raise ValueError("hopping right across the heavy vertical is the "
                             "b3c3 case")
        m = 2 * k + i
        hop_x = 25 * i - 9 if move == "strap_hop_left" else 25 * i + 24
        lay.route(strap_eid(m), [(hop_x, -45), (hop_x, -100 - 10 * i)])
        return lay
    raise ValueError("unknown move %r (catalogue: %s)" % (move, CATALOGUE))


def perturbation_penalty(frame: Frame, move: str,
                         i: Optional[int] = None) -> OmegaPoly:
    """drawing_weight(perturbed) - drawing_weight(normal), exact."""
    lay = _perturbed_layout(frame, move, i)
    perturbed = lay.planarization()
    return drawing_weight(frame.graph, perturbed) - normal_drawing_weight(frame)
