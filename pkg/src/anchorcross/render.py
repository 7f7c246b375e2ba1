"""DOT and SVG output.

Gadget layouts (frames, reduction instances, pasted compositions) render
from their exact coordinates, which reproduces the layered band structure
of the construction; plain graphs fall back to a deterministic circular
arrangement.  Output is plain text, stable across runs for a fixed input.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .geometry import Layout
from .graph import WeightedMultigraph

_COLORS = {"red": "#b03030", "blue": "#3050b0", None: "#303030"}


def to_dot(g: WeightedMultigraph, name: str = "anchorcross") -> str:
    lines = ["graph %s {" % name, "  node [shape=point];"]
    for v in g.vertices.values():
        color = _COLORS.get(v.color, "#303030")
        lines.append('  "%s" [color="%s"];' % (v.id, color))
    for e in g.edges:
        style = ' style=dashed' if e.forbidden else ""
        lines.append('  "%s" -- "%s" [label="%s"%s];'
                     % (e.u, e.v, e.weight, style))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _circle_positions(g: WeightedMultigraph) -> dict:
    ids = sorted(g.vertices)
    n = max(1, len(ids))
    r = 40 * n / (2 * math.pi) + 40
    return {vid: (r * math.cos(2 * math.pi * i / n),
                  r * math.sin(2 * math.pi * i / n))
            for i, vid in enumerate(ids)}


def to_svg(g: WeightedMultigraph, layout: Optional[Layout] = None) -> str:
    if layout is not None and layout.pos:
        pos = {v: (float(x), float(-y)) for v, (x, y) in layout.pos.items()}
        routes = {eid: [(float(x), float(-y)) for x, y in pts]
                  for eid, pts in layout.routes.items()}
    else:
        pos = _circle_positions(g)
        routes = {}
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    pad = 20.0
    x0, y0 = min(xs) - pad, min(ys) - pad
    wserialize = (max(xs) - min(xs)) + 2 * pad
    h = (max(ys) - min(ys)) + 2 * pad
    out = ['<svg xmlns="http://www.w3.org/2000/svg" viewBox="%.1f %.1f %.1f %.1f">'
           % (x0, y0, wserialize, h)]
    for e in g.edges:
        pts = routes.get(e.eid) or [pos[e.u], pos[e.v]]
        path = "M " + " L ".join("%.2f %.2f" % (x, y) for x, y in pts)
        color = _COLORS.get(g.vertices[e.u].color, "#303030")
        dash = ' stroke-dasharray="4 2"' if e.forbidden else ""
        out.append('<path d="%s" fill="none" stroke="%s" stroke-width="0.8"%s/>'
                   % (path, color, dash))
    for v in g.vertices.values():
        x, y = pos[v.id]
        out.append('<circle cx="%.2f" cy="%.2f" r="1.6" fill="%s"/>'
                   % (x, y, _COLORS.get(v.color, "#303030")))
    out.append("</svg>")
    return "\n".join(out) + "\n"
