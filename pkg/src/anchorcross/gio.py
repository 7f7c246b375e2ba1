"""Graph JSON and DIMACS CNF parsing / serialization.

Graph files carry vertices (id, optional label/color), edges with exact
weight terms [[exponent, numerator, denominator], ...], optional anchors,
optional parts, and optional planarization and feature blocks.  Ids are
strings.  Round-trips are identities on normalized instances.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Union

from .graph import (AnchoredInstance, CnfFormula, PPInstance,
                    WeightedMultigraph)
from .omega import OmegaPoly
from .solver import Planarization


class ParseError(ValueError):
    pass


def poly_to_terms(p: OmegaPoly) -> list[list[int]]:
    return [[e, c.numerator, c.denominator] for e, c in p.terms]


def poly_from_terms(terms) -> OmegaPoly:
    try:
        return OmegaPoly([(int(e), Fraction(int(num), int(den)))
                          for e, num, den in terms])
    except (TypeError, ValueError) as exc:
        raise ParseError("bad weight terms %r: %s" % (terms, exc))


Instance = Union[WeightedMultigraph, AnchoredInstance, PPInstance]


def serialize_graph(obj: Instance,
                    planarization: Optional[Planarization] = None,
                    features: Optional[dict] = None) -> str:
    if isinstance(obj, PPInstance):
        g, anchors = obj.graph, list(obj.anchors)
        parts = {"p1": sorted(obj.part1), "p2": sorted(obj.part2)}
        shared = obj.allow_shared_anchors
    elif isinstance(obj, AnchoredInstance):
        g, anchors, parts, shared = obj.graph, list(obj.anchors), None, False
    else:
        g, anchors, parts, shared = obj, [], None, False
    doc: dict = {
        "vertices": [
            {"id": v.id, **({"label": v.label} if v.label else {}),
             **({"color": v.color} if v.color else {})}
            for v in g.vertices.values()],
        "edges": [
            {"u": e.u, "v": e.v, "w": {"terms": poly_to_terms(e.weight)},
             **({"label": e.label} if e.label else {}),
             **({"forbidden": True} if e.forbidden else {})}
            for e in g.edges],
        "anchors": anchors,
    }
    if parts is not None:
        doc["parts"] = parts
        if shared:
            doc["allow_shared_anchors"] = True
    if planarization is not None:
        doc["planarization"] = {str(eid): list(ps)
                                for eid, ps in planarization.crossings.items()}
    if features is not None:
        doc["features"] = _features_jsonable(features)
    return json.dumps(doc, indent=1, sort_keys=True)


def _features_jsonable(obj):
    if isinstance(obj, OmegaPoly):
        return {"omega_poly": poly_to_terms(obj)}
    if isinstance(obj, Fraction):
        return {"fraction": [obj.numerator, obj.denominator]}
    if isinstance(obj, dict):
        return {str(k): _features_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_features_jsonable(x) for x in obj]
    return obj


def parse_graph(text: str) -> Instance:
    """Graph / anchored instance / PP instance from JSON (by content)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("not valid JSON: %s" % exc)
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise ParseError("graph JSON needs 'vertices' and 'edges'")
    g = WeightedMultigraph()
    for i, vx in enumerate(doc["vertices"]):
        if "id" not in vx:
            raise ParseError("vertex %d lacks an id" % i)
        g.add_vertex(str(vx["id"]), vx.get("label"), vx.get("color"))
    for i, ed in enumerate(doc["edges"]):
        try:
            u, v = str(ed["u"]), str(ed["v"])
        except KeyError as exc:
            raise ParseError("edge %d lacks %s" % (i, exc))
        if "w" in ed:
            w = poly_from_terms(ed["w"].get("terms", []))
        else:
            w = OmegaPoly.const(1)
        try:
            g.add_edge(u, v, w, ed.get("label"), bool(ed.get("forbidden")))
        except ValueError as exc:
            raise ParseError("edge %d: %s" % (i, exc))
    anchors = [str(a) for a in doc.get("anchors", [])]
    for a in anchors:
        if a not in g.vertices:
            raise ParseError("anchor %r is not a vertex" % a)
    if "parts" in doc:
        p = doc["parts"]
        return PPInstance.build(g, anchors, set(map(str, p["p1"])),
                                set(map(str, p["p2"])),
                                bool(doc.get("allow_shared_anchors")))
    if anchors:
        return AnchoredInstance(g, tuple(anchors))
    return g


def parse_planarization(text: str) -> Optional[Planarization]:
    doc = json.loads(text)
    block = doc.get("planarization")
    if block is None:
        return None
    return Planarization({int(eid): tuple(int(p) for p in ps)
                          for eid, ps in block.items()})


def parse_dimacs(text: str) -> CnfFormula:
    """DIMACS CNF; clauses are zero-terminated literal lines."""
    num_vars = None
    num_clauses = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError("line %d: bad problem line %r" % (lineno, raw))
            num_vars, num_clauses = int(fields[2]), int(fields[3])
            continue
        if num_vars is None:
            raise ParseError("line %d: clause before the problem line" % lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError("line %d: bad literal %r" % (lineno, tok))
            if lit == 0:
                if not pending:
                    raise ParseError("line %d: empty clause" % lineno)
                clauses.append(tuple(pending))
                pending = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError("line %d: literal %d out of range"
                                     % (lineno, lit))
                pending.append(lit)
    if pending:
        clauses.append(tuple(pending))
    if num_vars is None:
        raise ParseError("missing problem line")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise ParseError("expected %d clauses, found %d"
                         % (num_clauses, len(clauses)))
    return CnfFormula(num_vars, tuple(clauses))


def serialize_dimacs(phi: CnfFormula) -> str:
    lines = ["p cnf %d %d" % (phi.num_vars, len(phi.clauses))]
    for cl in phi.clauses:
        lines.append(" ".join(str(l) for l in cl) + " 0")
    return "\n".join(lines) + "\n"
