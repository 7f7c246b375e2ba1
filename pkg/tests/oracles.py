"""Independent oracles for the test suite.

brute_force_crossing_number enumerates good planarizations by increasing
crossing count with no pruning; with unit weights the first realizable size
is the crossing number.  exhaustive_rotation_planar tries every rotation
system of a small graph, an embedding-level planarity oracle.
"""

from __future__ import annotations

import itertools
from typing import Optional

from anchorcross.graph import WeightedMultigraph
from anchorcross.planarity import RotationSystem, faces
from anchorcross.solver import Planarization, derived_graph
from anchorcross.planarity import is_planar


def _orderings(subset):
    per: dict[int, list[int]] = {}
    for a, b in subset:
        per.setdefault(a, []).append(b)
        per.setdefault(b, []).append(a)
    multi = [e for e, ps in per.items() if len(ps) > 1]
    if not multi:
        yield Planarization({e: tuple(ps) for e, ps in per.items()})
        return
    perms = [list(itertools.permutations(per[e])) for e in multi]
    for combo in itertools.product(*perms):
        cr = {e: tuple(ps) for e, ps in per.items() if len(ps) == 1}
        for e, pm in zip(multi, combo):
            cr[e] = tuple(pm)
        yield Planarization(cr)


def brute_force_crossing_number(g: WeightedMultigraph,
                                cap: int = 6) -> Optional[int]:
    """Minimum number of crossings over good drawings of a unit-weight
    graph, by exhaustive enumeration (None if above the cap)."""
    assert all(e.weight == 1 or str(e.weight) == "1" for e in g.edges if not e.forbidden)
    cand = [(a.eid, b.eid) for i, a in enumerate(g.edges)
            for b in g.edges[i + 1:]
            if not a.forbidden and not b.forbidden and not a.touches(b)]
    for r in range(cap + 1):
        for subset in itertools.combinations(cand, r):
            for p in _orderings(subset):
                ok, _ = is_planar(derived_graph(g, p))
                if ok:
                    return r
    return None


def exhaustive_rotation_planar(g: WeightedMultigraph) -> bool:
    """True iff some rotation system of g embeds in the plane (Euler face
    count); exponential, for graphs with at most ~8 vertices."""
    ends: dict[str, list] = {v: [] for v in g.vertices}
    for e in g.edges:
        ends[e.u].append((e.eid, 0))
        ends[e.v].append((e.eid, 1))
    vids = sorted(g.vertices)
    choices = []
    for v in vids:
        hs = ends[v]
        if len(hs) <= 2:
            choices.append([tuple(hs)])
        else:
            first = hs[0]
            choices.append([(first,) + rest
                            for rest in itertools.permutations(hs[1:])])
    for combo in itertools.product(*choices):
        rs = RotationSystem(dict(zip(vids, combo)))
        try:
            faces(rs, g)
            return True
        except ValueError:
            continue
    return False
