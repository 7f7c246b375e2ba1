"""Exact weighted / anchored crossing numbers at desk scale.

The search runs over good planarizations: a set of crossing pairs (no pair
of adjacent edges, each unordered pair at most once, never a forbidden
edge) plus an ordering of the crossings along every edge.  A set is
realizable iff some ordering makes the derived graph (crossings replaced by
degree-4 dummy vertices) planar; the minimum total weight of a realizable
set equals the weighted crossing number, because some optimal drawing is
good and positive weights let touchings only improve.

Search shape: best-first over crossing sets, keyed by an exact
at-large-omega lower bound (set weight plus a Kuratowski packing bound of
the set's own derived graph), with candidate pairs branched lightest first.
Every step of the bound is an exact polynomial comparison; resource caps
surface as an explicit "unknown" verdict, never a wrong number.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

import networkx as nx

from .graph import AnchoredInstance, WeightedMultigraph
from .omega import OmegaPoly
from .planarity import augment_anchored, is_planar

Pair = tuple[int, int]  # crossing pair of edge ids, ordered (small, large)


@dataclass(frozen=True)
class Planarization:
    """Drawing witness: per-edge ordered crossing lists.

    crossings maps edge id -> tuple of partner edge ids in order along the
    edge from its u endpoint.  Symmetry (e lists f iff f lists e) and the
    planarity of the derived graph are checked by verify_drawing.
    """

    crossings: dict[int, tuple[int, ...]]

    def pairs(self) -> list[Pair]:
        out: set[Pair] = set()
        for eid, partners in self.crossings.items():
            for p in partners:
                out.add((min(eid, p), max(eid, p)))
        return sorted(out)

    def crossing_count(self) -> int:
        return len(self.pairs())


def drawing_weight(g: WeightedMultigraph, p: Planarization) -> OmegaPoly:
    """Sum over crossings of the product of the two edge weights."""
    total = OmegaPoly.zero()
    for a, b in p.pairs():
        if a >= len(g.edges) or b >= len(g.edges):
            raise KeyError("planarization references edge missing from graph")
        total = total + g.edge(a).weight * g.edge(b).weight
    return total


def derived_graph(g: WeightedMultigraph, p: Planarization) -> WeightedMultigraph:
    """Replace each crossing by a degree-4 dummy vertex at the recorded ranks."""
    out = WeightedMultigraph()
    for vx in g.vertices.values():
        out.add_vertex(vx.id, vx.label, vx.color)
    dummy_name: dict[Pair, str] = {}
    for a, b in p.pairs():
        name = "__x__%d_%d" % (a, b)
        dummy_name[(a, b)] = name
        out.add_vertex(name)
    for e in g.edges:
        partners = p.crossings.get(e.eid, ())
        chain = [e.u]
        for q in partners:
            chain.append(dummy_name[(min(e.eid, q), max(e.eid, q))])
        chain.append(e.v)
        for x, y in zip(chain, chain[1:]):
            out.add_edge(x, y, e.weight, e.label, e.forbidden)
    return out


def derived_graph_with_origin(g: WeightedMultigraph, p: Planarization):
    """Derived graph plus the original edge id owning each derived segment."""
    d = derived_graph(g, p)
    origin: dict[int, int] = {}
    idx = 0
    for e in g.edges:
        segs = len(p.crossings.get(e.eid, ())) + 1
        for _ in range(segs):
            origin[idx] = e.eid
            idx += 1
    return d, origin


def verify_drawing(g: WeightedMultigraph, p: Planarization) -> bool:
    """Check every Planarization invariant, including derived planarity."""
    try:
        seen_pairs: set[Pair] = set()
        for eid, partners in p.crossings.items():
            if not 0 <= eid < len(g.edges):
                return False
            e = g.edge(eid)
            if e.forbidden and partners:
                return False
            for q in partners:
                if not 0 <= q < len(g.edges):
                    return False
                f = g.edge(q)
                if f.forbidden:
                    return False
                if e.touches(f):
                    return False  # adjacent edges never cross
                if partners.count(q) > 1:
                    return False  # each pair crosses at most once
                seen_pairs.add((min(eid, q), max(eid, q)))
        for a, b in seen_pairs:
            if b not in p.crossings.get(a, ()) or a not in p.crossings.get(b, ()):
                return False
        ok, _ = is_planar(derived_graph(g, p))
        return ok
    except (KeyError, ValueError):
        return False


@dataclass
class SolveStats:
    nodes: int = 0
    planarity_checks: int = 0
    kuratowski_extractions: int = 0
    elapsed: float = 0.0


@dataclass
class SolveResult:
    """status: "optimal", "above_budget", or "unknown" (resource limit)."""

    status: str
    value: Optional[OmegaPoly] = None
    witness: Optional[Planarization] = None
    stats: SolveStats = field(default_factory=SolveStats)


class _Limits:
    def __init__(self, node_cap: Optional[int], time_cap: Optional[float]):
        self.node_cap = node_cap
        self.deadline = time.monotonic() + time_cap if time_cap else None
        self.hit = False

    def check(self, stats: SolveStats) -> bool:
        if self.node_cap is not None and stats.nodes > self.node_cap:
            self.hit = True
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.hit = True
        return self.hit


class _PolyKey:
    """Total-order heap key consistent with at-large-omega comparison."""

    __slots__ = ("poly",)

    def __init__(self, poly: OmegaPoly):
        self.poly = poly

    def __lt__(self, other: "_PolyKey") -> bool:
        return self.poly.cmp_large_omega(other.poly) < 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _PolyKey) and self.poly == other.poly


@dataclass(frozen=True)
class _Constraint:
    """Every drawing in the node's scope crosses one of these pairs: the
    independent-branch pairs of one Kuratowski subdivision whose segments
    live on the recorded original edges."""

    pairs: frozenset[Pair]
    min_weight: OmegaPoly
    edges: frozenset[int]


class _Searcher:
    """Best-first search over crossing-pair sets.

    Every node carries the constraints inherited from its ancestors (each a
    Kuratowski pair set that any drawing in the node's scope must cross).
    Popping a node costs one planarity test per crossing ordering plus one
    fresh Kuratowski extraction per nonplanar ordering; the node's lower
    bound is its weight plus a greedy pairwise-disjoint family of unhit
    constraints.  Deeper nodes win ties, so the search dives; the first
    realizable set popped is optimal.
    """

    ROOT_EXTRACTIONS = 16  # extraction budget for seeding the root pool

    def __init__(self, g: WeightedMultigraph, budget: Optional[OmegaPoly],
                 limits: _Limits, initial: Optional[Planarization]):
        self.g = g
        self.budget = budget
        self.limits = limits
        self.stats = SolveStats()
        self.incumbent_weight: Optional[OmegaPoly] = None
        self.incumbent: Optional[Planarization] = None
        self.pair_weight: dict[Pair, OmegaPoly] = {}
        if initial is not None:
            if not verify_drawing(g, initial):
                raise ValueError("initial witness fails verify_drawing")
            self.incumbent = initial
            self.incumbent_weight = drawing_weight(g, initial)
        self.min_pair_weight: Optional[OmegaPoly] = None
        for i, e in enumerate(g.edges):
            if e.forbidden:
                continue
            for f in g.edges[i + 1:]:
                if f.forbidden or e.touches(f):
                    continue
                w = e.weight * f.weight
                if (self.min_pair_weight is None
                        or w.cmp_large_omega(self.min_pair_weight) < 0):
                    self.min_pair_weight = w

    # -- pair helpers -----------------------------------------------------------

    def weight_of_pair(self, pair: Pair) -> OmegaPoly:
        w = self.pair_weight.get(pair)
        if w is None:
            w = self.g.edge(pair[0]).weight * self.g.edge(pair[1]).weight
            self.pair_weight[pair] = w
        return w

    def admissible_pair(self, a: int, b: int) -> bool:
        if a == b:
            return False
        ea, eb = self.g.edge(a), self.g.edge(b)
        if ea.forbidden or eb.forbidden:
            return False
        return not ea.touches(eb)

    def orderings(self, pairs: frozenset[Pair]) -> list[Planarization]:
        """All planarizations with the given crossing pairs (orderings of the
        crossings along each edge carrying >= 2 of them)."""
        per_edge: dict[int, list[int]] = {}
        for a, b in sorted(pairs):
            per_edge.setdefault(a, []).append(b)
            per_edge.setdefault(b, []).append(a)
        multi = [eid for eid, ps in per_edge.items() if len(ps) > 1]
        if not multi:
            return [Planarization({eid: tuple(ps)
                                   for eid, ps in per_edge.items()})]
        out = []
        perms = [list(itertools.permutations(per_edge[eid])) for eid in multi]
        for combo in itertools.product(*perms):
            cr = {eid: tuple(ps) for eid, ps in per_edge.items() if len(ps) == 1}
            for eid, perm in zip(multi, combo):
                cr[eid] = tuple(perm)
            out.append(Planarization(cr))
        return out

    # -- derived graphs and Kuratowski machinery ---------------------------------

    def _derived_nx(self, p: Planarization):
        """networkx graph of the derived planarization plus a map from nx edge
        back to the ORIGINAL edge id that owns the segment."""
        dummy_name: dict[Pair, str] = {}
        for a, b in p.pairs():
            dummy_name[(a, b)] = "__x__%d_%d" % (a, b)
        G = nx.Graph()
        for v in self.g.vertices:
            G.add_node(v)
        for name in dummy_name.values():
            G.add_node(name)
        owner: dict[frozenset, int] = {}
        helper = 0
        for e in self.g.edges:
            partners = p.crossings.get(e.eid, ())
            chain = [e.u]
            for q in partners:
                chain.append(dummy_name[(min(e.eid, q), max(e.eid, q))])
            chain.append(e.v)
            for x, y in zip(chain, chain[1:]):
                if G.has_edge(x, y):
                    h = ("par", helper)
                    helper += 1
                    G.add_edge(x, h)
                    G.add_edge(h, y)
                    owner[frozenset((x, h))] = e.eid
                    owner[frozenset((h, y))] = e.eid
                else:
                    G.add_edge(x, y)
                    owner[frozenset((x, y))] = e.eid
        return G, owner

    def _minimal_nonplanar(self, G) -> Optional[nx.Graph]:
        """Minimal nonplanar subgraph (a Kuratowski subdivision) by chunked
        deletion, or None when G is planar."""
        self.stats.planarity_checks += 1
        ok, _ = nx.check_planarity(G)
        if ok:
            return None
        return self._try_minimize_nonplanar(G)

    def _try_minimize_nonplanar(self, G) -> Optional[nx.Graph]:
        self.stats.planarity_checks += 1
        ok, _ = nx.check_planarity(G)
        if ok:
            return None
        self.stats.kuratowski_extractions += 1
        cur = G.copy()
        low = [v for v, d in cur.degree() if d <= 1]
        while low:
            cur.remove_nodes_from(low)
            low = [v for v, d in cur.degree() if d <= 1]
        removable = list(cur.edges())
        i = 0
        step = max(1, len(removable) // 3)
        while i < len(removable):
            chunk = removable[i:i + step]
            cur.remove_edges_from(chunk)
            self.stats.planarity_checks += 1
            ok, _ = nx.check_planarity(cur)
            if not ok:
                del removable[i:i + step]
            else:
                cur.add_edges_from(chunk)
                if step == 1:
                    i += 1
                else:
                    step = max(1, step // 2)
        low = [v for v, d in cur.degree() if d <= 1]
        while low:
            cur.remove_nodes_from(low)
            low = [v for v, d in cur.degree() if d <= 1]
        return cur

    def _independent_branch_pairs(self, K, owner,
                                  pairs: frozenset[Pair]) -> frozenset[Pair]:
        """Candidate pairs: original edges owning segments on two vertex-
        disjoint branches of the Kuratowski subdivision.  In every drawing
        some two edges on independent branches cross, so every realizable
        superset picks up one of these pairs."""
        deg = dict(K.degree())
        branch_vertices = {v for v, d in deg.items() if d >= 3}
        if not branch_vertices:
            return frozenset()
        adj: dict[object, list[object]] = {}
        for a, b in K.edges():
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        visited: set[frozenset] = set()
        branches: list[tuple[frozenset, set[int]]] = []
        for start in branch_vertices:
            for nb in adj[start]:
                if frozenset((start, nb)) in visited:
                    continue
                path_edges: set[int] = set()
                prev, cur = start, nb
                path_edges.add(owner[frozenset((prev, cur))])
                visited.add(frozenset((prev, cur)))
                while cur not in branch_vertices:
                    nxt = next(x for x in adj[cur] if x != prev)
                    visited.add(frozenset((cur, nxt)))
                    path_edges.add(owner[frozenset((cur, nxt))])
                    prev, cur = cur, nxt
                branches.append((frozenset((start, cur)), path_edges))
        out: set[Pair] = set()
        for i in range(len(branches)):
            ends_i, edges_i = branches[i]
            for j in range(i + 1, len(branches)):
                ends_j, edges_j = branches[j]
                if ends_i & ends_j:
                    continue
                for a in edges_i:
                    for b in edges_j:
                        pr = (min(a, b), max(a, b))
                        if pr not in pairs and self.admissible_pair(*pr):
                            out.add(pr)
        return frozenset(out)

    def _constraint_of(self, cand: frozenset[Pair], K, owner) -> _Constraint:
        minw = min((self.weight_of_pair(pr) for pr in cand), key=_PolyKey)
        support = frozenset(owner[frozenset(de)] for de in K.edges())
        return _Constraint(cand, minw, support)

    def _pair_cover_sides(self, cand: frozenset[Pair]) -> list[frozenset[int]]:
        """Vertex covers of the pair set viewed as a graph on edge ids: the
        two color classes when it is bipartite (the usual two-sided case),
        else one greedy cover."""
        adj: dict[int, set[int]] = {}
        for a, b in cand:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        color: dict[int, int] = {}
        bipartite = True
        for start in sorted(adj):
            if start in color:
                continue
            color[start] = 0
            queue = [start]
            while queue and bipartite:
                x = queue.pop()
                for y in adj[x]:
                    if y not in color:
                        color[y] = 1 - color[x]
                        queue.append(y)
                    elif color[y] == color[x]:
                        bipartite = False
                        break
        if bipartite:
            return [frozenset(v for v, c in color.items() if c == 0),
                    frozenset(v for v, c in color.items() if c == 1)]
        cover: set[int] = set()
        left = set(cand)
        while left:
            deg: dict[int, int] = {}
            for a, b in left:
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            pick = max(deg, key=lambda e: (deg[e], -e))
            cover.add(pick)
            left = {pr for pr in left if pick not in pr}
        return [frozenset(cover)]

    def root_pool(self) -> list[_Constraint]:
        """Diversified constraints of the plain graph: breadth-first over
        cover-side removals, one extraction each, under a small budget.
        Generation stops early once the pool's disjoint-family bound already
        matches a known incumbent (nothing more could be pruned)."""
        p0 = Planarization({})
        G, owner = self._derived_nx(p0)
        budget = self.ROOT_EXTRACTIONS
        pool: dict[frozenset[Pair], _Constraint] = {}
        queue: list[tuple[nx.Graph, frozenset[Pair]]] = []

        def saturated() -> bool:
            if self.incumbent_weight is None:
                return False
            bound = self.family_bound(pool.values(), frozenset())
            return bound.cmp_large_omega(self.incumbent_weight) >= 0

        K0 = self._minimal_nonplanar(G)
        if K0 is None:
            return []
        cand0 = self._independent_branch_pairs(K0, owner, frozenset())
        if not cand0:
            return []
        pool[cand0] = self._constraint_of(cand0, K0, owner)
        queue.append((G, cand0))
        budget -= 1
        while queue and budget > 0 and not saturated():
            H, cand = queue.pop(0)
            for side in self._pair_cover_sides(cand):
                if budget <= 0:
                    break
                H2 = H.copy()
                H2.remove_edges_from([(x, y) for x, y in H.edges()
                                      if owner[frozenset((x, y))] in side])
                budget -= 1
                K2 = self._minimal_nonplanar(H2)
                if K2 is None:
                    continue
                cand2 = self._independent_branch_pairs(K2, owner, frozenset())
                if not cand2:
                    continue
                if cand2 not in pool:
                    pool[cand2] = self._constraint_of(cand2, K2, owner)
                    queue.append((H2, cand2))
        return sorted(pool.values(),
                      key=lambda c: (len(c.pairs), sorted(c.pairs)))

    def family_bound(self, constraints, pairs: frozenset[Pair]) -> OmegaPoly:
        """Greedy pairwise-disjoint family of constraints not hit by the
        crossing set; each member needs a distinct future crossing, so the
        sum of their lightest pairs bounds the remaining weight."""
        used: set[Pair] = set()
        bound = OmegaPoly.zero()
        order = sorted(constraints,
                       key=lambda c: (_PolyKey(-c.min_weight), len(c.pairs),
                                      sorted(c.pairs)))
        for c in order:
            if not c.pairs.isdisjoint(pairs):
                continue
            if used.isdisjoint(c.pairs):
                bound = bound + c.min_weight
                used |= c.pairs
        return bound

    def screen_bound(self, pairs: frozenset[Pair], inherited) -> Optional[OmegaPoly]:
        """Cheap lower bound on the remaining weight: the inherited disjoint
        family, plus the minimum admissible pair weight when the graph minus
        the family's pair support is still nonplanar (that residue needs a
        crossing pair disjoint from every family member's).  None when some
        ordering is already planar.  Two planarity tests per ordering."""
        bound: Optional[OmegaPoly] = None
        for p in self.orderings(pairs):
            G, owner = self._derived_nx(p)
            self.stats.planarity_checks += 1
            ok, _ = nx.check_planarity(G)
            if ok:
                return None
            used: set[Pair] = set()
            base = OmegaPoly.zero()
            for c in sorted(inherited,
                            key=lambda c: (_PolyKey(-c.min_weight),
                                           len(c.pairs), sorted(c.pairs))):
                if not c.pairs.isdisjoint(pairs):
                    continue
                if used.isdisjoint(c.pairs):
                    base = base + c.min_weight
                    used |= c.pairs
            if self.min_pair_weight is not None:
                if used:
                    support = {eid for pr in used for eid in pr}
                    H = G.copy()
                    H.remove_edges_from([de for de in G.edges()
                                         if owner[frozenset(de)] in support])
                    self.stats.planarity_checks += 1
                    okh, _ = nx.check_planarity(H)
                else:
                    okh = False  # the derived graph itself is nonplanar here
                if not okh:
                    base = base + self.min_pair_weight
            if bound is None or base.cmp_large_omega(bound) < 0:
                bound = base
        return bound

    def analyze(self, pairs: frozenset[Pair], inherited):
        """("feasible", planarization, -, -) or ("dead", -, -, -) or
        ("expand", bound, branch, child_constraints).

        One Kuratowski extraction per nonplanar ordering supplies a local
        constraint; the bound is the minimum over orderings (a superset's
        ordering restricted to this set is one of them) of the disjoint-
        family bound over inherited-plus-local constraints.  Locals are
        passed to children only from uniquely-ordered nodes, where every
        superset's restriction matches this node's derived graph."""
        plans = self.orderings(pairs)
        locals_: list[_Constraint] = []
        bound: Optional[OmegaPoly] = None
        branch: set[Pair] = set()
        resolvable = False
        for p in plans:
            G, owner = self._derived_nx(p)
            K = self._minimal_nonplanar(G)
            if K is None:
                return "feasible", p, None, None
            cand = self._independent_branch_pairs(K, owner, pairs)
            if not cand:
                continue  # this ordering cannot be completed
            resolvable = True
            branch |= cand
            local = self._constraint_of(cand, K, owner)
            locals_.append(local)
            b = self.family_bound(list(inherited) + [local], pairs)
            if bound is None or b.cmp_large_omega(bound) < 0:
                bound = b
        if not resolvable:
            return "dead", None, None, None
        child_constraints = inherited
        if len(plans) == 1 and locals_:
            child_constraints = tuple(inherited) + tuple(locals_)
        return "expand", bound, frozenset(branch), child_constraints

    # -- search -------------------------------------------------------------------

    def _over_budget(self, w: OmegaPoly) -> bool:
        if self.budget is not None and w.cmp_large_omega(self.budget) > 0:
            return True
        return (self.incumbent_weight is not None
                and w.cmp_large_omega(self.incumbent_weight) >= 0)

    def run(self) -> None:
        counter = itertools.count()
        zero = OmegaPoly.zero()
        pool = tuple(self.root_pool())
        heap: list = []
        # entry: (f key, -depth, tiebreak, pairs, weight, constraints)
        root_f = self.family_bound(pool, frozenset())
        heapq.heappush(heap, (_PolyKey(root_f), 0, next(counter),
                              frozenset(), zero, pool, None))
        done: set[frozenset[Pair]] = set()
        while heap:
            if self.limits.check(self.stats):
                return
            f, _, _, pairs, weight, constraints, ready = heapq.heappop(heap)
            if pairs in done:
                continue
            if self._over_budget(f.poly):
                return  # heap ordered: everything left is at least as heavy
            if ready is None:
                sb = self.screen_bound(pairs, constraints)
                if sb is not None:
                    sharp0 = weight + sb
                    if sharp0.cmp_large_omega(f.poly) > 0:
                        if not self._over_budget(sharp0):
                            heapq.heappush(heap, (_PolyKey(sharp0),
                                                  -len(pairs), next(counter),
                                                  pairs, weight, constraints,
                                                  None))
                        continue
                verdict, a, branch, child_constraints = self.analyze(pairs,
                                                                     constraints)
            else:
                verdict, a, branch, child_constraints = ready
            if verdict == "feasible":
                done.add(pairs)
                self.stats.nodes += 1
                self.incumbent = a
                self.incumbent_weight = weight
                return
            if verdict == "dead":
                done.add(pairs)
                self.stats.nodes += 1
                continue
            sharp = weight + a
            if sharp.cmp_large_omega(f.poly) > 0:
                # sharper bound than the key it was queued with: defer, and
                # carry the finished analysis along
                if not self._over_budget(sharp):
                    heapq.heappush(heap, (_PolyKey(sharp), -len(pairs),
                                          next(counter), pairs, weight,
                                          constraints,
                                          (verdict, a, branch,
                                           child_constraints)))
                continue
            done.add(pairs)
            self.stats.nodes += 1
            for pr in sorted(branch,
                             key=lambda q: (_PolyKey(self.weight_of_pair(q)), q)):
                child = pairs | {pr}
                if child in done:
                    continue
                w_child = weight + self.weight_of_pair(pr)
                f_child = w_child + self.family_bound(child_constraints, child)
                if sharp.cmp_large_omega(f_child) > 0:
                    f_child = sharp
                if w_child.cmp_large_omega(f_child) > 0:
                    f_child = w_child
                if self._over_budget(f_child):
                    continue
                if f_child == w_child:
                    # the bound allows completeness: probe one ordering now
                    probe = self.orderings(child)[0]
                    Gp, _ = self._derived_nx(probe)
                    self.stats.planarity_checks += 1
                    okp, _ = nx.check_planarity(Gp)
                    if okp:
                        self.incumbent = probe
                        self.incumbent_weight = w_child
                        break  # keep popping: the heap confirms optimality
                heapq.heappush(heap, (_PolyKey(f_child), -len(child),
                                      next(counter), child, w_child,
                                      child_constraints, None))


# -- edge-insertion heuristic (incumbent supplier for the exact search) ---------


def _faces_of_nx_embedding(emb) -> list[list[tuple]]:
    """Faces of a networkx PlanarEmbedding as lists of directed edges."""
    faces = []
    seen: set[tuple] = set()
    for u, v in emb.edges():
        if (u, v) in seen:
            continue
        face_nodes = emb.traverse_face(u, v, mark_half_edges=seen)
        face = [(face_nodes[i], face_nodes[(i + 1) % len(face_nodes)])
                for i in range(len(face_nodes))]
        faces.append(face)
    return faces


def insertion_planarization(g: WeightedMultigraph) -> Optional[Planarization]:
    """Heuristic drawing: grow a planar subgraph (forbidden edges first,
    then heaviest first), then insert each leftover edge along a cheapest
    face-to-face route through the current planarization.  Returns a
    verified witness or None when the route logic cannot serve (it never
    crosses forbidden edges, adjacent edges, or the same edge twice).

    Every edge is represented with a private midpoint node, so parallel
    edges never collide in the working graph; crossing ranks count dummy
    nodes only.
    """
    order = sorted(g.edges,
                   key=lambda e: (not e.forbidden, _PolyKey(-e.weight), e.eid))
    G = nx.Graph()
    for v in g.vertices:
        G.add_node(v)
    # chain[eid]: node sequence u .. v with ("mid", eid) and ("dummy", k) nodes
    chain: dict[int, list] = {}
    crossings: dict[int, list[int]] = {}
    rest: list[int] = []

    def add_chain(eid: int, nodes: list) -> None:
        chain[eid] = nodes
        for x, y in zip(nodes, nodes[1:]):
            G.add_edge(x, y)

    for e in order:
        nodes = [e.u, ("mid", e.eid), e.v]
        add_chain(e.eid, nodes)
        ok, _ = nx.check_planarity(G)
        if ok:
            crossings[e.eid] = []
        else:
            G.remove_node(("mid", e.eid))
            del chain[e.eid]
            if e.forbidden:
                return None  # forbidden structure itself is nonplanar
            rest.append(e.eid)

    dummy_count = itertools.count()
    for eid in rest:
        e = g.edge(eid)
        ok, emb = nx.check_planarity(G)
        if not ok:
            return None
        faces = _faces_of_nx_embedding(emb)
        face_of: dict[tuple, int] = {}
        for idx, face in enumerate(faces):
            for de in face:
                face_of[de] = idx
        # segment -> (owner edge, rank = number of dummy nodes before it)
        seg_info: dict[frozenset, tuple[int, int]] = {}
        for oid, ch in chain.items():
            rank = 0
            for x, y in zip(ch, ch[1:]):
                seg_info[frozenset((x, y))] = (oid, rank)
                if isinstance(y, tuple) and y[0] == "dummy":
                    rank += 1
        dist: dict[int, OmegaPoly] = {}
        prev: dict[int, tuple[Optional[int], Optional[frozenset]]] = {}
        pq: list = []
        counter = itertools.count()
        u_isolated = G.degree(e.u) == 0
        v_isolated = G.degree(e.v) == 0
        for idx, face in enumerate(faces):
            nodes = {x for de in face for x in de}
            if u_isolated or e.u in nodes:  # an isolated end sits in any face
                dist[idx] = OmegaPoly.zero()
                prev[idx] = (None, None)
                heapq.heappush(pq, (_PolyKey(OmegaPoly.zero()),
                                    next(counter), idx))
        target_faces = {idx for idx, face in enumerate(faces)
                        if v_isolated or e.v in {x for de in face for x in de}}
        goal = None
        while pq:
            d, _, idx = heapq.heappop(pq)
            if d.poly.cmp_large_omega(dist[idx]) > 0:
                continue
            if idx in target_faces:
                goal = idx
                break
            for de in faces[idx]:
                key = frozenset(de)
                info = seg_info.get(key)
                if info is None:
                    continue
                oid, _rank = info
                other = g.edge(oid)
                if other.forbidden or other.touches(e):
                    continue
                nxt = face_of.get((de[1], de[0]))
                if nxt is None or nxt == idx:
                    continue
                nd = d.poly + e.weight * other.weight
                if dist.get(nxt) is None or nd.cmp_large_omega(dist[nxt]) < 0:
                    dist[nxt] = nd
                    prev[nxt] = (idx, key)
                    heapq.heappush(pq, (_PolyKey(nd), next(counter), nxt))
        if goal is None:
            return None
        route: list[frozenset] = []
        at = goal
        while prev[at][0] is not None:
            at, key = prev[at]
            route.append(key)
        route.reverse()
        crossed_orig = [seg_info[key][0] for key in route]
        if len(set(crossed_orig)) != len(crossed_orig):
            return None  # route crossed an edge twice; heuristic gives up
        crossings[e.eid] = []
        new_chain: list = [e.u]
        for key in route:
            oid, rank = seg_info[key]
            x, y = tuple(key)
            if chain[oid].index(x) > chain[oid].index(y):
                x, y = y, x
            dummy = ("dummy", next(dummy_count))
            G.remove_edge(x, y)
            G.add_edge(x, dummy)
            G.add_edge(dummy, y)
            chain[oid].insert(chain[oid].index(y), dummy)
            crossings[oid].insert(rank, e.eid)
            G.add_edge(new_chain[-1], dummy)
            new_chain.append(dummy)
            crossings[e.eid].append(oid)
        mid = ("mid", e.eid)
        G.add_edge(new_chain[-1], mid)
        G.add_edge(mid, e.v)
        new_chain += [mid, e.v]
        chain[e.eid] = new_chain
    witness = Planarization({eid: tuple(ps) for eid, ps in crossings.items() if ps})
    if not verify_drawing(g, witness):
        return None
    return witness


def crossing_number_exact(g: WeightedMultigraph,
                          budget: Optional[OmegaPoly] = None,
                          node_cap: Optional[int] = None,
                          time_cap: Optional[float] = None,
                          initial_witness: Optional[Planarization] = None,
                          ) -> SolveResult:
    """Exact minimum weighted crossing number over good drawings.

    With a budget, reports "above_budget" as soon as the optimum provably
    exceeds it.  Hitting a node or time cap yields status "unknown", never a
    wrong number.
    """
    t0 = time.monotonic()
    limits = _Limits(node_cap, time_cap)
    if initial_witness is None:
        initial_witness = insertion_planarization(g)
    searcher = _Searcher(g, budget, limits, initial_witness)
    searcher.run()
    stats = searcher.stats
    stats.elapsed = time.monotonic() - t0
    if limits.hit:
        return SolveResult("unknown", stats=stats)
    if searcher.incumbent is None:
        if budget is not None:
            return SolveResult("above_budget", stats=stats)
        raise RuntimeError(
            "no good drawing avoids the forbidden edges of this instance")
    if (budget is not None
            and searcher.incumbent_weight.cmp_large_omega(budget) > 0):
        return SolveResult("above_budget", stats=stats)
    return SolveResult("optimal", searcher.incumbent_weight,
                       searcher.incumbent, stats)


def decide_crossing_le(g: WeightedMultigraph, k: OmegaPoly | int,
                       **kwargs) -> bool:
    """True iff the weighted crossing number is at most k."""
    bound = OmegaPoly.coerce(k)
    res = crossing_number_exact(g, budget=bound, **kwargs)
    if res.status == "optimal":
        return res.value.cmp_large_omega(bound) <= 0
    if res.status == "above_budget":
        return False
    raise RuntimeError("resource limit hit before a verdict was reached")


def anchored_crossing_number_exact(a: AnchoredInstance,
                                   budget: Optional[OmegaPoly] = None,
                                   **kwargs) -> SolveResult:
    """cr_A via the disk augmentation with uncrossable forbidden edges."""
    g = augment_anchored(a) if a.anchors else a.graph
    return crossing_number_exact(g, budget=budget, **kwargs)


# -- max-flow / min-cut over exact omega-polynomial capacities -----------------


def min_cut(g: WeightedMultigraph, s: str, t: str,
            merge: Optional[dict[str, str]] = None) -> OmegaPoly:
    """Minimum total weight separating s from t (Edmonds-Karp; capacities,
    flows and comparisons all in exact OmegaPoly arithmetic).

    merge maps vertex -> terminal name for group-to-terminal contractions.
    """
    if s == t:
        raise ValueError("s and t must differ")
    rename = merge or {}

    def name(v: str) -> str:
        return rename.get(v, v)

    cap: dict[tuple[str, str], OmegaPoly] = {}
    adj: dict[str, set[str]] = {}
    for e in g.edges:
        u, v = name(e.u), name(e.v)
        if u == v:
            continue
        for x, y in ((u, v), (v, u)):
            cap[(x, y)] = cap.get((x, y), OmegaPoly.zero()) + e.weight
            adj.setdefault(x, set()).add(y)
            adj.setdefault(y, set()).add(x)
    if s not in adj or t not in adj:
        return OmegaPoly.zero()
    flow = OmegaPoly.zero()
    zero = OmegaPoly.zero()
    while True:
        parent: dict[str, str] = {s: s}
        queue = [s]
        while queue and t not in parent:
            frontier: list[str] = []
            for x in queue:
                for y in sorted(adj.get(x, ())):
                    if y not in parent and cap.get((x, y), zero).is_positive_large_omega():
                        parent[y] = x
                        frontier.append(y)
            queue = frontier
        if t not in parent:
            return flow
        path = [t]
        while path[-1] != s:
            path.append(parent[path[-1]])
        path.reverse()
        bottleneck: Optional[OmegaPoly] = None
        for x, y in zip(path, path[1:]):
            c = cap[(x, y)]
            if bottleneck is None or c.cmp_large_omega(bottleneck) < 0:
                bottleneck = c
        for x, y in zip(path, path[1:]):
            cap[(x, y)] = cap[(x, y)] - bottleneck
            cap[(y, x)] = cap.get((y, x), zero) + bottleneck
        flow = flow + bottleneck


# -- polynomial special cases for PP instances ----------------------------------


def pp_special_case(inst) -> Optional[OmegaPoly]:
    """Closed form for PP instances whose lighter side has <= 2 anchors.

    min(a1, a2) <= 1 (or a part with no anchors): the instance is anchored
    planar, value 0.  min = 2: product of the min cut between the two
    anchors of the 2-anchor part and the min cut in the other part between
    the two anchor groups induced by the disk split (groups contracted to
    terminals).  Three or more anchors on both sides: None (hard regime).
    """
    from .graph import validate_pp

    report = validate_pp(inst)
    if not report.valid:
        raise ValueError("invalid PP instance: %s" % "; ".join(report.violations))
    a1 = inst.part_anchors(inst.part1)
    a2 = inst.part_anchors(inst.part2)
    if min(len(a1), len(a2)) <= 1:
        return OmegaPoly.zero()
    small_idx = 1 if len(a1) <= len(a2) else 2
    small_anch = a1 if small_idx == 1 else a2
    other_anch = a2 if small_idx == 1 else a1
    if len(small_anch) != 2:
        return None
    small_inst = inst.part_instance(small_idx)
    cut_small = min_cut(small_inst.graph, small_anch[0], small_anch[1])
    # split the other part's anchors into the two arcs between the 2 anchors
    cyc = inst.anchors
    i, j = cyc.index(small_anch[0]), cyc.index(small_anch[1])
    if i > j:
        i, j = j, i
    arc1 = [v for v in cyc[i + 1:j] if v in other_anch]
    arc2 = [v for v in list(cyc[j + 1:]) + list(cyc[:i]) if v in other_anch]
    if not arc1 or not arc2:
        return OmegaPoly.zero()
    large_inst = inst.part_instance(2 if small_idx == 1 else 1)
    rename = {v: "__grp1__" for v in arc1}
    rename.update({v: "__grp2__" for v in arc2})
    cut_large = min_cut(large_inst.graph, "__grp1__", "__grp2__", rename)
    return cut_small * cut_large
