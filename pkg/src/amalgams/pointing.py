"""Graphs of groups, pointings, and classification of amalgams of a type.

Products in the vertex groups ``A_i = Aut(G_i)`` are composition of maps, so
``δ·α_e(a)`` means "apply α_e(a), then δ".  Two pointings δ¹, δ² are
isomorphic when some ``a_i ∈ A_i`` and ``a_e ∈ A_e`` (shared by e and ē)
satisfy ``δ¹_e·α_e(a_e) = a_{d0(e)}·δ²_e`` for every dart.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .amalgam import Amalgam, AmalgamIsomorphism, AmalgamType, same_type
from .errors import BudgetExceeded, ShapeMismatch, TypeMismatch
from .graph import OrientedGraph, SpanningTree, spanning_tree
from .groups import (
    DEFAULT_CAP,
    DEFAULT_SEARCH_BUDGET,
    AutGroup,
    FiniteGroup,
    GroupMap,
    automorphism_group,
    relative_automorphism_group,
)

DEFAULT_ENUMERATION_BUDGET = 1_000_000


class GraphOfGroups:
    """Vertex groups A_i, edge groups A_e = A_ē and maps α_e: A_e -> A_{d0(e)}.

    The α_e need not be injective.  ``vertex_auts``/``edge_auts`` are set for
    reference graphs, where A_i and A_e are automorphism groups.
    """

    def __init__(self, graph: OrientedGraph, vertex_groups: Sequence[FiniteGroup],
                 edge_groups: Sequence[FiniteGroup], edge_maps: Sequence[GroupMap],
                 vertex_auts: Sequence[AutGroup] | None = None,
                 edge_auts: Sequence[AutGroup] | None = None):
        if len(edge_maps) != graph.dart_count:
            raise ShapeMismatch("one edge map per dart required")
        for e, f in enumerate(edge_maps):
            if f.domain is not edge_groups[e >> 1] or f.codomain is not vertex_groups[graph.d0(e)]:
                raise ShapeMismatch(f"edge map at dart {e} has the wrong domain or codomain")
        self.graph = graph
        self.vertex_groups = tuple(vertex_groups)
        self.edge_groups = tuple(edge_groups)
        self.edge_maps = tuple(edge_maps)
        self.vertex_auts = tuple(vertex_auts) if vertex_auts is not None else None
        self.edge_auts = tuple(edge_auts) if edge_auts is not None else None

    def __repr__(self) -> str:
        orders = [A.order for A in self.vertex_groups]
        return f"GraphOfGroups({self.graph!r}, |A_i|={orders})"

    def alpha(self, e: int, x: int) -> int:
        return self.edge_maps[e].images[x]

    def vertex_group(self, e: int) -> FiniteGroup:
        """A_{d0(e)}."""
        return self.vertex_groups[self.graph.d0(e)]


def reference_graph(t: AmalgamType, cap: int = DEFAULT_CAP) -> GraphOfGroups:
    """C₀: A_i = Aut(G_i), A_e = automorphisms of G_e fixing both image
    subgroups setwise, α_e(a) = ψ_e⁻¹∘a∘ψ_e.  Cached on the type, so
    ``cap`` only matters on the first call."""
    cached = getattr(t, "_reference_graph", None)
    if cached is not None:
        return cached
    a0, g = t.reference, t.graph
    vauts = [automorphism_group(G, cap) for G in a0.vertex_groups]
    eauts = [relative_automorphism_group(G, [t.images[2 * k], t.images[2 * k + 1]], cap)
             for k, G in enumerate(a0.edge_groups)]
    maps = []
    for e in range(g.dart_count):
        psi = t.psi(e).images
        back = t.psi(e).inverse_on_image()
        target = vauts[g.d0(e)]
        A_e = eauts[e >> 1]
        images = [target.index_of(tuple(back[a[y]] for y in psi))
                  for a in A_e.carrier.elements]
        maps.append(GroupMap(A_e.carrier, target.carrier, images))
    c = GraphOfGroups(g, [A.carrier for A in vauts], [A.carrier for A in eauts], maps,
                      vauts, eauts)
    t._reference_graph = c
    return c


@dataclass(frozen=True)
class Pointing:
    base: GraphOfGroups = field(repr=False, compare=False)
    delta: tuple

    def __post_init__(self):
        c = self.base
        g = c.graph
        if len(self.delta) != g.dart_count:
            raise ShapeMismatch("one δ per dart required")
        for e, d in enumerate(self.delta):
            if not 0 <= d < c.vertex_group(e).order:
                raise ShapeMismatch(f"δ at dart {e} is not in A_{g.d0(e)}")
            if g.is_loop(e) and d != self.delta[e ^ 1]:
                raise ShapeMismatch(f"loop darts {e & ~1}, {e | 1} must carry the same δ")


def identity_pointing(c: GraphOfGroups) -> Pointing:
    return Pointing(c, (0,) * c.graph.dart_count)


@dataclass(frozen=True)
class PointingWitness:
    vertex: tuple  # a_i per vertex
    edge: tuple  # a_e per geometric edge


def verify_pointing_witness(c: GraphOfGroups, p1: Pointing, p2: Pointing,
                            w: PointingWitness) -> bool:
    g = c.graph
    for e in range(g.dart_count):
        A = c.vertex_group(e)
        lhs = A.mul(p1.delta[e], c.alpha(e, w.edge[e >> 1]))
        rhs = A.mul(w.vertex[g.d0(e)], p2.delta[e])
        if lhs != rhs:
            return False
    return True


# -- pointing / amalgam correspondence ------------------------------------

def pointing_from_amalgam(t: AmalgamType, a: Amalgam) -> Pointing:
    """δ_e = φ_e⁻¹∘ψ_e for every dart."""
    if not same_type(a, t):
        raise TypeMismatch("amalgam is not of the given type")
    c = reference_graph(t)
    g = t.graph
    delta = []
    for e in range(g.dart_count):
        back = a.inclusions[e].inverse_on_image()
        table = tuple(back[y] for y in t.psi(e).images)
        delta.append(c.vertex_auts[g.d0(e)].index_of(table))
    return Pointing(c, tuple(delta))


def amalgam_from_pointing(t: AmalgamType, p: Pointing) -> Amalgam:
    """φ_e = ψ_e∘δ_e⁻¹ for every dart."""
    c = reference_graph(t)
    if p.base is not c:
        raise ShapeMismatch("pointing is not over the reference graph of this type")
    g, a0 = t.graph, t.reference
    maps = []
    for e in range(g.dart_count):
        A = c.vertex_auts[g.d0(e)]
        dinv = A.carrier.elements[A.carrier.inv(p.delta[e])]
        psi = t.psi(e)
        maps.append(GroupMap(psi.domain, psi.codomain,
                             [psi.images[dinv[x]] for x in range(psi.domain.order)],
                             check=False))
    return Amalgam(g, a0.vertex_groups, a0.edge_groups, maps)


def amalgam_witness(t: AmalgamType, w: PointingWitness) -> AmalgamIsomorphism:
    """Read a pointing witness p1 -> p2 as automorphism tables.

    The result is an amalgam isomorphism from amalgam_from_pointing(p2) to
    amalgam_from_pointing(p1).
    """
    c = reference_graph(t)
    vmaps = tuple(c.vertex_auts[v].carrier.elements[a] for v, a in enumerate(w.vertex))
    emaps = tuple(c.edge_auts[k].carrier.elements[a] for k, a in enumerate(w.edge))
    return AmalgamIsomorphism(vmaps, emaps)


# -- the Eq. (1) decider -----------------------------------------------------

def _edge_order(g: OrientedGraph) -> list[int]:
    """Geometric edges ordered so each one touches earlier ones when possible."""
    order, seen_v, left = [], set(), list(range(g.edge_count))
    while left:
        pick = next((k for k in left if g.d0(2 * k) in seen_v or g.d1(2 * k) in seen_v), left[0])
        left.remove(pick)
        order.append(pick)
        seen_v.update((g.d0(2 * pick), g.d1(2 * pick)))
    return order


def _decide_by_edges(c: GraphOfGroups, d1: tuple, d2: tuple, budget: int,
                     edge_elements) -> tuple[PointingWitness | None, int]:
    g = c.graph
    order = _edge_order(g)
    vertex: list = [None] * g.vertex_count
    edge: list = [0] * g.edge_count
    nodes = 0
    inv = [A._inverses for A in c.vertex_groups]

    def search(pos: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            return True
        k = order[pos]
        pool = edge_elements[k] if edge_elements is not None else range(c.edge_groups[k].order)
        for x in pool:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"pointing decider exceeded {budget} nodes")
            assigned = []
            ok = True
            for e in (2 * k, 2 * k + 1):
                v = g.d0(e)
                A = c.vertex_groups[v]
                need = A.mul(A.mul(d1[e], c.edge_maps[e].images[x]), inv[v][d2[e]])
                if vertex[v] is None:
                    vertex[v] = need
                    assigned.append(v)
                elif vertex[v] != need:
                    ok = False
                    break
            if ok:
                edge[k] = x
                if search(pos + 1):
                    return True
            for v in assigned:
                vertex[v] = None
        return False

    if not search(0):
        return None, nodes
    return PointingWitness(tuple(0 if a is None else a for a in vertex), tuple(edge)), nodes


def _decide_by_vertices(c: GraphOfGroups, d1: tuple, d2: tuple, budget: int,
                        edge_elements) -> tuple[PointingWitness | None, int]:
    g = c.graph
    joint = []
    for k in range(g.edge_count):
        pool = edge_elements[k] if edge_elements is not None else range(c.edge_groups[k].order)
        table: dict = {}
        for x in pool:
            table.setdefault((c.alpha(2 * k, x), c.alpha(2 * k + 1, x)), x)
        joint.append(table)
    edges_done_at = [[] for _ in range(g.vertex_count)]
    for k in range(g.edge_count):
        edges_done_at[max(g.d0(2 * k), g.d1(2 * k))].append(k)
    vertex = [0] * g.vertex_count
    edge = [0] * g.edge_count
    nodes = 0

    def solve(k: int):
        e, f = 2 * k, 2 * k + 1
        A, B = c.vertex_group(e), c.vertex_group(f)
        u = A.mul(A.mul(A.inv(d1[e]), vertex[g.d0(e)]), d2[e])
        w = B.mul(B.mul(B.inv(d1[f]), vertex[g.d0(f)]), d2[f])
        return joint[k].get((u, w))

    def search(v: int) -> bool:
        nonlocal nodes
        if v == g.vertex_count:
            return True
        for a in range(c.vertex_groups[v].order):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"pointing decider exceeded {budget} nodes")
            vertex[v] = a
            ok = True
            for k in edges_done_at[v]:
                x = solve(k)
                if x is None:
                    ok = False
                    break
                edge[k] = x
            if ok and search(v + 1):
                return True
        return False

    if not search(0):
        return None, nodes
    return PointingWitness(tuple(vertex), tuple(edge)), nodes


def decide(c: GraphOfGroups, p1: Pointing, p2: Pointing,
           budget: int = DEFAULT_SEARCH_BUDGET, edge_elements=None,
           mode: str = "edge") -> tuple[PointingWitness | None, int]:
    """Like :func:`pointings_isomorphic` but also returns the node count."""
    if mode == "edge":
        return _decide_by_edges(c, p1.delta, p2.delta, budget, edge_elements)
    if mode == "vertex":
        return _decide_by_vertices(c, p1.delta, p2.delta, budget, edge_elements)
    raise ValueError(f"unknown decider mode {mode!r}")


def pointings_isomorphic(c: GraphOfGroups, p1: Pointing, p2: Pointing,
                         budget: int = DEFAULT_SEARCH_BUDGET, edge_elements=None,
                         mode: str = "edge") -> PointingWitness | None:
    """Search for {a_i, a_e} satisfying δ¹_e·α_e(a_e) = a_{d0(e)}·δ²_e.

    ``mode="edge"`` iterates a_e and solves for the vertex elements;
    ``mode="vertex"`` iterates a_i and looks the edge elements up in the joint
    image of (α_e, α_ē).  ``edge_elements`` optionally restricts each a_e.
    """
    return decide(c, p1, p2, budget, edge_elements, mode)[0]


# -- normalization -----------------------------------------------------------

def anchor_darts(g: OrientedGraph, trees: Sequence[SpanningTree]) -> dict[int, int]:
    """Pick one dart leaving each vertex whose δ normalization sets to 1.

    A non-base vertex uses the tree dart back toward its parent; a base uses
    its lowest-numbered outgoing dart.
    """
    anchors = {}
    for t in trees:
        for v in t.order:
            if v == t.base:
                out = g.out_darts(v)
                if out:
                    anchors[v] = out[0]
            else:
                anchors[v] = g.bar(t.parent[v])
    return anchors


def spanning_forest(g: OrientedGraph) -> list[SpanningTree]:
    return [spanning_tree(g, comp[0], component_only=True) for comp in g.components()]


def normalize_on_tree(c: GraphOfGroups, p: Pointing,
                      t: SpanningTree | Sequence[SpanningTree]) -> tuple[Pointing, PointingWitness]:
    """Return an isomorphic pointing with δ = 1 on the anchor darts.

    The witness maps ``p`` to the result: a_v = δ_{anchor(v)}, a_e = 1.
    """
    trees = [t] if isinstance(t, SpanningTree) else list(t)
    g = c.graph
    anchors = anchor_darts(g, trees)
    vertex = tuple(p.delta[anchors[v]] if v in anchors else 0 for v in range(g.vertex_count))
    delta = tuple(c.vertex_group(e).mul(c.vertex_group(e).inv(vertex[g.d0(e)]), p.delta[e])
                  for e in range(g.dart_count))
    return Pointing(c, delta), PointingWitness(vertex, (0,) * g.edge_count)


def residual_darts(g: OrientedGraph, anchors: dict[int, int]) -> list[int]:
    fixed = set(anchors.values())
    out = []
    for e in range(g.dart_count):
        if e in fixed:
            continue
        if g.is_loop(e) and (e & 1 or (e ^ 1) in fixed):
            continue
        out.append(e)
    return out


def normalized_pointings(c: GraphOfGroups, trees: Sequence[SpanningTree] | None = None,
                         budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[Pointing]:
    """All pointings with δ = 1 on anchors, in lexicographic order of residuals."""
    g = c.graph
    trees = spanning_forest(g) if trees is None else trees
    anchors = anchor_darts(g, trees)
    free = residual_darts(g, anchors)
    total = 1
    for e in free:
        total *= c.vertex_group(e).order
    if total > budget:
        raise BudgetExceeded(f"{total} normalized pointings exceed the budget {budget}")
    out = []
    for choice in itertools.product(*[range(c.vertex_group(e).order) for e in free]):
        delta = [0] * g.dart_count
        for e, d in zip(free, choice):
            delta[e] = d
            if g.is_loop(e):
                delta[e ^ 1] = d
        out.append(Pointing(c, tuple(delta)))
    return out


# -- classification ----------------------------------------------------------

class UnionFind:
    """Union-find whose class label is always the smallest member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> int:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            lo, hi = min(rx, ry), max(rx, ry)
            self.parent[hi] = lo
            rx = lo
        return rx

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return [groups[r] for r in sorted(groups)]


@dataclass
class ClassificationReport:
    base: GraphOfGroups
    pointings: list  # every enumerated pointing, in enumeration order
    classes: list  # lists of indices into ``pointings``; first entry is the representative
    witnesses: dict  # member index -> PointingWitness from its representative
    nodes: int

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def representatives(self) -> list[Pointing]:
        return [self.pointings[cls[0]] for cls in self.classes]

    @property
    def sizes(self) -> list[int]:
        return [len(cls) for cls in self.classes]

    def class_of(self) -> list[int]:
        label = [0] * len(self.pointings)
        for n, cls in enumerate(self.classes):
            for i in cls:
                label[i] = n
        return label

    def to_json(self, t: AmalgamType | None = None) -> dict:
        classes = []
        for cls in self.classes:
            rep = self.pointings[cls[0]]
            item = {"representative_pointing": list(rep.delta), "size": len(cls)}
            if t is not None:
                item["representative_amalgam"] = amalgam_from_pointing(t, rep).to_json()["inclusions"]
            classes.append(item)
        return {"class_count": self.count, "classes": classes,
                "pointings_examined": len(self.pointings), "decider_nodes": self.nodes}


def classify_pointings(c: GraphOfGroups, pointings: Sequence[Pointing],
                       pair_budget: int = DEFAULT_SEARCH_BUDGET, edge_elements=None,
                       workers: int = 1, mode: str = "edge") -> ClassificationReport:
    """Partition ``pointings`` into isomorphism classes.

    Each pointing is compared with the current representatives in order and
    joins the first isomorphic one.  With ``workers > 1`` the comparisons
    for one pointing run concurrently; the outcome and the reported node
    count are the same as in the serial run.
    """
    pointings = list(pointings)
    uf = UnionFind(len(pointings))
    reps: list[int] = []
    witnesses: dict = {}
    nodes = 0
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def test(r: int, i: int):
        return decide(c, pointings[r], pointings[i], pair_budget, edge_elements, mode)

    try:
        for i in range(len(pointings)):
            if pool is None:
                results = []
                for r in reps:
                    res = test(r, i)
                    results.append(res)
                    if res[0] is not None:
                        break
            else:
                results = list(pool.map(lambda r: test(r, i), reps))
            hit = None
            for r, (w, n) in zip(reps, results):
                nodes += n
                if w is not None:
                    hit = (r, w)
                    break
            if hit is None:
                reps.append(i)
            else:
                uf.union(hit[0], i)
                witnesses[i] = hit[1]
    finally:
        if pool is not None:
            pool.shutdown()
    return ClassificationReport(c, pointings, uf.classes(), witnesses, nodes)


def classify(t: AmalgamType, pair_budget: int = DEFAULT_SEARCH_BUDGET,
             budget: int = DEFAULT_ENUMERATION_BUDGET, workers: int = 1,
             mode: str = "edge") -> ClassificationReport:
    """Isomorphism classes of amalgams of type ``t``, via pointings of C₀."""
    c = reference_graph(t)
    return classify_pointings(c, normalized_pointings(c, budget=budget), pair_budget,
                              workers=workers, mode=mode)
