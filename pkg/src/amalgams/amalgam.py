"""Amalgams over a fixed oriented graph.

Inclusion maps are attached to darts, with ``φ_e: G_{d0(e)} -> G_e``.  The
edge group is shared by ``e`` and ``bar(e)``.  An inclusion belongs to a
(vertex, edge) incidence, and a loop has a single incidence, so both darts of
a loop must carry the same inclusion map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BudgetExceeded,
    GraphMismatch,
    NotAHomomorphism,
    NotInjective,
    ShapeMismatch,
    TypeMismatch,
)
from .graph import OrientedGraph
from .groups import (
    DEFAULT_SEARCH_BUDGET,
    FiniteGroup,
    GroupMap,
    Subgroup,
    automorphism_group,
    hom_from_gen_images,
    image,
    intersect,
    normalizer,
)


class Amalgam:
    def __init__(self, graph: OrientedGraph, vertex_groups: Sequence[FiniteGroup],
                 edge_groups: Sequence[FiniteGroup], inclusions: Sequence[GroupMap]):
        self.graph = graph
        self.vertex_groups = tuple(vertex_groups)
        self.edge_groups = tuple(edge_groups)
        self.inclusions = tuple(inclusions)

    def __repr__(self) -> str:
        return f"Amalgam({self.graph!r})"

    def edge_group(self, e: int) -> FiniteGroup:
        return self.edge_groups[e >> 1]

    def image(self, e: int) -> Subgroup:
        return image(self.inclusions[e])

    def same_groups(self, other: "Amalgam") -> bool:
        return (self.graph == other.graph
                and all(a is b for a, b in zip(self.vertex_groups, other.vertex_groups))
                and all(a is b for a, b in zip(self.edge_groups, other.edge_groups)))

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "vertex_groups": [G.to_json() for G in self.vertex_groups],
            "edge_groups": [G.to_json() for G in self.edge_groups],
            "inclusions": [{"dart": e, "gen_images": f.gen_image_perms()}
                           for e, f in enumerate(self.inclusions)],
        }


def make_amalgam(graph: OrientedGraph, vertex_groups: Sequence[FiniteGroup],
                 edge_groups: Sequence[FiniteGroup], inclusions: Sequence) -> Amalgam:
    """Validate and assemble an amalgam.

    ``inclusions[e]`` is a GroupMap or a list of generator images (edge-group
    element indices or permutations) for dart ``e``.
    """
    if len(vertex_groups) != graph.vertex_count:
        raise ShapeMismatch("one vertex group per vertex required")
    if len(edge_groups) != graph.edge_count:
        raise ShapeMismatch("one edge group per geometric edge required")
    if len(inclusions) != graph.dart_count:
        raise ShapeMismatch("one inclusion per dart required")
    maps = []
    for e, inc in enumerate(inclusions):
        G, H = vertex_groups[graph.d0(e)], edge_groups[e >> 1]
        if isinstance(inc, GroupMap):
            if inc.domain is not G or inc.codomain is not H:
                raise ShapeMismatch(f"inclusion at dart {e} has the wrong domain or codomain")
            f = inc
        else:
            f = hom_from_gen_images(G, H, inc)
        if not f.injective:
            raise NotInjective(f"inclusion at dart {e} is not injective")
        maps.append(f)
    for e in range(0, graph.dart_count, 2):
        if graph.is_loop(e) and maps[e].images != maps[e + 1].images:
            raise ShapeMismatch(f"loop darts {e} and {e + 1} must share one inclusion map")
    return Amalgam(graph, vertex_groups, edge_groups, maps)


class AmalgamType:
    """A fixed reference amalgam A₀ (maps ψ_e) and its image subgroups."""

    def __init__(self, reference: Amalgam):
        self.reference = reference
        self.images = tuple(reference.image(e) for e in range(reference.graph.dart_count))

    @property
    def graph(self) -> OrientedGraph:
        return self.reference.graph

    def psi(self, e: int) -> GroupMap:
        return self.reference.inclusions[e]


def same_type(a: Amalgam, t: AmalgamType) -> bool:
    if not a.same_groups(t.reference):
        raise GraphMismatch("amalgam is not over the same graph and groups")
    return all(a.image(e) == t.images[e] for e in range(a.graph.dart_count))


# -- isomorphism oracle ------------------------------------------------------

@dataclass(frozen=True)
class AmalgamIsomorphism:
    """Automorphism tables φ_i per vertex and φ_e per geometric edge."""
    vertex_maps: tuple
    edge_maps: tuple


def verify_amalgam_isomorphism(a1: Amalgam, a2: Amalgam, w: AmalgamIsomorphism) -> bool:
    """Check φ_e∘φ¹_e = φ²_e∘φ_{d0(e)} for every dart, with bijective maps."""
    pairs = list(zip(a1.vertex_groups, w.vertex_maps)) + list(zip(a1.edge_groups, w.edge_maps))
    for G, m in pairs:
        if sorted(m) != list(range(G.order)):
            return False
        try:
            GroupMap(G, G, m)
        except NotAHomomorphism:
            return False
    g = a1.graph
    for e in range(g.dart_count):
        f1, f2 = a1.inclusions[e].images, a2.inclusions[e].images
        me, mv = w.edge_maps[e >> 1], w.vertex_maps[g.d0(e)]
        if any(me[f1[x]] != f2[mv[x]] for x in range(len(f1))):
            return False
    return True


def amalgams_isomorphic_oracle(a1: Amalgam, a2: Amalgam,
                               budget: int = DEFAULT_SEARCH_BUDGET) -> AmalgamIsomorphism | None:
    """Exhaustive search for an amalgam isomorphism a1 -> a2.

    Edge automorphisms are tried edge by edge in element order; each one
    forces the automorphism at the tail of every incident dart, and vertex
    assignments must agree.  Returns the first witness found or None.
    """
    if not a1.same_groups(a2):
        raise GraphMismatch("oracle needs amalgams over the same graph and groups")
    g = a1.graph
    auts = [automorphism_group(G).carrier.elements for G in a1.edge_groups]
    back2 = [f.inverse_on_image() for f in a2.inclusions]
    nodes = 0
    vertex_maps: list = [None] * g.vertex_count
    edge_maps: list = [None] * g.edge_count

    def forced(e: int, f) -> tuple | None:
        inc1, inv2 = a1.inclusions[e].images, back2[e]
        out = []
        for y in inc1:
            z = inv2.get(f[y])
            if z is None:
                return None
            out.append(z)
        return tuple(out)

    def search(k: int) -> bool:
        nonlocal nodes
        if k == g.edge_count:
            return True
        for f in auts[k]:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"amalgam oracle exceeded {budget} nodes")
            assigned = []
            ok = True
            for e in (2 * k, 2 * k + 1):
                m = forced(e, f)
                v = g.d0(e)
                if m is None or (vertex_maps[v] is not None and vertex_maps[v] != m):
                    ok = False
                    break
                if vertex_maps[v] is None:
                    vertex_maps[v] = m
                    assigned.append(v)
            if ok:
                edge_maps[k] = f
                if search(k + 1):
                    return True
            for v in assigned:
                vertex_maps[v] = None
        return False

    if not search(0):
        return None
    vmaps = tuple(m if m is not None else tuple(range(G.order))
                  for m, G in zip(vertex_maps, a1.vertex_groups))
    return AmalgamIsomorphism(vmaps, tuple(edge_maps))


# -- completions and presentations -------------------------------------------

@dataclass(frozen=True)
class CompletionCandidate:
    target: FiniteGroup
    vertex_maps: tuple  # GroupMap per vertex
    edge_maps: tuple  # GroupMap per geometric edge


@dataclass(frozen=True)
class CompletionCheck:
    is_completion: bool
    nontrivial: bool

    def __bool__(self):
        return self.is_completion


def check_completion(a: Amalgam, c: CompletionCandidate) -> CompletionCheck:
    g = a.graph
    if len(c.vertex_maps) != g.vertex_count or len(c.edge_maps) != g.edge_count:
        raise ShapeMismatch("completion has the wrong number of maps")
    for f, G in list(zip(c.vertex_maps, a.vertex_groups)) + list(zip(c.edge_maps, a.edge_groups)):
        if f.domain is not G or f.codomain is not c.target:
            raise ShapeMismatch("completion map has the wrong domain or codomain")
    ok = all(c.edge_maps[e >> 1].compose(a.inclusions[e]).images
             == c.vertex_maps[g.d0(e)].images for e in range(g.dart_count))
    nontrivial = any(any(f.images) for f in c.vertex_maps + c.edge_maps)
    return CompletionCheck(ok, nontrivial)


def emit_presentation(a: Amalgam) -> str:
    """Multiplication-table presentation of the universal completion.

    One generator ``g[slot][i]`` per element ``i`` of every vertex and edge
    group; relations are the multiplication tables plus the identifications
    made by the inclusion maps.
    """
    g = a.graph
    slots = [(f"v{i}", G) for i, G in enumerate(a.vertex_groups)]
    slots += [(f"e{k}", G) for k, G in enumerate(a.edge_groups)]
    gens = [f"g[{s}][{i}]" for s, G in slots for i in range(G.order)]
    lines = ["generators: " + " ".join(gens), "relations:"]
    for s, G in slots:
        lines.append(f"g[{s}][0] = 1")
        for i in range(1, G.order):
            for j in range(1, G.order):
                lines.append(f"g[{s}][{i}] * g[{s}][{j}] = g[{s}][{G.mul(i, j)}]")
    for e in range(g.dart_count):
        if g.is_loop(e) and e & 1:
            continue
        v = g.d0(e)
        for x, y in enumerate(a.inclusions[e].images):
            if x:
                lines.append(f"g[v{v}][{x}] = g[e{e >> 1}][{y}]")
    return "\n".join(lines) + "\n"


# -- D_e and the (D1)/(D2) predicates ----------------------------------------

def _preimage(f: GroupMap, S: Subgroup) -> Subgroup:
    return Subgroup(f.domain, frozenset(x for x, y in enumerate(f.images) if y in S.members))


def compute_D(a: Amalgam, e: int) -> tuple[Subgroup, Subgroup]:
    """Return (D̄_e, D_e): D̄_e = N(Ḡ_{d1(e)}) ∩ Ḡ_{d0(e)} in G_e, pulled back by φ_e."""
    Ge = a.edge_group(e)
    Dbar = intersect(normalizer(Ge, a.image(e ^ 1)), a.image(e))
    return Dbar, _preimage(a.inclusions[e], Dbar)


def check_D1(a: Amalgam) -> bool:
    g = a.graph
    for v in range(g.vertex_count):
        pulls = {compute_D(a, e)[1].members for e in g.out_darts(v)}
        if len(pulls) > 1:
            return False
    return True


def check_D2(a: Amalgam, t: AmalgamType) -> bool:
    if not same_type(a, t):
        raise TypeMismatch("amalgam is not of the given type")
    for e in range(a.graph.dart_count):
        Dbar, pulled = compute_D(a, e)
        if pulled != _preimage(t.psi(e), Dbar):
            return False
    return True
