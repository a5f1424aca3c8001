"""Rigidity of a graph of groups and the reduced graph C̃₀.

Each edge group A_e is shared by the darts e and ē, so a reduced edge group
Ã_e ≤ A_e has to serve both maps at once.  We require that α_e and α_ē be
injective on Ã_e and that Ã_e reach every pair (α_e(a), α_ē(a)); together
these force ker α_e = ker α_ē, and Ã_e is then a complement of that kernel.
Without the pair condition the restricted edge groups can miss
isomorphisms between pointings (see tests/test_rigid.py).
"""

from __future__ import annotations

from dataclasses import dataclass

from .amalgam import AmalgamType
from .errors import NotRigid
from .groups import DEFAULT_SEARCH_BUDGET, Subgroup, complement_of_normal, kernel
from .pointing import (
    DEFAULT_ENUMERATION_BUDGET,
    ClassificationReport,
    GraphOfGroups,
    classify_pointings,
    normalized_pointings,
    reference_graph,
)


class ReducedGraphOfGroups:
    """C̃₀: the vertex groups of ``base`` with edge groups cut down to Ã_e.

    For every dart ``factor[e][a] = (t, x)`` splits a ∈ A_{d0(e)} as
    a = t·α_e(x) with x ∈ Ã_e and t the least element of the coset
    a·α_e(Ã_e); these t form the fixed transversal used by normal forms.
    """

    def __init__(self, base: GraphOfGroups, tilde: tuple[Subgroup, ...]):
        self.base = base
        self.graph = base.graph
        self.tilde = tilde
        self.edge_elements = tuple(tuple(sorted(T.members)) for T in tilde)
        self.images = []
        self.factor = []
        for e in range(self.graph.dart_count):
            A = base.vertex_group(e)
            pre = {base.alpha(e, x): x for x in self.edge_elements[e >> 1]}
            self.images.append(frozenset(pre))
            table = [None] * A.order
            for a in range(A.order):
                if table[a] is not None:
                    continue
                coset = sorted(A.mul(a, y) for y in pre)
                t = coset[0]
                tinv = A.inv(t)
                for b in coset:
                    table[b] = (t, pre[A.mul(tinv, b)])
            self.factor.append(tuple(table))

    def alpha(self, e: int, x: int) -> int:
        return self.base.alpha(e, x)


@dataclass(frozen=True)
class Rigidity:
    reduced: ReducedGraphOfGroups | None
    dart: int | None = None
    reason: str | None = None

    def __bool__(self):
        return self.reduced is not None


def check_rigidity(c: GraphOfGroups, budget: int = DEFAULT_SEARCH_BUDGET) -> Rigidity:
    g = c.graph
    tilde = []
    for k in range(g.edge_count):
        e, f = 2 * k, 2 * k + 1
        K1, K2 = kernel(c.edge_maps[e]), kernel(c.edge_maps[f])
        if K1 != K2:
            return Rigidity(None, e, "ker α_e differs from ker α_ē, so no single "
                                     "complement serves both darts")
        T = complement_of_normal(c.edge_groups[k], K1, budget)
        if T is None:
            return Rigidity(None, e, "ker α_e has no complement in A_e")
        tilde.append(T)
    return Rigidity(ReducedGraphOfGroups(c, tuple(tilde)))


def is_rigid(c: GraphOfGroups, budget: int = DEFAULT_SEARCH_BUDGET) -> ReducedGraphOfGroups | None:
    return check_rigidity(c, budget).reduced


def classify_rigid(t: AmalgamType, pair_budget: int = DEFAULT_SEARCH_BUDGET,
                   budget: int = DEFAULT_ENUMERATION_BUDGET, workers: int = 1) -> ClassificationReport:
    """Classify pointings of C̃₀: the decider draws edge elements from Ã_e only."""
    c = reference_graph(t)
    rig = check_rigidity(c)
    if not rig:
        raise NotRigid(rig.dart, rig.reason)
    return classify_pointings(c, normalized_pointings(c, budget=budget), pair_budget,
                              edge_elements=rig.reduced.edge_elements, workers=workers)
