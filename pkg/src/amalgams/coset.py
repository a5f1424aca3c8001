"""Closed-form classifiers: double cosets for two groups over a common
subgroup, and the orbit relation on A₁×A₂×A₃ for triangle graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .amalgam import Amalgam, AmalgamType, make_amalgam
from .errors import BudgetExceeded, ShapeMismatch
from .graph import build_graph
from .groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    automorphism_group,
    double_cosets,
    hom_from_gen_images,
    relative_automorphism_group,
)
from .pointing import GraphOfGroups, Pointing, amalgam_from_pointing, reference_graph

DEFAULT_ORBIT_BUDGET = 2_000_000


class GoldschmidtInstance:
    """Monomorphisms ψ_i: B -> P_i (i = 1, 2)."""

    def __init__(self, B: FiniteGroup, P1: FiniteGroup, P2: FiniteGroup,
                 psi1, psi2):
        self.B, self.P1, self.P2 = B, P1, P2
        self.psi1 = psi1 if isinstance(psi1, GroupMap) else hom_from_gen_images(B, P1, psi1)
        self.psi2 = psi2 if isinstance(psi2, GroupMap) else hom_from_gen_images(B, P2, psi2)
        self.aut_B = automorphism_group(B)
        self.abar = tuple(self._restricted_image(f) for f in (self.psi1, self.psi2))
        self._type = None

    def _restricted_image(self, psi: GroupMap) -> Subgroup:
        im = Subgroup(psi.codomain, frozenset(psi.images))
        A = relative_automorphism_group(psi.codomain, [im])
        back = psi.inverse_on_image()
        members = {self.aut_B.index_of(tuple(back[a[y]] for y in psi.images))
                   for a in A.carrier.elements}
        return Subgroup(self.aut_B.carrier, frozenset(members))

    def amalgam_type(self) -> AmalgamType:
        """The classical triple on a double loop, one inclusion per loop.

        Built once, so repeated calls share the cached reference graph.
        """
        if self._type is None:
            g = build_graph(1, [(0, 0), (0, 0)])
            incs = [self.psi1, self.psi1, self.psi2, self.psi2]
            self._type = AmalgamType(make_amalgam(g, [self.B], [self.P1, self.P2], incs))
        return self._type


@dataclass(frozen=True)
class GoldschmidtClass:
    representative: int  # element of Aut(B)
    members: frozenset


def goldschmidt_classes(gi: GoldschmidtInstance) -> list[GoldschmidtClass]:
    """Double cosets Ā₁·δ·Ā₂ in Aut(B)."""
    return [GoldschmidtClass(r, m)
            for r, m in double_cosets(gi.aut_B.carrier, gi.abar[0], gi.abar[1])]


def goldschmidt_amalgam(gi: GoldschmidtInstance, t: AmalgamType, delta: int) -> Amalgam:
    """Amalgam φ₁ = ψ₁, φ₂ = ψ₂∘δ⁻¹ on the double-loop encoding ``t``."""
    c = reference_graph(t)
    return amalgam_from_pointing(t, Pointing(c, (0, 0, delta, delta)))


# -- triangles ---------------------------------------------------------------

class TriangleInstance:
    """The data A_k, α_{k,k±1} of a graph of groups over a triangle.

    Vertices are 0, 1, 2 and indices are taken mod 3; edge k joins k and k+1.
    ``fwd[k]`` is the dart k -> k+1 and ``bwd[k]`` the dart k+1 -> k.
    """

    def __init__(self, c: GraphOfGroups):
        g = c.graph
        if g.vertex_count != 3 or g.edge_count != 3:
            raise ShapeMismatch("a triangle needs 3 vertices and 3 edges")
        fwd, bwd = [None] * 3, [None] * 3
        for e in range(g.dart_count):
            u, v = g.d0(e), g.d1(e)
            if v == (u + 1) % 3:
                fwd[u] = e
            elif u == (v + 1) % 3:
                bwd[v] = e
        if None in fwd or None in bwd or len({e >> 1 for e in fwd}) != 3:
            raise ShapeMismatch("graph is not the triangle {0,1},{1,2},{2,0}")
        self.c = c
        self.fwd, self.bwd = tuple(fwd), tuple(bwd)
        self.A = c.vertex_groups
        self.edge_groups = tuple(c.edge_groups[fwd[k] >> 1] for k in range(3))

    def phi(self, k: int, x: int) -> tuple:
        """Φ_k(x) = i_k(α_{k,k+1}(x))·i_{k+1}(α_{k+1,k}(x))."""
        out = [0, 0, 0]
        out[k] = self.c.alpha(self.fwd[k], x)
        out[(k + 1) % 3] = self.c.alpha(self.bwd[k], x)
        return tuple(out)

    def H(self, k: int) -> frozenset:
        return frozenset(self.phi(k, x) for x in range(self.edge_groups[k].order))

    def act(self, a: Sequence[int], xs: Sequence[int]) -> tuple:
        """a'_k = π_k(x_k⁻¹·i_k(a_k)·x_{k-1}) with x_k = Φ_k(xs[k])."""
        out = []
        for k in range(3):
            A = self.A[k]
            left = self.phi(k, xs[k])[k]
            right = self.phi((k - 1) % 3, xs[(k - 1) % 3])[k]
            out.append(A.mul(A.mul(A.inv(left), a[k]), right))
        return tuple(out)


def triangle_instance(t: AmalgamType) -> TriangleInstance:
    return TriangleInstance(reference_graph(t))


def _moves(ti: TriangleInstance) -> list[tuple]:
    moves = []
    for k in range(3):
        for x in ti.edge_groups[k].gen_indices:
            xs = [0, 0, 0]
            xs[k] = x
            moves.append(tuple(xs))
    return moves


def triangle_orbit(ti: TriangleInstance, a: Sequence[int]) -> frozenset:
    """The ~-class of ``a``."""
    moves = _moves(ti)
    orbit = [tuple(a)]
    seen = {orbit[0]}
    for b in orbit:
        for xs in moves:
            y = ti.act(b, xs)
            if y not in seen:
                seen.add(y)
                orbit.append(y)
    return frozenset(seen)


def triangle_equivalence_classes(ti: TriangleInstance,
                                 budget: int = DEFAULT_ORBIT_BUDGET) -> list[tuple[tuple, int]]:
    """Orbits of ~ on A₁×A₂×A₃ as (lexicographically least member, size)."""
    n = [A.order for A in ti.A]
    total = n[0] * n[1] * n[2]
    if total > budget:
        raise BudgetExceeded(f"|A| = {total} exceeds the orbit budget {budget}")
    moves = _moves(ti)
    seen = bytearray(total)
    out = []

    def code(a):
        return (a[0] * n[1] + a[1]) * n[2] + a[2]

    for start in range(total):
        if seen[start]:
            continue
        a0 = (start // (n[1] * n[2]), (start // n[2]) % n[1], start % n[2])
        seen[start] = 1
        orbit = [a0]
        for a in orbit:
            for xs in moves:
                b = ti.act(a, xs)
                cb = code(b)
                if not seen[cb]:
                    seen[cb] = 1
                    orbit.append(b)
        out.append((a0, len(orbit)))
    return out


def xi_map(ti: TriangleInstance, p: Pointing) -> tuple:
    """(δ_{k,k+1}⁻¹·δ_{k,k-1})_k."""
    if p.base is not ti.c:
        raise ShapeMismatch("pointing is not over this triangle")
    out = []
    for k in range(3):
        A = ti.A[k]
        out.append(A.mul(A.inv(p.delta[ti.fwd[k]]), p.delta[ti.bwd[(k - 1) % 3]]))
    return tuple(out)


def xi_inverse(ti: TriangleInstance, a: Sequence[int]) -> Pointing:
    """The positively normalized pointing δ_{k,k+1} = 1, δ_{k,k-1} = a_k."""
    delta = [0] * 6
    for k in range(3):
        delta[ti.bwd[(k - 1) % 3]] = a[k]
    return Pointing(ti.c, tuple(delta))
