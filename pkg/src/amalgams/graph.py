"""Graphs with doubled (directed) edges, spanning trees and free loops.

Geometric edge ``k`` produces darts ``2k`` (u -> v) and ``2k + 1`` (v -> u),
so ``bar(e) == e ^ 1``.  Loops and multiple edges are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import Disconnected, InvalidVertex


@dataclass(frozen=True)
class Dart:
    d0: int
    d1: int
    bar: int


class OrientedGraph:
    def __init__(self, vertex_count: int, edges: Sequence[Sequence[int]]):
        if vertex_count < 0:
            raise InvalidVertex("negative vertex count")
        self.vertex_count = vertex_count
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        darts = []
        for k, (u, v) in enumerate(self.edges):
            for x in (u, v):
                if not 0 <= x < vertex_count:
                    raise InvalidVertex(f"edge {k} has endpoint {x} outside 0..{vertex_count - 1}")
            darts.append(Dart(u, v, 2 * k + 1))
            darts.append(Dart(v, u, 2 * k))
        self.darts = tuple(darts)

    def __repr__(self) -> str:
        return f"OrientedGraph({self.vertex_count}, {list(self.edges)})"

    def __eq__(self, other):
        return (isinstance(other, OrientedGraph) and self.vertex_count == other.vertex_count
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    @property
    def dart_count(self) -> int:
        return len(self.darts)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def d0(self, e: int) -> int:
        return self.darts[e].d0

    def d1(self, e: int) -> int:
        return self.darts[e].d1

    @staticmethod
    def bar(e: int) -> int:
        return e ^ 1

    @staticmethod
    def edge_of(e: int) -> int:
        return e >> 1

    def is_loop(self, e: int) -> bool:
        return self.darts[e].d0 == self.darts[e].d1

    def out_darts(self, v: int) -> list[int]:
        return [e for e, d in enumerate(self.darts) if d.d0 == v]

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            for v in comp:
                for e in self.out_darts(v):
                    w = self.darts[e].d1
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_walk(self, darts: Sequence[int]) -> bool:
        return all(self.d1(a) == self.d0(b) for a, b in zip(darts, darts[1:]))

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


def build_graph(vertex_count: int, edge_list: Sequence[Sequence[int]]) -> OrientedGraph:
    return OrientedGraph(vertex_count, edge_list)


@dataclass(frozen=True)
class SpanningTree:
    base: int
    parent: dict  # vertex -> dart pointing from its parent to it
    order: tuple  # vertices in BFS order, base first

    @property
    def tree_darts(self) -> frozenset:
        return frozenset(self.parent.values())

    def path_from_base(self, g: OrientedGraph, v: int) -> list[int]:
        path = []
        while v != self.base:
            e = self.parent[v]
            path.append(e)
            v = g.d0(e)
        return path[::-1]

    def path_to_base(self, g: OrientedGraph, v: int) -> list[int]:
        return [g.bar(e) for e in reversed(self.path_from_base(g, v))]


def spanning_tree(g: OrientedGraph, base: int, component_only: bool = False) -> SpanningTree:
    """Breadth-first spanning tree; darts are scanned in index order.

    With ``component_only`` the tree spans just the component of ``base``
    instead of raising :class:`Disconnected`.
    """
    if not 0 <= base < g.vertex_count:
        raise InvalidVertex(f"base {base} is not a vertex")
    parent: dict[int, int] = {}
    order = [base]
    seen = {base}
    for v in order:
        for e in g.out_darts(v):
            w = g.d1(e)
            if w not in seen:
                seen.add(w)
                parent[w] = e
                order.append(w)
    if len(order) != g.vertex_count and not component_only:
        raise Disconnected(f"graph is not connected from vertex {base}")
    return SpanningTree(base, parent, tuple(order))


@dataclass(frozen=True)
class EdgeLoop:
    to_tail: tuple  # tree path base -> d0(b)
    dart: int
    back: tuple  # tree path d1(b) -> base

    @property
    def path(self) -> tuple:
        return self.to_tail + (self.dart,) + self.back


def free_generators(g: OrientedGraph, t: SpanningTree) -> list[EdgeLoop]:
    """One closed loop at the base per non-tree geometric edge."""
    tree_edges = {g.edge_of(e) for e in t.tree_darts}
    reach = set(t.order)
    loops = []
    for k in range(g.edge_count):
        b = 2 * k
        if k in tree_edges or g.d0(b) not in reach:
            continue
        loops.append(EdgeLoop(tuple(t.path_from_base(g, g.d0(b))), b,
                              tuple(t.path_to_base(g, g.d1(b)))))
    return loops
