"""Small named permutation groups used by the corpus and the tests."""

from __future__ import annotations

from .groups import FiniteGroup, compose, generate_group


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return generate_group([], degree=1)
    return generate_group([tuple((i + 1) % n for i in range(n))])


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return generate_group([], degree=max(n, 1))
    swap = (1, 0) + tuple(range(2, n))
    cycle = tuple((i + 1) % n for i in range(n))
    return generate_group([swap, cycle])


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (dihedral(4) is D8)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return generate_group([rot, ref])


def klein_four() -> FiniteGroup:
    return generate_group([(1, 0, 3, 2), (2, 3, 0, 1)])


def quaternion() -> FiniteGroup:
    """Q8 in its regular representation on 8 points."""
    # element k = (sign, unit) with unit 0..3 standing for 1, i, j, k
    table = {(1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
             (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
             (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2)}

    def mult(a, b):
        sa, ua = a
        sb, ub = b
        if ua == 0:
            return (sa * sb, ub)
        if ub == 0:
            return (sa * sb, ua)
        s, u = table[(ua, ub)]
        return (sa * sb * s, u)

    els = [(s, u) for s in (1, -1) for u in range(4)]
    pos = {e: k for k, e in enumerate(els)}

    def left(g):
        return tuple(pos[mult(g, e)] for e in els)

    return generate_group([left((1, 1)), left((1, 2))])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G×H acting on the disjoint union of the two point sets."""
    n, m = G.degree, H.degree
    gens = [tuple(g) + tuple(range(n, n + m)) for g in G.generators]
    gens += [tuple(range(n)) + tuple(n + x for x in h) for h in H.generators]
    return generate_group(gens, degree=n + m)


def element(G: FiniteGroup, perm) -> int:
    return G.index[tuple(perm)]


def power(p, k: int):
    out = tuple(range(len(p)))
    for _ in range(k):
        out = compose(out, p)
    return out
