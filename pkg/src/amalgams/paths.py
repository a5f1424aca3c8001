"""Words in the path group of C̃₀ and fundamental groups of pointings.

A word a₀ e₁ a₁ ⋯ eₙ aₙ follows a walk e₁⋯eₙ and carries n + 1 vertex
letters, a_k ∈ A_{d1(e_k)} (a₀ ∈ A_{d0(e₁)}).  The defining relations are
e·ē = 1 and e·α_ē(x)·ē = α_e(x) for x ∈ Ã_e, or equivalently
α_e(x)·e = e·α_ē(x).

Normal form: every letter in front of a dart e is the chosen transversal
element of its coset a·α_e(Ã_e), and no subword e·1·ē survives.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, Disconnected, EndpointMismatch, ShapeMismatch
from .graph import SpanningTree, free_generators
from .pointing import Pointing
from .rigid import ReducedGraphOfGroups

DEFAULT_BOUND = 6
DEFAULT_BALL_BUDGET = 200_000


@dataclass(frozen=True)
class PathWord:
    start: int
    letters: tuple
    darts: tuple

    def __len__(self) -> int:
        return len(self.darts)

    def end(self, r: ReducedGraphOfGroups) -> int:
        return r.graph.d1(self.darts[-1]) if self.darts else self.start

    def tokens(self) -> str:
        out = [str(self.letters[0])]
        for e, a in zip(self.darts, self.letters[1:]):
            out += [f".{e}", str(a)]
        return " ".join(out)


def check_word(r: ReducedGraphOfGroups, w: PathWord) -> None:
    g = r.graph
    if len(w.letters) != len(w.darts) + 1:
        raise ShapeMismatch("a word with n darts needs n + 1 letters")
    v = w.start
    for k, a in enumerate(w.letters):
        if not 0 <= a < r.base.vertex_groups[v].order:
            raise ShapeMismatch(f"letter {k} is not in A_{v}")
        if k < len(w.darts):
            e = w.darts[k]
            if g.d0(e) != v:
                raise ShapeMismatch(f"dart {e} does not start at vertex {v}")
            v = g.d1(e)


def identity_word(v: int) -> PathWord:
    return PathWord(v, (0,), ())


def canonicalize(w: PathWord, r: ReducedGraphOfGroups) -> PathWord:
    """Push vertex letters left to right through the darts, cancelling returns."""
    check_word(r, w)
    g, groups = r.graph, r.base.vertex_groups
    letters: list[int] = []
    darts: list[int] = []
    pending = w.letters[0]
    for e, a in zip(w.darts, w.letters[1:]):
        t, x = r.factor[e][pending]
        A = groups[g.d1(e)]
        carried = r.alpha(e ^ 1, x)
        if t == 0 and darts and darts[-1] == e ^ 1:
            # ē·α_e(x)·e = α_ē(x)
            darts.pop()
            pending = A.mul(A.mul(letters.pop(), carried), a)
        else:
            letters.append(t)
            darts.append(e)
            pending = A.mul(carried, a)
    letters.append(pending)
    return PathWord(w.start, tuple(letters), tuple(darts))


def multiply(u: PathWord, v: PathWord, r: ReducedGraphOfGroups) -> PathWord:
    if u.end(r) != v.start:
        raise EndpointMismatch(f"word ends at {u.end(r)} but the next starts at {v.start}")
    A = r.base.vertex_groups[v.start]
    joint = A.mul(u.letters[-1], v.letters[0])
    w = PathWord(u.start, u.letters[:-1] + (joint,) + v.letters[1:], u.darts + v.darts)
    return canonicalize(w, r)


def invert(u: PathWord, r: ReducedGraphOfGroups) -> PathWord:
    g, groups = r.graph, r.base.vertex_groups
    verts = [u.start] + [g.d1(e) for e in u.darts]
    letters = tuple(groups[v].inv(a) for v, a in zip(reversed(verts), reversed(u.letters)))
    darts = tuple(e ^ 1 for e in reversed(u.darts))
    return canonicalize(PathWord(u.end(r), letters, darts), r)


# -- fundamental groups of pointings -----------------------------------------

def pointing_path(gamma: Sequence[int], p: Pointing, start: int | None = None) -> PathWord:
    """γ_δ = δ_{e₁}·e₁·δ_{ē₁}⁻¹·δ_{e₂}·e₂ ⋯ eₙ·δ_{ēₙ}⁻¹."""
    c = p.base
    g = c.graph
    gamma = tuple(gamma)
    if not gamma:
        if start is None:
            raise ShapeMismatch("an empty path needs a start vertex")
        return identity_word(start)
    if not g.is_walk(gamma):
        raise ShapeMismatch("edge path is not a walk")
    letters = [p.delta[gamma[0]]]
    for prev, nxt in zip(gamma, gamma[1:]):
        A = c.vertex_group(nxt)
        letters.append(A.mul(A.inv(p.delta[prev ^ 1]), p.delta[nxt]))
    last = gamma[-1] ^ 1
    letters.append(c.vertex_group(last).inv(p.delta[last]))
    return PathWord(g.d0(gamma[0]), tuple(letters), gamma)


@dataclass(frozen=True)
class FundamentalGeneratorSet:
    base: int
    delta: tuple
    generators: tuple  # canonical PathWords, one per free loop


def fundamental_generators(r: ReducedGraphOfGroups, p: Pointing, base: int,
                           tree: SpanningTree) -> FundamentalGeneratorSet:
    if tree.base != base:
        raise ShapeMismatch("tree is rooted at a different base vertex")
    if len(tree.order) != r.graph.vertex_count:
        raise Disconnected("fundamental groups need a connected graph")
    gens = tuple(canonicalize(pointing_path(loop.path, p), r)
                 for loop in free_generators(r.graph, tree))
    return FundamentalGeneratorSet(base, p.delta, gens)


class Verdict(enum.Enum):
    EQUAL = "Equal"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Ball:
    radius: dict  # canonical word -> word length in the generators
    saturated: bool


def subgroup_ball(r: ReducedGraphOfGroups, gens: Sequence[PathWord], base: int, L: int,
                  budget: int = DEFAULT_BALL_BUDGET) -> Ball:
    """Canonical forms of all products of at most L generators and inverses.

    ``saturated`` means radius L added nothing new, so the ball is the whole
    (finite) subgroup.
    """
    steps = list(gens) + [invert(s, r) for s in gens]
    one = identity_word(base)
    radius = {one: 0}
    frontier = [one]
    saturated = False
    for n in range(1, L + 1):
        nxt = []
        for w in frontier:
            for s in steps:
                u = multiply(w, s, r)
                if u not in radius:
                    radius[u] = n
                    nxt.append(u)
                    if len(radius) > budget:
                        raise BudgetExceeded(f"subgroup ball exceeded {budget} words")
        if not nxt:
            saturated = True
            break
        frontier = nxt
    return Ball(radius, saturated)


def verdict_from_balls(s1: Sequence[PathWord], b1: Ball,
                       s2: Sequence[PathWord], b2: Ball) -> Verdict:
    """Equal when each generating set lies in the other's ball; Distinct
    only when a generator misses a saturated ball; else Unknown."""
    in1 = all(w in b1.radius for w in s2)
    in2 = all(w in b2.radius for w in s1)
    if in1 and in2:
        return Verdict.EQUAL
    if (not in1 and b1.saturated) or (not in2 and b2.saturated):
        return Verdict.DISTINCT
    return Verdict.UNKNOWN


def same_fundamental_group_bounded(r: ReducedGraphOfGroups, p1: Pointing, p2: Pointing,
                                   base: int, tree: SpanningTree, L: int = DEFAULT_BOUND,
                                   budget: int = DEFAULT_BALL_BUDGET) -> Verdict:
    """Compare π(C̃₀, base, δ¹) and π(C̃₀, base, δ²) as subgroups of the path group."""
    s1 = fundamental_generators(r, p1, base, tree).generators
    s2 = fundamental_generators(r, p2, base, tree).generators
    b1 = subgroup_ball(r, s1, base, L, budget)
    b2 = subgroup_ball(r, s2, base, L, budget)
    return verdict_from_balls(s1, b1, s2, b2)
