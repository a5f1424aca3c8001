"""Independent checks for the path-group word engine.

Three checks, none of which calls ``canonicalize`` to produce its expected
answer:

* ``fuzz_relation_moves``: apply one defining relation to a random word and
  compare canonical forms before and after.
* ``closure_partition``: union-find over every word of bounded length,
  joined by single relation moves that do not leave the ball.  Collapses
  shorten a word and push moves keep its length, so two equal words of
  length at most n are already joined inside the ball.
* ``fuzz_reduced_words``: reduced words keep all their darts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .paths import PathWord, canonicalize
from .pointing import UnionFind
from .rigid import ReducedGraphOfGroups


@dataclass
class FuzzResult:
    trials: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def random_walk(r: ReducedGraphOfGroups, rng: random.Random, start: int, n: int) -> tuple:
    g = r.graph
    darts, v = [], start
    for _ in range(n):
        out = g.out_darts(v)
        if not out:
            break
        e = rng.choice(out)
        darts.append(e)
        v = g.d1(e)
    return tuple(darts)


def random_word(r: ReducedGraphOfGroups, rng: random.Random, n: int,
                start: int | None = None) -> PathWord:
    g = r.graph
    if start is None:
        start = rng.randrange(g.vertex_count)
    darts = random_walk(r, rng, start, n)
    verts = [start] + [g.d1(e) for e in darts]
    letters = tuple(rng.randrange(r.base.vertex_groups[v].order) for v in verts)
    return PathWord(start, letters, darts)


def _vertices(r: ReducedGraphOfGroups, w: PathWord) -> list[int]:
    return [w.start] + [r.graph.d1(e) for e in w.darts]


def relation_move(r: ReducedGraphOfGroups, w: PathWord, rng: random.Random) -> PathWord:
    """Rewrite ``w`` once by a defining relation chosen at random."""
    groups, g = r.base.vertex_groups, r.graph
    verts = _vertices(r, w)
    letters, darts = list(w.letters), list(w.darts)
    kind = rng.randrange(3)
    if kind == 2 and not darts:
        kind = rng.randrange(2)
    if kind in (0, 1):
        # insert e·ē, or replace α_e(x) by e·α_ē(x)·ē, inside letter k
        k = rng.randrange(len(letters))
        v = verts[k]
        out = g.out_darts(v)
        if not out:
            return w
        e = rng.choice(out)
        A = groups[v]
        x = rng.choice(r.edge_elements[e >> 1]) if kind == 1 else 0
        ax = r.alpha(e, x)
        u = rng.randrange(A.order)
        rest = A.mul(A.inv(u), letters[k])  # letters[k] = u·rest
        mid = r.alpha(e ^ 1, x)
        new_letters = [u, mid, A.mul(A.inv(ax), rest)]
        # u·e·α_ē(x)·ē·α_e(x)⁻¹·rest = u·α_e(x)·α_e(x)⁻¹·rest
        letters[k:k + 1] = new_letters
        darts[k:k] = [e, e ^ 1]
        return PathWord(w.start, tuple(letters), tuple(darts))
    # push α_e(x) across dart k: α_e(x)·e = e·α_ē(x)
    k = rng.randrange(len(darts))
    e = darts[k]
    x = rng.choice(r.edge_elements[e >> 1])
    A, B = groups[g.d0(e)], groups[g.d1(e)]
    letters[k] = A.mul(letters[k], A.inv(r.alpha(e, x)))
    letters[k + 1] = B.mul(r.alpha(e ^ 1, x), letters[k + 1])
    return PathWord(w.start, tuple(letters), tuple(darts))


def fuzz_relation_moves(r: ReducedGraphOfGroups, trials: int = 10_000, seed: int = 0,
                        max_len: int = 6) -> FuzzResult:
    rng = random.Random(seed)
    res = FuzzResult()
    for _ in range(trials):
        w = random_word(r, rng, rng.randrange(max_len + 1))
        w2 = relation_move(r, w, rng)
        res.trials += 1
        if canonicalize(w, r) != canonicalize(w2, r):
            res.violations.append((w, w2))
    return res


def is_reduced(r: ReducedGraphOfGroups, w: PathWord) -> bool:
    """No subword e·α_ē(x)·ē with x ∈ Ã_e."""
    for k in range(1, len(w.darts)):
        e, f = w.darts[k - 1], w.darts[k]
        if f == e ^ 1 and w.letters[k] in r.images[f]:
            return False
    return True


def random_reduced_word(r: ReducedGraphOfGroups, rng: random.Random, n: int) -> PathWord | None:
    g = r.graph
    start = rng.randrange(g.vertex_count)
    letters = [rng.randrange(r.base.vertex_groups[start].order)]
    darts: list[int] = []
    v = start
    for _ in range(n):
        out = g.out_darts(v)
        if not out:
            break
        e = rng.choice(out)
        if darts and e == darts[-1] ^ 1:
            allowed = [a for a in range(r.base.vertex_groups[v].order) if a not in r.images[e]]
            if not allowed:
                continue
            letters[-1] = rng.choice(allowed)
        darts.append(e)
        v = g.d1(e)
        letters.append(rng.randrange(r.base.vertex_groups[v].order))
    w = PathWord(start, tuple(letters), tuple(darts))
    return w if (darts or letters[0] != 0) else None


def fuzz_reduced_words(r: ReducedGraphOfGroups, trials: int = 10_000, seed: int = 0,
                       max_len: int = 8) -> FuzzResult:
    rng = random.Random(seed)
    res = FuzzResult()
    while res.trials < trials:
        w = random_reduced_word(r, rng, rng.randrange(max_len + 1))
        if w is None:
            continue
        res.trials += 1
        cf = canonicalize(w, r)
        if not is_reduced(r, w) or len(cf.darts) != len(w.darts) or (not cf.darts and cf.letters == (0,)):
            res.violations.append(w)
    return res


# -- congruence closure on a finite ball --------------------------------------

def ball_words(r: ReducedGraphOfGroups, n: int) -> list[PathWord]:
    """Every word with at most n darts, from every start vertex."""
    g, groups = r.graph, r.base.vertex_groups
    out = []

    def walks(v, k):
        if k == 0:
            yield ()
            return
        for e in g.out_darts(v):
            for rest in walks(g.d1(e), k - 1):
                yield (e,) + rest

    for start in range(g.vertex_count):
        for k in range(n + 1):
            for darts in walks(start, k):
                verts = [start] + [g.d1(e) for e in darts]
                for letters in itertools.product(*[range(groups[v].order) for v in verts]):
                    out.append(PathWord(start, letters, darts))
    return out


def ball_size(r: ReducedGraphOfGroups, n: int) -> int:
    """Number of words ``ball_words(r, n)`` would return."""
    g, groups = r.graph, r.base.vertex_groups
    count = [groups[v].order for v in range(g.vertex_count)]  # words ending at v
    total = sum(count)
    for _ in range(n):
        nxt = [0] * g.vertex_count
        for e in range(g.dart_count):
            nxt[g.d1(e)] += count[g.d0(e)] * groups[g.d1(e)].order
        count = nxt
        total += sum(count)
    return total


def closure_radius(r: ReducedGraphOfGroups, n: int = 4, limit: int = 150_000) -> int:
    """Largest radius up to n whose ball has at most ``limit`` words."""
    while n > 0 and ball_size(r, n) > limit:
        n -= 1
    return n


def _neighbours(r: ReducedGraphOfGroups, w: PathWord):
    """Words one push or one collapse away from ``w``."""
    g, groups = r.graph, r.base.vertex_groups
    L, D = w.letters, w.darts
    for k, e in enumerate(D):
        A, B = groups[g.d0(e)], groups[g.d1(e)]
        for x in r.edge_elements[e >> 1]:
            if x == 0:
                continue
            a = list(L)
            a[k] = A.mul(a[k], A.inv(r.alpha(e, x)))
            a[k + 1] = B.mul(r.alpha(e ^ 1, x), a[k + 1])
            yield PathWord(w.start, tuple(a), D)
        if k + 1 < len(D) and D[k + 1] == e ^ 1:
            mid = L[k + 1]
            for x in r.edge_elements[e >> 1]:
                if r.alpha(e ^ 1, x) == mid:
                    merged = A.product(L[k], r.alpha(e, x), L[k + 2])
                    yield PathWord(w.start, L[:k] + (merged,) + L[k + 3:], D[:k] + D[k + 2:])


def closure_partition(r: ReducedGraphOfGroups, words: list[PathWord]) -> list[int]:
    """Class label per word under the relation closure inside ``words``."""
    pos = {w: i for i, w in enumerate(words)}
    uf = UnionFind(len(words))
    for i, w in enumerate(words):
        for u in _neighbours(r, w):
            j = pos.get(u)
            if j is not None:
                uf.union(i, j)
    return [uf.find(i) for i in range(len(words))]


def same_partition(a: list, b: list) -> bool:
    fwd, back = {}, {}
    for x, y in zip(a, b):
        if fwd.setdefault(x, y) != y or back.setdefault(y, x) != x:
            return False
    return True


def check_closure(r: ReducedGraphOfGroups, n: int = 4) -> tuple[bool, int, int]:
    """(partitions agree, number of words, number of classes)."""
    words = ball_words(r, n)
    closure = closure_partition(r, words)
    canon = [canonicalize(w, r) for w in words]
    return same_partition(closure, canon), len(words), len(set(closure))
