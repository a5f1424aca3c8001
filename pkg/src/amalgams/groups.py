"""Finite permutation groups with fully enumerated element tables.

Elements are addressed by their index into ``FiniteGroup.elements``; index 0
is always the identity.  Products are composition of maps, applied right to
left: ``(p * q)[x] == p[q[x]]``.  Automorphism groups are materialized as
permutation groups acting on the element indices of the base group, so the
same subgroup and double-coset machinery applies to them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BudgetExceeded,
    CapExceeded,
    DegreeMismatch,
    NotAHomomorphism,
    NotInjective,
    NotInvariant,
    NotNormal,
)

Perm = tuple[int, ...]

DEFAULT_CAP = 20_000
DEFAULT_SEARCH_BUDGET = 1_000_000
_TABLE_LIMIT = 512


def compose(p: Perm, q: Perm) -> Perm:
    """Return p∘q, i.e. apply q first."""
    return tuple(p[j] for j in q)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_perm(images: Sequence[int]) -> bool:
    return sorted(images) == list(range(len(images)))


class FiniteGroup:
    """A permutation group together with its complete element list.

    Use :func:`generate_group` to build one.  ``words[i] = (parent, k)``
    records how element ``i`` was first reached: ``elements[i] ==
    elements[parent] * generators[k]``.
    """

    def __init__(self, degree: int, generators: tuple[Perm, ...],
                 elements: tuple[Perm, ...], words: tuple[tuple[int, int], ...]):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.words = words
        self.index = {p: i for i, p in enumerate(elements)}
        self.gen_indices = tuple(self.index[g] for g in generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={self.order})"

    @cached_property
    def _table(self):
        if self.order > _TABLE_LIMIT:
            return None
        els, idx = self.elements, self.index
        return [[idx[compose(p, q)] for q in els] for p in els]

    def mul(self, i: int, j: int) -> int:
        table = self._table
        if table is not None:
            return table[i][j]
        return self.index[compose(self.elements[i], self.elements[j])]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        return tuple(self.index[invert(p)] for p in self.elements)

    def inv(self, i: int) -> int:
        return self._inverses[i]

    def product(self, *idx: int) -> int:
        acc = 0
        for i in idx:
            acc = self.mul(acc, i)
        return acc

    def element_order(self, i: int) -> int:
        n, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            n += 1
        return n

    @cached_property
    def class_ids(self) -> tuple[int, ...]:
        """Conjugacy class label (smallest member index) per element."""
        label = [-1] * self.order
        for i in range(self.order):
            if label[i] >= 0:
                continue
            orbit = [i]
            label[i] = i
            for x in orbit:
                for g in self.gen_indices:
                    y = self.mul(self.mul(self.inv(g), x), g)
                    if label[y] < 0:
                        label[y] = i
                        orbit.append(y)
        return tuple(label)

    @cached_property
    def fingerprints(self) -> tuple[tuple[int, int], ...]:
        sizes: dict[int, int] = {}
        for c in self.class_ids:
            sizes[c] = sizes.get(c, 0) + 1
        return tuple((self.element_order(i), sizes[self.class_ids[i]])
                     for i in range(self.order))

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([0]))

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}


def generate_group(generators: Iterable[Sequence[int]], cap: int = DEFAULT_CAP,
                   degree: int | None = None) -> FiniteGroup:
    """Close ``generators`` under composition.

    Elements are listed breadth-first from the identity by word length in the
    generators; each new layer is sorted lexicographically by image array.
    """
    gens = tuple(tuple(int(x) for x in g) for g in generators)
    if degree is None:
        if not gens:
            raise DegreeMismatch("degree is required for an empty generating set")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise DegreeMismatch(f"generator {g} does not have degree {degree}")
        if not is_perm(g):
            raise DegreeMismatch(f"generator {g} is not a permutation")
    identity = tuple(range(degree))
    elements = [identity]
    words = [(-1, -1)]
    seen = {identity}
    layer = [identity]
    while layer:
        found: dict[Perm, tuple[int, int]] = {}
        start = len(elements) - len(layer)
        for offset, p in enumerate(layer):
            for k, g in enumerate(gens):
                q = compose(p, g)
                if q not in seen and q not in found:
                    found[q] = (start + offset, k)
        new_layer = sorted(found)
        for q in new_layer:
            seen.add(q)
            elements.append(q)
            words.append(found[q])
        if len(elements) > cap:
            raise CapExceeded(f"group order exceeds cap {cap}")
        layer = new_layer
    return FiniteGroup(degree, gens, tuple(elements), tuple(words))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: frozenset

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    @cached_property
    def gens(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in element order."""
        chosen: list[int] = []
        span = {0}
        for i in sorted(self.members):
            if i not in span:
                chosen.append(i)
                span = set(_closure(self.parent, chosen))
                if len(span) == self.order:
                    break
        return tuple(chosen)

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.mul(G.mul(G.inv(g), h), g) in self.members
                   for g in G.gen_indices for h in self.gens)


def _closure(G: FiniteGroup, seeds: Iterable[int]) -> list[int]:
    seeds = [s for s in seeds if s != 0]
    out = [0]
    seen = {0}
    for x in out:
        for s in seeds:
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def subgroup_generated(G: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    seeds = list(seeds)
    for s in seeds:
        if not 0 <= s < G.order:
            raise IndexError(f"element index {s} out of range for {G!r}")
    return Subgroup(G, frozenset(_closure(G, seeds)))


def intersect(H: Subgroup, K: Subgroup) -> Subgroup:
    return Subgroup(H.parent, H.members & K.members)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    hg = H.gens
    members = [g for g in range(G.order)
               if all(G.mul(G.mul(G.inv(g), h), g) in H.members for h in hg)]
    return Subgroup(G, frozenset(members))


# -- homomorphisms -----------------------------------------------------------

class GroupMap:
    """A homomorphism stored as a full element table ``images[i]``."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup,
                 images: Sequence[int], check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        if len(self.images) != domain.order:
            raise NotAHomomorphism("image table has the wrong length")
        if check:
            D, C, img = domain, codomain, self.images
            if img[0] != 0:
                raise NotAHomomorphism("identity not mapped to identity")
            for x in range(D.order):
                for g in D.gen_indices:
                    if img[D.mul(x, g)] != C.mul(img[x], img[g]):
                        raise NotAHomomorphism("map is not multiplicative")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other):
        return (isinstance(other, GroupMap) and self.domain is other.domain
                and self.codomain is other.codomain and self.images == other.images)

    def __hash__(self):
        return hash(self.images)

    def __repr__(self) -> str:
        return f"GroupMap({self.domain!r} -> {self.codomain!r})"

    @property
    def gen_images(self) -> tuple[int, ...]:
        return tuple(self.images[g] for g in self.domain.gen_indices)

    @cached_property
    def injective(self) -> bool:
        return len(set(self.images)) == self.domain.order

    @cached_property
    def surjective(self) -> bool:
        return len(set(self.images)) == self.codomain.order

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self∘other."""
        return GroupMap(other.domain, self.codomain,
                        [self.images[j] for j in other.images], check=False)

    def inverse_on_image(self) -> dict[int, int]:
        if not self.injective:
            raise NotInjective("map is not injective")
        return {y: x for x, y in enumerate(self.images)}

    def gen_image_perms(self) -> list[list[int]]:
        return [list(self.codomain.elements[i]) for i in self.gen_images]


def kernel(f: GroupMap) -> Subgroup:
    return Subgroup(f.domain, frozenset(i for i, y in enumerate(f.images) if y == 0))


def image(f: GroupMap) -> Subgroup:
    return Subgroup(f.codomain, frozenset(f.images))


def _extend(G: FiniteGroup, gens: Sequence[int], imgs: Sequence[int],
            C: FiniteGroup) -> list[int] | None:
    """Extend ``gens[k] -> imgs[k]`` along the closure of ``gens``.

    Every product x*g met during the walk is checked, so a returned table is
    multiplicative on the subgroup generated by ``gens``.
    """
    table = {0: 0}
    queue = [0]
    for x in queue:
        fx = table[x]
        for g, h in zip(gens, imgs):
            y = G.mul(x, g)
            fy = C.mul(fx, h)
            old = table.get(y)
            if old is None:
                table[y] = fy
                queue.append(y)
            elif old != fy:
                return None
    return table


def hom_from_gen_images(domain: FiniteGroup, codomain: FiniteGroup,
                        gen_images: Sequence) -> GroupMap:
    """Extend an assignment on ``domain.generators`` to a homomorphism.

    ``gen_images`` may hold codomain element indices or permutations.
    """
    if len(gen_images) != len(domain.generators):
        raise NotAHomomorphism("need exactly one image per domain generator")
    imgs = []
    for g in gen_images:
        if isinstance(g, int):
            imgs.append(g)
        else:
            p = tuple(g)
            if p not in codomain.index:
                raise NotAHomomorphism(f"{list(p)} is not an element of the codomain")
            imgs.append(codomain.index[p])
    table = _extend(domain, domain.gen_indices, imgs, codomain)
    if table is None or len(table) != domain.order:
        raise NotAHomomorphism("generator assignment does not extend to a homomorphism")
    return GroupMap(domain, codomain, [table[i] for i in range(domain.order)], check=False)


def identity_map(G: FiniteGroup) -> GroupMap:
    return GroupMap(G, G, range(G.order), check=False)


def trivial_map(D: FiniteGroup, C: FiniteGroup) -> GroupMap:
    return GroupMap(D, C, [0] * D.order, check=False)


# -- automorphisms -----------------------------------------------------------

class AutGroup:
    """A group of automorphisms of ``base``, acting on its element indices.

    ``carrier`` is a permutation group of degree ``base.order``; the carrier
    element ``a`` sends base element ``x`` to ``carrier.elements[a][x]``.
    """

    def __init__(self, base: FiniteGroup, carrier: FiniteGroup):
        self.base = base
        self.carrier = carrier

    def __repr__(self) -> str:
        return f"AutGroup(order={self.carrier.order} on {self.base!r})"

    @property
    def order(self) -> int:
        return self.carrier.order

    def apply(self, a: int, x: int) -> int:
        return self.carrier.elements[a][x]

    def as_map(self, a: int) -> GroupMap:
        return GroupMap(self.base, self.base, self.carrier.elements[a], check=False)

    def index_of(self, f) -> int:
        images = f.images if isinstance(f, GroupMap) else tuple(f)
        return self.carrier.index[images]


def _carrier_from(base: FiniteGroup, autos: Sequence[Perm], cap: int) -> FiniteGroup:
    autos = sorted(autos)
    if not autos:
        autos = [tuple(range(base.order))]
    gens: list[Perm] = []
    span = {tuple(range(base.order))}
    for a in autos:
        if a not in span:
            gens.append(a)
            span = set(generate_group(gens, cap=cap, degree=base.order).elements)
            if len(span) == len(autos):
                break
    carrier = generate_group(gens, cap=cap, degree=base.order)
    if carrier.order != len(autos):
        raise NotAHomomorphism("automorphism list is not closed")
    return carrier


def _irredundant_gens(G: FiniteGroup) -> list[int]:
    chosen: list[int] = []
    size = 1
    for g in G.gen_indices:
        trial = _closure(G, chosen + [g])
        if len(trial) > size:
            chosen.append(g)
            size = len(trial)
    return chosen


def _all_automorphisms(G: FiniteGroup, cap: int) -> list[Perm]:
    gens = _irredundant_gens(G)
    fp = G.fingerprints
    candidates = [[y for y in range(G.order) if fp[y] == fp[g]] for g in gens]
    found: list[Perm] = []

    def search(k: int, chosen: list[int]):
        if k == len(gens):
            table = _extend(G, gens, chosen, G)
            if table is not None and len(table) == G.order:
                images = tuple(table[i] for i in range(G.order))
                if len(set(images)) == G.order:
                    found.append(images)
                    if len(found) > cap:
                        raise CapExceeded(f"automorphism group exceeds cap {cap}")
            return
        for y in candidates[k]:
            trial = chosen + [y]
            table = _extend(G, gens[:k + 1], trial, G)
            if table is None or len(set(table.values())) != len(table):
                continue
            search(k + 1, trial)

    search(0, [])
    return found


def automorphism_group(G: FiniteGroup, cap: int = DEFAULT_CAP) -> AutGroup:
    """Aut(G), computed by searching images of an irredundant generating set."""
    cached = G.__dict__.get("_aut_group")
    if cached is not None:
        return cached
    autos = _all_automorphisms(G, cap)
    A = AutGroup(G, _carrier_from(G, autos, cap))
    G.__dict__["_aut_group"] = A
    return A


def relative_automorphism_group(G: FiniteGroup, preserved: Sequence[Subgroup],
                                cap: int = DEFAULT_CAP) -> AutGroup:
    """Automorphisms of G mapping each listed subgroup onto itself."""
    full = automorphism_group(G, cap)
    keep = []
    for a in full.carrier.elements:
        if all(all(a[h] in H.members for h in H.gens) for H in preserved):
            keep.append(a)
    if len(keep) == full.order:
        return full
    return AutGroup(G, _carrier_from(G, keep, cap))


def restrict_aut(a, H: Subgroup, iota: GroupMap) -> GroupMap:
    """Return iota⁻¹∘a∘iota, an automorphism of iota's domain.

    ``a`` is a GroupMap or an image table on the elements of ``H.parent``.
    """
    images = a.images if isinstance(a, GroupMap) else tuple(a)
    back = iota.inverse_on_image()
    if set(iota.images) != H.members:
        raise NotInvariant("iota does not map onto H")
    out = []
    for k in range(iota.domain.order):
        y = images[iota.images[k]]
        if y not in back:
            raise NotInvariant("automorphism does not preserve H")
        out.append(back[y])
    return GroupMap(iota.domain, iota.domain, out, check=False)


def conjugation(x: int, G: FiniteGroup) -> GroupMap:
    """The inner automorphism y ↦ x⁻¹·y·x."""
    xi = G.inv(x)
    return GroupMap(G, G, [G.mul(G.mul(xi, y), x) for y in range(G.order)], check=False)


# -- cosets and complements --------------------------------------------------

def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> list[tuple[int, frozenset]]:
    """Partition G into double cosets H·g·K; representatives are index-minimal."""
    assigned = [False] * G.order
    out = []
    hg, kg = H.gens, K.gens
    for g in range(G.order):
        if assigned[g]:
            continue
        cls = [g]
        assigned[g] = True
        for x in cls:
            for y in [G.mul(h, x) for h in hg] + [G.mul(x, k) for k in kg]:
                if not assigned[y]:
                    assigned[y] = True
                    cls.append(y)
        out.append((g, frozenset(cls)))
    return out


def complement_of_normal(A: FiniteGroup, N: Subgroup,
                         budget: int = DEFAULT_SEARCH_BUDGET) -> Subgroup | None:
    """Find T ≤ A with T ∩ N = 1 and |T|·|N| = |A|, or return None.

    Backtracking: the partial subgroup S always meets every coset of N at
    most once; the next element is drawn from the first coset S misses.
    """
    if not N.is_normal():
        raise NotNormal("N is not normal in A")
    target = A.order // N.order
    coset = [-1] * A.order
    reps = []
    for a in range(A.order):
        if coset[a] < 0:
            cid = len(reps)
            reps.append(a)
            for n in N.members:
                coset[A.mul(a, n)] = cid
    members_of = [[] for _ in reps]
    for a in range(A.order):
        members_of[coset[a]].append(a)

    seen: set[frozenset] = set()
    nodes = 0

    def search(S: frozenset) -> frozenset | None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"complement search exceeded {budget} nodes")
        if len(S) == target:
            return S
        covered = {coset[s] for s in S}
        c = next(i for i in range(len(reps)) if i not in covered)
        for y in members_of[c]:
            T = frozenset(_closure(A, list(S) + [y]))
            if len({coset[t] for t in T}) != len(T) or target % len(T):
                continue
            if T in seen:
                continue
            seen.add(T)
            found = search(T)
            if found is not None:
                return found
        return None

    result = search(frozenset([0]))
    return None if result is None else Subgroup(A, result)
