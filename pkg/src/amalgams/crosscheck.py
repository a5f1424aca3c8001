"""Agreement checks between the classifiers and the brute-force oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .amalgam import AmalgamType, amalgams_isomorphic_oracle, verify_amalgam_isomorphism
from .coset import (
    GoldschmidtInstance,
    goldschmidt_classes,
    triangle_equivalence_classes,
    triangle_instance,
    triangle_orbit,
    xi_inverse,
    xi_map,
)
from .errors import ShapeMismatch
from .groups import DEFAULT_SEARCH_BUDGET
from .pointing import (
    ClassificationReport,
    Pointing,
    amalgam_from_pointing,
    amalgam_witness,
    classify,
    decide,
    reference_graph,
    verify_pointing_witness,
)
from .rigid import check_rigidity, classify_rigid
from .schema import InstanceFile


def oracle_partition(t: AmalgamType, pointings: Sequence[Pointing],
                     budget: int = DEFAULT_SEARCH_BUDGET) -> list[int]:
    """Class label per pointing, decided on the amalgams by the oracle alone."""
    amalgams = [amalgam_from_pointing(t, p) for p in pointings]
    reps: list[int] = []
    labels = []
    for i, a in enumerate(amalgams):
        for n, r in enumerate(reps):
            if amalgams_isomorphic_oracle(amalgams[r], a, budget) is not None:
                labels.append(n)
                break
        else:
            labels.append(len(reps))
            reps.append(i)
    return labels


def all_pointings(t: AmalgamType) -> list[Pointing]:
    """Every pointing of C₀, loops tied, in lexicographic order."""
    c = reference_graph(t)
    g = c.graph
    free = [e for e in range(g.dart_count) if not (g.is_loop(e) and e & 1)]
    out = []
    for choice in itertools.product(*[range(c.vertex_group(e).order) for e in free]):
        delta = [0] * g.dart_count
        for e, d in zip(free, choice):
            delta[e] = d
            if g.is_loop(e):
                delta[e ^ 1] = d
        out.append(Pointing(c, tuple(delta)))
    return out


def same_partition(a: Sequence, b: Sequence) -> bool:
    """Whether two labellings of one list induce the same partition."""
    fwd, back = {}, {}
    for x, y in zip(a, b):
        if fwd.setdefault(x, y) != y or back.setdefault(y, x) != x:
            return False
    return len(a) == len(b)


def is_double_loop(t: AmalgamType) -> bool:
    g = t.graph
    return g.vertex_count == 1 and g.edge_count == 2


def is_triangle(t: AmalgamType) -> bool:
    try:
        triangle_instance(t)
    except ShapeMismatch:
        return False
    return True


def goldschmidt_from_type(t: AmalgamType) -> GoldschmidtInstance:
    if not is_double_loop(t):
        raise ShapeMismatch("not a double loop")
    a = t.reference
    return GoldschmidtInstance(a.vertex_groups[0], a.edge_groups[0], a.edge_groups[1],
                               a.inclusions[0], a.inclusions[2])


def find_class(c, report: ClassificationReport, p: Pointing) -> int | None:
    """Index of the class of ``report`` containing a pointing isomorphic to ``p``."""
    for n, rep in enumerate(report.representatives):
        if decide(c, rep, p)[0] is not None:
            return n
    return None


@dataclass
class Pairing:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class CrosscheckReport:
    name: str
    pairings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.pairings)

    def to_json(self) -> dict:
        return {"instance": self.name, "passed": self.passed,
                "pairings": [{"name": p.name, "passed": p.passed, "detail": p.detail}
                             for p in self.pairings]}


def _first_disagreement(a: Sequence, b: Sequence) -> str:
    for i, j in itertools.combinations(range(len(a)), 2):
        if (a[i] == a[j]) != (b[i] == b[j]):
            return f"pointings {i} and {j}"
    return "class counts differ"


def crosscheck(inst: InstanceFile | AmalgamType, name: str = "",
               workers: int = 1, oracle_limit: int = 2000) -> CrosscheckReport:
    """Run every applicable classifier and compare partitions."""
    gold = None
    if isinstance(inst, InstanceFile):
        name = name or inst.name
        built = inst.build()
        if isinstance(built, GoldschmidtInstance):
            gold = built
        t = inst.amalgam_type()
    else:
        t = inst
    out = CrosscheckReport(name)
    c = reference_graph(t)
    rep = classify(t, workers=workers)
    labels = rep.class_of()

    ok = all(verify_pointing_witness(c, rep.pointings[cls[0]], rep.pointings[i], rep.witnesses[i])
             for cls in rep.classes for i in cls[1:])
    ok = ok and all(verify_amalgam_isomorphism(amalgam_from_pointing(t, rep.pointings[i]),
                                               amalgam_from_pointing(t, rep.pointings[cls[0]]),
                                               amalgam_witness(t, rep.witnesses[i]))
                    for cls in rep.classes for i in cls[1:])
    out.pairings.append(Pairing("witnesses verify", ok))

    vertex = classify(t, workers=workers, mode="vertex")
    out.pairings.append(Pairing("edge decider vs vertex decider",
                                vertex.classes == rep.classes,
                                f"{rep.count} vs {vertex.count} classes"))

    if len(rep.pointings) <= oracle_limit:
        orc = oracle_partition(t, rep.pointings)
        same = same_partition(labels, orc)
        out.pairings.append(Pairing("pointings vs oracle", same,
                                    f"{rep.count} classes" if same else _first_disagreement(labels, orc)))

    rig = check_rigidity(c)
    if rig:
        rr = classify_rigid(t, workers=workers)
        out.pairings.append(Pairing("reduced vs full pointings", rr.classes == rep.classes,
                                    f"{rr.count} vs {rep.count} classes"))
    else:
        out.pairings.append(Pairing("rigidity", True, f"not rigid at dart {rig.dart}"))

    if gold is None and is_double_loop(t):
        gold = goldschmidt_from_type(t)
    if gold is not None:
        dcs = goldschmidt_classes(gold)
        hit = sorted(find_class(c, rep, Pointing(c, (0, 0, d.representative, d.representative)))
                     for d in dcs)
        ok = len(dcs) == rep.count and hit == list(range(rep.count))
        out.pairings.append(Pairing("double cosets vs pointings", ok,
                                    f"{len(dcs)} double cosets, {rep.count} classes"))

    if is_triangle(t):
        ti = triangle_instance(t)
        orbits = triangle_equivalence_classes(ti)
        hit = sorted(find_class(c, rep, xi_inverse(ti, a)) for a, _ in orbits)
        ok = len(orbits) == rep.count and hit == list(range(rep.count))
        out.pairings.append(Pairing("triangle orbits vs pointings", ok,
                                    f"{len(orbits)} orbits, {rep.count} classes"))
        inv = all(xi_map(ti, xi_inverse(ti, a)) == tuple(a) for a, _ in orbits)
        inv = inv and all(xi_inverse(ti, xi_map(ti, p)) == p
                          for p in (xi_inverse(ti, a) for a, _ in orbits))
        out.pairings.append(Pairing("xi round trip", inv))
        images = [min(triangle_orbit(ti, xi_map(ti, p))) for p in rep.representatives]
        ok = sorted(images) == sorted(a for a, _ in orbits)
        out.pairings.append(Pairing("xi of class representatives hits every orbit once", ok))
    return out
