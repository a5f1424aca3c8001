"""Command-line front end.

Exit codes: 0 success, 1 crosscheck failure, 2 input error, 3 budget or cap
exceeded.  Reports are written to standard output in one piece.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time

from .amalgam import AmalgamType
from .coset import (
    GoldschmidtInstance,
    goldschmidt_amalgam,
    goldschmidt_classes,
    triangle_equivalence_classes,
    triangle_instance,
    xi_inverse,
)
from .crosscheck import all_pointings, crosscheck, oracle_partition
from .errors import AmalgamError, InputError, NotRigid, ResourceError
from .graph import spanning_tree
from .groups import DEFAULT_CAP, DEFAULT_SEARCH_BUDGET, AutGroup
from .paths import (
    DEFAULT_BOUND,
    fundamental_generators,
    subgroup_ball,
    verdict_from_balls,
)
from .pointing import (
    DEFAULT_ENUMERATION_BUDGET,
    classify_pointings,
    normalized_pointings,
    reference_graph,
)
from .rigid import check_rigidity
from .schema import dumps, load_instance

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def aut_images(A: AutGroup, a: int) -> list:
    """An automorphism as the permutations its base generators map to."""
    G = A.base
    return [list(G.elements[A.apply(a, g)]) for g in G.gen_indices]


def _load(args):
    inst = load_instance(args.file)
    if args.cap is not None:
        inst.cap = args.cap
    return inst


def _type(args, inst) -> AmalgamType:
    t = inst.amalgam_type()
    reference_graph(t, inst.cap)
    return t


def _trees(args, c):
    if args.tree_base is None:
        return None
    return [spanning_tree(c.graph, args.tree_base)]


def cmd_classify(args) -> tuple[dict, int]:
    inst = _load(args)
    t = _type(args, inst)
    c = reference_graph(t)
    ps = normalized_pointings(c, _trees(args, c), budget=args.max_pointings)
    rep = classify_pointings(c, ps, args.budget, workers=args.workers, mode=args.mode)
    out = {"command": "classify", "instance": inst.name}
    out.update(rep.to_json(t))
    for item, cls in zip(out["classes"], rep.classes):
        item["members"] = [{"pointing": list(rep.pointings[i].delta),
                            "witness": None if i == cls[0] else
                            {"vertex": list(rep.witnesses[i].vertex),
                             "edge": list(rep.witnesses[i].edge)}}
                           for i in cls]
    return out, EXIT_OK


def cmd_goldschmidt(args) -> tuple[dict, int]:
    inst = _load(args)
    gi = inst.build()
    if not isinstance(gi, GoldschmidtInstance):
        raise InputError("goldschmidt needs an instance of kind 'goldschmidt'")
    t = _type(args, inst)
    classes = goldschmidt_classes(gi)
    out = {
        "command": "goldschmidt", "instance": inst.name,
        "aut_order": gi.aut_B.order,
        "abar_orders": [len(a) for a in gi.abar],
        "double_coset_count": len(classes),
        "classes": [{"representative": aut_images(gi.aut_B, d.representative),
                     "size": len(d.members),
                     "representative_amalgam":
                         goldschmidt_amalgam(gi, t, d.representative).to_json()["inclusions"]}
                    for d in classes],
    }
    return out, EXIT_OK


def cmd_triangle(args) -> tuple[dict, int]:
    inst = _load(args)
    t = _type(args, inst)
    ti = triangle_instance(t)
    orbits = triangle_equivalence_classes(ti)
    out = {
        "command": "triangle", "instance": inst.name,
        "vertex_orders": [A.order for A in ti.A],
        "orbit_count": len(orbits),
        "orbits": [{"representative": list(a), "size": n,
                    "pointing": list(xi_inverse(ti, a).delta)} for a, n in orbits],
    }
    return out, EXIT_OK


def cmd_rigid(args) -> tuple[dict, int]:
    inst = _load(args)
    t = _type(args, inst)
    c = reference_graph(t)
    rig = check_rigidity(c, args.budget)
    out = {"command": "rigid-check", "instance": inst.name, "rigid": bool(rig),
           "edge_orders": [A.order for A in c.edge_groups]}
    if rig:
        r = rig.reduced
        out["reduced_edge_orders"] = [len(T) for T in r.tilde]
        ps = normalized_pointings(c, _trees(args, c), budget=args.max_pointings)
        rep = classify_pointings(c, ps, args.budget, edge_elements=r.edge_elements,
                                 workers=args.workers)
        out["class_count"] = rep.count
        out["decider_nodes"] = rep.nodes
    else:
        out["failing_dart"] = rig.dart
        out["reason"] = rig.reason
    return out, EXIT_OK


def cmd_fundamental(args) -> tuple[dict, int]:
    inst = _load(args)
    t = _type(args, inst)
    c = reference_graph(t)
    rig = check_rigidity(c, args.budget)
    if not rig:
        raise NotRigid(rig.dart, rig.reason)
    r = rig.reduced
    tree = spanning_tree(c.graph, args.base)
    ps = normalized_pointings(c, [tree] if args.tree_base is None else _trees(args, c),
                              budget=args.max_pointings)
    rep = classify_pointings(c, ps, args.budget, edge_elements=r.edge_elements,
                             workers=args.workers)
    gens, balls = [], []
    for p in rep.representatives:
        s = fundamental_generators(r, p, args.base, tree).generators
        gens.append(s)
        balls.append(subgroup_ball(r, s, args.base, args.bound))
    out = {
        "command": "fundamental", "instance": inst.name, "base": args.base,
        "bound": args.bound, "class_count": rep.count,
        "classes": [{"representative_pointing": list(p.delta),
                     "generators": [w.tokens() for w in s],
                     "ball_size": len(b.radius), "saturated": b.saturated}
                    for p, s, b in zip(rep.representatives, gens, balls)],
        "verdicts": [{"classes": [i, j],
                      "verdict": verdict_from_balls(gens[i], balls[i], gens[j], balls[j]).value}
                     for i, j in itertools.combinations(range(rep.count), 2)],
    }
    return out, EXIT_OK


def cmd_crosscheck(args) -> tuple[dict, int]:
    inst = _load(args)
    _type(args, inst)
    res = crosscheck(inst, workers=args.workers)
    out = {"command": "crosscheck"}
    out.update(res.to_json())
    return out, EXIT_OK if res.passed else EXIT_FAIL


def cmd_oracle(args) -> tuple[dict, int]:
    inst = _load(args)
    t = _type(args, inst)
    c = reference_graph(t)
    ps = all_pointings(t) if args.all else normalized_pointings(c, _trees(args, c),
                                                                  budget=args.max_pointings)
    labels = oracle_partition(t, ps, args.budget)
    sizes = [labels.count(n) for n in range(max(labels) + 1)]
    out = {"command": "oracle", "instance": inst.name, "pointings_examined": len(ps),
           "class_count": len(sizes), "class_sizes": sizes,
           "representatives": [list(ps[labels.index(n)].delta) for n in range(len(sizes))]}
    return out, EXIT_OK


COMMANDS = {
    "classify": (cmd_classify, "isomorphism classes via pointings"),
    "goldschmidt": (cmd_goldschmidt, "double cosets for a goldschmidt instance"),
    "triangle": (cmd_triangle, "orbit classes for a triangle instance"),
    "rigid-check": (cmd_rigid, "rigidity test and reduced classification"),
    "fundamental": (cmd_fundamental, "fundamental groups of class representatives"),
    "crosscheck": (cmd_crosscheck, "compare every applicable classifier"),
    "oracle": (cmd_oracle, "brute-force amalgam isomorphism classes"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="amalgams",
                                 description="Classify amalgams of finite groups over a graph.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="instance JSON file")
        p.add_argument("--cap", type=int, default=None,
                       help=f"largest group order to enumerate (default {DEFAULT_CAP})")
        p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET,
                       help="search nodes per decision")
        p.add_argument("--max-pointings", type=int, default=DEFAULT_ENUMERATION_BUDGET,
                       help="largest number of pointings to enumerate")
        p.add_argument("--tree-base", type=int, default=None,
                       help="root of the spanning tree used for normalization")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--timing", action="store_true", help="print wall time to stderr")
        if name == "classify":
            p.add_argument("--mode", choices=["edge", "vertex"], default="edge")
        if name == "fundamental":
            p.add_argument("--base", type=int, default=0)
            p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
        if name == "oracle":
            p.add_argument("--all", action="store_true",
                           help="use every pointing, not only normalized ones")
    return ap


def render_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            for n, item in enumerate(value):
                brief = {k: v for k, v in item.items()
                         if k not in ("members", "representative_amalgam")}
                lines.append(f"  [{n}] " + ", ".join(f"{k}={v}" for k, v in brief.items()))
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        report, code = func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except AmalgamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(report) if args.format == "json" else render_text(report)
    sys.stdout.write(text)
    sys.stdout.flush()
    if args.timing:
        print(f"wall time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
