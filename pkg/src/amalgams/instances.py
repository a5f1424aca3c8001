"""The bundled corpus of small instances.

``python -m amalgams.instances --write`` regenerates the JSON files in
``amalgams/corpus/``.  The expected counts below were produced by the
brute-force amalgam oracle and are frozen here.
"""

from __future__ import annotations

import argparse
from importlib import resources
from pathlib import Path

from .groups import FiniteGroup, compose, hom_from_gen_images
from .named import cyclic, dihedral, direct_product, klein_four, power, quaternion, symmetric
from .schema import SCHEMA_VERSION, dumps, load_instance

# D8 acting on the square: r is the rotation, s a reflection.
_R = (1, 2, 3, 0)
_S = (0, 3, 2, 1)
_R2 = power(_R, 2)


def _hom(domain: FiniteGroup, codomain: FiniteGroup, images):
    return hom_from_gen_images(domain, codomain, images).gen_image_perms()


def _type_payload(vertices: int, edges, vgroups, egroups, incs: dict) -> dict:
    """``incs`` maps a dart to (vertex group, edge group, generator images)."""
    return {
        "graph": {"vertices": vertices, "edges": [list(e) for e in edges]},
        "vertex_groups": [G.to_json() for G in vgroups],
        "edge_groups": [G.to_json() for G in egroups],
        "inclusions": [{"dart": e, "gen_images": _hom(*incs[e])} for e in sorted(incs)],
    }


def _single_edge(G0, G1, E, img0, img1) -> dict:
    return _type_payload(2, [(0, 1)], [G0, G1], [E], {0: (G0, E, img0), 1: (G1, E, img1)})


def _double_loop(B, P1, P2, img1, img2) -> dict:
    return _type_payload(1, [(0, 0), (0, 0)], [B], [P1, P2],
                         {0: (B, P1, img1), 2: (B, P2, img2)})


def _triangle(V, E, fwd_imgs, bwd_imgs) -> dict:
    """Edge k joins k and k+1; dart 2k leaves k, dart 2k+1 leaves k+1."""
    incs = {}
    for k in range(3):
        incs[2 * k] = (V[k], E[k], fwd_imgs[k])
        incs[2 * k + 1] = (V[(k + 1) % 3], E[k], bwd_imgs[k])
    return _type_payload(3, [(0, 1), (1, 2), (2, 0)], V, E, incs)


def _path(V, E, imgs) -> dict:
    incs = {}
    for k in range(2):
        incs[2 * k] = (V[k], E[k], imgs[2 * k])
        incs[2 * k + 1] = (V[k + 1], E[k], imgs[2 * k + 1])
    return _type_payload(3, [(0, 1), (1, 2)], V, E, incs)


def _goldschmidt(B, P1, P2, img1, img2) -> dict:
    return {"B": B.to_json(), "P1": P1.to_json(), "P2": P2.to_json(),
            "psi1": _hom(B, P1, img1), "psi2": _hom(B, P2, img2)}


def build_corpus() -> dict[str, dict]:
    triv = cyclic(1)
    Z2, Z3, Z4, Z6 = cyclic(2), cyclic(3), cyclic(4), cyclic(6)
    S3, V4, D8, Q8 = symmetric(3), klein_four(), dihedral(4), quaternion()
    Z3Z3 = direct_product(Z3, Z3)
    S3Z2 = direct_product(S3, Z2)
    Z4Z2 = direct_product(Z4, Z2)
    Z2c = direct_product(V4, Z2)
    Q8Z2 = direct_product(Q8, Z2)

    cyc3 = (1, 2, 0)
    swap = (1, 0, 2)
    qi, qj = Q8.generators
    # the two Klein four subgroups of D8
    onto_V = [_S, _R2]
    onto_W = [compose(_S, _R), _R2]
    s3_in_s3z2 = [g + (3, 4) for g in S3.generators]

    items = {
        "edge_trivial": ("amalgam-type", _single_edge(triv, triv, triv, [], [])),
        "edge_z3_z2_in_s3": ("amalgam-type", _single_edge(Z3, Z2, S3, [cyc3], [swap])),
        "edge_z3_z3_in_s3": ("amalgam-type", _single_edge(Z3, Z3, S3, [cyc3], [power(cyc3, 2)])),
        "edge_z4_z4_in_q8": ("amalgam-type", _single_edge(Z4, Z4, Q8, [qi], [qj])),
        "edge_v4_v4_in_d8": ("amalgam-type", _single_edge(V4, V4, D8, onto_V, onto_W)),
        "loop_v4_in_d8": ("amalgam-type", _type_payload(1, [(0, 0)], [V4], [D8], {0: (V4, D8, onto_V)})),
        "double_loop_v4_d8_d8": ("amalgam-type", _double_loop(V4, D8, D8, onto_V, onto_V)),
        "double_loop_v4_d8_d8_twisted": ("amalgam-type", _double_loop(V4, D8, D8, onto_V, onto_W)),
        "double_loop_z2_z4_v4": ("amalgam-type", _double_loop(Z2, Z4, V4, [power(Z4.generators[0], 2)],
                                                              [V4.generators[0]])),
        "double_loop_z3_s3_s3": ("amalgam-type", _double_loop(Z3, S3, S3, [cyc3], [cyc3])),
        "double_loop_z4_d8_q8": ("amalgam-type", _double_loop(Z4, D8, Q8, [_R], [qi])),
        "goldschmidt_v4_d8_d8": ("goldschmidt", _goldschmidt(V4, D8, D8, onto_V, onto_V)),
        "goldschmidt_v4_d8_z2cubed": ("goldschmidt", _goldschmidt(V4, D8, Z2c, onto_V,
                                                                  list(Z2c.generators[:2]))),
        "goldschmidt_v4_d8_z4z2": ("goldschmidt", _goldschmidt(
            V4, D8, Z4Z2, onto_V, [power(Z4Z2.generators[0], 2), Z4Z2.generators[1]])),
        "goldschmidt_z3_s3_z6": ("goldschmidt", _goldschmidt(Z3, S3, Z6, [cyc3], [power(Z6.generators[0], 2)])),
        "goldschmidt_q8_q8z2": ("goldschmidt", _goldschmidt(Q8, Q8Z2, Q8Z2, list(Q8Z2.generators[:2]),
                                                            list(Q8Z2.generators[:2]))),
        "triangle_trivial": ("triangle", _triangle([triv] * 3, [triv] * 3, [[]] * 3, [[]] * 3)),
        "triangle_z2_in_v4": ("triangle", _triangle([Z2] * 3, [V4] * 3, [[V4.generators[0]]] * 3,
                                                    [[V4.generators[1]]] * 3)),
        "triangle_z3_in_s3": ("triangle", _triangle([Z3] * 3, [S3] * 3, [[cyc3]] * 3, [[cyc3]] * 3)),
        "triangle_z3_in_s3_z6": ("triangle", _triangle([Z3] * 3, [S3, Z6, S3], [[cyc3], [power(Z6.generators[0], 2)], [cyc3]],
                                                       [[cyc3], [power(Z6.generators[0], 4)], [cyc3]])),
        "triangle_s3_in_s3z2": ("triangle", _triangle([S3] * 3, [S3Z2] * 3, [s3_in_s3z2] * 3, [s3_in_s3z2] * 3)),
        "triangle_z3_in_z3z3": ("triangle", _triangle([Z3] * 3, [Z3Z3] * 3, [[Z3Z3.generators[0]]] * 3,
                                                      [[Z3Z3.generators[1]]] * 3)),
        "triangle_z4_in_q8": ("triangle", _triangle([Z4] * 3, [Q8] * 3, [[qi]] * 3, [[qj]] * 3)),
        "triangle_v4_in_d8": ("triangle", _triangle([V4] * 3, [D8] * 3, [onto_V] * 3, [onto_W] * 3)),
        "path_v4_d8_same": ("amalgam-type", _path([V4] * 3, [D8] * 2, [onto_V] * 4)),
        "path_z4_v4_v4_in_d8": ("amalgam-type", _path([Z4, V4, V4], [D8] * 2,
                                                      [[_R], onto_V, onto_V, onto_W])),
    }
    out = {}
    for name, (kind, payload) in items.items():
        doc = {"schema": SCHEMA_VERSION, "kind": kind, "name": name}
        doc.update(payload)
        doc["expected"] = dict(EXPECTED.get(name, {}))
        out[name] = doc
    return out


# Frozen oracle results: number of amalgam classes, class sizes among the
# normalized pointings, and whether the reference graph is rigid.
EXPECTED: dict[str, dict] = {
    "double_loop_v4_d8_d8": {"classes": 2, "class_sizes": [2, 4], "rigid": True},
    "double_loop_v4_d8_d8_twisted": {"classes": 2, "class_sizes": [2, 4], "rigid": True},
    "double_loop_z2_z4_v4": {"classes": 1, "class_sizes": [1], "rigid": True},
    "double_loop_z3_s3_s3": {"classes": 1, "class_sizes": [2], "rigid": True},
    "double_loop_z4_d8_q8": {"classes": 1, "class_sizes": [2], "rigid": True},
    "edge_trivial": {"classes": 1, "class_sizes": [1], "rigid": True},
    "edge_v4_v4_in_d8": {"classes": 1, "class_sizes": [1], "rigid": False},
    "edge_z3_z2_in_s3": {"classes": 1, "class_sizes": [1], "rigid": False},
    "edge_z3_z3_in_s3": {"classes": 1, "class_sizes": [1], "rigid": True},
    "edge_z4_z4_in_q8": {"classes": 1, "class_sizes": [1], "rigid": False},
    "goldschmidt_q8_q8z2": {"classes": 1, "class_sizes": [24], "rigid": True},
    "goldschmidt_v4_d8_d8": {"classes": 2, "class_sizes": [2, 4], "rigid": True},
    "goldschmidt_v4_d8_z2cubed": {"classes": 1, "class_sizes": [6], "rigid": True},
    "goldschmidt_v4_d8_z4z2": {"classes": 2, "class_sizes": [2, 4], "rigid": True},
    "goldschmidt_z3_s3_z6": {"classes": 1, "class_sizes": [2], "rigid": True},
    "loop_v4_in_d8": {"classes": 1, "class_sizes": [1], "rigid": True},
    "path_v4_d8_same": {"classes": 2, "class_sizes": [2, 4], "rigid": True},
    "path_z4_v4_v4_in_d8": {"classes": 2, "class_sizes": [2, 4], "rigid": False},
    "triangle_s3_in_s3z2": {"classes": 3, "class_sizes": [36, 72, 108], "rigid": True},
    "triangle_trivial": {"classes": 1, "class_sizes": [1], "rigid": True},
    "triangle_v4_in_d8": {"classes": 8, "class_sizes": [8, 16, 16, 16, 32, 32, 32, 64], "rigid": False},
    "triangle_z2_in_v4": {"classes": 1, "class_sizes": [1], "rigid": True},
    "triangle_z3_in_s3": {"classes": 2, "class_sizes": [4, 4], "rigid": True},
    "triangle_z3_in_s3_z6": {"classes": 2, "class_sizes": [4, 4], "rigid": True},
    "triangle_z3_in_z3z3": {"classes": 1, "class_sizes": [8], "rigid": False},
    "triangle_z4_in_q8": {"classes": 1, "class_sizes": [8], "rigid": False},
}


def corpus_dir() -> Path:
    return Path(str(resources.files("amalgams") / "corpus"))


def corpus_files() -> list[Path]:
    return sorted(corpus_dir().glob("*.json"))


def load_corpus() -> dict:
    return {p.stem: load_instance(p) for p in corpus_files()}


def write_corpus(target: Path | None = None) -> list[Path]:
    target = corpus_dir() if target is None else Path(target)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in build_corpus().items():
        path = target / f"{name}.json"
        path.write_text(dumps(doc))
        written.append(path)
    return written


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="Regenerate the bundled instance corpus.")
    ap.add_argument("--write", action="store_true", help="write the JSON files")
    ap.add_argument("--target", type=Path, default=None)
    args = ap.parse_args(argv)
    docs = build_corpus()
    if args.write:
        for p in write_corpus(args.target):
            print(p)
    else:
        for name in docs:
            print(name)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
