"""JSON instance files.

Every file carries ``"schema": 1`` and a ``"kind"``:

* ``amalgam-type`` / ``triangle``: ``graph``, ``vertex_groups``,
  ``edge_groups`` and ``inclusions`` (``[{"dart": k, "gen_images": [...]}]``);
  for a loop one of its two darts may be omitted.
* ``goldschmidt``: groups ``B``, ``P1``, ``P2`` and generator images
  ``psi1``, ``psi2``.

Groups are ``{"degree": n, "generators": [[images]...]}``, 0-indexed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .amalgam import AmalgamType, make_amalgam
from .coset import GoldschmidtInstance
from .errors import AmalgamError, SchemaError
from .graph import build_graph
from .groups import DEFAULT_CAP, FiniteGroup, generate_group

SCHEMA_VERSION = 1
KINDS = ("amalgam-type", "goldschmidt", "triangle")


@dataclass
class InstanceFile:
    kind: str
    name: str
    payload: dict
    cap: int = DEFAULT_CAP
    expected: dict = field(default_factory=dict)
    _built: object = None

    def build(self):
        """Return an AmalgamType, or a GoldschmidtInstance for that kind."""
        if self._built is None:
            self._built = _build(self.kind, self.payload, self.cap)
        return self._built

    def amalgam_type(self) -> AmalgamType:
        obj = self.build()
        return obj.amalgam_type() if isinstance(obj, GoldschmidtInstance) else obj


def _require(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(f"{where}: missing field {key!r}")
    return d[key]


class _Groups:
    """Builds groups, sharing one object between identical specifications."""

    def __init__(self, cap: int):
        self.cap = cap
        self.cache: dict = {}

    def get(self, spec, where: str) -> FiniteGroup:
        degree = _require(spec, "degree", where)
        gens = _require(spec, "generators", where)
        try:
            key = (int(degree), tuple(tuple(int(x) for x in g) for g in gens))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{where}: generators must be integer arrays") from exc
        if key not in self.cache:
            try:
                self.cache[key] = generate_group(key[1], cap=self.cap, degree=key[0])
            except AmalgamError as exc:
                raise type(exc)(f"{where}: {exc}") from exc
        return self.cache[key]


def _build_type(payload: dict, cap: int) -> AmalgamType:
    gspec = _require(payload, "graph", "instance")
    try:
        graph = build_graph(int(_require(gspec, "vertices", "graph")),
                            [tuple(e) for e in _require(gspec, "edges", "graph")])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"graph: {exc}") from exc
    groups = _Groups(cap)
    vgs = [groups.get(s, f"vertex_groups[{i}]")
           for i, s in enumerate(_require(payload, "vertex_groups", "instance"))]
    egs = [groups.get(s, f"edge_groups[{i}]")
           for i, s in enumerate(_require(payload, "edge_groups", "instance"))]
    incs: list = [None] * graph.dart_count
    for item in _require(payload, "inclusions", "instance"):
        e = _require(item, "dart", "inclusions")
        if not isinstance(e, int) or not 0 <= e < graph.dart_count:
            raise SchemaError(f"inclusions: invalid dart {e!r}")
        incs[e] = _require(item, "gen_images", f"inclusions[dart {e}]")
    for e in range(graph.dart_count):
        if incs[e] is None and graph.is_loop(e):
            incs[e] = incs[e ^ 1]
        if incs[e] is None:
            raise SchemaError(f"inclusions: dart {e} has no inclusion map")
    try:
        return AmalgamType(make_amalgam(graph, vgs, egs, incs))
    except AmalgamError as exc:
        raise type(exc)(f"amalgam: {exc}") from exc


def _build(kind: str, payload: dict, cap: int):
    if kind in ("amalgam-type", "triangle"):
        t = _build_type(payload, cap)
        if kind == "triangle":
            from .coset import triangle_instance
            triangle_instance(t)  # validates the shape
        return t
    groups = _Groups(cap)
    B = groups.get(_require(payload, "B", "instance"), "B")
    P1 = groups.get(_require(payload, "P1", "instance"), "P1")
    P2 = groups.get(_require(payload, "P2", "instance"), "P2")
    try:
        return GoldschmidtInstance(B, P1, P2, _require(payload, "psi1", "instance"),
                                   _require(payload, "psi2", "instance"))
    except AmalgamError as exc:
        raise type(exc)(f"goldschmidt: {exc}") from exc


def parse_instance(data) -> InstanceFile:
    if not isinstance(data, dict):
        raise SchemaError("instance must be a JSON object")
    if data.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported or missing schema version {data.get('schema')!r}")
    kind = data.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}")
    payload = {k: v for k, v in data.items()
               if k not in ("schema", "kind", "name", "cap", "expected", "description")}
    cap = data.get("cap", DEFAULT_CAP)
    return InstanceFile(kind, data.get("name", ""), payload, int(cap), data.get("expected", {}))


def load_instance(path) -> InstanceFile:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from exc
    return parse_instance(data)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
