"""Serialization: graph6, JSON graph documents, DOT, constraint files."""

from __future__ import annotations

import json
from typing import Any, Union

from .factors import EndpointConstraint
from .graph import Graph, InputError, Plain, ProductPair, TDelta, VertexLabel, tdelta

GRAPH6_HEADER = ">>graph6<<"


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise InputError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    """graph6 string for the structure of ``g`` (labels are dropped)."""
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6))
    return (GRAPH6_HEADER if header else "") + _encode_n(g.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s or any(not 63 <= ord(ch) <= 126 for ch in s):
        raise InputError("not a graph6 string")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) > 1 and vals[1] == 63:
        if len(vals) < 8:
            raise InputError("truncated graph6 size field")
        n, pos = 0, 8
        for v in vals[2:8]:
            n = (n << 6) | v
    else:
        if len(vals) < 4:
            raise InputError("truncated graph6 size field")
        n, pos = 0, 4
        for v in vals[1:4]:
            n = (n << 6) | v
    need = n * (n - 1) // 2
    data = vals[pos:]
    if len(data) != (need + 5) // 6:
        raise InputError(f"graph6 body has {len(data)} bytes, expected {(need + 5) // 6}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (data[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def label_to_json(label: VertexLabel) -> dict:
    if isinstance(label, Plain):
        return {"kind": "plain", "name": label.name}
    if isinstance(label, TDelta):
        return {"kind": "tdelta", "role": label.role, "index": label.index}
    if isinstance(label, ProductPair):
        return {"kind": "pair", "left": label_to_json(label.left), "right": label_to_json(label.right)}
    raise InputError(f"unknown label {label!r}")


def label_from_json(obj: dict) -> VertexLabel:
    kind = obj.get("kind")
    if kind == "plain":
        return Plain(obj["name"])
    if kind == "tdelta":
        return TDelta(obj["role"], obj.get("index"))
    if kind == "pair":
        return ProductPair(label_from_json(obj["left"]), label_from_json(obj["right"]))
    raise InputError(f"unknown label kind {kind!r}")


def graph_to_dict(g: Graph) -> dict:
    return {
        "n": g.n,
        "edges": [list(e) for e in g.edges()],
        "labels": {str(v): label_to_json(g.labels[v]) for v in sorted(g.labels)},
    }


def graph_from_dict(doc: dict) -> Graph:
    try:
        n = int(doc["n"])
        edges = [(int(u), int(v)) for u, v in doc.get("edges", [])]
        labels = {int(k): label_from_json(v) for k, v in doc.get("labels", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed graph document: {exc}") from exc
    return Graph(n, edges, labels)


def to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), indent=None, separators=(",", ":"))


def from_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(doc)


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{g.name(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


FORMATS = ("graph6", "json", "dot")


def dumps(g: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return to_graph6(g) + "\n"
    if fmt == "json":
        return to_json(g) + "\n"
    if fmt == "dot":
        return to_dot(g)
    raise InputError(f"unknown format {fmt!r}")


def loads(text: str) -> Graph:
    """Read a graph in JSON or graph6, detected from the first character."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return from_json(stripped)
    return from_graph6(stripped.splitlines()[0])


# ---------------------------------------------------------------------------
# constraint files
# ---------------------------------------------------------------------------


def _coord_label(part: Union[int, str]) -> VertexLabel:
    if isinstance(part, str):
        try:
            return tdelta(part)
        except InputError:
            return Plain(part)
    return Plain(part)


def resolve_vertex(g: Graph, ref: Any) -> int:
    """A vertex from an index or a coordinate pair such as ``[2, 3]`` or ``["a_1", 4]``."""
    if isinstance(ref, bool):
        raise InputError(f"bad vertex reference {ref!r}")
    if isinstance(ref, int):
        if not 0 <= ref < g.n:
            raise InputError(f"vertex {ref} out of range")
        return ref
    if isinstance(ref, (list, tuple)) and len(ref) == 2:
        label = ProductPair(_coord_label(ref[0]), _coord_label(ref[1]))
        try:
            return g.vertex(label)
        except KeyError as exc:
            raise InputError(f"no vertex with coordinates {list(ref)}") from exc
    raise InputError(f"bad vertex reference {ref!r}")


def constraint_from_dict(g: Graph, doc: dict) -> EndpointConstraint:
    unknown = set(doc) - {"allowed", "required", "forbidden", "pairing"}
    if unknown:
        raise InputError(f"unknown constraint fields {sorted(unknown)}")
    allowed = doc.get("allowed")
    c = EndpointConstraint.build(
        allowed=None if allowed is None else [resolve_vertex(g, r) for r in allowed],
        required=[resolve_vertex(g, r) for r in doc.get("required", [])],
        forbidden=[resolve_vertex(g, r) for r in doc.get("forbidden", [])],
        pairing=[(resolve_vertex(g, u), resolve_vertex(g, v)) for u, v in doc.get("pairing", [])],
    )
    c.validate_for(g)
    return c


def constraint_to_dict(g: Graph, c: EndpointConstraint) -> dict:
    def ref(v: int):
        lab = g.label(v)
        if isinstance(lab, ProductPair):
            return [_part(lab.left), _part(lab.right)]
        return v

    doc: dict = {}
    if c.allowed is not None:
        doc["allowed"] = [ref(v) for v in c.allowed]
    doc["required"] = [ref(v) for v in c.required]
    doc["forbidden"] = [ref(v) for v in c.forbidden]
    doc["pairing"] = [[ref(u), ref(v)] for u, v in c.pairing]
    return doc


def _part(label: VertexLabel):
    if isinstance(label, Plain):
        return label.name
    return str(label)
