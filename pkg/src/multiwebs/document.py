"""JSON graph documents.

A document carries the embedded graph, an optional connection of rank ``n``
and optional cilia and edge-variable names::

    {
      "n": 3,
      "vertices": [[0, "black"], [1, "white"]],
      "edges": [[0, 0, 1]],
      "rotations": {"0": [0], "1": [0]},
      "cilia": {"0": 0, "1": 0},
      "surface": {"kind": "plane", "punctured_faces": [], "seams": []},
      "connection": {"0": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]},
      "weights": {"0": "x0"}
    }

Matrix entries are rational strings ``"p/q"``.  Errors raised while loading
point at the line of the offending section.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .algebra import Matrix
from .connection import Connection
from .surface import EmbeddedGraph, GraphError, Surface


class DocumentError(ValueError):
    """Malformed graph document; the message names the line when known."""


@dataclass
class GraphDocument:
    graph: EmbeddedGraph
    n: int = 1
    connection: Connection | None = None
    cilia: dict | None = None
    weights: dict | None = None

    def __eq__(self, other):
        if not isinstance(other, GraphDocument):
            return NotImplemented
        return (self.graph == other.graph and self.n == other.n
                and self.connection == other.connection
                and self.cilia == other.cilia and self.weights == other.weights)


def _line_of(text: str, key: str, sub=None) -> int | None:
    lines = text.splitlines()
    start = next((i for i, line in enumerate(lines) if f'"{key}"' in line), None)
    if start is None:
        return None
    if sub is not None:
        for i in range(start, len(lines)):
            if f'"{sub}"' in lines[i]:
                return i + 1
    return start + 1


def _fail(text, key, msg, sub=None):
    line = _line_of(text, key, sub) if text is not None else None
    where = f"line {line}: " if line else ""
    raise DocumentError(f"{where}{key}: {msg}")


def loads(text: str) -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    return from_dict(data, text)


def load(path) -> GraphDocument:
    return loads(Path(path).read_text())


def from_dict(data: dict, text: str | None = None) -> GraphDocument:
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("vertices", "edges", "rotations"):
        if key not in data:
            raise DocumentError(f"missing required field {key!r}")
    try:
        vertices = {int(v): c for v, c in data["vertices"]}
    except (TypeError, ValueError):
        _fail(text, "vertices", "expected a list of [id, color] pairs")
    try:
        edges = {int(e): (int(b), int(w)) for e, b, w in data["edges"]}
    except (TypeError, ValueError):
        _fail(text, "edges", "expected a list of [id, black, white] triples")
    try:
        rotations = {int(v): [int(e) for e in r] for v, r in data["rotations"].items()}
    except (TypeError, ValueError, AttributeError):
        _fail(text, "rotations", "expected a mapping vertex -> list of edge ids")
    sdata = data.get("surface", {"kind": "plane"})
    try:
        surface = Surface(sdata.get("kind", "plane"),
                          [int(f) for f in sdata.get("punctured_faces", [])],
                          [[int(e) for e in s] for s in sdata.get("seams", [])])
    except (GraphError, TypeError, ValueError, AttributeError) as exc:
        _fail(text, "surface", str(exc))
    try:
        graph = EmbeddedGraph(vertices, edges, rotations, surface)
    except GraphError as exc:
        msg = str(exc)
        key = "surface" if ("seam" in msg or "punctured" in msg) else "rotations"
        if "endpoint" in msg:
            key = "edges"
        found = re.match(r"vertex (\d+):", msg)
        _fail(text, key, msg, found.group(1) if found and key == "rotations" else None)
    n = data.get("n", 1)
    if not isinstance(n, int) or n < 1:
        _fail(text, "n", f"rank must be a positive integer, got {n!r}")
    connection = None
    if "connection" in data:
        try:
            connection = Connection(
                n, {int(e): Matrix.from_strings(m) for e, m in data["connection"].items()})
        except (TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
            _fail(text, "connection", str(exc))
        missing = set(graph.edges) - set(connection.matrices)
        if missing:
            _fail(text, "connection", f"no matrix for edges {sorted(missing)}")
    cilia = None
    if "cilia" in data:
        try:
            cilia = {int(v): int(c) for v, c in data["cilia"].items()}
        except (TypeError, ValueError, AttributeError):
            _fail(text, "cilia", "expected a mapping vertex -> rotation index")
        for v, c in cilia.items():
            if v not in graph.vertices or not 0 <= c < graph.degree(v):
                _fail(text, "cilia", f"cilium {c} out of range at vertex {v}")
    weights = None
    if "weights" in data:
        weights = {int(e): str(x) for e, x in data["weights"].items()}
    return GraphDocument(graph, n, connection, cilia, weights)


def to_dict(doc: GraphDocument) -> dict:
    g = doc.graph
    out = {
        "n": doc.n,
        "vertices": [[v, g.vertices[v]] for v in sorted(g.vertices)],
        "edges": [[e, *g.edges[e]] for e in sorted(g.edges)],
        "rotations": {str(v): list(g.rotation[v]) for v in sorted(g.rotation)},
        "surface": {
            "kind": g.surface.kind,
            "punctured_faces": list(g.surface.punctured_faces),
            "seams": [list(s) for s in g.surface.seams],
        },
    }
    if doc.cilia is not None:
        out["cilia"] = {str(v): c for v, c in sorted(doc.cilia.items())}
    if doc.connection is not None:
        out["connection"] = {str(e): doc.connection[e].to_strings()
                             for e in sorted(doc.connection.matrices)}
    if doc.weights is not None:
        out["weights"] = {str(e): x for e, x in sorted(doc.weights.items())}
    return out


def dumps(doc: GraphDocument) -> str:
    return json.dumps(to_dict(doc), indent=1)


def save(doc: GraphDocument, path) -> None:
    Path(path).write_text(dumps(doc) + "\n")


def multiweb_loads(text: str) -> dict:
    """Multiweb file: JSON object edge id -> multiplicity."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    if isinstance(data, dict) and "multiweb" in data:
        data = data["multiweb"]
    try:
        return {int(e): int(k) for e, k in data.items()}
    except (AttributeError, TypeError, ValueError):
        raise DocumentError("multiweb must map edge ids to integer multiplicities") from None
