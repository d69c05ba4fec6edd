"""JSON graph documents.

    {"vertices": [{"name": "x1", "weight": 1}, ...],
     "arcs": [["x1", "x2"], ...],
     "metadata": {...}}            # optional, free-form

``weight`` defaults to 1. Vertex order in the file is the vertex order of
the graph and of every report derived from it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvalidGraphError
from .graph_core import WeightedOrientedGraph, build_graph

_TOP_KEYS = {"vertices", "arcs", "metadata"}


@dataclass(frozen=True)
class GraphDocument:
    graph: WeightedOrientedGraph
    metadata: dict = field(default_factory=dict, compare=False)


def parse_document(text: str) -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidGraphError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return document_from_dict(data)


def document_from_dict(data) -> GraphDocument:
    if not isinstance(data, dict):
        raise InvalidGraphError("graph document must be a JSON object")
    extra = set(data) - _TOP_KEYS
    if extra:
        raise InvalidGraphError(f"unknown keys in graph document: {sorted(extra)}")
    raw_vertices = data.get("vertices")
    if not isinstance(raw_vertices, list):
        raise InvalidGraphError("'vertices' must be a list")
    names, weights = [], {}
    for pos, v in enumerate(raw_vertices):
        if not isinstance(v, dict) or "name" not in v:
            raise InvalidGraphError(f"vertices[{pos}] must be an object with a 'name'")
        if set(v) - {"name", "weight"}:
            raise InvalidGraphError(f"vertices[{pos}] has unknown keys {sorted(set(v) - {'name', 'weight'})}")
        names.append(v["name"])
        if "weight" in v and isinstance(v["name"], str):
            weights.setdefault(v["name"], v["weight"])
    raw_arcs = data.get("arcs", [])
    if not isinstance(raw_arcs, list):
        raise InvalidGraphError("'arcs' must be a list")
    for pos, a in enumerate(raw_arcs):
        if not isinstance(a, list) or len(a) != 2:
            raise InvalidGraphError(f"arcs[{pos}] must be a [from, to] pair")
    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise InvalidGraphError("'metadata' must be an object")
    graph = build_graph(names, weights, [tuple(a) for a in raw_arcs])
    return GraphDocument(graph, metadata)


def parse_graph(text: str) -> WeightedOrientedGraph:
    return parse_document(text).graph


def load_graph(path) -> GraphDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def graph_to_dict(D: WeightedOrientedGraph, metadata: dict | None = None) -> dict:
    doc = {
        "vertices": [{"name": v, "weight": w} for v, w in zip(D.vertices, D.weights)],
        "arcs": [list(a) for a in D.arc_names()],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def serialize(D: WeightedOrientedGraph, metadata: dict | None = None, indent: int | None = None) -> str:
    return json.dumps(graph_to_dict(D, metadata), indent=indent)
