"""Canonical graph JSON and DOT export.

The canonical form is one JSON object with keys in the order
``n, edges, loops, labels``, compact separators, edges as ``[u, v]`` with
``u < v`` sorted lexicographically.  Two graphs are equal iff their
canonical strings are byte-identical, which is what the cache keys on.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .graph import Graph, GraphError, label_from_json, label_to_json


def graph_to_obj(g: Graph, *, labels: bool = True) -> dict:
    obj = {
        "n": g.n,
        "edges": [[u, v] for u, v in g.edges()],
        "loops": sorted(g.loops),
    }
    if labels and g.labels is not None:
        obj["labels"] = [label_to_json(lab) for lab in g.labels]
    return obj


def canonical_json(g: Graph, *, labels: bool = True) -> str:
    return json.dumps(graph_to_obj(g, labels=labels), separators=(",", ":"))


def graph_from_obj(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj.get("edges", [])]
        loops = [int(v) for v in obj.get("loops", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph object: {exc}") from exc
    for u, v in edges:
        if u == v:
            raise GraphError(f"edge [{u},{v}] is a loop; list it under 'loops'")
    labels = obj.get("labels")
    if labels is not None:
        labels = [label_from_json(x) for x in labels]
    return Graph.from_edges(n, edges, loops, labels)


def graph_from_json(text: str) -> Graph:
    return graph_from_obj(json.loads(text))


def graph_key(g: Graph) -> str:
    """Stable cache key: sha256 of the unlabelled canonical form."""
    return hashlib.sha256(canonical_json(g, labels=False).encode()).hexdigest()


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        text = str(g.label(v)).replace('"', '\\"')
        lines.append(f'  {v} [label="{text}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    for v in sorted(g.loops):
        lines.append(f"  {v} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temp file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
