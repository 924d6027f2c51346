"""Graphviz DOT export with edge colors as labels."""

from __future__ import annotations

import json

from .graph import EdgeColoredGraph
from .reductions import Reduction


def _quote(s: str) -> str:
    return json.dumps(s)


def export_dot(obj: EdgeColoredGraph | Reduction, name: str = "G") -> str:
    """Undirected DOT text; vertices and edges in sorted order so output is reproducible."""
    if isinstance(obj, Reduction):
        g, marked = obj.graph, {obj.source: "source", obj.sink: "sink"}
    else:
        g, marked = obj, {}
    lines = [f"graph {_quote(name)} {{"]
    for v in g.vertices:
        extra = f' [xlabel="{marked[v]}", shape=doublecircle]' if v in marked else ""
        lines.append(f"  {_quote(v)}{extra};")
    for u, v, c in sorted(tuple(sorted((u, v))) + (c,) for u, v, c in g.edges()):
        lines.append(f"  {_quote(u)} -- {_quote(v)} [label={_quote(c)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
