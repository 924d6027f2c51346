"""Edge-colored graphs, distances and shortest-path machinery."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import GraphError, WitnessError


class EdgeColoredGraph:
    """Simple undirected graph with a total edge-coloring.

    Vertices are kept sorted by name, so vertex indices compare the same way
    names do. Colors are interned in first-seen edge order. Instances are
    immutable; derived data (CSR arrays, all-pairs distances) is cached.
    """

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str]],
        meta: dict[str, Any] | None = None,
    ) -> None:
        names = list(vertices)
        for name in names:
            if not isinstance(name, str) or not name:
                raise GraphError(f"vertex name must be a non-empty string, got {name!r}")
        if len(set(names)) != len(names):
            seen: set[str] = set()
            dup = next(x for x in names if x in seen or seen.add(x))
            raise GraphError(f"duplicate vertex {dup!r}")
        self.vertices: tuple[str, ...] = tuple(sorted(names))
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.vertices)}

        color_index: dict[str, int] = {}
        edge_list: list[tuple[str, str, str]] = []
        pairs: dict[frozenset[str], int] = {}
        eu, ev, ec = [], [], []
        for pos, edge in enumerate(edges):
            u, v, color = edge
            for end in (u, v):
                if end not in self.index:
                    raise GraphError(f"edge #{pos} ({u!r}, {v!r}) references unknown vertex {end!r}")
            if u == v:
                raise GraphError(f"edge #{pos} is a self-loop on {u!r}")
            if not isinstance(color, str) or not color:
                raise GraphError(f"edge #{pos} ({u!r}, {v!r}) has no color")
            key = frozenset((u, v))
            if key in pairs:
                raise GraphError(f"duplicate edge ({u!r}, {v!r}) at #{pos} (first at #{pairs[key]})")
            pairs[key] = pos
            if color not in color_index:
                color_index[color] = len(color_index)
            edge_list.append((u, v, color))
            eu.append(self.index[u])
            ev.append(self.index[v])
            ec.append(color_index[color])

        self.colors: tuple[str, ...] = tuple(color_index)
        self.color_index = color_index
        self._edges = tuple(edge_list)
        self._pairs = {key: i for i, key in enumerate(pairs)}
        self.eu = _frozen(np.array(eu, dtype=np.int32))
        self.ev = _frozen(np.array(ev, dtype=np.int32))
        self.ec = _frozen(np.array(ec, dtype=np.int32))
        self.meta: dict[str, Any] = dict(meta) if meta else {}

        adj: list[list[tuple[int, int, int]]] = [[] for _ in self.vertices]
        for e, (a, b, c) in enumerate(zip(eu, ev, ec)):
            adj[a].append((b, c, e))
            adj[b].append((a, c, e))
        # (neighbor, color, edge id), neighbors ascending
        self.adj: tuple[tuple[tuple[int, int, int], ...], ...] = tuple(
            tuple(sorted(row)) for row in adj
        )

    # basic queries -----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def k(self) -> int:
        return len(self.colors)

    def __contains__(self, v: object) -> bool:
        return v in self.index

    def __repr__(self) -> str:
        return f"EdgeColoredGraph(n={self.n}, m={self.m}, k={self.k})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoredGraph):
            return NotImplemented
        return (
            set(self.vertices) == set(other.vertices)
            and self.edge_set() == other.edge_set()
            and self.meta == other.meta
        )

    __hash__ = None  # type: ignore[assignment]

    def edges(self) -> Iterator[tuple[str, str, str]]:
        """Edges as ``(u, v, color)`` in insertion order."""
        return iter(self._edges)

    def edge_set(self) -> set[tuple[frozenset[str], str]]:
        return {(frozenset((u, v)), c) for u, v, c in self._edges}

    def vid(self, v: str) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._pairs

    def color(self, u: str, v: str) -> str:
        try:
            return self._edges[self._pairs[frozenset((u, v))]][2]
        except KeyError:
            raise GraphError(f"no edge ({u!r}, {v!r})") from None

    def neighbors(self, v: str) -> list[str]:
        return [self.vertices[w] for w, _, _ in self.adj[self.vid(v)]]

    def degree(self, v: str) -> int:
        return len(self.adj[self.vid(v)])

    # cached numeric views ------------------------------------------------

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, indices, colors)`` over both arc directions."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(row) for row in self.adj])
        flat = [arc for row in self.adj for arc in row]
        indices = np.array([a[0] for a in flat], dtype=np.int32)
        colors = np.array([a[1] for a in flat], dtype=np.int32)
        return _frozen(indptr), _frozen(indices), _frozen(colors)

    @cached_property
    def all_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """``(dist, count)`` matrices; ``dist == -1`` marks unreachable pairs."""
        indptr, indices, _ = self.csr
        dist, count = _kernels.bfs_all_pairs(indptr, indices)
        return _frozen(dist), _frozen(count)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class PathWitness:
    """A vertex sequence together with the colors of its traversed edges."""

    vertices: tuple[str, ...]
    colors: tuple[str, ...]

    @classmethod
    def along(cls, g: EdgeColoredGraph, vertices: Iterable[str]) -> PathWitness:
        vs = tuple(vertices)
        return cls(vs, tuple(g.color(a, b) for a, b in zip(vs, vs[1:])))

    @property
    def length(self) -> int:
        return len(self.colors)

    @property
    def is_rainbow(self) -> bool:
        return len(set(self.colors)) == len(self.colors)

    def validate(self, g: EdgeColoredGraph, *, rainbow: bool = True, shortest: bool = False) -> None:
        """Raise :class:`WitnessError` unless this is a genuine path of ``g``."""
        if not self.vertices:
            raise WitnessError("empty witness")
        if len(self.colors) != len(self.vertices) - 1:
            raise WitnessError("colors do not match the number of traversed edges")
        if len(set(self.vertices)) != len(self.vertices):
            raise WitnessError("witness revisits a vertex")
        for a, b, c in zip(self.vertices, self.vertices[1:], self.colors):
            if not g.has_edge(a, b):
                raise WitnessError(f"{a!r} and {b!r} are not adjacent")
            if g.color(a, b) != c:
                raise WitnessError(f"edge ({a!r}, {b!r}) is colored {g.color(a, b)!r}, not {c!r}")
        if rainbow and not self.is_rainbow:
            raise WitnessError(f"colors repeat along the path: {self.colors}")
        if shortest:
            d = bfs_distances(g, self.vertices[0])[self.vertices[-1]]
            if d != self.length:
                raise WitnessError(f"path has length {self.length}, distance is {d}")

    def is_valid(self, g: EdgeColoredGraph, *, rainbow: bool = True, shortest: bool = False) -> bool:
        try:
            self.validate(g, rainbow=rainbow, shortest=shortest)
        except (WitnessError, GraphError):
            return False
        return True


@dataclass(frozen=True)
class ShortestPathDag:
    source: str
    dist: dict[str, int]
    tight_edges: frozenset[tuple[str, str]]
    path_count: dict[str, int] = field(repr=False)


# documents ---------------------------------------------------------------


def load_graph(document: dict[str, Any] | str | bytes) -> EdgeColoredGraph:
    """Build a graph from the JSON interchange document (dict or text)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphError(f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise GraphError("graph document must be a JSON object")
    vertices = document.get("vertices")
    edges = document.get("edges")
    if not isinstance(vertices, list):
        raise GraphError('"vertices" must be an array of strings')
    if not isinstance(edges, list):
        raise GraphError('"edges" must be an array')
    triples = []
    for pos, e in enumerate(edges):
        if not isinstance(e, dict):
            raise GraphError(f"edge #{pos} is not an object")
        for key in ("u", "v"):
            if not isinstance(e.get(key), str):
                raise GraphError(f'edge #{pos} lacks a string "{key}"')
        if "color" not in e or e["color"] in (None, ""):
            raise GraphError(f"edge #{pos} ({e['u']!r}, {e['v']!r}) is missing a color")
        if not isinstance(e["color"], str):
            raise GraphError(f"edge #{pos} color must be a string")
        triples.append((e["u"], e["v"], e["color"]))
    meta = document.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise GraphError('"meta" must be an object')
    return EdgeColoredGraph(vertices, triples, meta)


def save_graph(g: EdgeColoredGraph) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "vertices": list(g.vertices),
        "edges": [{"u": u, "v": v, "color": c} for u, v, c in g.edges()],
    }
    if g.meta:
        doc["meta"] = g.meta
    return doc


def dumps_graph(g: EdgeColoredGraph) -> str:
    return json.dumps(save_graph(g), indent=1) + "\n"


def read_graph(path: str | Path) -> EdgeColoredGraph:
    return load_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: EdgeColoredGraph, path: str | Path) -> None:
    Path(path).write_text(dumps_graph(g), encoding="utf-8")


# distances -----------------------------------------------------------------


def _bfs(g: EdgeColoredGraph, s: int) -> list[int]:
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w, _, _ in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def bfs_distances(g: EdgeColoredGraph, s: str) -> dict[str, int | None]:
    """Unweighted distances from ``s``; unreachable vertices map to ``None``."""
    dist = _bfs(g, g.vid(s))
    return {v: (d if d >= 0 else None) for v, d in zip(g.vertices, dist)}


def diameter(g: EdgeColoredGraph) -> int:
    if g.n == 0:
        raise GraphError("diameter of the empty graph is undefined")
    dist, _ = g.all_pairs
    if (dist < 0).any():
        i, j = map(int, np.argwhere(dist < 0)[0])
        raise GraphError(
            f"graph is disconnected ({g.vertices[i]!r} cannot reach {g.vertices[j]!r}); diameter undefined"
        )
    return int(dist.max())


def shortest_path_dag(g: EdgeColoredGraph, s: str) -> ShortestPathDag:
    src = g.vid(s)
    dist = _bfs(g, src)
    order = sorted((d, v) for v, d in enumerate(dist) if d >= 0)
    count = [0] * g.n
    count[src] = 1
    tight = []
    for _, u in order:
        for w, _, _ in g.adj[u]:
            if dist[w] == dist[u] + 1:
                tight.append((g.vertices[u], g.vertices[w]))
                count[w] += count[u]
    reach = [v for v in range(g.n) if dist[v] >= 0]
    return ShortestPathDag(
        source=s,
        dist={g.vertices[v]: dist[v] for v in reach},
        tight_edges=frozenset(tight),
        path_count={g.vertices[v]: count[v] for v in reach},
    )


def count_shortest_paths(g: EdgeColoredGraph, u: str, v: str) -> int:
    g.vid(v)
    return shortest_path_dag(g, u).path_count.get(v, 0)


def enumerate_shortest_paths(
    g: EdgeColoredGraph, u: str, v: str, cap: int | None = None
) -> list[PathWitness]:
    """Shortest ``u``-``v`` paths in lexicographic vertex-name order.

    ``cap=None`` returns all of them; otherwise the first ``cap``.
    """
    return list(iter_shortest_paths(g, u, v, cap))


def iter_shortest_paths(
    g: EdgeColoredGraph, u: str, v: str, cap: int | None = None
) -> Iterator[PathWitness]:
    src, dst = g.vid(u), g.vid(v)
    to_dst = _bfs(g, dst)
    if to_dst[src] < 0 or cap == 0:
        return
    produced = 0
    path = [src]
    # adjacency is sorted by index, and index order is name order
    stack = [iter(g.adj[src])]
    while stack:
        cur = path[-1]
        if cur == dst:
            yield PathWitness.along(g, (g.vertices[x] for x in path))
            produced += 1
            if cap is not None and produced >= cap:
                return
            stack.pop()
            path.pop()
            continue
        for w, _, _ in stack[-1]:
            if to_dst[w] == to_dst[cur] - 1:
                path.append(w)
                stack.append(iter(g.adj[w]))
                break
        else:
            stack.pop()
            path.pop()


# blocks --------------------------------------------------------------------


def block_edge_partition(g: EdgeColoredGraph) -> list[list[int]]:
    """Edge ids grouped by biconnected component."""
    return block_edges(g.n, g.adj)


def block_edges(n: int, adj) -> list[list[int]]:
    """Iterative Hopcroft-Tarjan over rows of ``(neighbor, color, edge id)``."""
    disc = [-1] * n
    low = [0] * n
    clock = 0
    blocks: list[list[int]] = []
    estack: list[int] = []
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, via, it = stack[-1]
            for w, _, e in it:
                if e == via:
                    continue
                if disc[w] < 0:
                    estack.append(e)
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, iter(adj[w])))
                    break
                if disc[w] < disc[u]:
                    estack.append(e)
                    low[u] = min(low[u], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] >= disc[p]:
                        block = []
                        while True:
                            e = estack.pop()
                            block.append(e)
                            if e == via:
                                break
                        blocks.append(block)
    return blocks


def biconnected_components(g: EdgeColoredGraph) -> tuple[list[frozenset[str]], frozenset[str]]:
    """Blocks (as vertex sets) and cut vertices.

    Isolated vertices form singleton blocks. Cut vertices are exactly the
    vertices lying in more than one block.
    """
    blocks = []
    membership = [0] * g.n
    for edge_ids in block_edge_partition(g):
        members = {int(g.eu[e]) for e in edge_ids} | {int(g.ev[e]) for e in edge_ids}
        for x in members:
            membership[x] += 1
        blocks.append(frozenset(g.vertices[x] for x in members))
    for v in range(g.n):
        if not g.adj[v]:
            blocks.append(frozenset([g.vertices[v]]))
    cuts = frozenset(g.vertices[v] for v in range(g.n) if membership[v] > 1)
    return blocks, cuts
