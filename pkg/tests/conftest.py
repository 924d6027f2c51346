"""Shared graph builders and brute-force oracles.

The oracles here deliberately share no code with the package: they work on
plain adjacency dicts and enumerate simple paths exhaustively.
"""

from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from rainbowconn.graph import EdgeColoredGraph
from rainbowconn.sat import CnfFormula, random_formula


def make_graph(edges, vertices=None) -> EdgeColoredGraph:
    """``edges`` as ``(u, v, color)``; colors and names may be ints."""
    edges = [(str(u), str(v), str(c)) for u, v, c in edges]
    names = {x for u, v, _ in edges for x in (u, v)}
    if vertices is not None:
        names |= {str(x) for x in vertices}
    return EdgeColoredGraph(sorted(names), edges)


def path_graph(colors) -> EdgeColoredGraph:
    return make_graph([(i, i + 1, c) for i, c in enumerate(colors)])


def cycle_graph(colors) -> EdgeColoredGraph:
    n = len(colors)
    return make_graph([(i, (i + 1) % n, c) for i, c in enumerate(colors)])


def complete_graph(n, color="x") -> EdgeColoredGraph:
    return make_graph([(i, j, color) for i, j in combinations(range(n), 2)])


def complete_bipartite(a, b, color="x") -> EdgeColoredGraph:
    return make_graph([(f"L{i}", f"R{j}", color) for i in range(a) for j in range(b)])


def random_colored_graph(rng: random.Random, n: int, p: float, k: int, connected=True) -> EdgeColoredGraph:
    if n < 2:
        raise ValueError("need at least two vertices to draw an edge")
    while True:
        edges = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]
        nxg = nx.Graph()
        nxg.add_nodes_from(range(n))
        nxg.add_edges_from(edges)
        if not edges or (connected and not nx.is_connected(nxg)):
            continue
        colored = [(f"v{i}", f"v{j}", f"c{rng.randrange(k)}") for i, j in edges]
        return EdgeColoredGraph([f"v{i}" for i in range(n)], colored)


def to_nx(g: EdgeColoredGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for u, v, c in g.edges():
        h.add_edge(u, v, color=c)
    return h


def adjacency(g: EdgeColoredGraph) -> dict[str, dict[str, str]]:
    adj: dict[str, dict[str, str]] = {v: {} for v in g.vertices}
    for u, v, c in g.edges():
        adj[u][v] = c
        adj[v][u] = c
    return adj


def oracle_rainbow_path(g: EdgeColoredGraph, s: str, t: str) -> bool:
    """Exhaustive DFS over simple paths carrying the used color set."""
    if s == t:
        return True
    adj = adjacency(g)

    def go(x, seen, used):
        for w, c in adj[x].items():
            if w in seen or c in used:
                continue
            if w == t or go(w, seen | {w}, used | {c}):
                return True
        return False

    return go(s, {s}, frozenset())


def oracle_strong_path(g: EdgeColoredGraph, s: str, t: str) -> bool:
    """Some networkx shortest path between s and t is rainbow."""
    h = to_nx(g)
    if not nx.has_path(h, s, t):
        return False
    for p in nx.all_shortest_paths(h, s, t):
        colors = [h[a][b]["color"] for a, b in zip(p, p[1:])]
        if len(set(colors)) == len(colors):
            return True
    return False


def oracle_first_failing(g: EdgeColoredGraph, strong: bool):
    check = oracle_strong_path if strong else oracle_rainbow_path
    for i, u in enumerate(g.vertices):
        for v in g.vertices[i + 1:]:
            if not check(g, u, v):
                return (u, v)
    return None


def floyd_warshall(g: EdgeColoredGraph) -> dict[tuple[str, str], float]:
    inf = float("inf")
    d = {(u, v): (0 if u == v else inf) for u in g.vertices for v in g.vertices}
    for u, v, _ in g.edges():
        d[u, v] = d[v, u] = 1
    for w in g.vertices:
        for u in g.vertices:
            for v in g.vertices:
                if d[u, w] + d[w, v] < d[u, v]:
                    d[u, v] = d[u, w] + d[w, v]
    return d


def random_formulas(seed: int, count: int, n_range=(2, 6), m_range=(1, 6)) -> list[CnfFormula]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(*n_range)
        m = rng.randint(m_range[0], min(m_range[1], 3 * n))
        out.append(random_formula(rng, n, m))
    return out


# the formula used as the running example in several tests: each variable occurs 3 times
THREE_CLAUSE = CnfFormula(3, ((1, 2, 3), (-1, 2, 3), (1, -2, -3)))
UNSAT = CnfFormula(1, ((1,), (-1,)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


# acceptance criteria register one line each; printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
