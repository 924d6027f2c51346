"""Graph-class recognizers with checkable certificates.

Each recognizer returns a :class:`ClassResult` whose ``holds`` is ``True``,
``False`` or ``None`` (unknown at this scale). Positive answers carry a
certificate that the ``check_*`` functions re-validate without trusting the
recognizer; negative answers carry the offending substructure.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np

from .errors import GraphError
from .graph import EdgeColoredGraph, biconnected_components

INTERVAL_CLIQUE_GUARD = 400
INTERVAL_STATE_GUARD = 200_000
ASTEROIDAL_GUARD = 400


@dataclass(frozen=True)
class ClassResult:
    name: str
    holds: bool | None
    certificate: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return {True: "yes", False: "no", None: "unknown-at-scale"}[self.holds]

    def to_dict(self) -> dict[str, Any]:
        return {"verdict": self.verdict, "certificate": self.certificate}


@dataclass(frozen=True)
class ClassReport:
    results: dict[str, ClassResult]

    @property
    def all_hold(self) -> bool:
        return all(r.holds is True for r in self.results.values())

    def to_dict(self) -> dict[str, Any]:
        return {name: r.to_dict() for name, r in self.results.items()}


def _nbrs(g: EdgeColoredGraph) -> list[set[int]]:
    return [{w for w, _, _ in row} for row in g.adj]


def _names(g: EdgeColoredGraph, ids) -> list[str]:
    return [g.vertices[i] for i in ids]


def _bfs_path(nbrs: list[set[int]], src: int, dst: int, blocked: set[int]) -> list[int] | None:
    prev = {src: -1}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            path = []
            while x != -1:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for w in sorted(nbrs[x]):
            if w not in prev and w not in blocked:
                prev[w] = x
                queue.append(w)
    return None


# bipartite ----------------------------------------------------------------


def is_bipartite(g: EdgeColoredGraph) -> ClassResult:
    nbrs = _nbrs(g)
    side = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for w in sorted(nbrs[x]):
                if side[w] < 0:
                    side[w] = 1 - side[x]
                    parent[w] = x
                    queue.append(w)
                elif side[w] == side[x]:
                    # tree paths up to the common ancestor close an odd cycle
                    up_x, up_w = [x], [w]
                    while up_x[-1] != -1:
                        up_x.append(parent[up_x[-1]])
                    while up_w[-1] != -1:
                        up_w.append(parent[up_w[-1]])
                    common = set(up_x)
                    meet = next(y for y in up_w if y in common)
                    cycle = up_x[: up_x.index(meet) + 1] + up_w[: up_w.index(meet)][::-1]
                    return ClassResult("bipartite", False, {"odd_cycle": _names(g, cycle)})
    return ClassResult("bipartite", True, {"coloring": {g.vertices[i]: side[i] for i in range(g.n)}})


def check_two_coloring(g: EdgeColoredGraph, coloring: dict[str, int]) -> bool:
    return set(coloring) == set(g.vertices) and all(coloring[u] != coloring[v] for u, v, _ in g.edges())


# regularity ---------------------------------------------------------------


def regularity(g: EdgeColoredGraph) -> ClassResult:
    """``holds`` with the common degree, or the first vertex deviating from vertex 0's degree."""
    if g.n == 0:
        return ClassResult("regular", True, {"degree": 0})
    degrees = [len(row) for row in g.adj]
    d = degrees[0]
    for i, di in enumerate(degrees):
        if di != d:
            return ClassResult(
                "regular", False, {"vertex": g.vertices[i], "degree": di, "expected": d}
            )
    return ClassResult("regular", True, {"degree": d})


def is_k_regular(g: EdgeColoredGraph, k: int) -> ClassResult:
    r = regularity(g)
    name = f"{k}-regular"
    if r.holds and r.certificate["degree"] == k:
        return ClassResult(name, True, r.certificate)
    if r.holds:
        return ClassResult(name, False, {"vertex": g.vertices[0], "degree": r.certificate["degree"], "expected": k})
    return ClassResult(name, False, r.certificate)


# blocks -------------------------------------------------------------------


def is_block_graph(g: EdgeColoredGraph) -> ClassResult:
    blocks, cuts = biconnected_components(g)
    for blk in sorted(blocks, key=sorted):
        for x, y in combinations(sorted(blk), 2):
            if not g.has_edge(x, y):
                return ClassResult("block", False, {"block": sorted(blk), "missing_edge": [x, y]})
    return ClassResult(
        "block", True, {"blocks": sorted(sorted(b) for b in blocks), "cut_vertices": sorted(cuts)}
    )


# chordal ------------------------------------------------------------------


def _mcs_order(nbrs: list[set[int]]) -> list[int]:
    """Maximum cardinality search; returns a perfect elimination order when one exists."""
    n = len(nbrs)
    weight = [0] * n
    done = [False] * n
    visit = []
    for _ in range(n):
        v = max((x for x in range(n) if not done[x]), key=lambda x: (weight[x], -x))
        done[v] = True
        visit.append(v)
        for w in nbrs[v]:
            if not done[w]:
                weight[w] += 1
    return visit[::-1]


def _peo_violation(nbrs: list[set[int]], order: list[int]) -> tuple[int, int, int] | None:
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in nbrs[v] if pos[w] > pos[v]]
        for x, y in combinations(later, 2):
            if y not in nbrs[x]:
                return v, x, y
    return None


def _chordless_cycle(nbrs: list[set[int]]) -> list[int] | None:
    for v in range(len(nbrs)):
        around = sorted(nbrs[v])
        for x, y in combinations(around, 2):
            if y in nbrs[x]:
                continue
            blocked = (nbrs[v] | {v}) - {x, y}
            path = _bfs_path(nbrs, x, y, blocked)
            if path is not None:
                return [v] + path
    return None


def is_chordal(g: EdgeColoredGraph) -> ClassResult:
    nbrs = _nbrs(g)
    order = _mcs_order(nbrs)
    if _peo_violation(nbrs, order) is None:
        return ClassResult("chordal", True, {"elimination_order": _names(g, order)})
    cycle = _chordless_cycle(nbrs)
    return ClassResult("chordal", False, {"induced_cycle": _names(g, cycle or [])})


def check_perfect_elimination(g: EdgeColoredGraph, order: list[str]) -> bool:
    if sorted(order) != list(g.vertices):
        return False
    ids = [g.vid(v) for v in order]
    return _peo_violation(_nbrs(g), ids) is None


def _maximal_cliques(nbrs: list[set[int]], order: list[int]) -> list[frozenset[int]]:
    pos = {v: i for i, v in enumerate(order)}
    candidates = [frozenset({v} | {w for w in nbrs[v] if pos[w] > pos[v]}) for v in order]
    candidates.sort(key=len, reverse=True)
    kept: list[frozenset[int]] = []
    for c in candidates:
        if not any(c <= big for big in kept):
            kept.append(c)
    return kept


def max_clique_size_chordal(g: EdgeColoredGraph) -> int:
    nbrs = _nbrs(g)
    order = _mcs_order(nbrs)
    if _peo_violation(nbrs, order) is not None:
        raise GraphError("graph is not chordal; the elimination-order clique bound does not apply")
    pos = {v: i for i, v in enumerate(order)}
    return max((1 + sum(pos[w] > pos[v] for w in nbrs[v]) for v in order), default=0)


def has_max_clique(g: EdgeColoredGraph, k: int) -> ClassResult:
    name = f"max-clique={k}"
    try:
        size = max_clique_size_chordal(g)
    except GraphError as exc:
        return ClassResult(name, False, {"error": str(exc)})
    return ClassResult(name, size == k, {"max_clique_size": size})


# interval -----------------------------------------------------------------


def _find_clique_path(cliques: list[frozenset[int]]) -> list[int] | None | str:
    """Order of clique indices with every vertex's cliques consecutive.

    Depth-first over partial orders. The next clique must contain every vertex
    of the last clique that still has unplaced cliques ("pending"), and may
    not reuse a vertex whose run has ended. A state is the placed set plus the
    pending set; dead states are memoized. Returns ``"guard"`` when the state
    budget runs out.
    """
    order: list[int] = []
    count = len(cliques)
    holders: dict[int, set[int]] = {}
    for i, c in enumerate(cliques):
        for v in c:
            holders.setdefault(v, set()).add(i)
    dead: set[tuple[frozenset[int], frozenset[int]]] = set()
    budget = INTERVAL_STATE_GUARD
    seen: set[int] = set()
    placed: frozenset[int] = frozenset()
    pending: frozenset[int] = frozenset()
    stack: list[tuple[int, frozenset[int], frozenset[int], frozenset[int]]] = []
    # frames: (next candidate index, placed, pending, vertices added by the clique placed here)
    cursor = 0
    while True:
        if len(order) == count:
            return order
        if cursor == 0:
            if (placed, pending) in dead:
                cursor = count
            else:
                budget -= 1
                if budget < 0:
                    return "guard"
        advanced = False
        for i in range(cursor, count):
            if i in placed:
                continue
            c = cliques[i]
            if not pending <= c or (c & seen) - pending:
                continue
            added = c - seen
            stack.append((i + 1, placed, pending, added))
            order.append(i)
            seen |= added
            placed = placed | {i}
            pending = frozenset(v for v in c if holders[v] - placed)
            cursor = 0
            advanced = True
            break
        if advanced:
            continue
        dead.add((placed, pending))
        if not stack:
            return None
        cursor, placed, pending, added = stack.pop()
        order.pop()
        seen -= added


def _asteroidal_triple(nbrs: list[set[int]]) -> tuple[int, int, int] | None:
    """Three vertices pairwise joined by paths avoiding the third's closed neighborhood."""
    n = len(nbrs)
    comp = np.full((n, n), -1, dtype=np.int64)
    for z in range(n):
        blocked = nbrs[z] | {z}
        label = 0
        for s in range(n):
            if s in blocked or comp[z, s] >= 0:
                continue
            comp[z, s] = label
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for w in nbrs[x]:
                    if w not in blocked and comp[z, w] < 0:
                        comp[z, w] = label
                        queue.append(w)
            label += 1
    for x in range(n):
        for y in range(x + 1, n):
            # z's component must hold both x and y; x's must hold y and z; y's must hold x and z
            ok = (comp[:, x] >= 0) & (comp[:, x] == comp[:, y])
            ok &= (comp[x, y] >= 0) & (comp[x, :] == comp[x, y])
            ok &= (comp[y, x] >= 0) & (comp[y, :] == comp[y, x])
            hits = np.flatnonzero(ok)
            if hits.size:
                return x, y, int(hits[0])
    return None


def is_interval(g: EdgeColoredGraph) -> ClassResult:
    """Chordal, and the maximal cliques admit a consecutive linear arrangement."""
    chordal = is_chordal(g)
    if not chordal.holds:
        return ClassResult("interval", False, {"not_chordal": chordal.certificate})
    nbrs = _nbrs(g)
    order = [g.vid(v) for v in chordal.certificate["elimination_order"]]
    cliques = sorted(_maximal_cliques(nbrs, order), key=lambda c: sorted(c))
    if len(cliques) > INTERVAL_CLIQUE_GUARD:
        return ClassResult("interval", None, {"maximal_cliques": len(cliques), "guard": INTERVAL_CLIQUE_GUARD})
    found = _find_clique_path(cliques)
    if found == "guard":
        return ClassResult("interval", None, {"maximal_cliques": len(cliques), "state_guard": INTERVAL_STATE_GUARD})
    if found is not None:
        return ClassResult(
            "interval", True, {"clique_path": [sorted(_names(g, cliques[i])) for i in found]}
        )
    cert: dict[str, Any] = {"maximal_cliques": len(cliques)}
    if g.n <= ASTEROIDAL_GUARD:
        triple = _asteroidal_triple(nbrs)
        if triple is not None:
            cert["asteroidal_triple"] = _names(g, triple)
    return ClassResult("interval", False, cert)


def check_clique_path(g: EdgeColoredGraph, path: list[list[str]]) -> bool:
    """Every listed set is a maximal clique, all maximal cliques appear, and each vertex's run is consecutive."""
    nbrs = _nbrs(g)
    sets = [frozenset(g.vid(v) for v in c) for c in path]
    for c in sets:
        if any(y not in nbrs[x] for x, y in combinations(c, 2)):
            return False
        common = set(range(g.n)) - c
        for x in c:
            common &= nbrs[x]
        if common:
            return False
    if len(set(sets)) != len(sets) or set().union(*sets, set()) != set(range(g.n)):
        return False
    for v in range(g.n):
        idx = [i for i, c in enumerate(sets) if v in c]
        if idx[-1] - idx[0] + 1 != len(idx):
            return False
    return True


# claw-free ----------------------------------------------------------------


def is_claw_free(g: EdgeColoredGraph) -> ClassResult:
    nbrs = _nbrs(g)
    for center in range(g.n):
        for x, y, z in combinations(sorted(nbrs[center]), 3):
            if y not in nbrs[x] and z not in nbrs[x] and z not in nbrs[y]:
                return ClassResult("claw-free", False, {"claw": _names(g, (center, x, y, z))})
    return ClassResult("claw-free", True, {})


# outerplanar --------------------------------------------------------------


def _outer_cycle(block: set[int], nbrs: list[set[int]]) -> tuple[list[int] | None, dict[str, Any]]:
    """Hamiltonian cycle of a 2-connected block by series reduction, or a failure certificate.

    Degree-2 vertices are spliced out repeatedly; every reduced edge remembers
    the original path it stands for. A bare edge made parallel to a spliced
    path is a chord. Two spliced paths between the same pair, with other
    vertices left over, span a K_{2,3} minor; a reduced graph of minimum
    degree 3 cannot be outerplanar either.
    """
    h: dict[int, dict[int, list[int]]] = {v: {w: [] for w in nbrs[v] if w in block} for v in block}
    while len(h) > 2:
        v = next((x for x in sorted(h) if len(h[x]) == 2), None)
        if v is None:
            return None, {"reduced_min_degree": min(len(r) for r in h.values()), "reduced_vertices": sorted(h)}
        x, y = sorted(h[v])
        path = h[x][v] + [v] + h[v][y]  # interior vertices from x to y
        del h[v]
        del h[x][v]
        del h[y][v]
        if y in h[x]:
            old = h[x][y]
            if len(h) == 2:
                interior_y_to_x = list(reversed(old))
                return [x] + path + [y] + interior_y_to_x, {}
            if old:
                return None, {
                    "minor": "K2,3",
                    "branch": [x, y],
                    "routes": [old, path],
                }
        h[x][y] = path
        h[y][x] = list(reversed(path))
    x, y = sorted(h)
    return [x] + h[x][y] + [y], {}


def _crossing(cycle: list[int], edges: list[tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]] | None:
    pos = {v: i for i, v in enumerate(cycle)}
    size = len(cycle)
    chords = []
    for a, b in edges:
        i, j = sorted((pos[a], pos[b]))
        if j - i not in (1, size - 1):
            chords.append((i, j))
    chords.sort()
    for (a, b), (c, d) in combinations(chords, 2):
        if a < c < b < d or c < a < d < b:
            return (cycle[a], cycle[b]), (cycle[c], cycle[d])
    return None


def is_outerplanar(g: EdgeColoredGraph) -> ClassResult:
    """Per block: edge bound, then outer Hamiltonian cycle plus non-crossing chords.

    The test is exact, so ``unknown`` is never returned.
    """
    nbrs = _nbrs(g)
    blocks, _ = biconnected_components(g)
    cycles = []
    for blk in sorted(blocks, key=sorted):
        ids = {g.vid(v) for v in blk}
        if len(ids) <= 2:
            continue
        edges = [(x, y) for x in ids for y in nbrs[x] if y in ids and x < y]
        if len(edges) > 2 * len(ids) - 3:
            return ClassResult(
                "outerplanar", False, {"block": sorted(blk), "edges": len(edges), "edge_bound": 2 * len(ids) - 3}
            )
        cycle, failure = _outer_cycle(ids, nbrs)
        if cycle is None:
            cert = {"block": sorted(blk)}
            if "minor" in failure:
                x, y = failure["branch"]
                blocked = set(failure["routes"][0]) | set(failure["routes"][1])
                third = _bfs_path([s - ({y} if i == x else {x} if i == y else set()) for i, s in enumerate(nbrs)], x, y, blocked)
                cert["minor"] = "K2,3"
                cert["branch"] = _names(g, (x, y))
                cert["routes"] = [_names(g, r) for r in failure["routes"]] + ([_names(g, third[1:-1])] if third else [])
            else:
                cert["reduced_min_degree"] = failure["reduced_min_degree"]
                cert["reduced_vertices"] = _names(g, failure["reduced_vertices"])
            return ClassResult("outerplanar", False, cert)
        cross = _crossing(cycle, edges)
        if cross is not None:
            (a, b), (c, d) = cross
            return ClassResult(
                "outerplanar",
                False,
                {"block": sorted(blk), "minor": "K4", "outer_cycle": _names(g, cycle), "crossing_chords": [_names(g, (a, b)), _names(g, (c, d))]},
            )
        cycles.append(_names(g, cycle))
    return ClassResult("outerplanar", True, {"outer_cycles": cycles})


def check_outer_cycles(g: EdgeColoredGraph, cycles: list[list[str]]) -> bool:
    """Each block of 3+ vertices has its listed Hamiltonian cycle and no crossing chords."""
    nbrs = _nbrs(g)
    blocks, _ = biconnected_components(g)
    big = {frozenset(b) for b in blocks if len(b) > 2}
    if {frozenset(c) for c in cycles} != big or len(cycles) != len(big):
        return False
    for cyc in cycles:
        ids = [g.vid(v) for v in cyc]
        if len(set(ids)) != len(ids):
            return False
        if any(ids[(i + 1) % len(ids)] not in nbrs[ids[i]] for i in range(len(ids))):
            return False
        inside = set(ids)
        edges = [(x, y) for x in inside for y in nbrs[x] if y in inside and x < y]
        if _crossing(ids, edges) is not None:
            return False
    return True


# geodecity ----------------------------------------------------------------


def geodecity(g: EdgeColoredGraph) -> int:
    """Largest number of shortest paths between any pair of vertices."""
    dist, count = g.all_pairs
    if g.n and (dist < 0).any():
        s, t = map(int, np.argwhere(dist < 0)[0])
        raise GraphError(f"graph is disconnected ({g.vertices[s]} cannot reach {g.vertices[t]})")
    return int(count.max()) if g.n else 0


def is_geodetic(g: EdgeColoredGraph) -> ClassResult:
    try:
        geo = geodecity(g)
    except GraphError as exc:
        return ClassResult("geodetic", False, {"error": str(exc)})
    if geo <= 1:
        return ClassResult("geodetic", True, {"geodecity": geo})
    _, count = g.all_pairs
    s, t = map(int, np.argwhere(count == geo)[0])
    return ClassResult("geodetic", False, {"geodecity": geo, "pair": _names(g, (s, t))})


# dispatch -----------------------------------------------------------------

_SIMPLE = {
    "bipartite": is_bipartite,
    "outerplanar": is_outerplanar,
    "chordal": is_chordal,
    "interval": is_interval,
    "claw-free": is_claw_free,
    "block": is_block_graph,
    "geodetic": is_geodetic,
    "regular": regularity,
}
CLASS_NAMES = (*_SIMPLE, "cubic", "<k>-regular", "max-clique=<k>")


def parse_class(token: str):
    token = token.strip()
    if token in _SIMPLE:
        return _SIMPLE[token]
    if token == "cubic":
        return lambda g: _renamed(is_k_regular(g, 3), "cubic")
    m = re.fullmatch(r"(\d+)-regular", token)
    if m:
        k = int(m.group(1))
        return lambda g: is_k_regular(g, k)
    m = re.fullmatch(r"max-clique=(\d+)", token)
    if m:
        k = int(m.group(1))
        return lambda g: has_max_clique(g, k)
    raise ValueError(f"unknown graph class {token!r}; known: {', '.join(CLASS_NAMES)}")


def _renamed(r: ClassResult, name: str) -> ClassResult:
    return ClassResult(name, r.holds, r.certificate)


def recognize(g: EdgeColoredGraph, classes: list[str]) -> ClassReport:
    """Run the named recognizers; unknown names raise ``ValueError`` before any work."""
    checks = [(c.strip(), parse_class(c)) for c in classes]
    return ClassReport({name: check(g) for name, check in checks})
