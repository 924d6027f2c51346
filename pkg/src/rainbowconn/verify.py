"""Deciding rainbow and strong rainbow connectivity.

Color sets are Python ints used as bitmasks over the graph's interned color
indices. Pairs are always scanned in lexicographic order of vertex names, so a
NO verdict names the lexicographically least failing pair whatever algorithm
produced it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import _kernels
from .errors import GuardError
from .graph import EdgeColoredGraph, PathWitness, block_edges, iter_shortest_paths

DEFAULT_COLOR_GUARD = 24
# dense (2^k x n) reach tables beyond this many cells are refused
TABLE_CELL_GUARD = 1 << 31


@dataclass(frozen=True)
class Verdict:
    """Outcome of a (strong) rainbow connectivity check."""

    connected: bool
    algorithm: str
    failing_pair: tuple[str, str] | None = None
    witness: PathWitness | None = None
    reason: str | None = None
    pairs_checked: int = 0
    states_explored: int = 0

    def __bool__(self) -> bool:
        return self.connected

    def to_dict(self) -> dict[str, Any]:
        return {
            "connected": self.connected,
            "algorithm": self.algorithm,
            "failing_pair": list(self.failing_pair) if self.failing_pair else None,
            "reason": self.reason,
            "witness": None
            if self.witness is None
            else {"vertices": list(self.witness.vertices), "colors": list(self.witness.colors)},
            "stats": {"pairs_checked": self.pairs_checked, "states_explored": self.states_explored},
        }


@dataclass
class _Stats:
    pairs: int = 0
    states: int = 0
    extra: dict[str, int] = field(default_factory=dict)


def color_mask(g: EdgeColoredGraph, colors) -> int:
    mask = 0
    for c in colors:
        mask |= 1 << g.color_index[c]
    return mask


def mask_colors(g: EdgeColoredGraph, mask: int) -> frozenset[str]:
    return frozenset(c for i, c in enumerate(g.colors) if mask >> i & 1)


def _yes(algorithm: str, stats: _Stats, witness: PathWitness | None = None) -> Verdict:
    return Verdict(True, algorithm, witness=witness, pairs_checked=stats.pairs, states_explored=stats.states)


def _no(g: EdgeColoredGraph, algorithm: str, s: int, t: int, stats: _Stats, strong: bool) -> Verdict:
    dist, _ = g.all_pairs
    if dist[s, t] < 0:
        reason = "not connected"
    else:
        reason = "no rainbow shortest path" if strong else "no rainbow path"
    return Verdict(
        False,
        algorithm,
        failing_pair=(g.vertices[s], g.vertices[t]),
        reason=reason,
        pairs_checked=stats.pairs,
        states_explored=stats.states,
    )


def _check_color_guard(g: EdgeColoredGraph, max_colors: int | None) -> None:
    if max_colors is not None and g.k > max_colors:
        raise GuardError(
            "colors",
            f"{g.k} colors exceed the color-subset guard of {max_colors}; "
            "use the brute (rc) or enum (src) algorithm instead",
        )
    if (1 << g.k) * max(g.n, 1) > TABLE_CELL_GUARD:
        raise GuardError(
            "colors",
            f"a 2^{g.k} x {g.n} reach table is too large; use the brute (rc) or enum (src) algorithm instead",
        )


def _loop_erase(walk: list[int]) -> list[int]:
    path: list[int] = []
    where: dict[int, int] = {}
    for x in walk:
        if x in where:
            for y in path[where[x] + 1:]:
                del where[y]
            del path[where[x] + 1:]
        else:
            where[x] = len(path)
            path.append(x)
    return path


# color-subset dynamic programming ------------------------------------------


def _minimal_masks(masks) -> list[int]:
    kept: list[int] = []
    for s in sorted(masks, key=lambda x: (bin(x).count("1"), x)):
        if not any(s & small == small for small in kept):
            kept.append(s)
    return kept


def rainbow_reach_fpt(
    g: EdgeColoredGraph, s: str, max_colors: int | None = DEFAULT_COLOR_GUARD
) -> dict[str, list[frozenset[str]]]:
    """Minimal color sets of rainbow paths from ``s`` to every vertex.

    The family for ``v`` is an antichain: ``v`` is reachable by a rainbow path
    using colors within ``C`` iff some listed set is a subset of ``C``.
    Unreachable vertices get an empty family.
    """
    _check_color_guard(g, max_colors)
    indptr, indices, colors = g.csr
    table = _kernels.rainbow_reach_table(indptr, indices, colors, g.k, g.vid(s))
    out = {}
    for v, name in enumerate(g.vertices):
        masks = np.flatnonzero(table[:, v]).tolist()
        out[name] = [mask_colors(g, x) for x in _minimal_masks(masks)]
    return out


def _dag_csr(g: EdgeColoredGraph, s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arcs of ``g`` that are tight for BFS from ``s``, as CSR."""
    indptr, indices, colors = g.csr
    dist = g.all_pairs[0][s]
    src = np.repeat(np.arange(g.n), np.diff(indptr))
    tight = (dist[src] >= 0) & (dist[indices] == dist[src] + 1)
    new_ptr = np.zeros(g.n + 1, dtype=np.int64)
    new_ptr[1:] = np.cumsum(np.bincount(src[tight], minlength=g.n))
    return new_ptr, np.ascontiguousarray(indices[tight]), np.ascontiguousarray(colors[tight])


# single-pair search ----------------------------------------------------------


def _prune_edges(g: EdgeColoredGraph, s: int, t: int) -> np.ndarray:
    """Edges that can still lie on a rainbow ``s``-``t`` walk.

    A walk uses an edge of color ``c`` at most once, so everything before it
    avoids ``c`` and so does everything after it. An edge survives only if one
    orientation has its tail in ``s``'s component and its head in ``t``'s
    component of the graph minus all ``c``-colored edges. Repeats to a fixpoint.
    """
    active = np.ones(g.m, dtype=bool)
    eu, ev, ec = np.asarray(g.eu), np.asarray(g.ev), np.asarray(g.ec)
    while True:
        ids = np.flatnonzero(active)
        if ids.size == 0:
            return active
        labels = _kernels.components_without_each_color(g.n, eu[ids], ev[ids], ec[ids], g.k)
        c, x, y = ec[ids], eu[ids], ev[ids]
        in_s = labels[c, s]
        in_t = labels[c, t]
        keep = ((labels[c, x] == in_s) & (labels[c, y] == in_t)) | (
            (labels[c, y] == in_s) & (labels[c, x] == in_t)
        )
        if keep.all():
            return active
        active[ids[~keep]] = False


def _block_chain(n: int, adj, s: int, t: int):
    """Blocks along the block-cut tree path from ``s`` to ``t``.

    Returns ``(blocks, exits)`` where ``blocks[i]`` lists edge ids of the i-th
    block on the path and ``exits[i]`` is the vertex through which a path
    leaves it (``exits[-1] == t``), or ``None`` if ``t`` is unreachable.
    """
    blocks = block_edges(n, adj)
    members: list[set[int]] = []
    edge_ends = {}
    for row in adj:
        for w, _, e in row:
            edge_ends.setdefault(e, set()).add(w)
    for blk in blocks:
        verts: set[int] = set()
        for e in blk:
            verts |= edge_ends[e]
        members.append(verts)
    of_vertex: dict[int, list[int]] = {}
    for b, verts in enumerate(members):
        for x in verts:
            of_vertex.setdefault(x, []).append(b)
    # BFS over the block-cut tree: vertex nodes are ints, block nodes ('b', i)
    prev: dict[Any, Any] = {s: None}
    queue = deque([s])
    while queue:
        node = queue.popleft()
        if node == t:
            break
        if isinstance(node, tuple):
            nbrs = sorted(members[node[1]])
        else:
            nbrs = [("b", b) for b in of_vertex.get(node, [])]
        for nb in nbrs:
            if nb not in prev:
                prev[nb] = node
                queue.append(nb)
    if t not in prev:
        return None
    chain = []
    node = t
    while node is not None:
        chain.append(node)
        node = prev[node]
    chain.reverse()
    block_ids = [node[1] for node in chain if isinstance(node, tuple)]
    exits = [node for node in chain[1:] if not isinstance(node, tuple)]
    return [blocks[b] for b in block_ids], exits


def _rainbow_walk(g: EdgeColoredGraph, s: int, t: int, stats: _Stats) -> list[int] | None:
    if s == t:
        return [s]
    active = _prune_edges(g, s, t)
    adj = [[arc for arc in row if active[arc[2]]] for row in g.adj]
    found = _block_chain(g.n, adj, s, t)
    if found is None:
        return None
    blocks, exits = found
    r = len(blocks)
    block_adj: list[dict[int, list[tuple[int, int]]]] = []
    block_colors = []
    for blk in blocks:
        ids = set(blk)
        rows: dict[int, list[tuple[int, int]]] = {}
        bits = 0
        for e in blk:
            a, b, c = int(g.eu[e]), int(g.ev[e]), int(g.ec[e])
            rows.setdefault(a, []).append((b, c))
            rows.setdefault(b, []).append((a, c))
            bits |= 1 << c
        for row in rows.values():
            row.sort()
        block_adj.append(rows)
        block_colors.append(bits)
        del ids
    # colors that can still matter once the walk has reached block i
    future = [0] * (r + 1)
    for i in range(r - 1, -1, -1):
        future[i] = future[i + 1] | block_colors[i]

    dead: set[tuple[int, int, int]] = set()
    walk = [s]
    stack = [(0, s, 0, iter(block_adj[0].get(s, ())))]
    stats.states += 1
    while stack:
        i, x, mask, it = stack[-1]
        for w, c in it:
            bit = 1 << c
            if mask & bit:
                continue
            nxt_mask = mask | bit
            ni = i
            if w == exits[i]:
                if i == r - 1:
                    walk.append(w)
                    return walk
                ni = i + 1
            key = (ni, w, nxt_mask & future[ni])
            if key in dead:
                continue
            stats.states += 1
            walk.append(w)
            stack.append((ni, w, nxt_mask, iter(block_adj[ni].get(w, ()))))
            break
        else:
            dead.add((i, x, mask & future[i]))
            stack.pop()
            walk.pop()
    return None


def rainbow_path_between(g: EdgeColoredGraph, u: str, v: str) -> PathWitness | None:
    """A rainbow ``u``-``v`` path, or ``None`` when none exists.

    Exhaustive: edges that no rainbow walk can use are pruned first, then a
    depth-first search runs block by block along the block-cut tree path,
    memoizing dead states on the colors still present downstream.
    """
    walk = _rainbow_walk(g, g.vid(u), g.vid(v), _Stats())
    if walk is None:
        return None
    return PathWitness.along(g, (g.vertices[x] for x in _loop_erase(walk)))


def _geodesic_futures(g: EdgeColoredGraph, s: int, t: int) -> tuple[np.ndarray, list[int]]:
    """Distances to ``t`` and, per vertex, colors on arcs of ``s``-``t`` geodesics after it."""
    dist = g.all_pairs[0]
    to_t = dist[t]
    d = int(dist[s, t])
    on = [x for x in range(g.n) if dist[s, x] >= 0 and dist[s, x] + to_t[x] == d]
    on.sort(key=lambda x: to_t[x])
    future = [0] * g.n
    for x in on:
        bits = 0
        for w, c, _ in g.adj[x]:
            if to_t[w] == to_t[x] - 1:
                bits |= (1 << c) | future[w]
        future[x] = bits
    return to_t, future


def _strong_walk(g: EdgeColoredGraph, s: int, t: int, stats: _Stats) -> list[int] | None:
    dist = g.all_pairs[0]
    if dist[s, t] < 0:
        return None
    if s == t:
        return [s]
    to_t, future = _geodesic_futures(g, s, t)
    dead: set[tuple[int, int]] = set()
    walk = [s]
    stack = [(s, 0, iter(g.adj[s]))]
    stats.states += 1
    while stack:
        x, mask, it = stack[-1]
        for w, c, _ in it:
            if to_t[w] != to_t[x] - 1:
                continue
            bit = 1 << c
            if mask & bit:
                continue
            if w == t:
                walk.append(w)
                return walk
            nxt = mask | bit
            if (w, nxt & future[w]) in dead:
                continue
            stats.states += 1
            walk.append(w)
            stack.append((w, nxt, iter(g.adj[w])))
            break
        else:
            dead.add((x, mask & future[x]))
            stack.pop()
            walk.pop()
    return None


def strong_rainbow_path_between(g: EdgeColoredGraph, u: str, v: str) -> PathWitness | None:
    """A rainbow shortest ``u``-``v`` path (lexicographically first), or ``None``."""
    walk = _strong_walk(g, g.vid(u), g.vid(v), _Stats())
    if walk is None:
        return None
    return PathWitness.along(g, (g.vertices[x] for x in walk))


# rainbow connectivity --------------------------------------------------------


def rc_verify(g: EdgeColoredGraph, algo: str = "fpt", max_colors: int | None = DEFAULT_COLOR_GUARD) -> Verdict:
    """Is every pair of vertices joined by a rainbow path?

    ``algo="fpt"`` runs the color-subset DP from every source;
    ``algo="brute"`` runs :func:`rainbow_path_between` on every pair.
    """
    stats = _Stats()
    if algo == "fpt":
        _check_color_guard(g, max_colors)
        indptr, indices, colors = g.csr
        for s in range(g.n):
            table = _kernels.rainbow_reach_table(indptr, indices, colors, g.k, s)
            reached = table.any(axis=0)
            stats.states += int(np.count_nonzero(table))
            for t in range(s + 1, g.n):
                stats.pairs += 1
                if not reached[t]:
                    return _no(g, "rc/fpt", s, t, stats, strong=False)
        return _yes("rc/fpt", stats)
    if algo == "brute":
        for s in range(g.n):
            for t in range(s + 1, g.n):
                stats.pairs += 1
                if _rainbow_walk(g, s, t, stats) is None:
                    return _no(g, "rc/brute", s, t, stats, strong=False)
        return _yes("rc/brute", stats)
    raise ValueError(f"unknown rc algorithm {algo!r}; expected 'fpt' or 'brute'")


# strong rainbow connectivity -------------------------------------------------


def _strong_targets_from(g: EdgeColoredGraph, s: int, stats: _Stats) -> int | None:
    """Depth-first enumeration of shortest paths out of ``s``.

    Prefixes repeating a color are abandoned (no extension can be rainbow) and
    a prefix whose end state was already expanded is skipped, where the state
    is the end vertex plus the used colors that still occur further down the
    shortest-path DAG. Returns the smallest target ``t > s`` that no rainbow
    shortest path reaches, or ``None``.
    """
    dist = g.all_pairs[0][s]
    targets = {t for t in range(s + 1, g.n)}
    missing = sorted(t for t in targets if dist[t] < 0)
    if missing:
        first_missing = missing[0]
        targets = {t for t in targets if t < first_missing}
    else:
        first_missing = None
    if not targets:
        return first_missing
    reachable = [x for x in range(g.n) if dist[x] >= 0]
    reachable.sort(key=lambda x: -dist[x])
    future = [0] * g.n
    out: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for x in reachable:
        bits = 0
        for w, c, _ in g.adj[x]:
            if dist[w] == dist[x] + 1:
                out[x].append((w, c))
                bits |= (1 << c) | future[w]
        future[x] = bits
    pending = set(targets)
    seen: set[tuple[int, int]] = {(s, 0)}
    stack = [(s, 0, iter(out[s]))]
    stats.states += 1
    while stack and pending:
        x, mask, it = stack[-1]
        for w, c in it:
            bit = 1 << c
            if mask & bit:
                continue
            nxt = mask | bit
            key = (w, nxt & future[w])
            if key in seen:
                continue
            seen.add(key)
            pending.discard(w)
            stats.states += 1
            stack.append((w, nxt, iter(out[w])))
            break
        else:
            stack.pop()
    if pending:
        return min(pending)
    return first_missing


def _enumerate_per_pair(g: EdgeColoredGraph, algorithm: str, cap: int | None, stats: _Stats) -> Verdict:
    """Plain enumeration: list shortest paths of each pair, test each for rainbowness."""
    dist = g.all_pairs[0]
    for s in range(g.n):
        for t in range(s + 1, g.n):
            stats.pairs += 1
            if dist[s, t] < 0:
                return _no(g, algorithm, s, t, stats, strong=True)
            for path in iter_shortest_paths(g, g.vertices[s], g.vertices[t], cap):
                stats.states += 1
                if path.is_rainbow:
                    break
            else:
                return _no(g, algorithm, s, t, stats, strong=True)
    return _yes(algorithm, stats)


def src_verify_enumerate(g: EdgeColoredGraph, cap: int | None = None) -> Verdict:
    """Is every pair joined by a rainbow shortest path? (shortest-path enumeration)

    With ``cap=None`` shortest paths out of each source are enumerated depth
    first with rainbow-prefix pruning and memoized end states. With an integer
    cap every pair's shortest paths are listed and tested one by one, which is
    only allowed when no pair has more than ``cap`` of them.
    """
    stats = _Stats()
    if cap is not None:
        _, count = g.all_pairs
        over = np.argwhere(np.triu(count > cap, k=1))
        if over.size:
            s, t = map(int, over[0])
            raise GuardError(
                "cap",
                f"pair ({g.vertices[s]}, {g.vertices[t]}) has {int(count[s, t])} shortest paths, above the cap of {cap}",
            )
        return _enumerate_per_pair(g, f"src/enum(cap={cap})", cap, stats)
    for s in range(g.n):
        stats.pairs += g.n - s - 1
        t = _strong_targets_from(g, s, stats)
        if t is not None:
            return _no(g, "src/enum", s, t, stats, strong=True)
    return _yes("src/enum", stats)


def _geodecity(g: EdgeColoredGraph) -> int:
    _, count = g.all_pairs
    return int(count.max()) if g.n else 0


def src_verify_kgeodetic(g: EdgeColoredGraph, k_max: int) -> Verdict:
    """Strong check for graphs with at most ``k_max`` shortest paths per pair."""
    geo = _geodecity(g)
    if geo > k_max:
        raise GuardError("geodecity", f"graph is {geo}-geodetic, above k_max={k_max}")
    return _enumerate_per_pair(g, f"src/kgeo(k={k_max})", k_max, _Stats())


def src_verify_geodetic(g: EdgeColoredGraph) -> Verdict:
    """Strong check for geodetic graphs: inspect the unique shortest path of each pair."""
    geo = _geodecity(g)
    if geo > 1:
        raise GuardError("geodecity", f"graph is not geodetic (some pair has {geo} shortest paths)")
    stats = _Stats()
    dist = g.all_pairs[0]
    for s in range(g.n):
        # BFS tree from s; in a geodetic graph it holds every shortest path
        order = sorted((int(dist[s, x]), x) for x in range(g.n) if dist[s, x] >= 0)
        mask = [0] * g.n
        ok = [False] * g.n
        ok[s] = True
        for d, x in order[1:]:
            for w, c, _ in g.adj[x]:
                if dist[s, w] == d - 1:
                    bit = 1 << c
                    ok[x] = ok[w] and not mask[w] & bit
                    mask[x] = mask[w] | bit
                    break
        stats.states += len(order)
        for t in range(s + 1, g.n):
            stats.pairs += 1
            if dist[s, t] < 0 or not ok[t]:
                return _no(g, "src/geodetic", s, t, stats, strong=True)
    return _yes("src/geodetic", stats)


def src_verify_fpt(g: EdgeColoredGraph, max_colors: int | None = DEFAULT_COLOR_GUARD) -> Verdict:
    """Strong check by the color-subset DP restricted to each source's shortest-path DAG.

    Every walk along DAG arcs is a shortest path, so DAG reachability under
    the rainbow constraint is exactly strong reachability.
    """
    _check_color_guard(g, max_colors)
    stats = _Stats()
    for s in range(g.n):
        indptr, indices, colors = _dag_csr(g, s)
        table = _kernels.rainbow_reach_table(indptr, indices, colors, g.k, s)
        reached = table.any(axis=0)
        stats.states += int(np.count_nonzero(table))
        for t in range(s + 1, g.n):
            stats.pairs += 1
            if not reached[t]:
                return _no(g, "src/fpt", s, t, stats, strong=True)
    return _yes("src/fpt", stats)
