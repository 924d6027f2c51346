"""Compile 3-Occurrence 3-SAT formulas into edge-colored gadget graphs.

Five constructions are available, each tagged as on the command line:

``base``
    bipartite outerplanar graph (C6 variable gadgets, C10 clause gadgets)
``io``
    interval outerplanar graph: ``base`` plus triangulating chords
``ib``
    interval block graph: every gadget completed to a clique
``cubic``
    3-regular graph with tail and head gadgets
``kreg``
    k-regular graph: k-2 copies of ``cubic`` joined by per-vertex cliques

In all of them the formula is satisfiable iff a rainbow path joins
``source`` and ``sink``.

Naming: vertices ``a.i u.i v.i b.i ub.i vb.i`` for variable ``i``;
``p.j r.j.k q.j qp.j rp.j.k pp.j`` for clause ``j``; ``s.j``/``sp.j`` on the
tail; ``t`` (or ``t.0``..``t.4``) at the head. Colors ``c.i.r`` and ``cb.i.r``
on the positive and negative variable paths, ``cb.i`` on variable chords,
``c.j`` and ``c'.j`` per clause, ``f.N`` for fresh colors and ``c*`` for the
inter-copy cliques.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .errors import CnfError, GraphError
from .graph import EdgeColoredGraph, save_graph
from .sat import CnfFormula, literal_positions, pad_to_min_clauses

CONSTRUCTIONS = ("base", "io", "ib", "cubic", "kreg")
CUBIC_MIN_CLAUSES = 3


@dataclass(frozen=True)
class GadgetPalette:
    """Color names shared by every construction."""

    n: int
    m: int

    def pos(self, i: int, r: int) -> str:
        return f"c.{i}.{r}"

    def neg(self, i: int, r: int) -> str:
        return f"cb.{i}.{r}"

    def var(self, i: int) -> str:
        return f"cb.{i}"

    def clause(self, j: int) -> str:
        return f"c.{j}"

    def clause_prime(self, j: int) -> str:
        return f"c'.{j}"

    star = "c*"

    def listing(self) -> dict[str, list[str]]:
        return {
            "positive": [self.pos(i, r) for i in range(1, self.n + 1) for r in (1, 2, 3)],
            "negative": [self.neg(i, r) for i in range(1, self.n + 1) for r in (1, 2, 3)],
            "variable": [self.var(i) for i in range(1, self.n + 1)],
            "clause": [self.clause(j) for j in range(1, self.m + 1)],
            "clause_prime": [self.clause_prime(j) for j in range(1, self.m + 1)],
        }


def literal_chord_color(rank: int, literal: int, palette: GadgetPalette | None = None) -> str:
    """Color of the chord standing for ``literal`` at its ``rank``-th occurrence.

    A positive literal takes the color of the matching edge on the negative
    path of its variable and vice versa, so the chord is usable exactly when
    the variable's path does not consume that color.
    """
    if rank not in (1, 2, 3):
        raise ValueError(f"occurrence rank must be 1, 2 or 3, got {rank}")
    palette = palette or GadgetPalette(0, 0)
    i = abs(literal)
    return palette.neg(i, rank) if literal > 0 else palette.pos(i, rank)


class _Builder:
    """Accumulates vertices and colored edges; coloring an edge twice is an error."""

    def __init__(self) -> None:
        self.vertices: list[str] = []
        self._seen: set[str] = set()
        self.edges: dict[frozenset[str], tuple[str, str, str]] = {}
        self.fresh_count = 0
        self.gadgets: dict[str, list[str]] = {}

    def add(self, gadget: str, *names: str) -> None:
        for v in names:
            if v in self._seen:
                raise GraphError(f"vertex {v} created twice")
            self._seen.add(v)
            self.vertices.append(v)
            self.gadgets.setdefault(gadget, []).append(v)

    def edge(self, u: str, v: str, color: str) -> None:
        key = frozenset((u, v))
        if key in self.edges:
            raise GraphError(f"edge ({u}, {v}) colored twice: {self.edges[key][2]} and {color}")
        self.edges[key] = (u, v, color)

    def fresh(self, u: str, v: str) -> None:
        self.fresh_count += 1
        self.edge(u, v, f"f.{self.fresh_count}")

    def path(self, names: list[str], colors: list[str | None]) -> None:
        for (u, v), c in zip(zip(names, names[1:]), colors):
            if c is None:
                self.fresh(u, v)
            else:
                self.edge(u, v, c)


@dataclass
class ClauseLayout:
    """Vertex names of one clause gadget, in cyclic order starting at ``p``."""

    j: int
    top: list[str]  # p, r_1.., q
    bottom: list[str]  # q', ..r'_1, p'
    chords: list[tuple[str, str, int]]  # literal chords with their literal

    @property
    def p(self) -> str:
        return self.top[0]

    @property
    def q(self) -> str:
        return self.top[-1]

    @property
    def qp(self) -> str:
        return self.bottom[0]

    @property
    def pp(self) -> str:
        return self.bottom[-1]

    @property
    def cycle(self) -> list[str]:
        return self.top + self.bottom


def clause_gadget(
    construction: str,
    j: int,
    clause: tuple[int, ...],
    ranks: list[int],
    palette: GadgetPalette,
    b: _Builder,
) -> ClauseLayout:
    """Add the gadget for clause ``j`` to ``b``.

    A clause with ``s`` literals gets ``s`` lanes. In the cycle-based gadgets
    lane ``k`` is the chord ``(r.j.k, rp.j.k)``; the cubic gadget spaces its
    lanes on odd ``r`` indices with ``c'`` connectors between them. The block
    gadget is the clique on the base gadget's vertices.
    """
    s = len(clause)
    if not 1 <= s <= 3:
        raise CnfError(f"clause {j} has {s} literals; sizes 1-3 are allowed")
    lanes = 2 * s - 1 if construction in ("cubic", "kreg") else s
    r = [f"r.{j}.{k}" for k in range(1, lanes + 1)]
    rp = [f"rp.{j}.{k}" for k in range(1, lanes + 1)]
    layout = ClauseLayout(
        j,
        [f"p.{j}", *r, f"q.{j}"],
        [f"qp.{j}", *reversed(rp), f"pp.{j}"],
        [],
    )
    b.add(f"C.{j}", *layout.cycle)
    cj, cpj = palette.clause(j), palette.clause_prime(j)
    b.path(layout.top, [None] * (len(layout.top) - 1))
    b.edge(layout.q, layout.qp, cj)
    b.path(layout.bottom, [None] * (len(layout.bottom) - 1))
    b.edge(layout.pp, layout.p, cpj)
    step = 2 if construction in ("cubic", "kreg") else 1
    for idx, (lit, rank) in enumerate(zip(clause, ranks)):
        x, y = r[idx * step], rp[idx * step]
        b.edge(x, y, literal_chord_color(rank, lit, palette))
        layout.chords.append((x, y, lit))
    if construction in ("cubic", "kreg"):
        # connectors p'-r2, r'2-r4, ..., r'_{2s-2}-q keep every degree at 3
        ends = [layout.pp, *(rp[k] for k in range(1, lanes, 2))]
        starts = [*(r[k] for k in range(1, lanes, 2)), layout.q]
        for x, y in zip(ends, starts):
            b.edge(x, y, cpj)
    elif construction in ("io", "ib"):
        b.edge(r[0], layout.pp, cpj)
        for k in range(s - 1):
            b.edge(r[k + 1], rp[k], cpj)
        b.edge(layout.q, rp[-1], cpj)
        if construction == "ib":
            for x, y in combinations(layout.cycle, 2):
                if frozenset((x, y)) not in b.edges:
                    b.edge(x, y, cpj)
    return layout


@dataclass
class Reduction:
    graph: EdgeColoredGraph
    source: str
    sink: str
    gadget_map: dict[str, frozenset[str]]
    construction: str
    formula: CnfFormula
    k: int | None = None
    palette: GadgetPalette | None = None
    reconstructed: list[int] = field(default_factory=list)

    def to_document(self) -> dict[str, Any]:
        return save_graph(self.graph)


def _variable_gadgets(construction: str, f: CnfFormula, palette: GadgetPalette, b: _Builder) -> None:
    for i in range(1, f.n + 1):
        a, u, v, bb, vb, ub = (f"{x}.{i}" for x in ("a", "u", "v", "b", "vb", "ub"))
        b.add(f"X.{i}", a, u, v, bb, vb, ub)
        b.path([a, u, v, bb], [palette.pos(i, r) for r in (1, 2, 3)])
        b.path([a, ub, vb, bb], [palette.neg(i, r) for r in (1, 2, 3)])
        cb = palette.var(i)
        if construction in ("io", "ib"):
            for x, y in ((u, ub), (u, vb), (v, vb)):
                b.edge(x, y, cb)
        if construction == "ib":
            for x, y in combinations((a, u, v, bb, vb, ub), 2):
                if frozenset((x, y)) not in b.edges:
                    b.edge(x, y, cb)
        if construction in ("cubic", "kreg"):
            b.edge(u, vb, cb)
            b.edge(ub, v, cb)


def _assemble(construction: str, f: CnfFormula) -> tuple[_Builder, GadgetPalette, str, str]:
    palette = GadgetPalette(f.n, f.m)
    ranks = literal_positions(f)
    b = _Builder()
    _variable_gadgets(construction, f, palette, b)
    cubic = construction in ("cubic", "kreg")
    layouts = [
        clause_gadget(construction, j, clause, [ranks[(j, k)] for k in range(1, len(clause) + 1)], palette, b)
        for j, clause in enumerate(f.clauses, 1)
    ]
    # U: variable chain and the hop into the clause chain
    recolor_u = construction != "base"
    for i in range(1, f.n + 1):
        nxt = f"a.{i + 1}" if i < f.n else layouts[0].p
        if recolor_u:
            b.edge(f"b.{i}", nxt, palette.var(i))
        else:
            b.fresh(f"b.{i}", nxt)
    for lay, nxt in zip(layouts, layouts[1:]):
        b.edge(lay.qp, nxt.p, palette.clause_prime(lay.j))
    m = f.m
    if not cubic:
        b.add("head", "t")
        b.edge(layouts[-1].qp, "t", palette.clause_prime(m))
        s = [f"s.{j}" for j in range(1, m + 1)]
        b.add("tail", *s)
        b.path(s + ["a.1"], [palette.clause(j) for j in range(1, m + 1)])
        return b, palette, "s.1", "t"
    t = [f"t.{x}" for x in range(5)]
    b.add("head", *t)
    b.edge(layouts[-1].qp, "t.0", palette.clause_prime(m))
    for x, y in (("t.0", "t.1"), ("t.0", "t.2"), ("t.1", "t.3"), ("t.1", "t.4"), ("t.2", "t.3"), ("t.2", "t.4"), ("t.3", "t.4")):
        b.fresh(x, y)
    s = [f"s.{j}" for j in range(1, m)]
    sp = [f"sp.{j}" for j in range(1, m)]
    b.add("tail", *s, *sp, "a.0")
    rails = [palette.clause(j) for j in range(1, m - 1)]
    b.path(s, rails)
    b.path(sp, rails)
    b.fresh("s.1", "sp.1")
    b.edge("sp.1", "s.2", palette.clause(1))
    b.edge("s.1", "sp.2", palette.clause(1))
    for j in range(3, m):
        b.fresh(f"s.{j}", f"sp.{j}")
    b.edge(s[-1], "a.0", palette.clause(m - 1))
    b.edge(sp[-1], "a.0", palette.clause(m - 1))
    b.edge("a.0", "a.1", palette.clause(m))
    return b, palette, "s.1", "t.0"


def _build(construction: str, f: CnfFormula) -> Reduction:
    f.check()
    if f.m == 0 or f.n == 0:
        raise CnfError("the constructions need at least one variable and one clause")
    if construction in ("cubic", "kreg"):
        f = pad_to_min_clauses(f, CUBIC_MIN_CLAUSES)
    b, palette, source, sink = _assemble(construction, f)
    reconstructed = [j for j, c in enumerate(f.clauses, 1) if len(c) < 3]
    gadget_map = {gid: frozenset(vs) for gid, vs in b.gadgets.items()}
    meta = {
        "construction": construction,
        "source": source,
        "sink": sink,
        "formula": {"variables": f.n, "clauses": [list(c) for c in f.clauses]},
        "gadget_map": {gid: sorted(vs) for gid, vs in b.gadgets.items()},
        "palette": palette.listing(),
        "reconstructed": reconstructed,
    }
    g = EdgeColoredGraph(b.vertices, list(b.edges.values()), meta)
    return Reduction(g, source, sink, gadget_map, construction, f, palette=palette, reconstructed=reconstructed)


def build_base(f: CnfFormula) -> Reduction:
    """Bipartite outerplanar construction."""
    return _build("base", f)


def build_interval_outerplanar(f: CnfFormula) -> Reduction:
    """``base`` with three chords per variable gadget, ``s + 1`` per clause gadget, and U recolored."""
    return _build("io", f)


def build_interval_block(f: CnfFormula) -> Reduction:
    """``io`` with every gadget completed to a clique."""
    return _build("ib", f)


def build_cubic(f: CnfFormula) -> Reduction:
    """Cubic construction; formulas with fewer than three clauses are padded first."""
    return _build("cubic", f)


def build_k_regular(f: CnfFormula, k: int) -> Reduction:
    """``k - 2`` identically colored copies of the cubic construction.

    Copy ``h`` prefixes every vertex name with ``h<h>.``; the copies of each
    vertex form a clique colored ``c*``.
    """
    if not isinstance(k, int) or k <= 3:
        raise ValueError(f"k must be an integer greater than 3, got {k!r}")
    cubic = _build("cubic", f)
    g = cubic.graph
    copies = k - 2
    vertices = [f"h{h}.{v}" for h in range(1, copies + 1) for v in g.vertices]
    edges = [(f"h{h}.{u}", f"h{h}.{v}", c) for h in range(1, copies + 1) for u, v, c in g.edges()]
    for v in g.vertices:
        for h1, h2 in combinations(range(1, copies + 1), 2):
            edges.append((f"h{h1}.{v}", f"h{h2}.{v}", GadgetPalette.star))
    gadget_map = {
        f"h{h}.{gid}": frozenset(f"h{h}.{v}" for v in vs)
        for h in range(1, copies + 1)
        for gid, vs in cubic.gadget_map.items()
    }
    source, sink = f"h1.{cubic.source}", f"h1.{cubic.sink}"
    meta = dict(g.meta)
    meta.update(
        construction="kreg",
        k=k,
        source=source,
        sink=sink,
        gadget_map={gid: sorted(vs) for gid, vs in gadget_map.items()},
    )
    out = EdgeColoredGraph(vertices, edges, meta)
    return Reduction(
        out, source, sink, gadget_map, "kreg", cubic.formula, k=k, palette=cubic.palette, reconstructed=cubic.reconstructed
    )


def build(construction: str, f: CnfFormula, k: int | None = None) -> Reduction:
    """Dispatch on a construction tag (``base``, ``io``, ``ib``, ``cubic``, ``kreg``)."""
    if construction == "kreg":
        if k is None:
            raise ValueError("the kreg construction needs k > 3")
        return build_k_regular(f, k)
    if k is not None:
        raise ValueError(f"k only applies to the kreg construction, not {construction}")
    builders = {
        "base": build_base,
        "io": build_interval_outerplanar,
        "ib": build_interval_block,
        "cubic": build_cubic,
    }
    if construction not in builders:
        raise ValueError(f"unknown construction {construction!r}; expected one of {', '.join(CONSTRUCTIONS)}")
    return builders[construction](f)
