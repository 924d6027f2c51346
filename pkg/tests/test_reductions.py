from collections import Counter

import pytest

from rainbowconn.errors import CnfError
from rainbowconn.graph import biconnected_components, load_graph
from rainbowconn.recognize import geodecity
from rainbowconn.reductions import (
    GadgetPalette,
    build,
    build_base,
    build_cubic,
    build_interval_block,
    build_interval_outerplanar,
    build_k_regular,
    literal_chord_color,
)
from rainbowconn.sat import CnfFormula, brute_force_sat, literal_positions
from rainbowconn.verify import rainbow_path_between

from conftest import THREE_CLAUSE, UNSAT, random_formulas

ONE_CLAUSE = CnfFormula(3, ((1, 2, 3),))


def test_literal_chord_color_cases():
    assert literal_chord_color(1, 2) == "cb.2.1"
    assert literal_chord_color(3, -5) == "c.5.3"
    with pytest.raises(ValueError):
        literal_chord_color(4, 1)


def test_base_counts_on_one_clause():
    g = build_base(ONE_CLAUSE).graph
    assert (g.n, g.m, g.k) == (30, 36, 31)


def test_base_exact_edge_list():
    """Every edge and color written out by hand for the one-clause formula."""
    g = build_base(CnfFormula(1, ((1,),))).graph
    named = {
        ("a.1", "u.1"): "c.1.1",
        ("u.1", "v.1"): "c.1.2",
        ("v.1", "b.1"): "c.1.3",
        ("a.1", "ub.1"): "cb.1.1",
        ("ub.1", "vb.1"): "cb.1.2",
        ("vb.1", "b.1"): "cb.1.3",
        ("q.1", "qp.1"): "c.1",
        ("pp.1", "p.1"): "c'.1",
        ("r.1.1", "rp.1.1"): "cb.1.1",
        ("qp.1", "t"): "c'.1",
        ("s.1", "a.1"): "c.1",
    }
    fresh_pairs = [("b.1", "p.1"), ("p.1", "r.1.1"), ("r.1.1", "q.1"), ("qp.1", "rp.1.1"), ("rp.1.1", "pp.1")]
    got = {frozenset((u, v)): c for u, v, c in g.edges()}
    want = {frozenset(e): c for e, c in named.items()}
    assert {e: got[e] for e in want} == want
    assert set(got) == set(want) | {frozenset(p) for p in fresh_pairs}
    fresh = [got[frozenset(p)] for p in fresh_pairs]
    assert len(set(fresh)) == len(fresh) and all(c.startswith("f.") for c in fresh)


def test_io_and_ib_counts():
    assert build_interval_outerplanar(ONE_CLAUSE).graph.m == 49
    assert build_interval_outerplanar(THREE_CLAUSE).graph.m == 10 * 3 + 19 * 3
    assert build_interval_block(ONE_CLAUSE).graph.m == 95


def test_io_recolors_u_with_preceding_variable():
    g = build_interval_outerplanar(CnfFormula(2, ((1, 2),))).graph
    assert g.color("b.1", "a.2") == "cb.1"
    assert g.color("b.2", "p.1") == "cb.2"


def test_ib_blocks_are_cliques_of_sizes_2_6_10():
    for f in [ONE_CLAUSE, THREE_CLAUSE]:
        g = build_interval_block(f).graph
        blocks, _ = biconnected_components(g)
        assert {len(b) for b in blocks} <= {2, 6, 10}
        assert geodecity(g) == 1


def test_cubic_counts_and_degrees():
    r = build_cubic(THREE_CLAUSE)
    g = r.graph
    assert (g.n, g.m) == (70, 105)
    assert all(g.degree(v) == 3 for v in g.vertices)


def test_cubic_pads_short_formulas():
    r = build_cubic(CnfFormula(2, ((1, -2),)))
    assert r.formula.m == 3 and r.formula.n == 4
    # clause of size s spans 4s + 2 vertices; tail 2(m - 1) + 1; head 5
    assert r.graph.n == 6 * 4 + (10 + 6 + 6) + 5 + 5


def test_cubic_tail_colors():
    g = build_cubic(CnfFormula(4, ((1,), (2,), (3,), (4,)))).graph
    assert g.color("s.1", "s.2") == g.color("sp.1", "sp.2") == "c.1"
    assert g.color("s.2", "s.3") == g.color("sp.2", "sp.3") == "c.2"
    assert g.color("s.1", "sp.2") == g.color("s.2", "sp.1") == "c.1"
    assert g.color("s.3", "a.0") == g.color("sp.3", "a.0") == "c.3"
    assert g.color("a.0", "a.1") == "c.4"
    assert g.color("s.1", "sp.1").startswith("f.") and g.color("s.3", "sp.3").startswith("f.")
    assert g.color("qp.4", "t.0") == "c'.4"


@pytest.mark.parametrize("k, copies", [(4, 2), (5, 3)])
def test_k_regular_counts(k, copies):
    r = build_k_regular(THREE_CLAUSE, k)
    g = r.graph
    assert g.n == copies * 70
    assert g.m == copies * 105 + 70 * copies * (copies - 1) // 2
    assert all(g.degree(v) == k for v in g.vertices)
    assert (r.source, r.sink) == ("h1.s.1", "h1.t.0")
    star = [(u, v) for u, v, c in g.edges() if c == "c*"]
    assert all(u.split(".", 1)[1] == v.split(".", 1)[1] for u, v in star)


def test_k_regular_rejects_small_k():
    with pytest.raises(ValueError):
        build_k_regular(THREE_CLAUSE, 3)
    with pytest.raises(ValueError):
        build("kreg", THREE_CLAUSE)


def test_clause_gadget_edge_counts():
    base = build_base(ONE_CLAUSE)
    cubic = build_cubic(CnfFormula(3, ((1, 2, 3), (1,), (2,))))
    for red, gid, want in [(base, "C.1", 13), (cubic, "C.1", 20)]:
        inside = red.gadget_map[gid]
        assert sum(1 for u, v, _ in red.graph.edges() if u in inside and v in inside) == want


@pytest.mark.parametrize("construction", ["base", "io", "ib", "cubic", "kreg"])
def test_invariants_on_random_formulas(construction):
    for f in random_formulas(31, 40):
        r = build(construction, f, 4 if construction == "kreg" else None)
        g = r.graph
        # gadgets partition the vertex set
        sizes = Counter(v for vs in r.gadget_map.values() for v in vs)
        assert set(sizes) == set(g.vertices) and set(sizes.values()) == {1}
        assert r.source in g and r.sink in g
        # each chord color also sits on the opposite-sign path of its variable
        ranks = literal_positions(r.formula)
        palette = GadgetPalette(r.formula.n, r.formula.m)
        path_colors = {c for u, v, c in g.edges() if c.startswith(("c.", "cb.")) and c.count(".") == 2}
        for (j, k), rank in ranks.items():
            lit = r.formula.clauses[j - 1][k - 1]
            color = literal_chord_color(rank, lit, palette)
            assert color in path_colors
            i = abs(lit)
            path = ("ub", "vb") if lit > 0 else ("u", "v")
            ends = {f"a.{i}", f"{path[0]}.{i}", f"{path[1]}.{i}", f"b.{i}"}
            prefix = "h1." if construction == "kreg" else ""
            assert any(
                c == color and {u.removeprefix(prefix), v.removeprefix(prefix)} <= ends for u, v, c in g.edges()
            )
        # fresh colors are used once each
        fresh = Counter(c for _, _, c in g.edges() if c.startswith("f."))
        if construction != "kreg":
            assert set(fresh.values()) <= {1}


def test_size_one_and_two_gadgets_round_trip():
    short = [f for f in random_formulas(41, 200) if any(len(c) < 3 for c in f.clauses)][:40]
    assert len(short) == 40
    for f in short:
        sat = brute_force_sat(f) is not None
        for construction in ("base", "io", "ib", "cubic"):
            r = build(construction, f)
            assert r.reconstructed
            assert (rainbow_path_between(r.graph, r.source, r.sink) is not None) == sat


def test_sat_round_trip_small():
    for f in (THREE_CLAUSE, UNSAT, ONE_CLAUSE):
        sat = brute_force_sat(f) is not None
        for construction, k in [("base", None), ("io", None), ("ib", None), ("cubic", None), ("kreg", 4)]:
            r = build(construction, f, k)
            w = rainbow_path_between(r.graph, r.source, r.sink)
            assert (w is not None) == sat
            if w is not None:
                w.validate(r.graph)


def test_document_carries_metadata():
    r = build_cubic(ONE_CLAUSE)
    doc = r.to_document()
    meta = doc["meta"]
    assert meta["construction"] == "cubic" and meta["source"] == "s.1" and meta["sink"] == "t.0"
    assert sorted(meta["gadget_map"]) == sorted(r.gadget_map)
    assert meta["reconstructed"] == [2, 3]
    assert load_graph(doc) == r.graph


def test_invalid_inputs():
    with pytest.raises(CnfError):
        build_base(CnfFormula(1, ((1,), (1,), (1,), (1,))))
    with pytest.raises(CnfError):
        build_base(CnfFormula(1, ()))
    with pytest.raises(ValueError):
        build("nope", ONE_CLAUSE)
