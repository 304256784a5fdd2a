from hypothesis import given, settings, strategies as st

from cogkit.complexes import BipartiteGraph, build_x, polygon, scwol_of, op_scwol_of
from cogkit.covering import build_phi_gamma
from cogkit.scwol import (Scwol, ScwolMorphism, chain_counts, chains, identity_morphism,
                          opposite, scwol_from_json, validate_morphism, validate_scwol)


def single_edge():
    return Scwol(["u", "v"], {"a": ("u", "v")}, {})


def square():
    return scwol_of(polygon(2))


def test_single_edge_valid():
    assert validate_scwol(single_edge()) == []
    assert chain_counts(single_edge()) == (2, 1, 0)


def test_loop_is_reported():
    s = Scwol(["u", "v"], {"a": ("u", "u")}, {})
    assert any("loop" in d for d in validate_scwol(s))


def test_parallel_edges_not_thin():
    s = Scwol(["u", "v"], {"a": ("u", "v"), "b": ("u", "v")}, {})
    assert any("thin" in d for d in validate_scwol(s))


def test_missing_composition_reported():
    s = Scwol(["a", "b", "c"], {"p": ("b", "a"), "q": ("c", "b"), "r": ("c", "a")}, {})
    assert validate_scwol(s)


def test_hexagon_counts():
    s = scwol_of(polygon(3))
    assert validate_scwol(s) == []
    assert chain_counts(s) == (13, 24, 12)


def test_square_counts():
    assert chain_counts(square()) == (9, 16, 8)


def test_opposite_is_involution():
    s = scwol_of(polygon(3))
    oo = opposite(opposite(s))
    assert oo.edges == s.edges and oo.compose == s.compose


def test_opposite_single_edge():
    assert opposite(single_edge()).edges == {"a": ("v", "u")}


def test_opposite_preserves_chain_counts():
    X = build_x(3, BipartiteGraph.complete(2, 2))
    s = scwol_of(X)
    assert chain_counts(s) == chain_counts(op_scwol_of(X))
    assert validate_scwol(op_scwol_of(X)) == []


def test_op_scwol_matches_opposite():
    X = build_x(2, BipartiteGraph.complete(2, 2))
    a, b = opposite(scwol_of(X)), op_scwol_of(X)
    assert a.edges == b.edges and a.compose == b.compose


def test_chain_source_is_initial_vertex():
    s = square()
    for ch in chains(s):
        if ch.length == 1:
            assert ch.source == s.i(ch.edges[0])
        if ch.length == 2:
            assert ch.source == s.i(ch.edges[1])


def test_identity_morphism_valid():
    s = scwol_of(polygon(3))
    assert validate_morphism(identity_morphism(s)) == []


def test_projection_valid():
    data = build_phi_gamma(2, 2, 2)
    assert validate_morphism(data.f) == []


def test_collapsing_outgoing_edges_fails_condition_3():
    s = square()
    f = identity_morphism(s)
    out = s.outgoing("P")
    edge_map = dict(f.edge_map)
    edge_map[out[0]] = edge_map[out[1]]
    bad = ScwolMorphism(s, s, f.vertex_map, edge_map)
    report = validate_morphism(bad)
    assert any("condition 3" in d or "condition 1" in d for d in report)


def test_morphism_composition():
    s = square()
    f = identity_morphism(s)
    assert validate_morphism(f.then(f)) == []


def test_json_round_trip():
    s = square()
    back = scwol_from_json(s.to_json())
    assert validate_scwol(back) == []
    assert chain_counts(back) == chain_counts(s)
    assert "digraph" in s.to_dot()


@st.composite
def graded_posets(draw):
    "Random rank-2 posets: tops above edges above bottoms."
    n = [draw(st.integers(1, 4)) for _ in range(3)]
    levels = [[f"r{r}_{k}" for k in range(n[r])] for r in range(3)]
    below = {v: set() for lvl in levels for v in lvl}
    for r in (1, 2):
        for v in levels[r]:
            picks = draw(st.sets(st.sampled_from(levels[r - 1]), min_size=1))
            below[v] |= picks
            for w in picks:
                below[v] |= below[w]
    verts = [v for lvl in levels for v in lvl]
    return Scwol.from_order(verts, below)


@settings(max_examples=60, deadline=None)
@given(graded_posets())
def test_posets_give_valid_scwols(s):
    assert validate_scwol(s) == []
    o = opposite(s)
    assert validate_scwol(o) == []
    assert chain_counts(o) == chain_counts(s)
    assert validate_morphism(identity_morphism(s)) == []
