from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cogkit import groups as grp
from cogkit.cog import build_g_k, build_g_p, trivial_cog
from cogkit.complexes import BipartiteGraph, build_x, cycle_graph, scwol_of, type_id
from cogkit.covering import (build_phi_gamma, build_psi_w, euler_check, sheet_lower_bound,
                             search_covering, verify_covering)
from cogkit.scwol import ScwolMorphism

from faults import corrupt_mono, corrupt_phi, seeded


def test_phi_m3_q22():
    data = build_phi_gamma(3, 2, 2)
    rep = verify_covering(data)
    assert rep.ok and rep.sheets == 4
    assert rep.condition1 and rep.condition2
    assert set(rep.sheets_by_vertex.values()) == {4}
    e = euler_check(data, rep)
    assert e["ok"] and e["chiX"] == -2 and e["chiOrb"] == "-1/2" and e["ratio"] == 4


def test_phi_m2_q22():
    assert verify_covering(build_phi_gamma(2, 2, 2)).sheets == 4


def test_phi_m3_q23_fiber_over_barycenter():
    rep = verify_covering(build_phi_gamma(3, 2, 3))
    assert rep.ok and rep.sheets == 6
    assert rep.fibers["P"] == 6


def test_phi_values_follow_structural_rule():
    # g_{1,i} and g_{2,j} are the elements of index i-1 and j-1 of the two factors
    data = build_phi_gamma(3, 2, 3)
    X = build_x(3, BipartiteGraph.complete(2, 3))
    prod = data.codomain.groups["u1"]

    def idx(s):
        return int(s[1:]) - 1

    for a, (i, t) in data.domain.base.edges.items():
        if i in X.faces:
            x, y = X.types[i]
            if t in X.vertices:
                expected = grp.pair(prod, idx(x), idx(y))
            else:
                expected = idx(y) if X.types[t] == (x,) else idx(x)
        else:
            s = X.types[i][0]
            expected = grp.pair(prod, idx(s), 0) if s[0] == "x" else grp.pair(prod, 0, idx(s))
        assert data.phi[a] == expected


def test_phi_coset_enumeration_at_u1():
    data = build_phi_gamma(3, 3, 2)
    X = data.domain.base
    prod = data.codomain.groups["u1"]
    b = data.codomain.base.edge_between("e1", "u1")
    mapped = [a for a in X.incoming("u1") if data.f.edge_map[a] == b]
    values = sorted(data.phi[a] for a in mapped)
    assert values == [grp.pair(prod, i, 0) for i in range(3)]
    g2 = grp.factor_inclusion(prod, 1).image()
    cosets = grp.left_cosets(prod, g2)
    assert sorted({c for c in cosets for v in values if v in c}) == sorted(cosets)


def test_psi_m3_k22():
    data = build_psi_w(3, BipartiteGraph.complete(2, 2))
    rep = verify_covering(data)
    assert rep.ok and rep.sheets == 6
    assert euler_check(data, rep)["ok"]


def test_psi_single_edge_m2():
    rep = verify_covering(build_psi_w(2, BipartiteGraph.complete(1, 1)))
    assert rep.ok and rep.sheets == 4


def face_values(m, graph, face):
    "The A, C, gamma, delta, epsilon values of one face, as element names."
    data = build_psi_w(m, graph)
    X = build_x(m, graph)
    s = data.domain.base
    word, corners = X.faces[face], X.corners(face)
    n = 2 * m

    def val(cell):
        return data.phi_name(s.edge_between(cell, face))

    A = [val(word[(1 - k) % n][0]) for k in range(1, m + 1)]
    C = [val(word[k][0]) for k in range(1, m + 1)]
    gamma = [val(corners[(1 - k) % n]) for k in range(1, m + 1)]
    delta = [val(corners[(1 + k) % n]) for k in range(1, m + 1)]
    return data, X, A, C, gamma, delta, val(corners[1])


def alt(first, second, k):
    return "".join(first if r % 2 == 0 else second for r in range(k)) or "1"


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_psi_dihedral_word_values(m):
    g = BipartiteGraph.complete(2, 2)
    for x in g.left:
        for y in g.right:
            _, _, A, C, gamma, delta, eps = face_values(m, g, f"P[{x},{y}]")
            assert eps == "1"
            assert A == [alt(x, y, k - 1) for k in range(1, m + 1)]
            assert C == [alt(y, x, k - 1) for k in range(1, m + 1)]
            assert gamma[:-1] == [alt(x, y, k) for k in range(1, m)]
            assert delta[:-1] == [alt(y, x, k) for k in range(1, m)]
            # the opposite corner carries w_m, however it is spelled
            assert gamma[-1] == delta[-1] == alt(x, y, m)


def test_psi_composition_example():
    m, g = 3, BipartiteGraph.complete(2, 2)
    data, X, A, C, gamma, delta, _ = face_values(m, g, "P[x1,y1]")
    s = data.domain.base
    # A^2 is the y^m midpoint -> barycenter edge, B^4 the u^m corner -> y^m midpoint edge
    b4 = s.edge_between("u3", "y1^3")
    assert A[1] == "x1" and data.phi_name(b4) == "y1"
    assert gamma[1] == "x1y1"


def test_psi_corner_to_midpoint_values():
    m, g = 4, BipartiteGraph.complete(2, 3)
    data = build_psi_w(m, g)
    X = build_x(m, g)
    s = data.domain.base
    for e, (tail, head) in X.edges.items():
        values = sorted(data.phi_name(s.edge_between(c, e)) for c in (tail, head))
        assert values == sorted(["1", X.types[e][0]])


def test_psi_cosets_match_worked_case():
    data = build_psi_w(3, BipartiteGraph.complete(2, 2))
    W = data.codomain.groups[type_id(("x1", "y1"))]
    s = data.domain.base
    face = "P[x1,y1]"
    b = data.codomain.base.edge_between(type_id(("x1",)), type_id(("x1", "y1")))
    values = sorted(data.phi_name(a) for a in s.incoming(face) if data.f.edge_map[a] == b)
    assert values == sorted(["1", "y1", "x1y1"])
    cosets = grp.left_cosets(W, [0, W.element("x1")])
    named = [sorted(W.name(g) for g in c) for c in cosets]
    assert named == [["1", "x1"], ["y1", "y1x1"], ["x1y1", "x1y1x1"]]


def test_sheet_lower_bound():
    assert sheet_lower_bound(build_g_p(3, 2, 3)) == 6
    assert sheet_lower_bound(build_g_k(4, BipartiteGraph.complete(2, 2))) == 8
    X = build_x(2, BipartiteGraph.complete(2, 2))
    assert sheet_lower_bound(trivial_cog(scwol_of(X))) == 1


def test_phi_corruption_names_condition_2():
    data = build_phi_gamma(3, 2, 2)
    s = data.domain.base
    a = s.edge_between("x1^1", "u1")
    prod = data.target_group(a)
    # moving the G1 part lands in the coset already used by x2^1
    bad = data.with_phi(a, grp.pair(prod, 1, 0))
    rep = verify_covering(bad)
    assert not rep.condition2
    assert any(d.startswith("condition 2 fails at (sigma=u1, b=('e1', 'u1'))")
               for d in rep.diagnostics)


def test_phi_corruption_in_same_coset_caught_by_condition_1():
    data = build_phi_gamma(3, 2, 2)
    s = data.domain.base
    # an x-midpoint -> corner edge: the coset of G2 is fixed by changing the G2 part
    a = s.edge_between("x1^1", "u1")
    prod = data.target_group(a)
    bad = data.with_phi(a, prod.mul(data.phi[a], grp.pair(prod, 0, 1)))
    rep = verify_covering(bad)
    assert rep.condition2 and not rep.condition1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(["gamma", "w"]))
def test_corruptions_always_detected(seed, which):
    rng = seeded(seed)
    data = build_phi_gamma(2, 2, 3) if which == "gamma" else build_psi_w(3, cycle_graph(3))
    corrupt = corrupt_phi if rng.random() < 0.5 else corrupt_mono
    bad, where = corrupt(data, rng)
    assert verify_covering(bad).diagnostics, where


def test_search_reproduces_verified_coverings():
    for m in (2, 3):
        for g in (BipartiteGraph.complete(2, 2), BipartiteGraph.complete(2, 3)):
            for build in (lambda: build_phi_gamma(m, g.q1, g.q2), lambda: build_psi_w(m, g)):
                data = build()
                found = search_covering(data.domain, data.codomain, data.f, timeout=10)
                assert found is not None
                assert verify_covering(found).ok


def test_search_on_gamma_matches_built():
    data = build_phi_gamma(2, 2, 2)
    found = search_covering(data.domain, data.codomain, data.f)
    assert verify_covering(found).sheets == 4


def test_search_fails_for_non_type_preserving_map():
    data = build_phi_gamma(3, 2, 3)
    rot = {"P": "P"}
    for k in range(1, 4):
        rot[f"u{k}"], rot[f"v{k}"] = f"v{k}", f"u{k % 3 + 1}"
        rot[f"e{k}"], rot[f"f{k}"] = f"f{k}", f"e{k % 3 + 1}"
    P = data.codomain.base
    r = ScwolMorphism.from_vertex_map(P, P, rot)
    f = data.f.then(r)
    assert search_covering(data.domain, data.codomain, f) is None
    assert not verify_covering(type(data)(data.domain, data.codomain, f, data.phi)).ok


def test_non_trivial_domain_rejected():
    data = build_phi_gamma(2, 2, 2)
    dom = build_g_p(2, 2, 2)
    rep = verify_covering(type(data)(dom, data.codomain, data.f, data.phi))
    assert not rep.ok


def test_report_json():
    out = verify_covering(build_phi_gamma(2, 2, 2)).to_json()
    assert out["condition1"] == "ok" and out["condition2"] == "ok" and out["sheets"] == 4


@pytest.mark.parametrize("m", [2, 3])
def test_euler_multiplicativity(m):
    for data in (build_phi_gamma(m, 2, 3), build_psi_w(m, cycle_graph(3))):
        rep = verify_covering(data)
        e = euler_check(data, rep)
        assert e["ok"] and Fraction(e["product"]) == Fraction(e["chiX"])
