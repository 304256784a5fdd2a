"""
Coverings of complexes of groups H(X) -> G(Y) with trivial domain: the
verifier and sheet counter, the explicit coverings onto G(P) and G(K), and
a backtracking search for the element family.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import groups as grp
from .cog import build_g_k, build_g_p, euler_orbifold, trivial_cog, validate_cog
from .complexes import BipartiteGraph, build_x, op_scwol_of, scwol_of, type_id
from .scwol import ScwolMorphism, validate_morphism


@dataclass
class CoveringData:
    """
    A scwol morphism ``f`` from the domain base to the codomain base and an
    element ``phi[a]`` of ``G_{f(t(a))}`` (an element index) for every
    domain edge ``a``.
    """
    domain: object
    codomain: object
    f: ScwolMorphism
    phi: dict

    def target_group(self, a):
        return self.codomain.groups[self.f.vertex_map[self.domain.base.t(a)]]

    def phi_name(self, a):
        return self.target_group(a).name(self.phi[a])

    def with_phi(self, a, value):
        phi = dict(self.phi)
        phi[a] = value
        return CoveringData(self.domain, self.codomain, self.f, phi)

    def with_codomain(self, codomain):
        return CoveringData(self.domain, codomain, self.f, self.phi)


@dataclass
class CoveringReport:
    diagnostics: list = field(default_factory=list)
    fibers: dict = field(default_factory=dict)
    sheets_by_vertex: dict = field(default_factory=dict)
    sheets: int = 0
    condition1: bool = True
    condition2: bool = True

    @property
    def ok(self):
        return not self.diagnostics

    def to_json(self):
        return {
            "ok": self.ok,
            "sheets": self.sheets,
            "fibers": {str(k): v for k, v in self.fibers.items()},
            "sheets_by_vertex": {str(k): v for k, v in self.sheets_by_vertex.items()},
            "condition1": "ok" if self.condition1 else "failed",
            "condition2": "ok" if self.condition2 else "failed",
            "diagnostics": list(self.diagnostics),
        }


def _coset_maps(codomain):
    "For each codomain edge b, element -> representative of its coset of psi_b(G_i(b))."
    out = {}
    for b in codomain.base.edges:
        tgt = codomain.groups[codomain.base.t(b)]
        out[b] = (grp.coset_index(tgt, codomain.monos[b].image()),
                  tgt.order // codomain.monos[b].source.order)
    return out


def verify_covering(c):
    """
    Check both covering conditions and count sheets from every codomain
    vertex.  Returns a :class:`CoveringReport`; it is clean iff the data is
    a covering.
    """
    rep = CoveringReport()
    X, Y = c.domain.base, c.codomain.base
    diag = rep.diagnostics

    if not c.domain.is_trivial():
        diag.append("domain: not a trivial complex of groups")
    for problem in validate_cog(c.codomain):
        diag.append(f"codomain: {problem}")
    for problem in validate_morphism(c.f):
        diag.append(f"morphism: {problem}")
    if diag:
        rep.condition1 = rep.condition2 = False
        return rep

    fv, fe = c.f.vertex_map, c.f.edge_map
    G, psi = c.codomain.groups, c.codomain.monos
    for a in X.edges:
        value = c.phi.get(a)
        if value is None or not 0 <= value < G[fv[X.t(a)]].order:
            diag.append(f"phi: value on edge {a} is not an element of G_f(t(a))")
    if diag:
        rep.condition1 = rep.condition2 = False
        return rep

    phi = c.phi
    for (a, b), ab in X.compose.items():
        group = G[fv[X.t(a)]]
        expected = group.mul(phi[a], psi[fe[a]](phi[b]))
        if phi[ab] != expected:
            rep.condition1 = False
            diag.append(f"condition 1 fails at composable pair ({a}, {b}): "
                        f"phi(ab) = {group.name(phi[ab])}, phi(a) psi(phi(b)) = {group.name(expected)}")

    cosets = _coset_maps(c.codomain)
    for sigma in X.vertices:
        by_b = {}
        for a in X.incoming(sigma):
            by_b.setdefault(fe[a], []).append(a)
        for b in Y.incoming(fv[sigma]):
            rep_of, n_cosets = cosets[b]
            hit = [rep_of[phi[a]] for a in by_b.get(b, [])]
            if len(hit) != n_cosets or len(set(hit)) != len(hit):
                rep.condition2 = False
                diag.append(f"condition 2 fails at (sigma={sigma}, b={b}): "
                            f"{len(set(hit))} distinct cosets from {len(hit)} edges, "
                            f"{n_cosets} cosets needed")

    for tau in Y.vertices:
        fiber = sum(1 for v in X.vertices if fv[v] == tau)
        rep.fibers[tau] = fiber
        rep.sheets_by_vertex[tau] = fiber * G[tau].order
    values = set(rep.sheets_by_vertex.values())
    if len(values) != 1:
        diag.append(f"sheet count not constant over codomain vertices: {sorted(values)}")
    rep.sheets = min(values) if values else 0
    return rep


def sheet_lower_bound(codomain):
    "Largest local group order: a lower bound for the index of any torsion-free subgroup."
    return max(g.order for g in codomain.groups.values())


def euler_check(c, report=None):
    report = report or verify_covering(c)
    chi_dom = euler_orbifold(c.domain)
    chi_orb = euler_orbifold(c.codomain)
    product = report.sheets * chi_orb
    return {
        "chiX": rational_json(chi_dom),
        "chiOrb": rational_json(chi_orb),
        "product": rational_json(product),
        "ratio": rational_json(chi_dom / chi_orb) if chi_orb != 0 else None,
        "ok": chi_dom == product,
    }


def rational_json(q):
    "Integers stay integers; other rationals become ``num/den`` strings."
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else str(q)


def projection_map(X, graph):
    "Vertex map of the projection of X_{2m,L} onto the polygon P."
    vmap = {v: v for v in X.vertices}     # u^k -> u_k, v^k -> v_k
    left = set(graph.left)
    for e in X.edges:
        s, k = e.split("^")
        vmap[e] = ("e" if s in left else "f") + k
    for face in X.faces:
        vmap[face] = "P"
    return vmap


def build_phi_gamma(m, q1, q2, g1=None, g2=None):
    """
    The q1 q2-sheeted covering H(X) -> G(P) for L = K_{q1,q2}, over the
    projection X -> P sending x_i^k to e_k and y_j^k to f_k.

    With g_{1,i}, g_{2,j} the i-th and j-th elements of G1, G2 in table
    order, a face P_ij carries g_{2,j} into x-midpoints, g_{1,i} into
    y-midpoints and g_{1,i} g_{2,j} into corners; an x_i-midpoint carries
    g_{1,i} into both endpoints and a y_j-midpoint carries g_{2,j}.
    """
    if q1 < 2 or q2 < 2:
        raise ValueError("q1 and q2 must be at least 2")
    graph = BipartiteGraph.complete(q1, q2)
    X = build_x(m, graph)
    sx = scwol_of(X)
    codomain = build_g_p(m, q1, q2, g1, g2)
    prod = codomain.groups["u1"]
    xi = {x: n for n, x in enumerate(graph.left)}
    yj = {y: n for n, y in enumerate(graph.right)}
    f = ScwolMorphism.from_vertex_map(sx, codomain.base, projection_map(X, graph))

    phi = {}
    for a, (i, t) in sx.edges.items():
        ti, tt = X.types[i], X.types[t]
        if len(ti) == 2:
            x, y = ti
            if len(tt) == 0:
                phi[a] = grp.pair(prod, xi[x], yj[y])
            elif tt == (x,):
                phi[a] = yj[y]
            else:
                phi[a] = xi[x]
        else:
            s = ti[0]
            phi[a] = grp.pair(prod, xi[s], 0) if s in xi else grp.pair(prod, 0, yj[s])
    return CoveringData(trivial_cog(sx, "H(X)"), codomain, f, phi)


def build_psi_w(m, graph):
    """
    The 2m-sheeted covering H(X^op) -> G(K) over the type map.

    In each face P_ij the corners get dihedral elements: the corner u^1
    gets 1 and crossing an x_i- or y_j-edge multiplies on the right by x_i
    or y_j.  A corner-to-barycenter edge carries its corner's element, an
    edge-midpoint-to-barycenter edge the shorter of its two corners'
    elements h, and a corner-to-midpoint edge h^-1 times the corner's
    element (1 or the generator).
    """
    X = build_x(m, graph)
    sx = op_scwol_of(X)
    codomain = build_g_k(m, graph)
    vmap = {v: type_id(sx.types[v]) for v in sx.vertices}
    f = ScwolMorphism.from_vertex_map(sx, codomain.base, vmap)

    phi = {}

    def assign(a, value):
        if phi.setdefault(a, value) != value:
            raise AssertionError(f"inconsistent value on edge {a}")

    for face, word in X.faces.items():
        x, y = X.types[face]
        W = codomain.groups[type_id((x, y))]
        corners = X.corners(face)
        n = len(word)
        # corner p is the start of letter p; corners[1] is u^1
        start = corners.index("u1")
        elt = {corners[start]: 0}
        for step in range(1, n):
            p = (start + step) % n
            crossed = word[p - 1][0]          # letter p-1 joins corner p-1 to corner p
            gen = W.element(X.types[crossed][0])
            elt[corners[p]] = W.mul(elt[corners[p - 1]], gen)
        for c in corners:
            assign(sx.edge_between(c, face), elt[c])
        for p, (e, _) in enumerate(word):
            c0, c1 = corners[p], corners[(p + 1) % n]
            h = min(elt[c0], elt[c1], key=lambda g: (len(W.name(g)), g))
            assign(sx.edge_between(e, face), h)
            small = codomain.groups[type_id(X.types[e])]
            for c in (c0, c1):
                assign(sx.edge_between(c, e), small.element(W.name(W.mul(W.inv(h), elt[c]))))
    return CoveringData(trivial_cog(sx, "H(X^op)"), codomain, f, phi)


class SearchTimeout(Exception):
    pass


def search_covering(domain, codomain, f, timeout=None):
    """
    Backtracking search for an element family making ``f`` a covering.

    Every domain edge is a variable with values in ``G_{f(t(a))}``.  The
    next variable is the one with fewest consistent values, ties broken by
    codomain local-group order and then canonical edge order; values are
    tried in element order.  Condition 1 and the injectivity half of
    Condition 2 are checked as soon as their edges are assigned.  Returns
    None if no family exists for this ``f``.
    """
    if validate_morphism(f):
        return None
    X, Y = domain.base, codomain.base
    fv, fe = f.vertex_map, f.edge_map
    G, psi = codomain.groups, codomain.monos
    cosets = _coset_maps(codomain)

    edges = sorted(X.edges, key=str)
    groups = {a: G[fv[X.t(a)]] for a in edges}

    # condition 2 groups: all edges into sigma over b must hit distinct cosets, and fill them
    blocks = {}
    for sigma in X.vertices:
        for b in Y.incoming(fv[sigma]):
            blocks[(sigma, b)] = []
        for a in X.incoming(sigma):
            blocks.setdefault((sigma, fe[a]), []).append(a)
    for (sigma, b), members in blocks.items():
        if len(members) != cosets[b][1]:
            return None
    block_of = {a: (X.t(a), fe[a]) for a in edges}

    triples = {a: [] for a in edges}
    for (a, b), ab in X.compose.items():
        for e in {a, b, ab}:
            triples[e].append((a, b, ab))

    phi = {}
    deadline = None if timeout is None else time.monotonic() + timeout

    def consistent(a, value):
        phi[a] = value
        try:
            for p, q, pq in triples[a]:
                if p in phi and q in phi and pq in phi:
                    if phi[pq] != groups[p].mul(phi[p], psi[fe[p]](phi[q])):
                        return False
            rep_of = cosets[fe[a]][0]
            mine = rep_of[value]
            for other in blocks[block_of[a]]:
                if other != a and other in phi and rep_of[phi[other]] == mine:
                    return False
            return True
        finally:
            del phi[a]

    def domain_of(a):
        return [g for g in groups[a].elements if consistent(a, g)]

    def solve():
        if deadline is not None and time.monotonic() > deadline:
            raise SearchTimeout
        free = [a for a in edges if a not in phi]
        if not free:
            return True
        best, best_vals, best_key = None, None, None
        for a in free:
            vals = domain_of(a)
            if not vals:
                return False
            key = (len(vals), groups[a].order)
            if best_key is None or key < best_key:
                best, best_vals, best_key = a, vals, key
                if len(vals) == 1:
                    break
        for g in best_vals:
            phi[best] = g
            if solve():
                return True
            del phi[best]
        return False

    try:
        found = solve()
    except SearchTimeout:
        return None
    if not found:
        return None
    return CoveringData(domain, codomain, f, dict(phi))
