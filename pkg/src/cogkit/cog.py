"""
Complexes of finite groups over scwols: the trivial complexes, G(P) over
the 2m-gon, G(K) over the Davis chamber, validation, local developments
and the orbifold Euler characteristic.
"""

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from . import groups as grp
from .complexes import build_chamber, chamber_scwol, polygon, scwol_of
from .scwol import chains


class ComplexOfGroups:
    """
    Local groups ``groups[v]`` on the vertices of a scwol and monomorphisms
    ``monos[a]: G_{i(a)} -> G_{t(a)}`` on its edges.
    """

    def __init__(self, base, groups, monos, name=""):
        self.base = base
        self.groups = dict(groups)
        self.monos = dict(monos)
        self.name = name

    def __repr__(self):
        return f"ComplexOfGroups({self.name or '?'}, {self.base!r})"

    def group(self, v):
        return self.groups[v]

    def psi(self, a):
        return self.monos[a]

    def is_trivial(self):
        return all(g.order == 1 for g in self.groups.values())

    def with_mono(self, a, mono):
        "A copy with the monomorphism on edge ``a`` replaced."
        monos = dict(self.monos)
        monos[a] = mono
        return ComplexOfGroups(self.base, self.groups, monos, self.name)

    def report(self):
        chi = euler_orbifold(self)
        return {
            "name": self.name,
            "orders": {str(v): self.groups[v].order for v in self.base.vertices},
            "diagnostics": validate_cog(self),
            "faithful_criterion": is_faithful_criterion(self),
            "chi_orb": {"num": chi.numerator, "den": chi.denominator},
        }


def trivial_cog(s, name="H"):
    one = grp.trivial_group()
    return ComplexOfGroups(s, {v: one for v in s.vertices},
                           {a: grp.trivial_map(one, one) for a in s.edges}, name)


def validate_cog(c):
    """
    Diagnostics for missing data, non-injective or non-homomorphic edge maps,
    and functoriality ``psi_ab = psi_a . psi_b`` on every composable pair.
    """
    s = c.base
    report = []
    for v in s.vertices:
        if v not in c.groups:
            report.append(f"vertex {v}: no local group")
    if report:
        return report
    for a in s.edges:
        mono = c.monos.get(a)
        if mono is None:
            report.append(f"edge {a}: no monomorphism")
            continue
        if mono.source is not c.groups[s.i(a)] and mono.source.names != c.groups[s.i(a)].names:
            report.append(f"edge {a}: monomorphism source is not G_i(a)")
            continue
        if mono.target is not c.groups[s.t(a)] and mono.target.names != c.groups[s.t(a)].names:
            report.append(f"edge {a}: monomorphism target is not G_t(a)")
            continue
        for problem in mono.check():
            report.append(f"edge {a}: {problem}")
    if report:
        return report
    for (a, b), ab in s.compose.items():
        lhs = c.monos[ab].images
        rhs = c.monos[b].then(c.monos[a]).images
        if lhs != rhs:
            report.append(f"functoriality fails on chain ({a}, {b}): psi_ab != psi_a psi_b")
    return report


def is_faithful_criterion(c):
    """
    True iff some local group is trivial.  This is only a sufficient
    condition for faithfulness; False means inconclusive.
    """
    return any(g.order == 1 for g in c.groups.values())


def polygon_groups(m, g1, g2):
    """
    Local groups of G(P): trivial at the barycenter, g1 x g2 at corners,
    g2 on the midpoints of the e-edges and g1 on the f-edges.
    """
    P = polygon(m)
    prod = grp.direct_product(g1, g2)
    one = grp.trivial_group()
    groups = {"P": one}
    for v in P.vertices:
        groups[v] = prod
    for k in range(1, m + 1):
        groups[f"e{k}"] = g2
        groups[f"f{k}"] = g1
    return P, groups


def build_g_p(m, q1, q2, g1=None, g2=None):
    """
    The complex of groups G(P) over the scwol of the 2m-gon P.  ``g1`` and
    ``g2`` default to cyclic groups of orders ``q1`` and ``q2``.
    """
    g1 = g1 if g1 is not None else grp.cyclic_group(q1, "a")
    g2 = g2 if g2 is not None else grp.cyclic_group(q2, "b")
    if g1.order != q1 or g2.order != q2:
        raise ValueError(f"group orders {g1.order}, {g2.order} do not match q1={q1}, q2={q2}")
    P, groups = polygon_groups(m, g1, g2)
    s = scwol_of(P)
    prod = groups["u1"]
    inc1, inc2 = grp.factor_inclusion(prod, 0), grp.factor_inclusion(prod, 1)
    monos = {}
    for a, (i, t) in s.edges.items():
        src, tgt = groups[i], groups[t]
        if src.order == 1:
            monos[a] = grp.trivial_map(src, tgt)
        elif i.startswith("f"):
            monos[a] = inc1
        elif i.startswith("e"):
            monos[a] = inc2
        else:
            raise AssertionError(f"unexpected edge {a}")
    c = ComplexOfGroups(s, groups, monos, "G(P)")
    c.m, c.factors = m, (g1, g2)
    return c


def build_g_k(m, graph):
    """
    The complex of groups G(K) over the chamber scwol: the special subgroup
    W_T at the vertex of type T, natural inclusions on edges.
    """
    K = build_chamber(m, graph)
    s = chamber_scwol(K)
    groups = {v: grp.special_subgroup(s.types[v], m) for v in s.vertices}
    monos = {}
    for a, (i, t) in s.edges.items():
        monos[a] = grp.inclusion_by_names(groups[i], groups[t])
    c = ComplexOfGroups(s, groups, monos, "G(K)")
    c.m, c.chamber = m, K
    return c


def euler_orbifold(c):
    """
    Orbifold Euler characteristic: the sum over chains of
    ``(-1)^length / |G|`` at the chain's initial vertex, as an exact
    fraction.
    """
    total = Fraction(0)
    for ch in chains(c.base):
        total += Fraction((-1) ** ch.length, c.groups[ch.source].order)
    return total


@dataclass
class LocalDevelopment:
    """
    The developed link at ``vertex``.  Nodes are ``(b, rep)`` for an
    incoming edge ``b`` and a left coset of ``psi_b(G_i(b))`` with
    representative ``rep``; each composable pair ``(a, b)`` ending at the
    vertex contributes one edge per coset of ``psi_ab(G_i(b))``.
    """
    vertex: object
    graph: nx.Graph
    top: frozenset

    def smoothed(self):
        """
        The graph with the degree-2 nodes coming from source vertices
        (maximal cells) suppressed, e.g. faces in a polygonal complex.
        """
        g = self.graph.copy()
        for node in list(g.nodes):
            if node[0] in self.top and g.degree(node) == 2:
                u, w = list(g[node])
                g.remove_node(node)
                g.add_edge(u, w)
        return g


def local_development(c, v):
    s = c.base
    gv = c.groups[v]
    incoming = s.incoming(v)
    if not incoming:
        raise ValueError(f"vertex {v} has no incoming edge")
    reps = {}
    g = nx.Graph()
    for b in incoming:
        rep = grp.coset_index(gv, c.monos[b].image())
        reps[b] = rep
        g.add_nodes_from((b, r) for r in sorted(set(rep.values())))
    for a in incoming:
        for b in s.incoming(s.i(a)):
            ab = s.compose[(a, b)]
            chain_rep = grp.coset_index(gv, c.monos[ab].image())
            for r in sorted(set(chain_rep.values())):
                u, w = (a, reps[a][r]), (ab, reps[ab][r])
                if g.has_edge(u, w):
                    raise AssertionError("developed link is not simple")
                g.add_edge(u, w, chain=(a, b), coset=r)
    top = frozenset(b for b in incoming if not s.incoming(s.i(b)))
    return LocalDevelopment(v, g, top)
