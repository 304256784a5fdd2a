"""
Polygonal complexes, the complex X_{2m,L}, vertex links, the Davis chamber
K and the scwols derived from them.
"""

import json
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from .scwol import Scwol, opposite


class BipartiteGraph:
    """
    A simple bipartite graph with left vertices ``x1..`` and right vertices
    ``y1..``; every edge is a ``(left, right)`` pair.
    """

    def __init__(self, left, right, edges):
        self.left = tuple(left)
        self.right = tuple(right)
        self.edges = tuple(tuple(e) for e in edges)

    def __repr__(self):
        return f"BipartiteGraph(q1={self.q1}, q2={self.q2}, edges={len(self.edges)})"

    def __eq__(self, other):
        return (isinstance(other, BipartiteGraph) and self.left == other.left
                and self.right == other.right and set(self.edges) == set(other.edges))

    @property
    def q1(self):
        return len(self.left)

    @property
    def q2(self):
        return len(self.right)

    @classmethod
    def complete(cls, q1, q2):
        left = [f"x{i}" for i in range(1, q1 + 1)]
        right = [f"y{j}" for j in range(1, q2 + 1)]
        return cls(left, right, [(x, y) for x in left for y in right])

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["left"], data["right"], data["edges"])

    def to_json(self):
        return {"left": list(self.left), "right": list(self.right),
                "edges": [list(e) for e in self.edges]}

    def is_complete(self):
        return set(self.edges) == {(x, y) for x in self.left for y in self.right}

    def neighbors(self, s):
        return [y for x, y in self.edges if x == s] + [x for x, y in self.edges if y == s]

    def degree(self, s):
        return len(self.neighbors(s))

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(self.left, side=0)
        g.add_nodes_from(self.right, side=1)
        g.add_edges_from(self.edges)
        return g

    def validate(self):
        """Diagnostics for simpliciality, bipartiteness and connectedness."""
        report = []
        names = self.left + self.right
        if len(set(names)) != len(names):
            report.append("vertex names are not unique")
        if not self.left or not self.right:
            report.append("both vertex classes must be non-empty")
            return report
        seen = set()
        for x, y in self.edges:
            if x not in self.left or y not in self.right:
                report.append(f"edge ({x}, {y}) does not join a left vertex to a right vertex")
            if (x, y) in seen:
                report.append(f"multi-edge ({x}, {y})")
            seen.add((x, y))
        if not report and not nx.is_connected(self.to_networkx()):
            report.append("graph is not connected")
        return report

    def flags(self):
        out = []
        if self.q1 < 2 or self.q2 < 2:
            out.append("q1 or q2 is 1; lattice statements assume q1, q2 >= 2")
        return out


def path_graph(n_edges):
    "Path x1 - y1 - x2 - y2 - ... with ``n_edges`` edges."
    verts = []
    for k in range(n_edges + 1):
        verts.append(f"x{k // 2 + 1}" if k % 2 == 0 else f"y{k // 2 + 1}")
    left = [v for v in verts if v[0] == "x"]
    right = [v for v in verts if v[0] == "y"]
    edges = []
    for a, b in zip(verts, verts[1:]):
        edges.append((a, b) if a[0] == "x" else (b, a))
    return BipartiteGraph(left, right, edges)


def cycle_graph(n):
    "The cycle of length ``2n``: x1 y1 x2 y2 ... xn yn."
    left = [f"x{i}" for i in range(1, n + 1)]
    right = [f"y{i}" for i in range(1, n + 1)]
    edges = [(left[i], right[i]) for i in range(n)]
    edges += [(left[(i + 1) % n], right[i]) for i in range(n)]
    return BipartiteGraph(left, right, edges)


def figure1_graph():
    """
    The q1 = 2, q2 = 3 example graph: x1 has the single neighbour y1 and x2
    is joined to every y.  The swap y2 <-> y3 is a non-trivial automorphism
    fixing the star of x1.
    """
    return BipartiteGraph(["x1", "x2"], ["y1", "y2", "y3"],
                          [("x1", "y1"), ("x2", "y1"), ("x2", "y2"), ("x2", "y3")])


class PolygonalComplex:
    """
    A 2-dimensional cell complex given by oriented edges and faces with
    cyclic boundary words.

    ``edges`` maps an edge name to ``(tail, head)``; ``faces`` maps a face
    name to a tuple of ``(edge, sign)`` letters read around the boundary.
    Cell names must be unique across vertices, edges and faces.  ``types``
    optionally assigns each cell a spherical type (a tuple of generator
    names).
    """

    def __init__(self, vertices, edges, faces, types=None, flags=()):
        self.vertices = tuple(vertices)
        self.edges = dict(edges)
        self.faces = {f: tuple(w) for f, w in faces.items()}
        self.types = dict(types) if types else None
        self.flags = list(flags)

    def __repr__(self):
        return (f"PolygonalComplex(V={len(self.vertices)}, E={len(self.edges)}, "
                f"F={len(self.faces)})")

    def euler_characteristic(self):
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def letter_ends(self, letter):
        e, sign = letter
        tail, head = self.edges[e]
        return (tail, head) if sign > 0 else (head, tail)

    def corners(self, face):
        "Corner vertices in boundary order: corner p is where letter p starts."
        return [self.letter_ends(l)[0] for l in self.faces[face]]

    def closure(self, cell):
        if cell in self.faces:
            out = {cell}
            for e, _ in self.faces[cell]:
                out |= {e, *self.edges[e]}
            return out
        if cell in self.edges:
            return {cell, *self.edges[cell]}
        return {cell}

    def cells(self):
        return list(self.vertices) + list(self.edges) + list(self.faces)

    def validate(self):
        """Diagnostics for names, closed boundaries, regularity and face sizes."""
        report = []
        cells = self.cells()
        if len(set(cells)) != len(cells):
            report.append("cell names are not unique")
        vset = set(self.vertices)
        for e, (tail, head) in self.edges.items():
            if tail not in vset or head not in vset:
                report.append(f"edge {e} has an unknown endpoint")
            if tail == head:
                report.append(f"edge {e} is a loop (attaching map not injective)")
        for f, word in self.faces.items():
            if len(word) < 3:
                report.append(f"face {f} has fewer than 3 sides")
            if any(e not in self.edges for e, _ in word):
                report.append(f"face {f} uses an undeclared edge")
                continue
            for p, letter in enumerate(word):
                if self.letter_ends(letter)[1] != self.letter_ends(word[(p + 1) % len(word)])[0]:
                    report.append(f"face {f}: boundary is not closed at position {p}")
                    break
            if len({e for e, _ in word}) != len(word):
                report.append(f"face {f}: boundary repeats an edge (not regular)")
            corners = self.corners(f)
            if len(set(corners)) != len(corners):
                report.append(f"face {f}: boundary repeats a vertex (not regular)")
        return report

    def intersection_property_violations(self):
        """
        Pairs of closed cells whose intersection is neither empty nor a
        single closed cell.  Checked exhaustively over cell pairs.
        """
        cells = self.cells()
        closures = {c: frozenset(self.closure(c)) for c in cells}
        bad = []
        for a, b in combinations(cells, 2):
            common = closures[a] & closures[b]
            if common and not any(closures[c] == common for c in common):
                bad.append((a, b))
        return bad

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": [{"name": e, "tail": t, "head": h} for e, (t, h) in self.edges.items()],
            "faces": [{"name": f, "boundary": [e if s > 0 else f"{e}(-1)" for e, s in w]}
                      for f, w in self.faces.items()],
        }

    def to_dot(self, name="X"):
        lines = [f'digraph "{name}" {{']
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e, (t, h) in self.edges.items():
            lines.append(f'  "{t}" -> "{h}" [label="{e}"];')
        for f, w in self.faces.items():
            word = " ".join(e if s > 0 else f"{e}^-1" for e, s in w)
            lines.append(f'  // face {f}: {word}')
        lines.append("}")
        return "\n".join(lines) + "\n"


def edge_name(s, k):
    return f"{s}^{k}"


def face_name(x, y):
    return f"P[{x},{y}]"


def build_x(m, graph):
    """
    The polygonal complex X_{2m,L}: one 2m-gon per edge (x, y) of the graph
    with boundary word x^1 y^1 x^2 y^2 ... x^m y^m, glued along labels.

    Vertices are u1, v1, ..., um, vm; x^k runs v(k-1) -> uk and y^k runs
    uk -> vk (indices mod m).  Each face's word starts at x^1, so its
    first corner is vm and the u1 corner follows x^1.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    problems = graph.validate()
    if problems:
        raise ValueError("; ".join(problems))
    vertices = []
    for k in range(1, m + 1):
        vertices += [f"u{k}", f"v{k}"]
    edges, types = {}, {v: () for v in vertices}
    for x in graph.left:
        for k in range(1, m + 1):
            edges[edge_name(x, k)] = (f"v{(k - 2) % m + 1}", f"u{k}")
            types[edge_name(x, k)] = (x,)
    for y in graph.right:
        for k in range(1, m + 1):
            edges[edge_name(y, k)] = (f"u{k}", f"v{k}")
            types[edge_name(y, k)] = (y,)
    faces = {}
    for x, y in graph.edges:
        word = []
        for k in range(1, m + 1):
            word += [(edge_name(x, k), 1), (edge_name(y, k), 1)]
        faces[face_name(x, y)] = tuple(word)
        types[face_name(x, y)] = (x, y)
    return PolygonalComplex(vertices, edges, faces, types, flags=graph.flags())


def polygon(m, e="e", f="f"):
    """
    The single 2m-gon P with boundary e1 f1 ... em fm; vertex uk sits
    between ek and fk, and vk between fk and e(k+1).
    """
    vertices = []
    for k in range(1, m + 1):
        vertices += [f"u{k}", f"v{k}"]
    edges = {}
    word = []
    for k in range(1, m + 1):
        edges[f"{e}{k}"] = (f"v{(k - 2) % m + 1}", f"u{k}")
        edges[f"{f}{k}"] = (f"u{k}", f"v{k}")
        word += [(f"{e}{k}", 1), (f"{f}{k}", 1)]
    return PolygonalComplex(vertices, edges, {"P": tuple(word)})


def link(X, v):
    """
    The link of vertex ``v``: one node per incident edge, one edge per face
    corner at ``v`` joining the two boundary edges of that corner.
    """
    g = nx.Graph()
    for e, (tail, head) in X.edges.items():
        if v in (tail, head):
            g.add_node(e)
    for f, word in X.faces.items():
        corners = X.corners(f)
        for p, c in enumerate(corners):
            if c == v:
                g.add_edge(word[p - 1][0], word[p][0], face=f)
    return g


def graph_isomorphic(g1, g2):
    """
    A vertex bijection ``g1 -> g2`` preserving adjacency, or None.  Exact
    backtracking with degree pruning.
    """
    if g1.number_of_nodes() != g2.number_of_nodes() or g1.number_of_edges() != g2.number_of_edges():
        return None
    if sorted(d for _, d in g1.degree()) != sorted(d for _, d in g2.degree()):
        return None
    adj1 = {v: set(g1[v]) for v in g1}
    adj2 = {v: set(g2[v]) for v in g2}
    # most-constrained-first: BFS from a max-degree node keeps neighbours adjacent in the order
    order = []
    seen = set()
    for start in sorted(g1, key=lambda v: (-len(adj1[v]), str(v))):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        for v in comp:
            for w in sorted(adj1[v], key=str):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
        order += comp
    mapping, used = {}, set()
    candidates2 = sorted(g2, key=str)

    def extend(k):
        if k == len(order):
            return True
        v = order[k]
        for w in candidates2:
            if w in used or len(adj2[w]) != len(adj1[v]):
                continue
            if all((mapping[u] in adj2[w]) == (u in adj1[v]) for u in mapping):
                mapping[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


def is_isomorphism(mapping, g1, g2):
    if mapping is None or set(mapping) != set(g1) or set(mapping.values()) != set(g2):
        return False
    return all(g2.has_edge(mapping[a], mapping[b]) for a, b in g1.edges())


def cell_label(X, c):
    if c in X.faces:
        return f"barycenter of {c}"
    if c in X.edges:
        return f"midpoint of {c}"
    return f"vertex {c}"


class TypedScwol(Scwol):
    """A scwol whose vertices carry spherical types (tuples of generators)."""

    def __init__(self, vertices, edges, compose, types, labels=None):
        super().__init__(vertices, edges, compose, labels)
        self.types = dict(types)

    @classmethod
    def wrap(cls, s, types):
        return cls(s.vertices, s.edges, s.compose, types, s.labels)

    def type_violations(self):
        "Edges not going from a type T' to a strictly larger type T."
        return [a for a, (i, t) in self.edges.items()
                if not set(self.types[i]) < set(self.types[t])]


def scwol_of(X):
    "Scwol of closed cells ordered by inclusion, edges from larger to smaller cells."
    below = {c: X.closure(c) - {c} for c in X.cells()}
    return Scwol.from_order(X.cells(), below, {c: cell_label(X, c) for c in X.cells()})


def op_scwol_of(X):
    "The opposite scwol with the cell types of X attached."
    if X.types is None:
        raise ValueError("complex carries no type assignment")
    return TypedScwol.wrap(opposite(scwol_of(X)), X.types)


def type_id(t):
    return "{" + ",".join(t) + "}"


@dataclass
class Chamber:
    """
    The cone K on the barycentric subdivision of L, as a simplicial complex
    on spherical types.  Angles are symbolic.
    """
    m: int
    graph: BipartiteGraph
    vertices: list
    edges: list
    triangles: list
    mirrors: dict
    angles: dict = field(default_factory=lambda: {
        "pair": "pi/2m", "singleton": "pi/2", "cone": "pi/4"})

    def mirror_intersection(self, s, t):
        "Vertices shared by the mirrors of s and t."
        vs = {v for e in self.mirrors[s] for v in e}
        vt = {v for e in self.mirrors[t] for v in e}
        return vs & vt

    def to_json(self):
        return {
            "m": self.m,
            "vertices": [type_id(t) for t in self.vertices],
            "edges": [[type_id(a), type_id(b)] for a, b in self.edges],
            "triangles": [[type_id(t) for t in tri] for tri in self.triangles],
            "mirrors": {s: [[type_id(a), type_id(b)] for a, b in es]
                        for s, es in self.mirrors.items()},
            "angles": self.angles,
        }


def build_chamber(m, graph):
    problems = graph.validate()
    if problems:
        raise ValueError("; ".join(problems))
    cone = ()
    singles = [(s,) for s in graph.left + graph.right]
    pairs = [tuple(e) for e in graph.edges]
    vertices = [cone] + singles + pairs
    lprime = [((s,), p) for p in pairs for s in p]
    edges = [(cone, v) for v in singles + pairs] + lprime
    triangles = [(cone, a, b) for a, b in lprime]
    mirrors = {s: [e for e in lprime if e[0] == (s,)] for s in graph.left + graph.right}
    return Chamber(m, graph, vertices, edges, triangles, mirrors)


def chamber_scwol(K):
    "The scwol of K with edges oriented by inclusion of type."
    ids = {t: type_id(t) for t in K.vertices}
    below = {ids[t]: set() for t in K.vertices}
    # orient T' -> T for T' < T, i.e. the opposite of the inclusion order of cells
    for a, b in K.edges:
        small, big = (a, b) if set(a) < set(b) else (b, a)
        below[ids[small]].add(ids[big])
    s = Scwol.from_order([ids[t] for t in K.vertices], below,
                         {ids[t]: f"type {ids[t]}" for t in K.vertices})
    return TypedScwol.wrap(s, {ids[t]: t for t in K.vertices})


def build_theta_scwol(theta):
    """
    The 1-dimensional scwol of a simplicial graph: edges run from each
    vertex of the graph to the barycenters of its incident edges.
    """
    nodes = sorted(theta.nodes, key=str)
    vertices = [str(v) for v in nodes]
    edges = {}
    for u, v in sorted((tuple(sorted((a, b), key=str)) for a, b in theta.edges), key=str):
        bary = f"[{u},{v}]"
        vertices.append(bary)
        edges[(str(u), bary)] = (str(u), bary)
        edges[(str(v), bary)] = (str(v), bary)
    return Scwol(vertices, edges, {})


def sources_and_sinks(s):
    sources = [v for v in s.vertices if s.outgoing(v) and not s.incoming(v)]
    sinks = [v for v in s.vertices if s.incoming(v) and not s.outgoing(v)]
    return sources, sinks


def four_cycle(graph):
    "An embedded 4-cycle x y x' y' of the bipartite graph, or None."
    adj = {x: set(graph.neighbors(x)) for x in graph.left}
    for x1, x2 in combinations(graph.left, 2):
        common = sorted(adj[x1] & adj[x2])
        if len(common) >= 2:
            return [x1, common[0], x2, common[1]]
    return None


def hyperbolicity_report(m, graph):
    """
    Whether W_{2m,L} is word-hyperbolic: always for m >= 3, and for m = 2
    exactly when L has no embedded 4-cycle (a witness is returned if it has).
    """
    if m >= 3:
        return {"hyperbolic": True, "witness": None}
    witness = four_cycle(graph)
    return {"hyperbolic": witness is None, "witness": witness}
