"""
Small categories without loops (scwols), their non-degenerate morphisms,
opposites and chain enumeration.

Only thin scwols of dimension at most 2 are supported.  Composition is
stored explicitly and validated against the thin unique-composition rule.
"""

from dataclasses import dataclass, field
from itertools import product


class Scwol:
    """
    A finite scwol.

    ``edges`` maps an edge id to its ``(initial, terminal)`` pair and
    ``compose`` maps a composable pair ``(a, b)`` (with ``i(a) == t(b)``)
    to the edge ``ab``.  Vertex and edge ids are any hashable values;
    ``labels`` optionally gives readable descriptions of vertices.
    """

    def __init__(self, vertices, edges, compose, labels=None):
        self.vertices = tuple(vertices)
        self.edges = dict(edges)
        self.compose = dict(compose)
        self.labels = dict(labels or {})
        self._in = {v: [] for v in self.vertices}
        self._out = {v: [] for v in self.vertices}
        for a, (i, t) in self.edges.items():
            self._out.setdefault(i, []).append(a)
            self._in.setdefault(t, []).append(a)

    def __repr__(self):
        return (f"Scwol({len(self.vertices)} vertices, {len(self.edges)} edges, "
                f"{len(self.compose)} compositions)")

    def i(self, a):
        return self.edges[a][0]

    def t(self, a):
        return self.edges[a][1]

    def incoming(self, v):
        "Edges with terminal vertex ``v``."
        return tuple(self._in.get(v, ()))

    def outgoing(self, v):
        "Edges with initial vertex ``v``."
        return tuple(self._out.get(v, ()))

    def label(self, v):
        return self.labels.get(v, str(v))

    def composable_pairs(self):
        return tuple(self.compose)

    def edge_between(self, i, t):
        for a in self._out.get(i, ()):
            if self.edges[a][1] == t:
                return a
        return None

    @classmethod
    def from_order(cls, vertices, below, labels=None):
        """
        Thin scwol of a finite poset.

        ``below[v]`` is the set of elements strictly below ``v``; there is
        an edge ``v -> w`` (id ``(v, w)``) for every ``w < v``.
        """
        vertices = list(vertices)
        edges = {}
        for v in vertices:
            for w in below[v]:
                edges[(v, w)] = (v, w)
        compose = {}
        for a, (ia, ta) in edges.items():
            for b, (ib, tb) in edges.items():
                if ia == tb:
                    compose[(a, b)] = (ib, ta)
        return cls(vertices, edges, compose, labels)

    def to_json(self):
        def eid(a):
            return edge_id_str(a)
        return {
            "vertices": [{"id": str(v), "label": self.label(v)} for v in self.vertices],
            "edges": [{"id": eid(a), "i": str(i), "t": str(t)}
                      for a, (i, t) in self.edges.items()],
            "compose": [{"a": eid(a), "b": eid(b), "ab": eid(ab)}
                        for (a, b), ab in self.compose.items()],
        }

    def to_dot(self, name="scwol"):
        lines = [f'digraph "{name}" {{']
        for v in self.vertices:
            lines.append(f'  "{v}" [label="{self.label(v)}"];')
        for a, (i, t) in self.edges.items():
            style = "dashed" if a in set(self.compose.values()) else "solid"
            lines.append(f'  "{i}" -> "{t}" [style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def edge_id_str(a):
    if isinstance(a, tuple) and len(a) == 2:
        return f"{a[0]}->{a[1]}"
    return str(a)


def scwol_from_json(data):
    """Inverse of :meth:`Scwol.to_json`; ids come back as strings."""
    vertices = [v["id"] for v in data["vertices"]]
    labels = {v["id"]: v.get("label", v["id"]) for v in data["vertices"]}
    edges = {e["id"]: (e["i"], e["t"]) for e in data["edges"]}
    compose = {(c["a"], c["b"]): c["ab"] for c in data["compose"]}
    return Scwol(vertices, edges, compose, labels)


def validate_scwol(s):
    """
    Return a list of diagnostics; empty iff ``s`` is a valid thin scwol of
    dimension at most 2.
    """
    report = []
    vset = set(s.vertices)
    if len(vset) != len(s.vertices):
        report.append("duplicate vertex ids")
    pairs = {}
    for a, (i, t) in s.edges.items():
        if i not in vset or t not in vset:
            report.append(f"edge {a}: endpoint not a vertex")
        if i == t:
            report.append(f"loop: edge {a} has i(a) = t(a) = {i}")
        if (i, t) in pairs:
            report.append(f"not thin: edges {pairs[(i, t)]} and {a} both go {i} -> {t}")
        pairs.setdefault((i, t), a)

    for (a, b), ab in s.compose.items():
        if a not in s.edges or b not in s.edges or ab not in s.edges:
            report.append(f"composition ({a}, {b}) -> {ab} uses an unknown edge")
            continue
        if s.i(a) != s.t(b):
            report.append(f"extra composition: ({a}, {b}) is not composable")
            continue
        if s.i(ab) != s.i(b) or s.t(ab) != s.t(a):
            report.append(f"composition ({a}, {b}) -> {ab} has wrong endpoints")

    for a, b in product(s.edges, repeat=2):
        if s.i(a) == s.t(b) and (a, b) not in s.compose:
            report.append(f"missing composition for composable pair ({a}, {b})")

    for (a, b), ab in s.compose.items():
        if ab not in s.edges:
            continue
        for c in s.incoming(s.i(b)):
            # (a, b) and (b, c) composable: a chain of length 3
            report.append(f"dimension > 2: chain {a}, {b}, {c}")
            bc = s.compose.get((b, c))
            if bc is not None and s.compose.get((ab, c)) != s.compose.get((a, bc)):
                report.append(f"non-associative: ({a}{b}){c} != {a}({b}{c})")
    return report


def opposite(s):
    "The opposite scwol: same vertices and edges, orientations reversed."
    edges = {a: (t, i) for a, (i, t) in s.edges.items()}
    compose = {(b, a): ab for (a, b), ab in s.compose.items()}
    return Scwol(s.vertices, edges, compose, s.labels)


@dataclass(frozen=True)
class Chain:
    """
    A simplex of the geometric realization: a vertex, an edge, or a
    composable pair ``(a, b)``.
    """
    length: int
    vertices: tuple
    edges: tuple = ()

    @property
    def source(self):
        "The initial vertex of the chain (its last vertex)."
        return self.vertices[-1]


def chains(s):
    """All chains of lengths 0, 1 and 2, each exactly once."""
    out = [Chain(0, (v,)) for v in s.vertices]
    out += [Chain(1, (s.t(a), s.i(a)), (a,)) for a in s.edges]
    out += [Chain(2, (s.t(a), s.i(a), s.i(b)), (a, b)) for (a, b) in s.compose]
    return out


def chain_counts(s):
    counts = [0, 0, 0]
    for c in chains(s):
        counts[c.length] += 1
    return tuple(counts)


@dataclass
class ScwolMorphism:
    source: Scwol
    target: Scwol
    vertex_map: dict
    edge_map: dict = field(default_factory=dict)

    @classmethod
    def from_vertex_map(cls, source, target, vertex_map):
        """
        Morphism induced by a vertex map between thin scwols; each edge goes
        to the unique target edge between the image vertices.
        """
        edge_map = {}
        for a, (i, t) in source.edges.items():
            b = target.edge_between(vertex_map[i], vertex_map[t])
            if b is not None:
                edge_map[a] = b
        return cls(source, target, dict(vertex_map), edge_map)

    def __call__(self, x):
        if x in self.edge_map:
            return self.edge_map[x]
        return self.vertex_map[x]

    def then(self, other):
        "The composite ``other . self``."
        return ScwolMorphism(
            self.source, other.target,
            {v: other.vertex_map[w] for v, w in self.vertex_map.items()},
            {a: other.edge_map[b] for a, b in self.edge_map.items()},
        )


def identity_morphism(s):
    return ScwolMorphism(s, s, {v: v for v in s.vertices}, {a: a for a in s.edges})


def validate_morphism(f):
    """
    Diagnostics for the three non-degenerate morphism conditions.  Only the
    first failure of each condition is named.
    """
    src, tgt = f.source, f.target
    report = []
    tverts = set(tgt.vertices)
    for v in src.vertices:
        if v not in f.vertex_map or f.vertex_map[v] not in tverts:
            report.append(f"vertex {v} has no image")
            return report
    for a in src.edges:
        if f.edge_map.get(a) not in tgt.edges:
            report.append(f"edge {a} has no image edge")
            return report

    for a in src.edges:
        b = f.edge_map[a]
        if tgt.i(b) != f.vertex_map[src.i(a)] or tgt.t(b) != f.vertex_map[src.t(a)]:
            report.append(f"condition 1 (endpoints) fails at edge {a}")
            break

    for (a, b), ab in src.compose.items():
        fa, fb = f.edge_map[a], f.edge_map[b]
        if tgt.compose.get((fa, fb)) != f.edge_map[ab]:
            report.append(f"condition 2 (composition) fails at pair ({a}, {b})")
            break

    for v in src.vertices:
        images = [f.edge_map[a] for a in src.outgoing(v)]
        expected = set(tgt.outgoing(f.vertex_map[v]))
        if len(images) != len(set(images)) or set(images) != expected:
            report.append(f"condition 3 (non-degeneracy) fails at vertex {v}")
            break
    return report
