"""
Group presentations: free reduction, Tietze elimination, the presentation
of H read off X_{2m,L} after contracting one face, surface relators, the
graph of groups over X(K_{q1-1,q2-1}) and its direct limit, the Coxeter
and graph-product presentations, and K(G,1) gluing data.

A word is a tuple of ``(generator, exponent)`` letters with exponent
``+1`` or ``-1``.
"""

from dataclasses import dataclass, field

import numpy as np

from .complexes import BipartiteGraph, build_theta_scwol, build_x, edge_name, face_name


def inverse(word):
    return tuple((g, -e) for g, e in reversed(word))


def free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word):
    word = free_reduce(word)
    while len(word) >= 2 and word[0][0] == word[-1][0] and word[0][1] == -word[-1][1]:
        word = word[1:-1]
    return word


def canonical_relator(word):
    "Least rotation of the cyclically reduced word or its inverse."
    word = cyclic_reduce(word)
    if not word:
        return ()
    candidates = []
    for w in (word, inverse(word)):
        candidates += [w[k:] + w[:k] for k in range(len(w))]
    return min(candidates)


def word_str(word):
    if not word:
        return "1"
    return " ".join(g if e > 0 else f"({g})^-1" for g, e in word)


def letters(word):
    "JSON form of a word: ``x1^1`` or ``x1^1(-1)``."
    return [g if e > 0 else f"{g}(-1)" for g, e in word]


def parse_letters(items):
    out = []
    for item in items:
        if item.endswith("(-1)"):
            out.append((item[:-4], -1))
        else:
            out.append((item, 1))
    return tuple(out)


@dataclass
class Presentation:
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.relators = tuple(free_reduce(r) for r in self.relators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be unique")
        gens = set(self.generators)
        for r in self.relators:
            for g, _ in r:
                if g not in gens:
                    raise ValueError(f"relator uses unknown generator {g}")

    def normalized(self):
        """
        Generator set plus the sorted multiset of relators up to free
        reduction, cyclic rotation and inversion; trivial relators dropped.
        """
        rels = sorted(r for r in (canonical_relator(w) for w in self.relators) if r)
        return frozenset(self.generators), tuple(rels)

    def equivalent(self, other):
        return self.normalized() == other.normalized()

    def abelianization_matrix(self):
        "Exponent-sum matrix: one row per relator, one column per generator."
        col = {g: n for n, g in enumerate(self.generators)}
        mat = np.zeros((len(self.relators), len(self.generators)), dtype=np.int64)
        for r, word in enumerate(self.relators):
            for g, e in word:
                mat[r, col[g]] += e
        return mat

    def to_json(self):
        return {"generators": list(self.generators),
                "relators": [letters(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data):
        return cls(data["generators"], [parse_letters(r) for r in data["relators"]])

    def to_text(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(word_str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def substitute(word, gen, replacement):
    out = []
    for g, e in word:
        if g == gen:
            out += list(replacement if e > 0 else inverse(replacement))
        else:
            out.append((g, e))
    return free_reduce(out)


def tietze_eliminate(pres, gen):
    """
    Remove ``gen`` using a relator in which it occurs exactly once (the
    shortest such relator): solve for ``gen`` and substitute everywhere.
    """
    usable = [r for r in pres.relators if sum(1 for g, _ in r if g == gen) == 1]
    if not usable:
        raise ValueError(f"no relator contains {gen} exactly once")
    rel = min(usable, key=len)
    k = next(n for n, (g, _) in enumerate(rel) if g == gen)
    # rel = u gen^e v = 1  =>  gen^e = u^-1 v^-1
    u, e, v = rel[:k], rel[k][1], rel[k + 1:]
    value = free_reduce(inverse(u) + inverse(v))
    if e < 0:
        value = inverse(value)
    others = list(pres.relators)
    others.remove(rel)
    return Presentation([g for g in pres.generators if g != gen],
                        [substitute(r, gen, value) for r in others])


def contract_face(X, face):
    """
    Presentation of pi_1 of X after collapsing ``face`` to a point: the
    collapsed face's edges become trivial, every other edge is a generator
    and every other face boundary is a relator.
    """
    if face not in X.faces:
        raise ValueError(f"{face} is not a face of the complex")
    dead = {e for e, _ in X.faces[face]}
    gens = [e for e in X.edges if e not in dead]
    rels = []
    for f, word in X.faces.items():
        if f == face:
            continue
        rels.append(tuple((e, s) for e, s in word if e not in dead))
    return Presentation(gens, rels)


def contraction_pipeline(X, face, eliminate=None):
    """
    Contract ``face``, read the face relators, then Tietze-eliminate the
    generators in ``eliminate`` (in order).

    For X_{2m,K_{q1,q2}} and the last face the default eliminates x_i^m and
    y_j^m for i < q1, j < q2, using the relators x_i^1 ... x_i^m and
    y_j^1 ... y_j^m left over from faces that met the collapsed one.
    """
    pres = contract_face(X, face)
    if eliminate is None:
        x, y = X.types[face]
        m = len(X.faces[face]) // 2
        xs = sorted({t[0] for f, t in X.types.items() if f in X.faces} - {x})
        ys = sorted({t[1] for f, t in X.types.items() if f in X.faces} - {y})
        eliminate = [edge_name(s, m) for s in xs + ys]
    for g in eliminate:
        pres = tietze_eliminate(pres, g)
    return pres


def intermediate_relator_count(q1, q2):
    return (q1 - 1) * (q2 - 1) + (q1 - 1) + (q2 - 1)


def surface_relator(m, x, y):
    """
    x^1 y^1 ... x^(m-1) y^(m-1) (x^(m-1))^-1 ... (x^1)^-1 (y^(m-1))^-1 ... (y^1)^-1
    """
    word = []
    for k in range(1, m):
        word += [(edge_name(x, k), 1), (edge_name(y, k), 1)]
    word += [(edge_name(x, k), -1) for k in range(m - 1, 0, -1)]
    word += [(edge_name(y, k), -1) for k in range(m - 1, 0, -1)]
    return tuple(word)


def presentation_h(m, q1, q2):
    """Presentation of H for L = K_{q1,q2}, produced by the contraction pipeline."""
    if m < 2 or q1 < 2 or q2 < 2:
        raise ValueError("need m, q1, q2 >= 2")
    graph = BipartiteGraph.complete(q1, q2)
    X = build_x(m, graph)
    pres = contraction_pipeline(X, face_name(graph.left[-1], graph.right[-1]))
    order = [edge_name(s, k) for s in graph.left[:-1] + graph.right[:-1] for k in range(1, m)]
    assert set(order) == set(pres.generators)
    return Presentation(order, pres.relators)


@dataclass
class GluedComplex:
    """
    A 2-complex from polygons attached along words over shared oriented
    edges.  Vertices are derived from the corner identifications.
    """
    edges: tuple
    faces: dict

    def __post_init__(self):
        known = set(self.edges)
        for name, word in self.faces.items():
            if any(g not in known for g, _ in word):
                raise ValueError(f"face {name} uses an undeclared edge")

    def vertex_classes(self):
        parent = {}

        def find(a):
            parent.setdefault(a, a)
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            parent[find(a)] = find(b)

        for g in self.edges:
            find(("tail", g))
            find(("head", g))
        for name, word in self.faces.items():
            n = len(word)
            for p, (g, e) in enumerate(word):
                start, end = ("corner", name, p), ("corner", name, (p + 1) % n)
                tail, head = ("tail", g), ("head", g)
                if e > 0:
                    union(tail, start)
                    union(head, end)
                else:
                    union(head, start)
                    union(tail, end)
        classes = {}
        for a in list(parent):
            classes.setdefault(find(a), set()).add(a)
        return list(classes.values())

    def counts(self):
        return len(self.vertex_classes()), len(self.edges), len(self.faces)

    def euler_characteristic(self):
        v, e, f = self.counts()
        return v - e + f


def surface_gluing(m, x="x1", y="y1"):
    word = surface_relator(m, x, y)
    gens = tuple(dict.fromkeys(g for g, _ in word))
    return GluedComplex(gens, {"S": word})


def euler_check_surface(m):
    "Euler characteristic of the single 4(m-1)-gon glued along its surface relator."
    return surface_gluing(m).euler_characteristic()


@dataclass
class GraphOfGroups:
    """
    Presentations on the vertices of a 1-dimensional scwol and
    generator-to-generator embeddings on its edges.
    """
    base: object
    groups: dict
    maps: dict = field(default_factory=dict)

    def sources(self):
        return [v for v in self.base.vertices if self.base.outgoing(v)]

    def sinks(self):
        return [v for v in self.base.vertices if self.base.incoming(v)]

    def validate(self):
        report = []
        if self.base.compose:
            report.append("base has composable pairs")
        for a, (i, t) in self.base.edges.items():
            emb = self.maps[a]
            if set(emb) != set(self.groups[i].generators):
                report.append(f"edge {a}: map not defined on every generator")
            if len(set(emb.values())) != len(emb):
                report.append(f"edge {a}: map is not injective on generators")
            if not set(emb.values()) <= set(self.groups[t].generators):
                report.append(f"edge {a}: image is not a set of generators")
        return report


def build_amalgam(m, q1, q2):
    """
    Graph of groups over X(K_{q1-1,q2-1}): surface groups S_{m-1}<x_i, y_j>
    on barycenters, free groups F_{m-1}<x_i>, F_{m-1}<y_j> on vertices, and
    the inclusions x_i^k -> x_i^k, y_j^k -> y_j^k.
    """
    if m < 2 or q1 < 2 or q2 < 2:
        raise ValueError("need m, q1, q2 >= 2")
    theta = BipartiteGraph.complete(q1 - 1, q2 - 1).to_networkx()
    base = build_theta_scwol(theta)
    groups, maps = {}, {}
    for v in theta.nodes:
        groups[v] = Presentation([edge_name(v, k) for k in range(1, m)])
    for v in base.vertices:
        if v in groups:
            continue
        x, y = v[1:-1].split(",")
        if x.startswith("y"):
            x, y = y, x
        word = surface_relator(m, x, y)
        groups[v] = Presentation([edge_name(x, k) for k in range(1, m)]
                                 + [edge_name(y, k) for k in range(1, m)], [word])
    for a, (i, t) in base.edges.items():
        maps[a] = {g: g for g in groups[i].generators}
    return GraphOfGroups(base, groups, maps)


def direct_limit(gog):
    """
    Colimit of a graph of groups with injective generator maps: the disjoint
    union of the sink presentations with generators identified whenever two
    edges out of the same source send one generator to them.
    """
    sinks = gog.sinks()
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s in sinks:
        for g in gog.groups[s].generators:
            find((s, g))
    for src in gog.sources():
        out = gog.base.outgoing(src)
        for g in gog.groups[src].generators:
            images = [(gog.base.t(a), gog.maps[a][g]) for a in out]
            for other in images[1:]:
                parent[find(other)] = find(images[0])
    # name each class after a source generator mapping into it
    names = {}
    for src in gog.sources():
        for a in gog.base.outgoing(src):
            for g, h in gog.maps[a].items():
                names.setdefault(find((gog.base.t(a), h)), g)
    gens, rels = [], []
    for s in sinks:
        for g in gog.groups[s].generators:
            name = names.get(find((s, g)), g)
            if name not in gens:
                gens.append(name)
        for r in gog.groups[s].relators:
            rels.append(tuple((names.get(find((s, g)), g), e) for g, e in r))
    return Presentation(gens, rels)


def presentation_w(m, graph):
    "Coxeter presentation: x_i^2, y_j^2 and (x_i y_j)^m over the edges of L."
    gens = list(graph.left) + list(graph.right)
    rels = [((s, 1), (s, 1)) for s in gens]
    rels += [((x, 1), (y, 1)) * m for x, y in graph.edges]
    return Presentation(gens, rels)


def presentation_gamma(m, q1, q2):
    """
    Graph product of cyclic groups over a 2m-cycle: a_k of order q1, b_k of
    order q2, with a_k commuting with b_k and b_k commuting with a_{k+1}.
    """
    a = [f"a{k}" for k in range(1, m + 1)]
    b = [f"b{k}" for k in range(1, m + 1)]
    rels = [((g, 1),) * q1 for g in a] + [((g, 1),) * q2 for g in b]
    for k in range(m):
        for g, h in ((a[k], b[k]), (b[k], a[(k + 1) % m])):
            rels.append(((g, 1), (h, 1), (g, -1), (h, -1)))
    return Presentation(a + b, rels)


def presentations_gamma_w(m, q1, q2, graph=None):
    graph = graph or BipartiteGraph.complete(q1, q2)
    return presentation_gamma(m, q1, q2), presentation_w(m, graph)


def is_commutator(word):
    return (len(word) == 4 and word[0][0] != word[1][0]
            and word[2] == (word[0][0], -word[0][1]) and word[3] == (word[1][0], -word[1][1])
            and word[0][1] == 1 and word[1][1] == 1)


def raag_check(m, q1, q2):
    """
    True iff every relator of the presentation of H is a commutator of two
    generators and the commuting pairs are exactly the edges of
    K_{q1-1,q2-1} on the vertices x_i^1, y_j^1.
    """
    if m != 2:
        raise ValueError("the right-angled Artin group comparison needs m = 2")
    pres = presentation_h(m, q1, q2)
    if not all(is_commutator(r) for r in pres.relators):
        return False
    pairs = {frozenset((r[0][0], r[1][0])) for r in pres.relators}
    theta = BipartiteGraph.complete(q1 - 1, q2 - 1).to_networkx()
    expected = {frozenset((edge_name(u, 1), edge_name(v, 1))) for u, v in theta.edges}
    return pairs == expected and len(pres.relators) == theta.number_of_edges()


def kg1_gluing(m, q1, q2):
    "One 4(m-1)-gon per (i, j) with i < q1, j < q2, glued along shared loops."
    pres = presentation_h(m, q1, q2)
    return GluedComplex(pres.generators, {f"S[{n}]": r for n, r in enumerate(pres.relators)})


def kg1_euler_formula(m, q1, q2):
    return 1 - (m - 1) * (q1 + q2 - 2) + (q1 - 1) * (q2 - 1)
