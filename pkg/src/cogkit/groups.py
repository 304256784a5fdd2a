"""
Finite groups as multiplication tables.

Elements are the integers ``0 .. order-1`` with display names; the
identity is always element 0.  Dihedral groups name their elements by the
alternating words ``w_k(x, y)``, which makes special subgroups of the
Coxeter group share element names with each other so that natural
inclusions can be built by name.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product


class FiniteGroup:

    def __init__(self, names, table, generators=(), kind=("table",)):
        self.names = tuple(names)
        self.table = tuple(tuple(row) for row in table)
        self.generators = tuple(generators)
        self.kind = kind
        self.index = {name: g for g, name in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("element names must be unique")
        n = len(self.names)
        self._inv = [None] * n
        for g in range(n):
            for h in range(n):
                if self.table[g][h] == 0:
                    self._inv[g] = h
                    break

    def __repr__(self):
        return f"FiniteGroup({self.kind}, order={self.order})"

    def __len__(self):
        return len(self.names)

    @property
    def order(self):
        return len(self.names)

    @property
    def elements(self):
        return range(len(self.names))

    def mul(self, g, h):
        return self.table[g][h]

    def inv(self, g):
        return self._inv[g]

    def prod(self, *elts):
        out = 0
        for g in elts:
            out = self.table[out][g]
        return out

    def name(self, g):
        return self.names[g]

    def element(self, name):
        return self.index[name]

    def is_trivial(self):
        return self.order == 1

    def check_axioms(self):
        """Exhaustive group-axiom check; returns a list of diagnostics."""
        n = self.order
        report = []
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                report.append(f"element 0 is not an identity for {self.names[g]}")
                break
        for g in range(n):
            if self._inv[g] is None or self.table[self._inv[g]][g] != 0:
                report.append(f"{self.names[g]} has no two-sided inverse")
                break
        for g in range(n):
            if sorted(self.table[g]) != list(range(n)):
                report.append(f"row of {self.names[g]} is not a permutation")
                break
        t = self.table
        for g, h, k in product(range(n), repeat=3):
            if t[t[g][h]][k] != t[g][t[h][k]]:
                report.append(f"non-associative at ({self.names[g]}, {self.names[h]}, {self.names[k]})")
                break
        return report

    def is_subgroup(self, subset):
        s = set(subset)
        if 0 not in s:
            return False
        return all(self.table[g][h] in s and self._inv[g] in s for g in s for h in s)

    def generated(self, gens):
        "The subgroup generated by ``gens``, as a sorted tuple."
        seen = {0}
        queue = deque([0])
        while queue:
            g = queue.popleft()
            for s in gens:
                h = self.table[g][s]
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        return tuple(sorted(seen))

    def to_json(self):
        return {
            "kind": [str(k) for k in self.kind],
            "elements": list(self.names),
            "mul": [x for row in self.table for x in row],
        }


def trivial_group():
    return FiniteGroup(["1"], [[0]], kind=("trivial",))


def cyclic_group(n, gen="g"):
    if n < 1:
        raise ValueError("order must be positive")
    names = ["1"] + [gen if k == 1 else f"{gen}^{k}" for k in range(1, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(names, table, generators=(1,) if n > 1 else (), kind=("cyclic", n))


def direct_product(g1, g2):
    """
    ``g1 x g2`` with element ``(a, b)`` at index ``a * |g2| + b``; the
    factors commute elementwise.
    """
    n2 = g2.order

    def name(a, b):
        if b == 0:
            return g1.names[a]
        if a == 0:
            return g2.names[b]
        return f"{g1.names[a]}{g2.names[b]}"

    names = [name(a, b) for a in g1.elements for b in g2.elements]
    if len(set(names)) != len(names):
        names = [f"({g1.names[a]},{g2.names[b]})" for a in g1.elements for b in g2.elements]
    table = []
    for a1, b1 in product(g1.elements, g2.elements):
        table.append([g1.mul(a1, a2) * n2 + g2.mul(b1, b2)
                      for a2, b2 in product(g1.elements, g2.elements)])
    gens = [a * n2 for a in g1.generators] + list(g2.generators)
    g = FiniteGroup(names, table, generators=gens, kind=("product", g1.kind, g2.kind))
    g.factors = (g1, g2)
    return g


def pair(group, a, b):
    "The element ``(a, b)`` of a direct product."
    return a * group.factors[1].order + b


def alternating_name(first, second, k):
    return "".join(first if r % 2 == 0 else second for r in range(k))


def dihedral_group(m, x="x", y="y"):
    """
    Dihedral group of order ``2m`` generated by involutions ``x`` and ``y``
    with ``(xy)^m = 1``.

    Internally ``(k, e)`` stands for ``r^k x^e`` with ``r = xy``; element
    names are the alternating words ``w_k(x, y)`` and ``w_k(y, x)`` with
    ``w_m`` written starting from ``x``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    pairs = [(k, e) for e in (0, 1) for k in range(m)]

    def mul(p, q):
        (k1, e1), (k2, e2) = p, q
        return ((k1 + (k2 if e1 == 0 else -k2)) % m, (e1 + e2) % 2)

    gx = (0, 1)
    gy = mul(gx, (1, 0))  # y = x r
    names = {(0, 0): "1"}
    for first, second, a, b in ((x, y, gx, gy), (y, x, gy, gx)):
        cur = (0, 0)
        for k in range(1, m + 1):
            cur = mul(cur, a if k % 2 == 1 else b)
            names.setdefault(cur, alternating_name(first, second, k))
    order = [(0, 0)] + sorted((p for p in pairs if p != (0, 0)),
                              key=lambda p: (len(names[p]), names[p]))
    idx = {p: n for n, p in enumerate(order)}
    table = [[idx[mul(p, q)] for q in order] for p in order]
    return FiniteGroup([names[p] for p in order], table,
                       generators=(idx[gx], idx[gy]), kind=("dihedral", m, x, y))


def dihedral_word(group, first, second, k):
    """
    ``w_k(first, second)``: the alternating product of ``k`` letters
    starting with ``first``.
    """
    if group.kind[0] != "dihedral":
        raise ValueError("dihedral_word needs a dihedral group")
    m = group.kind[1]
    if first == second:
        raise ValueError("first and second generator must differ")
    if not 1 <= k <= m:
        raise ValueError(f"k={k} out of range 1..{m}")
    a, b = group.element(first), group.element(second)
    out = 0
    for r in range(k):
        out = group.mul(out, a if r % 2 == 0 else b)
    return out


@dataclass
class Monomorphism:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple

    def __call__(self, g):
        return self.images[g]

    def image(self):
        return frozenset(self.images)

    def check(self):
        """Diagnostics: well-formed, identity-preserving, homomorphic, injective."""
        src, tgt = self.source, self.target
        report = []
        if len(self.images) != src.order or any(not 0 <= h < tgt.order for h in self.images):
            return ["map is not defined on every element"]
        if self.images[0] != 0:
            report.append("identity not mapped to identity")
        for g, h in product(src.elements, repeat=2):
            if self.images[src.mul(g, h)] != tgt.mul(self.images[g], self.images[h]):
                report.append(f"not a homomorphism at ({src.name(g)}, {src.name(h)})")
                break
        if len(set(self.images)) != len(self.images):
            report.append("not injective")
        return report

    def then(self, other):
        "The composite ``other . self``."
        return Monomorphism(self.source, other.target,
                            tuple(other.images[h] for h in self.images))


def inclusion_by_names(source, target):
    "Map each element to the element of ``target`` with the same name."
    return Monomorphism(source, target, tuple(target.element(n) for n in source.names))


def factor_inclusion(prod_group, which):
    "Inclusion of factor ``which`` (0 or 1) into a direct product."
    g1, g2 = prod_group.factors
    if which == 0:
        images = tuple(pair(prod_group, a, 0) for a in g1.elements)
        return Monomorphism(g1, prod_group, images)
    images = tuple(pair(prod_group, 0, b) for b in g2.elements)
    return Monomorphism(g2, prod_group, images)


def trivial_map(source, target):
    return Monomorphism(source, target, (0,) * source.order)


def hom_from_generators(source, target, gen_images):
    """
    Extend ``gen_images`` (source generator -> target element) to a
    homomorphism by breadth-first search over words.  Raises ValueError if
    the assignment does not extend consistently.
    """
    images = {0: 0}
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for s, t in gen_images.items():
            h = source.mul(g, s)
            val = target.mul(images[g], t)
            if h in images:
                if images[h] != val:
                    raise ValueError("generator images do not define a homomorphism")
            else:
                images[h] = val
                queue.append(h)
    if len(images) != source.order:
        raise ValueError("generators do not generate the source group")
    return Monomorphism(source, target, tuple(images[g] for g in source.elements))


def automorphisms(group):
    "All automorphisms of ``group``, found by trying every generator image."
    gens = group.generators
    out = []
    for imgs in product(group.elements, repeat=len(gens)):
        try:
            hom = hom_from_generators(group, group, dict(zip(gens, imgs)))
        except ValueError:
            continue
        if not hom.check():
            out.append(hom)
    return out


def left_cosets(group, subgroup):
    """
    Partition of ``group`` into left cosets ``gH``.  Each coset is a sorted
    tuple whose first entry (least element index) is its representative;
    cosets are listed by representative.
    """
    h = tuple(sorted(set(subgroup)))
    if not group.is_subgroup(h):
        raise ValueError("not a subgroup: not closed under multiplication and inverses")
    seen = set()
    cosets = []
    for g in group.elements:
        if g in seen:
            continue
        coset = tuple(sorted(group.mul(g, x) for x in h))
        seen.update(coset)
        cosets.append(coset)
    return cosets


def coset_index(group, subgroup):
    "Map each element to the representative of its left coset."
    rep = {}
    for coset in left_cosets(group, subgroup):
        for g in coset:
            rep[g] = coset[0]
    return rep


@dataclass(frozen=True)
class SphericalSubset:
    """A spherical subset of the Coxeter generators, ordered (x, y) for pairs."""
    gens: tuple
    order: int

    @property
    def types(self):
        return frozenset(self.gens)


def spherical_subsets(graph, m):
    """
    ``[]``, each singleton, and each edge of the bipartite graph, with the
    orders 1, 2 and 2m of the corresponding special subgroups.
    """
    out = [SphericalSubset((), 1)]
    out += [SphericalSubset((s,), 2) for s in graph.left]
    out += [SphericalSubset((s,), 2) for s in graph.right]
    out += [SphericalSubset((x, y), 2 * m) for x, y in graph.edges]
    return out


def special_subgroup(subset, m):
    gens = subset.gens if isinstance(subset, SphericalSubset) else tuple(subset)
    if len(gens) == 0:
        return trivial_group()
    if len(gens) == 1:
        return cyclic_group(2, gens[0])
    if len(gens) == 2:
        return dihedral_group(m, gens[0], gens[1])
    raise ValueError(f"{gens} is not spherical")
