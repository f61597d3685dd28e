"""Defining graphs and their domination structure.

A `SimplicialGraph` is a finite simple graph whose vertices name the
generators of a right-angled Artin group.  Everything downstream (word
canonicalisation, matrix block structure, generator validity) is driven by
the domination relation u <= v, meaning lk(u) is contained in st(v).
"""

import json
from dataclasses import dataclass

from .errors import InvalidGraph, SizeLimit, UnknownVertex

_FORBIDDEN_CHARS = set("^() \t\n\r,;:")


class SimplicialGraph:
    """Immutable simple graph with named vertices.

    Vertices keep their declaration order; derived data (adjacency,
    domination) is computed once and cached.
    """

    def __init__(self, vertices, edges):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise InvalidGraph("duplicate vertex names")
        for name in vertices:
            if not isinstance(name, str) or not name:
                raise InvalidGraph("vertex names must be nonempty strings")
            if any(ch in _FORBIDDEN_CHARS for ch in name):
                raise InvalidGraph("vertex name %r contains a forbidden character" % name)
        self.vertices = vertices
        self.index = {v: i for i, v in enumerate(vertices)}
        n = len(vertices)
        adj = [set() for _ in range(n)]
        edgeset = set()
        for u, v in edges:
            if u not in self.index or v not in self.index:
                raise UnknownVertex("edge endpoint %r is not a declared vertex" % (u if u not in self.index else v))
            if u == v:
                raise InvalidGraph("loop at vertex %r" % u)
            i, j = self.index[u], self.index[v]
            edgeset.add((min(i, j), max(i, j)))
            adj[i].add(j)
            adj[j].add(i)
        self.edges = frozenset(edgeset)
        self.adj = tuple(frozenset(s) for s in adj)
        self.n = n
        self._dom = None

    def __eq__(self, other):
        return (isinstance(other, SimplicialGraph)
                and self.vertices == other.vertices and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return "SimplicialGraph(%r, %d edges)" % (list(self.vertices), len(self.edges))

    def vertex_index(self, name):
        try:
            return self.index[name]
        except KeyError:
            raise UnknownVertex("unknown vertex %r" % (name,)) from None

    def adjacent(self, i, j):
        return j in self.adj[i]

    def edge_names(self):
        return sorted((self.vertices[i], self.vertices[j]) for i, j in self.edges)

    def domination(self):
        if self._dom is None:
            self._dom = _compute_domination(self)
        return self._dom

    # -- JSON wire format -------------------------------------------------

    @classmethod
    def from_json(cls, text):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidGraph("bad graph JSON: %s" % exc) from None
        if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
            raise InvalidGraph('graph JSON needs "vertices" and "edges"')
        seen = set()
        for e in obj["edges"]:
            if not isinstance(e, list) or len(e) != 2:
                raise InvalidGraph("each edge must be a 2-element list")
            key = frozenset(e)
            if key in seen:
                raise InvalidGraph("duplicate or reversed-duplicate edge %r" % (e,))
            seen.add(key)
        return cls(obj["vertices"], [tuple(e) for e in obj["edges"]])

    def to_json(self):
        return json.dumps({"vertices": list(self.vertices), "edges": [list(e) for e in self.edge_names()]})


@dataclass(frozen=True)
class DominationData:
    """Domination relation plus the derived class partition and vertex order.

    `classes` lists ~-classes (frozensets of indices) in the total order used
    for block decompositions; `vertex_order` is the induced order on vertex
    indices; `order_pos[i]` is the position of vertex i in that order.
    """

    dominates: tuple          # dominates[u][v] True iff u <= v
    classes: tuple
    adj_classes: tuple
    class_kind: tuple         # "free" | "abelian", aligned with classes
    vertex_order: tuple
    order_pos: tuple

    def class_of(self, i):
        for k, cls in enumerate(self.classes):
            if i in cls:
                return k
        raise UnknownVertex("vertex index %d not in any class" % i)


def neighborhood(g, v, kind="link"):
    """Link or star of a vertex, as a set of names."""
    i = g.vertex_index(v)
    out = {g.vertices[j] for j in g.adj[i]}
    if kind == "star":
        out.add(v)
    elif kind != "link":
        raise ValueError("kind must be 'link' or 'star'")
    return out


def dominates(g, u, v):
    """True iff lk(u) is contained in st(v).  Reflexive by construction."""
    i, j = g.vertex_index(u), g.vertex_index(v)
    return _dominates_idx(g, i, j)


def _dominates_idx(g, i, j):
    star_j = set(g.adj[j]) | {j}
    return g.adj[i] <= star_j


def _compute_domination(g):
    n = g.n
    dom = [[_dominates_idx(g, i, j) for j in range(n)] for i in range(n)]
    # ~-classes: mutual domination
    seen = set()
    raw_classes = []
    for i in range(n):
        if i in seen:
            continue
        cls = {j for j in range(n) if dom[i][j] and dom[j][i]}
        seen |= cls
        raw_classes.append(frozenset(cls))
    # dichotomy check: each class spans an edgeless or complete subgraph
    kinds = {}
    for cls in raw_classes:
        members = sorted(cls)
        pairs = [(a, b) for x, a in enumerate(members) for b in members[x + 1:]]
        if all(g.adjacent(a, b) for a, b in pairs):
            kinds[cls] = "abelian"
        elif all(not g.adjacent(a, b) for a, b in pairs):
            kinds[cls] = "free"
        else:
            raise AssertionError("domination class is neither edgeless nor complete")
    # ~'-classes: same ~-class and adjacent (or equal)
    seen = set()
    adj_classes = []
    for i in range(n):
        if i in seen:
            continue
        base = next(c for c in raw_classes if i in c)
        if kinds[base] == "abelian":
            cls = base
        else:
            cls = frozenset({i})
        seen |= cls
        adj_classes.append(cls)
    # total order on classes extending domination, ties by least vertex name
    def class_le(a, b):
        return dom[next(iter(a))][next(iter(b))]

    remaining = list(raw_classes)
    ordered = []
    while remaining:
        minimal = [c for c in remaining if not any(d is not c and class_le(d, c) and not class_le(c, d) for d in remaining)]
        pick = min(minimal, key=lambda c: min(g.vertices[i] for i in c))
        ordered.append(pick)
        remaining.remove(pick)
    vertex_order = []
    for cls in ordered:
        vertex_order.extend(sorted(cls, key=lambda i: g.vertices[i]))
    order_pos = [0] * n
    for pos, i in enumerate(vertex_order):
        order_pos[i] = pos
    return DominationData(
        dominates=tuple(tuple(row) for row in dom),
        classes=tuple(ordered),
        adj_classes=tuple(adj_classes),
        class_kind=tuple(kinds[c] for c in ordered),
        vertex_order=tuple(vertex_order),
        order_pos=tuple(order_pos),
    )


def domination_data(g):
    return g.domination()


def has_adjacent_domination(g):
    """True iff some adjacent pair u != v has u <= v."""
    dd = g.domination()
    for i, j in g.edges:
        if dd.dominates[i][j] or dd.dominates[j][i]:
            return True
    return False


def _components(g, verts):
    """Connected components of the induced subgraph on `verts` (indices)."""
    verts = set(verts)
    comps = []
    while verts:
        start = min(verts)
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in verts and y not in comp:
                    comp.add(y)
                    stack.append(y)
        verts -= comp
        comps.append(frozenset(comp))
    return sorted(comps, key=min)


def components_excluding_star(g, v):
    """Components of the graph with st(v) deleted, as lists of name sets."""
    i = g.vertex_index(v)
    rest = set(range(g.n)) - set(g.adj[i]) - {i}
    return [{g.vertices[j] for j in comp} for comp in _components(g, rest)]


def complement_components(g, s):
    """Partition of the name set `s` into components of the complement graph."""
    idxs = {g.vertex_index(v) for v in s}
    comps = []
    remaining = set(idxs)
    while remaining:
        start = min(remaining)
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in remaining:
                if y not in comp and not g.adjacent(x, y):
                    comp.add(y)
                    stack.append(y)
        remaining -= comp
        comps.append(comp)
    comps.sort(key=min)
    return [{g.vertices[j] for j in comp} for comp in comps]


def gamma_v_partition(g, v):
    """Vertices dominating v off its link, split into mutually-dominating part
    and the remaining components away from lk(v).

    Returns (gamma_v, x_v, factors) as name sets / list of name sets.
    """
    i = g.vertex_index(v)
    dd = g.domination()
    gamma = {j for j in range(g.n) if dd.dominates[i][j] and j not in g.adj[i]}
    xv = {j for j in gamma if dd.dominates[j][i]}
    rest_graph = set(range(g.n)) - set(g.adj[i])
    comps = _components(g, rest_graph)
    factors = []
    for comp in comps:
        part = comp & (gamma - xv)
        if part:
            factors.append({g.vertices[j] for j in sorted(part)})
    return ({g.vertices[j] for j in gamma}, {g.vertices[j] for j in xv}, factors)


def induced_subgraph(g, names):
    """Induced subgraph keeping ambient vertex declaration order."""
    keep = set(names)
    for v in keep:
        g.vertex_index(v)
    verts = [v for v in g.vertices if v in keep]
    edges = [(g.vertices[i], g.vertices[j]) for i, j in g.edges
             if g.vertices[i] in keep and g.vertices[j] in keep]
    return SimplicialGraph(verts, edges)


def graph_automorphisms(g, limit=8):
    """All edge-preserving vertex permutations, by brute force.

    Returns a list of dicts name -> name; the identity comes first.
    """
    if g.n > limit:
        raise SizeLimit("graph has %d vertices, automorphism bound is %d" % (g.n, limit))
    from itertools import permutations

    out = []
    idxs = list(range(g.n))
    for perm in permutations(idxs):
        ok = True
        for i, j in g.edges:
            a, b = perm[i], perm[j]
            if (min(a, b), max(a, b)) not in g.edges:
                ok = False
                break
        if ok:
            out.append({g.vertices[i]: g.vertices[perm[i]] for i in idxs})
    out.sort(key=lambda m: tuple(m[v] for v in g.vertices))
    out.remove({v: v for v in g.vertices})
    return [{v: v for v in g.vertices}] + out
