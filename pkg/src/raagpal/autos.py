"""Automorphisms of a right-angled Artin group.

An `Automorphism` stores the image of every vertex generator as a canonical
`GroupWord`, optionally together with the generator word that produced it.
Composition is (a o b)(v) = a(b(v)); provenance words read left to right,
outermost first.
"""

from dataclasses import dataclass

from .errors import (GraphMismatch, IllegalGenerator, NoProvenance,
                     NotGraphAutomorphism, NotPalindromic, ParseError,
                     UnknownVertex)
from . import graph as graphs
from . import words as W


# -- generator symbols ----------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    mapping: tuple          # sorted (vertex, image) pairs

    def as_dict(self):
        return dict(self.mapping)


@dataclass(frozen=True)
class Inversion:
    vertex: str


@dataclass(frozen=True)
class Transvection:
    moved: str              # v_i, mapped to v_i v_j
    by: str                 # v_j


@dataclass(frozen=True)
class ElemPalindromic:
    moved: str              # v_i, mapped to v_j v_i v_j
    by: str                 # v_j


@dataclass(frozen=True)
class PartialConjugation:
    vertex: str
    component: frozenset


@dataclass(frozen=True)
class FormalInverse:
    base: object


def diagram(mapping):
    return Diagram(tuple(sorted(mapping.items())))


GENERATOR_TYPES = (Diagram, Inversion, Transvection, ElemPalindromic,
                   PartialConjugation, FormalInverse)


# -- automorphisms --------------------------------------------------------


class Automorphism:
    """Vertex-image map verified to respect every edge relation."""

    __slots__ = ("graph", "images", "provenance", "_key")

    def __init__(self, g, images, provenance=None, check=True):
        self.graph = g
        self.images = tuple(images)       # aligned with g.vertices
        self.provenance = tuple(provenance) if provenance is not None else None
        self._key = tuple(w.letters for w in self.images)
        if check:
            for i, j in g.edges:
                lhs = W.concat(self.images[i], self.images[j])
                rhs = W.concat(self.images[j], self.images[i])
                if lhs.letters != rhs.letters:
                    raise NotGraphAutomorphism(
                        "images of %s and %s do not commute" % (g.vertices[i], g.vertices[j]))

    def image(self, v):
        return self.images[self.graph.vertex_index(v)]

    def key(self):
        return self._key

    def is_identity(self):
        return all(w.letters == ((i, 1),) for i, w in enumerate(self.images))

    def __eq__(self, other):
        return (isinstance(other, Automorphism) and self.graph == other.graph
                and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        ims = ", ".join("%s->%s" % (v, self.images[i]) for i, v in enumerate(self.graph.vertices))
        return "Automorphism(%s)" % ims


def identity(g):
    return Automorphism(g, [W.word(g, [(v, 1)]) for v in g.vertices],
                        provenance=(), check=False)


def automorphism(g, images_map, provenance=None, check=True):
    """Build from a name -> GroupWord-or-text mapping."""
    images = []
    for v in g.vertices:
        if v not in images_map:
            raise UnknownVertex("no image given for vertex %r" % v)
        im = images_map[v]
        if isinstance(im, str):
            im = W.parse_word(g, im)
        if im.graph != g:
            raise GraphMismatch("image of %r lives over a different graph" % v)
        images.append(im)
    return Automorphism(g, images, provenance=provenance, check=check)


def _sub_letters(g, images, letters):
    seq = []
    for v, s in letters:
        im = images[v]
        if s > 0:
            seq.extend(im.letters)
        else:
            seq.extend((u, -t) for u, t in reversed(im.letters))
    return seq


def apply(a, w):
    if a.graph != w.graph:
        raise GraphMismatch("automorphism and word live over different graphs")
    return W.GroupWord(a.graph, W._canonical(a.graph, _sub_letters(a.graph, a.images, w.letters)))


def compose(*auts):
    """Left-to-right outermost-first: compose(a, b)(v) = a(b(v))."""
    if not auts:
        raise ValueError("compose needs at least one automorphism")
    g = auts[0].graph
    for a in auts:
        if a.graph != g:
            raise GraphMismatch("composing automorphisms over different graphs")
    result = auts[-1]
    for a in reversed(auts[:-1]):
        images = [apply(a, w) for w in result.images]
        result = Automorphism(g, images, provenance=None, check=False)
    prov = None
    if all(a.provenance is not None for a in auts):
        prov = sum((a.provenance for a in auts), ())
    return Automorphism(g, result.images, provenance=prov, check=False)


# -- the generator species ------------------------------------------------


def _validate_symbol(g, sym):
    dd = g.domination()
    if isinstance(sym, Diagram):
        m = sym.as_dict()
        if sorted(m) != sorted(g.vertices) or sorted(m.values()) != sorted(g.vertices):
            raise IllegalGenerator("diagram permutation must be a bijection on the vertex set")
        for i, j in g.edges:
            a, b = g.vertex_index(m[g.vertices[i]]), g.vertex_index(m[g.vertices[j]])
            if not g.adjacent(a, b):
                raise IllegalGenerator("diagram permutation does not preserve edges")
    elif isinstance(sym, Inversion):
        g.vertex_index(sym.vertex)
    elif isinstance(sym, (Transvection, ElemPalindromic)):
        i, j = g.vertex_index(sym.moved), g.vertex_index(sym.by)
        if i == j:
            raise IllegalGenerator("transvection indices must be distinct")
        if not dd.dominates[i][j]:
            raise IllegalGenerator("%s is not dominated by %s" % (sym.moved, sym.by))
    elif isinstance(sym, PartialConjugation):
        g.vertex_index(sym.vertex)
        comps = graphs.components_excluding_star(g, sym.vertex)
        if set(sym.component) not in [set(c) for c in comps]:
            raise IllegalGenerator(
                "%r is not a component of the graph minus st(%s)" % (set(sym.component), sym.vertex))
    elif isinstance(sym, FormalInverse):
        _validate_symbol(g, sym.base)
    else:
        raise IllegalGenerator("unknown generator symbol %r" % (sym,))


def inverse_symbols(sym):
    """Closed-form inverse of a single generator, as a symbol list."""
    if isinstance(sym, Diagram):
        return [Diagram(tuple(sorted((b, a) for a, b in sym.mapping)))]
    if isinstance(sym, Inversion):
        return [sym]
    if isinstance(sym, Transvection):
        return [Inversion(sym.by), sym, Inversion(sym.by)]
    if isinstance(sym, ElemPalindromic):
        return [Inversion(sym.by), sym, Inversion(sym.by)]
    if isinstance(sym, PartialConjugation):
        return [Inversion(sym.vertex), sym, Inversion(sym.vertex)]
    if isinstance(sym, FormalInverse):
        return [sym.base]
    raise IllegalGenerator("unknown generator symbol %r" % (sym,))


def make_generator(g, sym):
    _validate_symbol(g, sym)
    if isinstance(sym, FormalInverse):
        parts = [make_generator(g, s) for s in inverse_symbols(sym.base)]
        inv = compose(*parts)
        return Automorphism(g, inv.images, provenance=(sym,), check=False)
    images = {v: W.word(g, [(v, 1)]) for v in g.vertices}
    if isinstance(sym, Diagram):
        m = sym.as_dict()
        images = {v: W.word(g, [(m[v], 1)]) for v in g.vertices}
    elif isinstance(sym, Inversion):
        images[sym.vertex] = W.word(g, [(sym.vertex, -1)])
    elif isinstance(sym, Transvection):
        images[sym.moved] = W.word(g, [(sym.moved, 1), (sym.by, 1)])
    elif isinstance(sym, ElemPalindromic):
        images[sym.moved] = W.word(g, [(sym.by, 1), (sym.moved, 1), (sym.by, 1)])
    elif isinstance(sym, PartialConjugation):
        for d in sym.component:
            images[d] = W.word(g, [(sym.vertex, 1), (d, 1), (sym.vertex, -1)])
    return automorphism(g, images, provenance=(sym,), check=False)


def generators_to_automorphism(g, syms):
    if not syms:
        return identity(g)
    return compose(*[make_generator(g, s) for s in syms])


def iota(g):
    """The hyperelliptic involution: every generator goes to its inverse."""
    return generators_to_automorphism(g, [Inversion(v) for v in g.vertices])


def invert(a):
    """Two-sided inverse, from provenance or by factorising the map."""
    if a.provenance is not None:
        syms = []
        for sym in reversed(a.provenance):
            syms.extend(inverse_symbols(sym))
        inv = generators_to_automorphism(a.graph, syms)
        return inv
    from . import factor as F
    try:
        res = F.factor_any(a)
    except NoProvenance:
        raise
    except Exception as exc:
        raise NoProvenance("no provenance and factorization failed: %s" % exc) from exc
    syms = []
    for sym in reversed(res.word):
        syms.extend(F.inverse_word_symbols(sym))
    inv = F.compose_word(a.graph, syms)
    if not compose(a, inv).is_identity() or not compose(inv, a).is_identity():
        raise NoProvenance("candidate inverse failed the round-trip check")
    return inv


# -- predicates -----------------------------------------------------------


@dataclass(frozen=True)
class PredicateReport:
    in_c_iota: bool
    is_palindromic: bool
    is_pure: bool
    is_torelli: bool
    is_simple: bool
    non_simple_vertices: frozenset


def _middle_letter_pure(a):
    """Pure test via odd-exponent middle letters: each image's unique odd
    letter must be the vertex itself."""
    g = a.graph
    for i, im in enumerate(a.images):
        exps = W.exponent_vector(im)
        odd = [j for j, e in enumerate(exps) if e % 2]
        if odd != [i]:
            return False
    return True


def predicates(a):
    from . import matrices as M

    g = a.graph
    in_c = all(W.is_reverse_invariant(im) for im in a.images)
    is_pal = in_c and all(W.is_palindrome(im) for im in a.images)
    is_pure = False
    if is_pal:
        is_pure = M.phi2(a) == M.identity_mod2(g.n)
        assert is_pure == _middle_letter_pure(a), "mod-2 image and middle-letter purity disagree"
    is_tor = is_pal and M.phi(a).rows == M.identity_rows(g.n)
    non_simple = frozenset(
        g.vertices[i] for i, im in enumerate(a.images)
        if len(graphs.complement_components(g, {g.vertices[v] for v in W.support_indices(im)})) > 1)
    return PredicateReport(
        in_c_iota=in_c,
        is_palindromic=is_pal,
        is_pure=is_pure,
        is_torelli=is_tor,
        is_simple=not non_simple,
        non_simple_vertices=non_simple,
    )


def split_diagram_pure(a):
    """Split a palindromic automorphism as (diagram part, pure part)."""
    g = a.graph
    mids = {}
    for i, im in enumerate(a.images):
        if not W.is_palindrome(im):
            raise NotPalindromic("image of %s is not a palindrome" % g.vertices[i])
        exps = W.exponent_vector(im)
        odd = [j for j, e in enumerate(exps) if e % 2]
        if len(odd) != 1:
            raise NotPalindromic("image of %s has no unique middle letter" % g.vertices[i])
        mids[g.vertices[i]] = g.vertices[odd[0]]
    if sorted(mids.values()) != sorted(g.vertices):
        raise NotGraphAutomorphism("middle-letter map is not a bijection")
    sym = diagram(mids)
    try:
        delta = make_generator(g, sym)
    except IllegalGenerator as exc:
        raise NotGraphAutomorphism(str(exc)) from exc
    gamma = compose(invert(delta), a)
    return delta, gamma


# -- Torelli constructors -------------------------------------------------


def _elem_pal(g, i, j):
    return make_generator(g, ElemPalindromic(i, j))


def commutator(a, b):
    return compose(a, b, invert(a), invert(b))


def doubled_commutator_transvection(g, i, j, k):
    """[P(i,j), P(i,k)]; needs i dominated by both j and k."""
    if len({i, j, k}) != 3:
        raise IllegalGenerator("indices must be pairwise distinct")
    return commutator(_elem_pal(g, i, j), _elem_pal(g, i, k))


def separating_pi_twist(g, i, j, k):
    """(P(j,k) P(i,k)^-1 P(k,i) P(k,j) P(i,j) P(j,i)^-1)^2 on one class."""
    if len({i, j, k}) != 3:
        raise IllegalGenerator("indices must be pairwise distinct")
    dd = g.domination()
    ii, jj, kk = (g.vertex_index(x) for x in (i, j, k))
    same = (dd.dominates[ii][jj] and dd.dominates[jj][ii]
            and dd.dominates[jj][kk] and dd.dominates[kk][jj])
    if not same:
        raise IllegalGenerator("%s, %s, %s must share a domination class" % (i, j, k))
    half = compose(
        _elem_pal(g, j, k), invert(_elem_pal(g, i, k)), _elem_pal(g, k, i),
        _elem_pal(g, k, j), _elem_pal(g, i, j), invert(_elem_pal(g, j, i)))
    return compose(half, half)


# -- text formats ---------------------------------------------------------


def format_symbol(sym):
    if isinstance(sym, Diagram):
        return "diag(%s)" % ",".join("%s:%s" % p for p in sym.mapping)
    if isinstance(sym, Inversion):
        return "inv(%s)" % sym.vertex
    if isinstance(sym, Transvection):
        return "tau(%s,%s)" % (sym.moved, sym.by)
    if isinstance(sym, ElemPalindromic):
        return "P(%s,%s)" % (sym.moved, sym.by)
    if isinstance(sym, PartialConjugation):
        return "pc(%s;%s)" % (sym.vertex, ",".join(sorted(sym.component)))
    if isinstance(sym, FormalInverse):
        return format_symbol(sym.base) + "^-1"
    return repr(sym)


def _parse_term(g, term):
    inverted = False
    if term.endswith("^-1"):
        inverted = True
        term = term[:-3]
    if "(" not in term or not term.endswith(")"):
        raise ParseError("bad generator term %r" % term)
    head, _, body = term.partition("(")
    body = body[:-1]
    if head == "inv":
        sym = Inversion(body)
    elif head == "tau":
        a, _, b = body.partition(",")
        sym = Transvection(a, b)
    elif head == "P":
        a, _, b = body.partition(",")
        sym = ElemPalindromic(a, b)
    elif head == "pc":
        v, _, rest = body.partition(";")
        member = rest.split(",")[0]
        comps = graphs.components_excluding_star(g, v)
        hit = [c for c in comps if member in c]
        if not hit:
            raise IllegalGenerator("%r is in no component of the graph minus st(%s)" % (member, v))
        sym = PartialConjugation(v, frozenset(hit[0]))
    elif head == "diag":
        pairs = {}
        for item in body.split(","):
            a, _, b = item.partition(":")
            if not a or not b:
                raise ParseError("bad diag pair %r" % item)
            pairs[a] = b
        for v in g.vertices:
            pairs.setdefault(v, v)
        sym = diagram(pairs)
    else:
        raise ParseError("unknown generator head %r" % head)
    return FormalInverse(sym) if inverted else sym


def parse_generators(g, text):
    """Parse a whitespace-separated generator expression."""
    return [_parse_term(g, t) for t in text.split()]


def from_json_obj(g, obj):
    """Automorphism from {"images": {...}} or {"generators": "..."}."""
    if "images" in obj:
        return automorphism(g, obj["images"])
    if "generators" in obj:
        syms = parse_generators(g, obj["generators"])
        for s in syms:
            _validate_symbol(g, s)
        return generators_to_automorphism(g, syms)
    raise ParseError('automorphism JSON needs "images" or "generators"')


def to_json_obj(a):
    return {"images": {v: str(a.images[i]) for i, v in enumerate(a.graph.vertices)}}
