"""Expressing automorphisms as words in the palindromic generating sets.

The main pipeline factors a pure palindromic automorphism by (a) greedy
peeling of inversion / elementary palindromic symbols, (b) factorising its
abelianised matrix and lifting the witness word, and (c) eliminating the
remaining Torelli part by a guided search over doubled commutator
transvections and separating pi-twists.  The length-descent machinery from
the free-product stabiliser argument is implemented separately
(`factor_stabilizer_Y`, `make_simple`) and exercised on its own domain.
"""

from dataclasses import dataclass, field

from .errors import (AssumptionFailed, DescentStall, FixedSetViolated,
                     GraphMismatch, NoProvenance, NotInCentralizer,
                     NotPalindromic, TorelliBudget)
from . import autos as A
from . import graph as G
from . import matrices as M
from . import words as W


@dataclass(frozen=True)
class SearchBudget:
    depth: int = 4
    radius: int = 1
    node_cap: int = 1000000


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class ChiSymbol:
    """A conjugated Torelli generator: kind "dct" is [P(i,j), P(i,k)],
    kind "spt" is the squared six-term twist on one domination class."""

    kind: str
    indices: tuple
    conjugator: tuple = ()
    power: int = 1

    def base_automorphism(self, g):
        i, j, k = self.indices
        if self.kind == "dct":
            return A.doubled_commutator_transvection(g, i, j, k)
        return A.separating_pi_twist(g, i, j, k)

    def to_automorphism(self, g):
        base = self.base_automorphism(g)
        if self.power < 0:
            base = A.invert(base)
        if self.conjugator:
            c = A.generators_to_automorphism(g, self.conjugator)
            base = A.compose(c, base, A.invert(c))
        return base

    def format(self):
        head = "dct" if self.kind == "dct" else "spt"
        s = "%s(%s)" % (head, ",".join(self.indices))
        if self.conjugator:
            s = "conj[%s](%s)" % (" ".join(A.format_symbol(c) for c in self.conjugator), s)
        if self.power < 0:
            s += "^-1"
        return s


@dataclass(frozen=True)
class FactorizationResult:
    word: tuple
    residual: object = None       # Automorphism or None when fully factored
    stats: dict = field(default_factory=dict, compare=False)


def format_word_symbol(sym):
    if isinstance(sym, ChiSymbol):
        return sym.format()
    return A.format_symbol(sym)


def compose_word(g, syms):
    """Automorphism of an ordered symbol word (generator and chi symbols)."""
    auts = []
    for s in syms:
        if isinstance(s, ChiSymbol):
            auts.append(s.to_automorphism(g))
        else:
            auts.append(A.make_generator(g, s))
    if not auts:
        return A.identity(g)
    return A.compose(*auts)


def inverse_word_symbols(sym):
    if isinstance(sym, ChiSymbol):
        return [ChiSymbol(sym.kind, sym.indices, sym.conjugator, -sym.power)]
    return A.inverse_symbols(sym)


def verify_roundtrip(a, result):
    lhs = compose_word(a.graph, result.word)
    if result.residual is not None:
        lhs = A.compose(lhs, result.residual)
    return lhs == a


# -- generator inventories ------------------------------------------------


def inversion_symbols(g):
    return [A.Inversion(v) for v in g.vertices]


def elem_palindromic_symbols(g):
    dd = g.domination()
    out = []
    for i in range(g.n):
        for j in range(g.n):
            if i != j and dd.dominates[i][j]:
                out.append(A.ElemPalindromic(g.vertices[i], g.vertices[j]))
    return out


def dominated_transvection_symbols(g, adjacent_only=False):
    dd = g.domination()
    out = []
    for i in range(g.n):
        for j in range(g.n):
            if i != j and dd.dominates[i][j] and (not adjacent_only or g.adjacent(i, j)):
                out.append(A.Transvection(g.vertices[i], g.vertices[j]))
    return out


def diagram_symbols(g, include_identity=False):
    perms = G.graph_automorphisms(g)
    if not include_identity:
        perms = perms[1:]
    return [A.diagram(p) for p in perms]


def partial_conjugation_symbols(g):
    out = []
    for v in g.vertices:
        for comp in G.components_excluding_star(g, v):
            out.append(A.PartialConjugation(v, frozenset(comp)))
    return out


def pure_symbols(g):
    return inversion_symbols(g) + elem_palindromic_symbols(g)


def palindromic_symbols(g):
    return diagram_symbols(g) + pure_symbols(g)


def centralizer_symbols(g):
    return (diagram_symbols(g) + dominated_transvection_symbols(g, adjacent_only=True)
            + pure_symbols(g))


def aut0_centralizer_symbols(g):
    return dominated_transvection_symbols(g, adjacent_only=True) + pure_symbols(g)


def dct_instances(g):
    dd = g.domination()
    out = []
    for i in range(g.n):
        doms = [j for j in range(g.n) if j != i and dd.dominates[i][j]]
        for j in doms:
            for k in doms:
                if j != k:
                    out.append((g.vertices[i], g.vertices[j], g.vertices[k]))
    return out


def spt_instances(g):
    dd = g.domination()
    out = []
    for cls in dd.classes:
        if len(cls) < 3:
            continue
        members = sorted(cls)
        from itertools import permutations
        for i, j, k in permutations(members, 3):
            out.append((g.vertices[i], g.vertices[j], g.vertices[k]))
    return out


# -- size metric and greedy peeling ---------------------------------------


def _metric(a):
    total = sum(len(w) for w in a.images)
    moved = sum(1 for i, w in enumerate(a.images) if w.letters != ((i, 1),))
    return (total, moved)


def _symbol_pool(g, syms):
    """(symbol, automorphism, inverse automorphism) triples, cached per call."""
    pool = []
    for s in syms:
        aut = A.make_generator(g, s)
        pool.append((s, aut, A.invert(aut)))
    return pool


def _fixes(aut, fixed_idx):
    return all(aut.images[i].letters == ((i, 1),) for i in fixed_idx)


def _greedy_peel(beta, pool):
    """Peel symbols from the left while the size metric strictly drops."""
    word = []
    cur = beta
    while not cur.is_identity():
        best = None
        for s, aut, inv in pool:
            cand = A.compose(inv, cur)
            key = _metric(cand)
            if key < _metric(cur) and (best is None or key < best[0]):
                best = (key, s, cand)
        if best is None:
            break
        word.append(best[1])
        cur = best[2]
    return word, cur


# -- Torelli search -------------------------------------------------------


_move_cache = {}


def _torelli_moves(g, budget, fixed=()):
    key = (g, budget.radius, frozenset(fixed))
    if key in _move_cache:
        return _move_cache[key]
    fixed_idx = [g.vertex_index(v) for v in fixed]
    conjugators = [()]
    if budget.radius >= 1:
        for s in palindromic_symbols(g):
            conjugators.append((s,))
    moves = []
    seen = set()
    instances = ([ChiSymbol("dct", t) for t in dct_instances(g)]
                 + [ChiSymbol("spt", t) for t in spt_instances(g)])
    for inst in instances:
        try:
            base = inst.base_automorphism(g)
        except Exception:
            continue
        if base.is_identity():
            continue
        base_inv = A.invert(base)
        for conj in conjugators:
            if conj:
                c = A.generators_to_automorphism(g, conj)
                c_inv = A.invert(c)
                aut = A.compose(c, base, c_inv)
                aut_inv = A.compose(c, base_inv, c_inv)
            else:
                aut, aut_inv = base, base_inv
            for power, fwd, bwd in ((1, aut, aut_inv), (-1, aut_inv, aut)):
                if fwd.key() in seen:
                    continue
                if fixed_idx and not _fixes(fwd, fixed_idx):
                    continue
                seen.add(fwd.key())
                moves.append((ChiSymbol(inst.kind, inst.indices, conj, power), fwd, bwd))
    _move_cache[key] = moves
    return moves


def factor_torelli_bfs(tau, budget=DEFAULT_BUDGET, fixed=()):
    """Witness word in conjugated Torelli generators reproducing `tau`.

    Greedy descent on total image length first, then a bidirectional
    meet-in-the-middle search within the depth and node budget.
    """
    g = tau.graph
    if tau.is_identity():
        return []
    moves = _torelli_moves(g, budget, fixed)
    word = []
    cur = tau
    while not cur.is_identity() and len(word) < 4 * budget.depth:
        best = None
        for sym, fwd, bwd in moves:
            cand = A.compose(bwd, cur)
            key = _metric(cand)
            if key < _metric(cur) and (best is None or key < best[0]):
                best = (key, sym, cand)
        if best is None:
            break
        word.append(best[1])
        cur = best[2]
    if cur.is_identity():
        return word
    tail = _bidirectional_search(cur, moves, budget)
    return word + tail


def _bidirectional_search(target, moves, budget):
    ident = A.identity(target.graph)
    fwd = {ident.key(): (ident, [])}
    bwd = {target.key(): (target, [])}
    fwd_frontier = [fwd[ident.key()]]
    bwd_frontier = [bwd[target.key()]]
    nodes = 0
    if target.key() in fwd:
        return []
    for _ in range(budget.depth):
        expand_fwd = len(fwd_frontier) <= len(bwd_frontier)
        nxt = []
        if expand_fwd:
            for aut, pre in fwd_frontier:
                for sym, mfwd, _ in moves:
                    v = A.compose(aut, mfwd)
                    k = v.key()
                    if k in bwd:
                        return pre + [sym] + bwd[k][1]
                    if k in fwd:
                        continue
                    nodes += 1
                    if nodes > budget.node_cap:
                        raise TorelliBudget("node cap %d exceeded" % budget.node_cap)
                    entry = (v, pre + [sym])
                    fwd[k] = entry
                    nxt.append(entry)
            fwd_frontier = nxt
        else:
            for aut, suf in bwd_frontier:
                for sym, _, mbwd in moves:
                    v = A.compose(aut, mbwd)
                    k = v.key()
                    if k in fwd:
                        return fwd[k][1] + [sym] + suf
                    if k in bwd:
                        continue
                    nodes += 1
                    if nodes > budget.node_cap:
                        raise TorelliBudget("node cap %d exceeded" % budget.node_cap)
                    entry = (v, [sym] + suf)
                    bwd[k] = entry
                    nxt.append(entry)
            bwd_frontier = nxt
        if not fwd_frontier and not bwd_frontier:
            break
    raise TorelliBudget("no witness word within depth %d" % budget.depth)


# -- matrix word lifting --------------------------------------------------


def lift_matrix_symbols(g, matsyms):
    """Turn flips/shears into inversions / elementary palindromic symbols."""
    order = [g.vertices[i] for i in g.domination().vertex_order]
    out = []
    for ms in matsyms:
        if ms.kind == "flip":
            if ms.power % 2:
                out.append(A.Inversion(order[ms.i]))
            continue
        base = A.ElemPalindromic(order[ms.j], order[ms.i])
        step = base if ms.power > 0 else A.FormalInverse(base)
        out.extend([step] * abs(ms.power))
    return out


def lift_relator(g, rel):
    """Automorphism lift of a relator instance; always acts trivially on
    the abelianisation."""
    _, _, syms = rel
    gens = lift_matrix_symbols(g, syms)
    aut = compose_word(g, gens)
    if M.phi(aut).rows != M.identity_rows(g.n):
        raise AssumptionFailed("relator lift is not Torelli")
    return aut


# -- main pipelines -------------------------------------------------------


def factor_pure_palindromic(a, budget=DEFAULT_BUDGET, fixed=()):
    p = A.predicates(a)
    if not p.is_pure:
        raise NotPalindromic("input is not pure palindromic")
    g = a.graph
    fixed_idx = [g.vertex_index(v) for v in fixed]
    pool = [t for t in _symbol_pool(g, pure_symbols(g))
            if not fixed_idx or _fixes(t[1], fixed_idx)]
    pool = pool + [(A.FormalInverse(s), inv, aut) for s, aut, inv in pool
                   if not isinstance(s, A.Inversion)]
    word0, beta = _greedy_peel(a, pool)
    stats = {"peeled": len(word0)}
    if beta.is_identity():
        return FactorizationResult(word=tuple(word0), residual=None, stats=stats)
    dd = g.domination()
    matsyms = M.factor_theta(M.phi(beta), dd)
    lift_syms = lift_matrix_symbols(g, matsyms)
    lift_aut = compose_word(g, lift_syms)
    tau = A.compose(A.invert(lift_aut), beta)
    if M.phi(tau).rows != M.identity_rows(g.n):
        raise AssumptionFailed("residual after matrix lift is not Torelli")
    tor = factor_torelli_bfs(tau, budget, fixed)
    stats["torelli_length"] = len(tor)
    word = tuple(word0) + tuple(lift_syms) + tuple(tor)
    if fixed_idx:
        for sym in word:
            aut = sym.to_automorphism(g) if isinstance(sym, ChiSymbol) else A.make_generator(g, sym)
            if not _fixes(aut, fixed_idx):
                raise FixedSetViolated("emitted symbol %s moves a fixed vertex" % format_word_symbol(sym))
    return FactorizationResult(word=word, residual=None, stats=stats)


def factor_palindromic(a, budget=DEFAULT_BUDGET, fixed=()):
    p = A.predicates(a)
    if not p.is_palindromic:
        raise NotPalindromic("input is not palindromic")
    delta, gamma = A.split_diagram_pure(a)
    word = []
    if not delta.is_identity():
        word.extend(delta.provenance)
    inner = factor_pure_palindromic(gamma, budget, fixed)
    return FactorizationResult(word=tuple(word) + inner.word, residual=None, stats=inner.stats)


_phi2_witness_cache = {}


def _phi2_witnesses(g, cap=2000000):
    """Witness words for the mod-2 image of the centraliser generators."""
    if g in _phi2_witness_cache:
        return _phi2_witness_cache[g]
    gens = diagram_symbols(g) + dominated_transvection_symbols(g, adjacent_only=True)
    pool = [(s, M.phi2(A.make_generator(g, s))) for s in gens]
    ident = M.identity_mod2(g.n)
    table = {ident: []}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for s, gm in pool:
                v = M.mat_mod2(M.mat_mul(m, gm))
                if v not in table:
                    if len(table) >= cap:
                        raise AssumptionFailed("mod-2 image closure exceeded cap")
                    table[v] = table[m] + [s]
                    nxt.append(v)
        frontier = nxt
    _phi2_witness_cache[g] = table
    return table


def factor_centralizer_iota(a, budget=DEFAULT_BUDGET):
    p = A.predicates(a)
    if not p.in_c_iota:
        raise NotInCentralizer("input does not centralise the involution")
    g = a.graph
    table = _phi2_witnesses(g)
    m2 = M.phi2(a)
    if m2 not in table:
        raise NotInCentralizer("mod-2 image is outside the centraliser image")
    head = table[m2]
    head_aut = compose_word(g, head)
    beta = A.compose(A.invert(head_aut), a)
    inner = factor_pure_palindromic(beta, budget)
    return FactorizationResult(word=tuple(head) + inner.word, residual=None, stats=inner.stats)


def factor_with_fixed(a, fixed, budget=DEFAULT_BUDGET):
    g = a.graph
    for v in fixed:
        i = g.vertex_index(v)
        if a.images[i].letters != ((i, 1),):
            raise FixedSetViolated("input moves the fixed vertex %r" % v)
    try:
        return factor_palindromic(a, budget, fixed=tuple(fixed))
    except TorelliBudget as exc:
        raise FixedSetViolated("search exhausted under the fixed-set filter: %s" % exc) from exc


def factor_any(a, budget=DEFAULT_BUDGET):
    p = A.predicates(a)
    if p.is_pure:
        return factor_pure_palindromic(a, budget)
    if p.is_palindromic:
        return factor_palindromic(a, budget)
    if p.in_c_iota:
        return factor_centralizer_iota(a, budget)
    raise NoProvenance("automorphism is outside the factorable classes")


# -- length descent on the free-product stabiliser ------------------------


def collins_length(a, xv):
    """Sum of image lengths over the mutually-dominating part."""
    return sum(len(a.image(v)) for v in xv)


def cancellation_violation(ai, aj, ei, ej):
    """True iff the half-survival inequality fails for ai^ei * aj^ej."""
    if ai.letters == aj.letters:
        raise ValueError("the two elements must be distinct")
    left = ai if ei > 0 else W.inverse(ai)
    right = aj if ej > 0 else W.inverse(aj)
    prod_len = len(W.concat(left, right))
    bound = len(ai) + len(aj) - 2 * (len(ai) // 2 + 1)
    return not prod_len > bound


def stabilizer_subgroup_graph(g, v):
    gamma, _, _ = G.gamma_v_partition(g, v)
    return G.induced_subgraph(g, gamma)


def factor_stabilizer_Y(g, v, a):
    """Factor a pure palindromic automorphism of the subgroup on the
    dominating non-neighbours of v that fixes every non-free factor.

    Emits only inversions of the mutually-dominating part and elementary
    palindromic symbols, by strict descent on `collins_length`.
    """
    gamma, xv, factors = G.gamma_v_partition(g, v)
    h = G.induced_subgraph(g, gamma)
    if a.graph != h:
        raise GraphMismatch("automorphism must live over the induced subgroup graph")
    if not A.predicates(a).is_pure:
        raise AssumptionFailed("input is not pure palindromic on the subgroup")
    factor_verts = sorted(set().union(*factors)) if factors else []
    for u in factor_verts:
        i = h.vertex_index(u)
        if a.images[i].letters != ((i, 1),):
            raise AssumptionFailed("input does not restrict to the identity on the factor parts")
    xv_sorted = sorted(xv)
    r = len(xv_sorted)
    gamma_sorted = sorted(gamma)
    cur = a
    emitted = []
    sign_cases = ((1, 1), (-1, -1), (1, -1), (-1, 1))
    while collins_length(cur, xv_sorted) > r:
        progressed = False
        for vi in gamma_sorted:
            for vj in xv_sorted:
                if vi == vj:
                    continue
                ai, aj = cur.image(vi), cur.image(vj)
                if ai.letters == aj.letters:
                    continue
                for ei, ej in sign_cases:
                    if not cancellation_violation(ai, aj, ei, ej):
                        continue
                    pal = A.ElemPalindromic(vj, vi)
                    if (ei, ej) == (1, 1):
                        theta = [pal]
                    elif (ei, ej) == (-1, -1):
                        theta = [A.Inversion(vj), A.FormalInverse(pal)]
                    else:
                        theta = [A.Inversion(vj), pal]
                    cand = A.compose(cur, compose_word(h, theta))
                    if collins_length(cand, xv_sorted) < collins_length(cur, xv_sorted):
                        cur = cand
                        emitted.extend(theta)
                        progressed = True
                        break
                if progressed:
                    break
            if progressed:
                break
        if not progressed:
            raise DescentStall("no length-reducing pair; precondition breach")
    invs = []
    for u in xv_sorted:
        i = h.vertex_index(u)
        if cur.images[i].letters == ((i, -1),):
            invs.append(A.Inversion(u))
        elif cur.images[i].letters != ((i, 1),):
            raise DescentStall("descent ended away from a product of inversions")
    if compose_word(h, invs) != cur:
        raise DescentStall("descent residue is not the expected inversion product")
    tail = []
    for sym in reversed(emitted):
        tail.extend(inverse_word_symbols(sym))
    word = tuple(invs) + tuple(tail)
    return FactorizationResult(word=word, residual=None,
                               stats={"descent_steps": len(emitted)})


# -- simplification toward complement-connected images --------------------


def _trivial_domination(k):
    full = tuple(tuple(True for _ in range(k)) for _ in range(k))
    return G.DominationData(
        dominates=full,
        classes=(frozenset(range(k)),),
        adj_classes=(frozenset(range(k)),),
        class_kind=("abelian",),
        vertex_order=tuple(range(k)),
        order_pos=tuple(range(k)),
    )


def _vertex_rank(g, v):
    rank, _, _ = W.rank_and_centralizer(W.word(g, [(v, 1)]))
    return rank


def make_simple(a, max_rounds=None):
    """Precompose with generating symbols until every image has support
    connected in the complement graph.

    Returns (symbol word theta, simple automorphism) with the simple
    automorphism equal to the input composed with theta.
    """
    g = a.graph
    dd = g.domination()
    if not A.predicates(a).is_pure:
        raise AssumptionFailed("input is not pure palindromic")
    emitted = []
    cur = a
    rounds = 0
    cap = max_rounds if max_rounds is not None else 4 * g.n * g.n
    while True:
        report = A.predicates(cur)
        if report.is_simple:
            break
        rounds += 1
        if rounds > cap:
            raise AssumptionFailed("simplification did not terminate")
        v = max(report.non_simple_vertices, key=lambda u: (_vertex_rank(g, u), u))
        vi = g.vertex_index(v)
        conj, core = W.cyclically_reduce(cur.image(v))
        if len(conj):
            raise AssumptionFailed("palindromic image is not cyclically reduced")
        bf = W.basic_form(core)
        adj_cls = next(c for c in dd.adj_classes if vi in c)
        for root, exp in bf.factors:
            supp = W.support_indices(root)
            if vi in supp:
                continue
            if supp <= adj_cls:
                continue
            if len(root) != 1:
                raise AssumptionFailed("non-primary factor is not a single vertex")
            u = g.vertices[next(iter(supp))]
            sgn = root.letters[0][1]
            im_u = cur.image(u)
            if im_u.letters == ((g.vertex_index(u), 1),):
                ell = 1
            elif im_u.letters == ((g.vertex_index(u), -1),):
                ell = -1
            else:
                raise AssumptionFailed("dominating factor vertex is moved nontrivially")
            total = exp * sgn
            if total % 2:
                raise AssumptionFailed("dominating factor has odd exponent")
            k = -ell * total // 2
            pal = A.ElemPalindromic(v, u)
            theta = [pal if k > 0 else A.FormalInverse(pal)] * abs(k)
            cand = A.compose(cur, compose_word(g, theta))
            new_supp = W.support_indices(cand.image(v))
            if g.vertex_index(u) in new_supp:
                raise AssumptionFailed("peeling failed to remove the dominating factor")
            cur = cand
            emitted.extend(theta)
        # clear the abelianised action on the adjacent domination class
        if not A.predicates(cur).is_simple and v in A.predicates(cur).non_simple_vertices:
            members = sorted(adj_cls)
            names = [g.vertices[i] for i in members]
            for u in names:
                if not W.support_indices(cur.image(u)) <= set(members):
                    raise AssumptionFailed("image escapes the adjacent domination class")
            rmat = tuple(
                tuple(W.exponent_vector(cur.image(names[c]))[members[rix]] for c in range(len(members)))
                for rix in range(len(members)))
            matsyms = M.factor_theta(rmat, _trivial_domination(len(members)))
            inv_syms = [ms.inverse() for ms in reversed(matsyms)]
            theta = []
            for ms in inv_syms:
                if ms.kind == "flip":
                    theta.append(A.Inversion(names[ms.i]))
                else:
                    base = A.ElemPalindromic(names[ms.j], names[ms.i])
                    step = base if ms.power > 0 else A.FormalInverse(base)
                    theta.extend([step] * abs(ms.power))
            cand = A.compose(cur, compose_word(g, theta))
            for u in names:
                i = g.vertex_index(u)
                if cand.images[i].letters != ((i, 1),):
                    raise AssumptionFailed("class clearing did not fix the class pointwise")
            cur = cand
            emitted.extend(theta)
    return tuple(emitted), cur
