"""Words in a right-angled Artin group, stored in a canonical reduced form.

A group element is kept as the lexicographically least reduced word in its
shuffle class, so equality is tuple comparison.  Letters are pairs
(vertex index, sign); the letter order is the domination-derived vertex
order with positive sign before negative.
"""

from dataclasses import dataclass, field
from math import gcd

from .errors import (EmptyWord, GraphMismatch, NotReverseInvariant,
                     ParseError, RootSearchBudget, UnknownVertex)
from .graph import complement_components


def _reduce_letters(g, seq):
    """Cancel every shuffle-exposable inverse pair.  O(n^2) per pass."""
    seq = list(seq)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(seq):
            vi, si = seq[i]
            for j in range(i + 1, len(seq)):
                vj, sj = seq[j]
                if vj == vi:
                    if sj == -si:
                        del seq[j]
                        del seq[i]
                        changed = True
                        i -= 1
                    break
                if vj not in g.adj[vi]:
                    break
            i += 1
    return seq


def _lex_min(g, seq):
    """Greedy lexicographic normal form of a reduced letter sequence."""
    pos = g.domination().order_pos
    rem = list(seq)
    out = []
    while rem:
        best = None
        best_key = None
        for idx, (v, s) in enumerate(rem):
            if all(rem[t][0] in g.adj[v] for t in range(idx)):
                key = (pos[v], 0 if s > 0 else 1)
                if best_key is None or key < best_key:
                    best, best_key = idx, key
        out.append(rem.pop(best))
    return tuple(out)


def _canonical(g, seq):
    return _lex_min(g, _reduce_letters(g, seq))


@dataclass(frozen=True)
class GroupWord:
    """Canonical reduced representative of a group element."""

    graph: object
    letters: tuple

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self)

    def key(self):
        return self.letters


def word(g, letters):
    """Build a GroupWord from raw (vertex name or index, sign) letters."""
    seq = []
    for v, s in letters:
        if isinstance(v, str):
            v = g.vertex_index(v)
        elif not 0 <= v < g.n:
            raise UnknownVertex("vertex index %r out of range" % (v,))
        if s not in (1, -1):
            raise ParseError("letter sign must be +1 or -1")
        seq.append((v, s))
    return GroupWord(g, _canonical(g, seq))


def _wrap(g, seq):
    """Canonicalise a trusted index/sign sequence."""
    return GroupWord(g, _canonical(g, seq))


def empty_word(g):
    return GroupWord(g, ())


def _check_same_graph(w1, w2):
    if w1.graph != w2.graph:
        raise GraphMismatch("words live over different graphs")


def concat(*ws):
    g = ws[0].graph
    seq = []
    for w in ws:
        _check_same_graph(ws[0], w)
        seq.extend(w.letters)
    return _wrap(g, seq)


def inverse(w):
    return _wrap(w.graph, [(v, -s) for v, s in reversed(w.letters)])


def power(w, k):
    if k == 0:
        return empty_word(w.graph)
    base = w if k > 0 else inverse(w)
    return _wrap(w.graph, list(base.letters) * abs(k))


def equal(w1, w2):
    _check_same_graph(w1, w2)
    return w1.letters == w2.letters


def reverse(w):
    return _wrap(w.graph, list(reversed(w.letters)))


def is_reverse_invariant(w):
    return w.letters == reverse(w).letters


def support_length_exponents(w):
    """(support names, reduced length, exponent vector indexed by g.vertices)."""
    g = w.graph
    exps = [0] * g.n
    for v, s in w.letters:
        exps[v] += s
    supp = {g.vertices[v] for v, _ in w.letters}
    return supp, len(w.letters), tuple(exps)


def exponent_vector(w):
    return support_length_exponents(w)[2]


def support_indices(w):
    return {v for v, _ in w.letters}


def is_clique_supported(w):
    g = w.graph
    supp = sorted(support_indices(w))
    return all(g.adjacent(a, b) for x, a in enumerate(supp) for b in supp[x + 1:])


def cyclically_reduce(w):
    """Peel conjugating letters greedily; returns (conjugator, core)."""
    g = w.graph
    seq = list(w.letters)
    peeled = []
    while True:
        found = False
        for i, (v, s) in enumerate(seq):
            if not all(seq[t][0] in g.adj[v] for t in range(i)):
                continue
            for j in range(len(seq) - 1, -1, -1):
                if j == i:
                    continue
                vj, sj = seq[j]
                if vj == v and sj == -s and all(seq[t][0] in g.adj[v] for t in range(j + 1, len(seq))):
                    peeled.append((v, s))
                    del seq[max(i, j)]
                    del seq[min(i, j)]
                    found = True
                    break
            if found:
                break
        if not found:
            break
    return _wrap(g, peeled), _wrap(g, seq)


def shuffle_class(w, budget=200000):
    """All letter sequences shuffle-equivalent to w's canonical form.

    BFS over commuting adjacent transpositions; raises RootSearchBudget if the
    class exceeds `budget` members.
    """
    g = w.graph
    start = w.letters
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for seq in frontier:
            for i in range(len(seq) - 1):
                a, b = seq[i], seq[i + 1]
                if a[0] != b[0] and g.adjacent(a[0], b[0]):
                    cand = seq[:i] + (b, a) + seq[i + 2:]
                    if cand not in seen:
                        seen.add(cand)
                        if len(seen) > budget:
                            raise RootSearchBudget("shuffle class exceeds %d members" % budget)
                        nxt.append(cand)
        frontier = nxt
    return seen


@dataclass(frozen=True)
class BasicForm:
    factors: tuple        # pairs (root GroupWord, exponent int > 0)
    conjugator: object    # GroupWord


def _extract_root(u, budget=200000):
    """Maximal-power factorisation of a one-component cyclically reduced word."""
    g = u.graph
    L = len(u)
    if L <= 1:
        return u, 1
    exps = [e for e in exponent_vector(u) if e]
    gexp = 0
    for e in exps:
        gexp = gcd(gexp, abs(e))
    candidates = [m for m in range(L, 1, -1)
                  if L % m == 0 and (gexp == 0 or gexp % m == 0)]
    if not candidates:
        return u, 1
    reps = shuffle_class(u, budget)
    for m in candidates:
        k = L // m
        tried = set()
        for rep in reps:
            p = rep[:k]
            if p in tried:
                continue
            tried.add(p)
            root = GroupWord(g, _canonical(g, list(p)))
            if power(root, m).letters == u.letters:
                return root, m
    return u, 1


def basic_form(w, budget=200000):
    """Commuting-factor decomposition of the cyclically reduced core."""
    conj, core = cyclically_reduce(w)
    g = w.graph
    supp = {g.vertices[v] for v in support_indices(core)}
    comps = complement_components(g, supp)
    factors = []
    for comp in comps:
        comp_idx = {g.vertex_index(v) for v in comp}
        sub = [l for l in core.letters if l[0] in comp_idx]
        u = GroupWord(g, _canonical(g, sub))
        root, m = _extract_root(u, budget)
        factors.append((root, m))
    return BasicForm(factors=tuple(factors), conjugator=conj)


def rank_and_centralizer(w):
    """(rank, commuting factor roots, common link) of a nonempty element."""
    if len(w) == 0:
        raise EmptyWord("rank is not defined for the identity element")
    g = w.graph
    conj, core = cyclically_reduce(w)
    bf = basic_form(core)
    supp = support_indices(core)
    link = {g.vertices[j] for j in range(g.n)
            if j not in supp and all(j in g.adj[v] for v in supp)}
    rank = len(bf.factors) + len(link)
    return rank, [root for root, _ in bf.factors], link


@dataclass(frozen=True)
class CliquePalindromicForm:
    pieces: tuple

    def recompose(self):
        ps = list(self.pieces)
        return concat(*(ps[:-1] + [ps[-1]] + list(reversed(ps[:-1])))) if len(ps) > 1 else ps[0]


def clique_palindromic_form(w):
    """Mirror-peeling normal form for reverse-invariant elements.

    Splits w as w1 ... w_{k-1} wk w_{k-1} ... w1 with clique-supported pieces.
    """
    if not is_reverse_invariant(w):
        raise NotReverseInvariant("input is not equal to its reverse")
    g = w.graph
    pieces = []
    A = w
    while not is_clique_supported(A):
        supp = support_indices(A)
        central = {v for v in supp if all(u == v or u in g.adj[v] for u in supp)}
        seq = A.letters
        front = []
        for idx, (v, s) in enumerate(seq):
            if v in central:
                continue
            # same-vertex letters commute as group elements
            if all(seq[t][0] == v or seq[t][0] in g.adj[v] for t in range(idx)):
                front.append((v, s))
        if not front:
            raise NotReverseInvariant("peeling stalled; input was not reverse-invariant")
        w1 = _wrap(g, front)
        w1_inv = inverse(w1)
        A2 = concat(w1_inv, A, w1_inv)
        if len(A2) != len(A) - 2 * len(w1):
            raise NotReverseInvariant("peeling did not shorten the word as expected")
        pieces.append(w1)
        A = A2
    pieces.append(A)
    return CliquePalindromicForm(pieces=tuple(pieces))


def is_palindrome(w, budget=200000):
    """Whether some reduced representative is literally its own reverse."""
    if len(w) == 0:
        return True
    if not is_reverse_invariant(w):
        return False
    cpnf = clique_palindromic_form(w)
    centre = cpnf.pieces[-1]
    odd = sum(1 for e in exponent_vector(centre) if e % 2)
    return odd <= 1


# -- text format ----------------------------------------------------------


def parse_word(g, text):
    """Parse whitespace-separated tokens like "a b^-1 c^3"; "1" is empty."""
    text = text.strip()
    if text in ("", "1"):
        return empty_word(g)
    seq = []
    for tok in text.split():
        if "^" in tok:
            name, _, exp = tok.partition("^")
            try:
                k = int(exp)
            except ValueError:
                raise ParseError("bad exponent in token %r" % tok) from None
            if k == 0:
                raise ParseError("zero exponent in token %r" % tok)
        else:
            name, k = tok, 1
        v = g.vertex_index(name)
        s = 1 if k > 0 else -1
        seq.extend([(v, s)] * abs(k))
    return GroupWord(g, _canonical(g, seq))


def format_word(w):
    """Canonical form with adjacent equal letters folded into powers."""
    if not w.letters:
        return "1"
    g = w.graph
    out = []
    run_v, run_s, run_n = None, None, 0
    for v, s in list(w.letters) + [(None, None)]:
        if v == run_v and s == run_s:
            run_n += 1
            continue
        if run_v is not None:
            e = run_s * run_n
            out.append(g.vertices[run_v] if e == 1 else "%s^%d" % (g.vertices[run_v], e))
        run_v, run_s, run_n = v, s, 1
    return " ".join(out)
