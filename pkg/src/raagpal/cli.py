"""Command-line interface.

Query commands print their primary result (word commands print the bare
value, the rest print a JSON report); `verify` commands exit 0 when the
property holds and 1 with a witness when it does not.  Invalid input of any
kind maps to exit 2 with a machine-readable error object.
"""

import argparse
import json
import sys
import time

from .errors import RaagError, NotInTheta, ParseError, TorelliBudget
from . import autos as A
from . import corpus as C
from . import factor as F
from . import graph as G
from . import matrices as M
from . import words as W

SCHEMA = "raagpal/1"


def _load_graph(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError("cannot read graph file %r: %s" % (path, exc)) from None
    return G.SimplicialGraph.from_json(text)


def _load_aut(g, source):
    text = source
    if not source.lstrip().startswith("{"):
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError("cannot read automorphism file %r: %s" % (source, exc)) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("bad automorphism JSON: %s" % exc) from None
    return A.from_json_obj(g, obj)


def _report(args, result, witness=None, started=None):
    rep = {
        "schema": SCHEMA,
        "command": args._argv,
        "seed": getattr(args, "seed", 0),
        "result": result,
    }
    if witness is not None:
        rep["witness"] = witness
    if started is not None:
        rep["elapsed"] = round(time.time() - started, 6)
    return rep


def _emit(args, rep, primary=None):
    text = json.dumps(rep, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        if primary is not None:
            print(primary)
    else:
        print(primary if primary is not None else text)


# -- graph / word / aut commands ------------------------------------------


def cmd_graph_info(args):
    g = _load_graph(args.graph)
    dd = g.domination()
    result = {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.edge_names()],
        "classes": [{"members": sorted(g.vertices[i] for i in cls), "kind": kind}
                    for cls, kind in zip(dd.classes, dd.class_kind)],
        "vertex_order": [g.vertices[i] for i in dd.vertex_order],
        "has_adjacent_domination": G.has_adjacent_domination(g),
    }
    _emit(args, _report(args, result))
    return 0


def _word_cmd(args, fn):
    g = _load_graph(args.graph)
    w = W.parse_word(g, args.word)
    primary, result = fn(g, w)
    _emit(args, _report(args, result), primary=primary)
    return 0


def cmd_word_reduce(args):
    return _word_cmd(args, lambda g, w: (str(w), str(w)))


def cmd_word_reverse(args):
    return _word_cmd(args, lambda g, w: (str(W.reverse(w)),) * 2)


def cmd_word_palindrome(args):
    def fn(g, w):
        ans = W.is_palindrome(w)
        return ("true" if ans else "false", ans)
    return _word_cmd(args, fn)


def cmd_word_basicform(args):
    def fn(g, w):
        bf = W.basic_form(w)
        result = {
            "conjugator": str(bf.conjugator),
            "factors": [{"root": str(root), "exponent": m} for root, m in bf.factors],
        }
        return (json.dumps(result, sort_keys=True), result)
    return _word_cmd(args, fn)


def cmd_word_rank(args):
    def fn(g, w):
        rank, roots, link = W.rank_and_centralizer(w)
        result = {"rank": rank, "roots": [str(r) for r in roots], "link": sorted(link)}
        return (str(rank), result)
    return _word_cmd(args, fn)


def cmd_word_cpnf(args):
    def fn(g, w):
        form = W.clique_palindromic_form(w)
        pieces = [str(p) for p in form.pieces]
        return (json.dumps(pieces), pieces)
    return _word_cmd(args, fn)


def cmd_aut_new(args):
    g = _load_graph(args.graph)
    a = _load_aut(g, args.aut[0])
    _emit(args, _report(args, A.to_json_obj(a)))
    return 0


def cmd_aut_apply(args):
    g = _load_graph(args.graph)
    a = _load_aut(g, args.aut[0])
    w = W.parse_word(g, args.word)
    out = A.apply(a, w)
    _emit(args, _report(args, str(out)), primary=str(out))
    return 0


def cmd_aut_compose(args):
    g = _load_graph(args.graph)
    if len(args.aut) < 2:
        raise ParseError("compose needs at least two --aut arguments")
    auts = [_load_aut(g, s) for s in args.aut]
    _emit(args, _report(args, A.to_json_obj(A.compose(*auts))))
    return 0


def cmd_aut_check(args):
    g = _load_graph(args.graph)
    a = _load_aut(g, args.aut[0])
    p = A.predicates(a)
    result = {
        "inCiota": p.in_c_iota,
        "isPalindromic": p.is_palindromic,
        "isPure": p.is_pure,
        "isTorelli": p.is_torelli,
        "isSimple": p.is_simple,
    }
    _emit(args, _report(args, result))
    return 0


def cmd_aut_phi(args):
    g = _load_graph(args.graph)
    a = _load_aut(g, args.aut[0])
    _emit(args, _report(args, M.phi(a).to_json_obj()))
    return 0


def cmd_aut_phi2(args):
    g = _load_graph(args.graph)
    a = _load_aut(g, args.aut[0])
    dd = g.domination()
    result = {"order": [g.vertices[i] for i in dd.vertex_order],
              "rows": [list(r) for r in M.phi2(a)]}
    _emit(args, _report(args, result))
    return 0


def cmd_aut_split(args):
    g = _load_graph(args.graph)
    a = _load_aut(g, args.aut[0])
    delta, gamma = A.split_diagram_pure(a)
    result = {"diagram": A.to_json_obj(delta), "pure": A.to_json_obj(gamma)}
    _emit(args, _report(args, result))
    return 0


def cmd_aut_factor(args):
    g = _load_graph(args.graph)
    a = _load_aut(g, args.aut[0])
    budget = F.SearchBudget(depth=args.budget_depth)
    res = F.factor_any(a, budget)
    result = {
        "word": [F.format_word_symbol(s) for s in res.word],
        "residual": None if res.residual is None else A.to_json_obj(res.residual),
        "nodes": res.stats.get("nodes", 0),
        "depth": res.stats.get("torelli_length", 0),
    }
    _emit(args, _report(args, result))
    return 0


# -- verify commands -------------------------------------------------------


def cmd_verify_relators(args):
    started = time.time()
    n = args.n
    if n < 2:
        raise ParseError("--n must be at least 2")
    g = _load_graph(args.graph) if args.graph else None
    failures = []
    total = 0
    for name, idx, syms in M.relator_suite(n, g):
        total += 1
        if M.eval_word(n, syms) != M.identity_rows(n):
            failures.append({"relator": name, "indices": list(idx)})
    result = {"n": n, "instances": total, "failures": len(failures)}
    _emit(args, _report(args, result, witness=failures or None, started=started))
    return 1 if failures else 0


def cmd_verify_blocks(args):
    started = time.time()
    g = _load_graph(args.graph)
    dd = g.domination()
    failures = []
    for k, (syms, a) in enumerate(C.random_automorphisms(
            g, "aut0-centralizer", args.count, seed=args.seed)):
        bd = M.block_decompose(M.phi(a), dd)
        if bd.violations or not M.free_block_check(M.phi(a), dd):
            failures.append({"index": k,
                             "generators": [A.format_symbol(s) for s in syms],
                             "violations": [list(v) for v in bd.violations]})
    result = {"samples": args.count, "failures": len(failures)}
    _emit(args, _report(args, result, witness=failures or None, started=started))
    return 1 if failures else 0


def cmd_verify_exactseq(args):
    started = time.time()
    g = _load_graph(args.graph)
    table = F._phi2_witnesses(g)
    failures = []
    for k, (syms, a) in enumerate(C.random_automorphisms(
            g, "centralizer", args.count, seed=args.seed)):
        p = A.predicates(a)
        mod2_trivial = M.phi2(a) == M.identity_mod2(g.n)
        if p.is_pure != mod2_trivial:
            failures.append({"index": k, "reason": "purity-mismatch"})
        elif M.phi2(a) not in table:
            failures.append({"index": k, "reason": "mod2-image-outside-subgroup"})
    result = {"samples": args.count, "failures": len(failures)}
    _emit(args, _report(args, result, witness=failures or None, started=started))
    return 1 if failures else 0


def _adjdom_witness(g):
    """A transvection along an adjacent dominated pair, if one exists."""
    for s in F.dominated_transvection_symbols(g, adjacent_only=True):
        return s
    return None


def cmd_verify_adjdom(args):
    started = time.time()
    g = _load_graph(args.graph)
    has = G.has_adjacent_domination(g)
    witness = None
    ok = True
    if has:
        s = _adjdom_witness(g)
        a = A.make_generator(g, s)
        p = A.predicates(a)
        ok = p.in_c_iota and not p.is_palindromic
        witness = {"generator": A.format_symbol(s),
                   "inCiota": p.in_c_iota, "isPalindromic": p.is_palindromic}
    else:
        for s in F.centralizer_symbols(g):
            p = A.predicates(A.make_generator(g, s))
            if not p.is_palindromic:
                ok = False
                witness = {"generator": A.format_symbol(s), "isPalindromic": False}
                break
    result = {"has_adjacent_domination": has, "criterion_holds": ok}
    _emit(args, _report(args, result, witness=witness, started=started))
    return 0 if ok else 1


def cmd_verify_splittings(args):
    started = time.time()
    g = _load_graph(args.graph)
    failures = []
    samples = C.random_automorphisms(g, "palindromic", args.count, seed=args.seed)
    for k, (syms, a) in enumerate(samples):
        try:
            delta, gamma = A.split_diagram_pure(a)
        except RaagError as exc:
            failures.append({"index": k, "reason": exc.code})
            continue
        if A.compose(delta, gamma) != a or not A.predicates(gamma).is_pure:
            failures.append({"index": k, "reason": "split-roundtrip"})
    # the elementary palindromic part meets the inversions only trivially
    import random
    rng = random.Random(args.seed)
    pals = F.elem_palindromic_symbols(g)
    for k in range(args.count):
        if not pals:
            break
        syms = [rng.choice(pals) for _ in range(rng.randint(1, 6))]
        ep = F.compose_word(g, syms)
        if all(im.letters in (((i, 1),), ((i, -1),)) for i, im in enumerate(ep.images)):
            if not ep.is_identity():
                failures.append({"index": k, "reason": "elem-palindromic-meets-inversions"})
    result = {"samples": args.count, "failures": len(failures)}
    _emit(args, _report(args, result, witness=failures or None, started=started))
    return 1 if failures else 0


def cmd_verify_torelli(args):
    started = time.time()
    g = _load_graph(args.graph)
    budget = F.SearchBudget(depth=args.budget_depth)
    failures = []
    checked = 0
    for kind, triples in (("dct", F.dct_instances(g)), ("spt", F.spt_instances(g))):
        for t in triples:
            checked += 1
            aut = F.ChiSymbol(kind, t).to_automorphism(g)
            if M.phi(aut).rows != M.identity_rows(g.n):
                failures.append({"kind": kind, "indices": list(t), "reason": "phi"})
    lifted = 0
    for rel in M.relator_suite(g.n, g):
        aut = F.lift_relator(g, rel)
        checked += 1
        if M.phi(aut).rows != M.identity_rows(g.n):
            failures.append({"relator": rel[0], "indices": list(rel[1]), "reason": "phi"})
            continue
        if not aut.is_identity():
            lifted += 1
            try:
                word = F.factor_torelli_bfs(aut, budget)
            except TorelliBudget:
                failures.append({"relator": rel[0], "indices": list(rel[1]), "reason": "budget"})
                continue
            if F.compose_word(g, word) != aut:
                failures.append({"relator": rel[0], "indices": list(rel[1]), "reason": "roundtrip"})
    result = {"checked": checked, "nontrivial_lifts": lifted, "failures": len(failures)}
    _emit(args, _report(args, result, witness=failures or None, started=started))
    return 1 if failures else 0


# -- parser ----------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="raagpal",
                                description="Palindromic automorphisms of right-angled Artin groups")
    sub = p.add_subparsers(dest="group", required=True)

    def common(sp, graph_required=True, aut=False, word=False):
        sp.add_argument("--graph", required=graph_required)
        if aut:
            sp.add_argument("--aut", action="append", required=True)
        if word:
            sp.add_argument("--word", required=True)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget-depth", dest="budget_depth", type=int, default=4)
        sp.add_argument("--out")

    gp = sub.add_parser("graph").add_subparsers(dest="cmd", required=True)
    sp = gp.add_parser("info")
    common(sp)
    sp.set_defaults(fn=cmd_graph_info)

    wp = sub.add_parser("word").add_subparsers(dest="cmd", required=True)
    for name, fn in (("reduce", cmd_word_reduce), ("reverse", cmd_word_reverse),
                     ("palindrome", cmd_word_palindrome), ("basicform", cmd_word_basicform),
                     ("rank", cmd_word_rank), ("cpnf", cmd_word_cpnf)):
        sp = wp.add_parser(name)
        common(sp, word=True)
        sp.set_defaults(fn=fn)

    ap = sub.add_parser("aut").add_subparsers(dest="cmd", required=True)
    for name, fn, needs_word in (("new", cmd_aut_new, False), ("apply", cmd_aut_apply, True),
                                 ("compose", cmd_aut_compose, False), ("check", cmd_aut_check, False),
                                 ("phi", cmd_aut_phi, False), ("phi2", cmd_aut_phi2, False),
                                 ("split", cmd_aut_split, False), ("factor", cmd_aut_factor, False)):
        sp = ap.add_parser(name)
        common(sp, aut=True, word=needs_word)
        sp.set_defaults(fn=fn)

    vp = sub.add_parser("verify").add_subparsers(dest="cmd", required=True)
    sp = vp.add_parser("relators")
    sp.add_argument("--n", type=int, required=True)
    common(sp, graph_required=False)
    sp.set_defaults(fn=cmd_verify_relators)
    for name, fn in (("blocks", cmd_verify_blocks), ("exactseq", cmd_verify_exactseq),
                     ("adjdom", cmd_verify_adjdom), ("splittings", cmd_verify_splittings),
                     ("torelli", cmd_verify_torelli)):
        sp = vp.add_parser(name)
        common(sp)
        sp.add_argument("--count", type=int, default=100)
        sp.set_defaults(fn=fn)
    return p


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    args._argv = argv
    try:
        return args.fn(args)
    except RaagError as exc:
        print(json.dumps({"error": {"code": exc.code, "message": str(exc)}}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
