"""Seeded random corpora of words and automorphisms for testing and the CLI."""

import random

from . import autos as A
from . import factor as F
from . import words as W


def random_words(g, count, max_len=8, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        length = rng.randint(0, max_len)
        letters = [(rng.randrange(g.n), rng.choice((1, -1))) for _ in range(length)]
        out.append(W.word(g, letters))
    return out


def random_letter_sequences(g, count, max_len=8, seed=0):
    """Raw unreduced letter sequences, for exercising the canonicaliser."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        length = rng.randint(0, max_len)
        out.append([(rng.randrange(g.n), rng.choice((1, -1))) for _ in range(length)])
    return out


_POOLS = {
    "pure": F.pure_symbols,
    "palindromic": F.palindromic_symbols,
    "centralizer": F.centralizer_symbols,
    "aut0-centralizer": F.aut0_centralizer_symbols,
}


def random_automorphisms(g, kind, count, max_gens=8, seed=0):
    """Random generator words in the pool for `kind`, with inverse letters."""
    rng = random.Random(seed)
    pool = _POOLS[kind](g)
    out = []
    for _ in range(count):
        length = rng.randint(0, max_gens)
        syms = []
        for _ in range(length):
            s = rng.choice(pool)
            if rng.random() < 0.5 and not isinstance(s, A.Inversion):
                s = A.FormalInverse(s)
            syms.append(s)
        out.append((syms, F.compose_word(g, syms)))
    return out


def random_suite(g, kind, count, seed=0, max_len=8):
    """Dispatch: kind "words" gives GroupWords, anything else automorphisms."""
    if kind == "words":
        return random_words(g, count, max_len=max_len, seed=seed)
    return random_automorphisms(g, kind, count, max_gens=max_len, seed=seed)
