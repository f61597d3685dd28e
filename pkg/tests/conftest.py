import random

import pytest

from raagpal.graph import SimplicialGraph


def path3():
    return SimplicialGraph(["a", "b", "c"], [("a", "b"), ("b", "c")])


def edgeless3():
    return SimplicialGraph(["x", "y", "z"], [])


def triangle3():
    return SimplicialGraph(["p", "q", "r"], [("p", "q"), ("q", "r"), ("p", "r")])


def square4():
    return SimplicialGraph(["a", "b", "c", "d"],
                           [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])


def square_diag4():
    return SimplicialGraph(["a", "b", "c", "d"],
                           [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")])


FIXTURES = {
    "path": path3,
    "edgeless": edgeless3,
    "triangle": triangle3,
    "square": square4,
    "square_diag": square_diag4,
}


@pytest.fixture(params=sorted(FIXTURES))
def fixture_graph(request):
    return FIXTURES[request.param]()


@pytest.fixture
def gp():
    return path3()


@pytest.fixture
def ge():
    return edgeless3()


@pytest.fixture
def gk():
    return triangle3()


# -- brute-force oracles ---------------------------------------------------


def closure(g, seq):
    """All letter sequences reachable by commuting swaps and adjacent
    inverse-pair cancellation."""
    start = tuple(seq)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for i in range(len(s) - 1):
                a, b = s[i], s[i + 1]
                cands = []
                if a[0] == b[0] and a[1] == -b[1]:
                    cands.append(s[:i] + s[i + 2:])
                if a[0] != b[0] and g.adjacent(a[0], b[0]):
                    cands.append(s[:i] + (b, a) + s[i + 2:])
                for c in cands:
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
        frontier = nxt
    return seen


def minimal_forms(g, seq):
    """The reduced shuffle class of a raw letter sequence, by brute force."""
    cl = closure(g, seq)
    m = min(len(s) for s in cl)
    return {s for s in cl if len(s) == m}


def random_raw(g, rng, max_len=8):
    length = rng.randint(0, max_len)
    return [(rng.randrange(g.n), rng.choice((1, -1))) for _ in range(length)]


def random_reverse_invariant_raw(g, rng, max_len=8):
    """u m rev(u) with optional middle letter; reverse-invariant by shape."""
    half = rng.randint(0, max_len // 2)
    u = [(rng.randrange(g.n), rng.choice((1, -1))) for _ in range(half)]
    mid = []
    if rng.random() < 0.7:
        mid = [(rng.randrange(g.n), rng.choice((1, -1)))] * rng.choice((1, 3))
    return u + mid + list(reversed(u))


def seeded(name, seed=0):
    return random.Random((name, seed).__repr__())
