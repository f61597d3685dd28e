import pytest

from raagpal.errors import InvalidGraph, SizeLimit, UnknownVertex
from raagpal import graph as G

from conftest import edgeless3, path3, square4, square_diag4, triangle3


def test_construction_rejects_bad_input():
    with pytest.raises(InvalidGraph):
        G.SimplicialGraph(["a", "a"], [])
    with pytest.raises(InvalidGraph):
        G.SimplicialGraph(["a b"], [])
    with pytest.raises(InvalidGraph):
        G.SimplicialGraph(["a"], [("a", "a")])
    with pytest.raises(UnknownVertex):
        G.SimplicialGraph(["a"], [("a", "b")])


def test_json_roundtrip_and_duplicate_edges():
    g = path3()
    g2 = G.SimplicialGraph.from_json(g.to_json())
    assert g == g2
    with pytest.raises(InvalidGraph):
        G.SimplicialGraph.from_json(
            '{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}')


def test_link_star():
    g = path3()
    assert G.neighborhood(g, "b") == {"a", "c"}
    assert G.neighborhood(g, "b", "star") == {"a", "b", "c"}
    assert G.neighborhood(g, "a") == {"b"}


def test_domination_path():
    g = path3()
    assert G.dominates(g, "a", "b")
    assert G.dominates(g, "a", "c")
    assert G.dominates(g, "c", "a")
    assert not G.dominates(g, "b", "a")
    assert not G.dominates(g, "b", "c")
    dd = g.domination()
    named = [sorted(g.vertices[i] for i in cls) for cls in dd.classes]
    assert named == [["a", "c"], ["b"]]
    assert dd.class_kind == ("free", "abelian")
    assert [g.vertices[i] for i in dd.vertex_order] == ["a", "c", "b"]


def test_domination_edgeless_and_triangle():
    ge = edgeless3()
    dd = ge.domination()
    assert len(dd.classes) == 1 and dd.class_kind == ("free",)
    gk = triangle3()
    dd = gk.domination()
    assert len(dd.classes) == 1 and dd.class_kind == ("abelian",)


def test_domination_square_variants():
    g = square4()
    dd = g.domination()
    named = [sorted(g.vertices[i] for i in cls) for cls in dd.classes]
    assert named == [["a", "c"], ["b", "d"]]
    assert dd.class_kind == ("free", "free")
    assert not G.has_adjacent_domination(g)

    g2 = square_diag4()
    dd2 = g2.domination()
    named2 = [sorted(g2.vertices[i] for i in cls) for cls in dd2.classes]
    assert named2 == [["b", "d"], ["a", "c"]]
    assert dd2.class_kind == ("free", "abelian")
    assert G.has_adjacent_domination(g2)


def test_has_adjacent_domination_fixture_values():
    assert G.has_adjacent_domination(path3())
    assert not G.has_adjacent_domination(edgeless3())
    assert G.has_adjacent_domination(triangle3())


def test_domination_is_transitive_and_reflexive(fixture_graph):
    g = fixture_graph
    dd = g.domination()
    for i in range(g.n):
        assert dd.dominates[i][i]
        for j in range(g.n):
            for k in range(g.n):
                if dd.dominates[i][j] and dd.dominates[j][k]:
                    assert dd.dominates[i][k]


def test_class_dichotomy(fixture_graph):
    dd = fixture_graph.domination()
    assert all(kind in ("free", "abelian") for kind in dd.class_kind)


def test_components_excluding_star():
    g = path3()
    assert G.components_excluding_star(g, "b") == []
    assert G.components_excluding_star(g, "a") == [{"c"}]
    ge = edgeless3()
    assert G.components_excluding_star(ge, "x") == [{"y"}, {"z"}]


def test_complement_components():
    g = path3()
    assert G.complement_components(g, {"a", "b", "c"}) == [{"a", "c"}, {"b"}]
    gk = triangle3()
    assert G.complement_components(gk, {"p", "q", "r"}) == [{"p"}, {"q"}, {"r"}]


def test_gamma_v_partition_path():
    g = path3()
    gamma, xv, factors = G.gamma_v_partition(g, "a")
    assert gamma == {"a", "c"}
    assert xv == {"a", "c"}
    assert factors == []


def test_gamma_v_partition_edgeless():
    ge = edgeless3()
    gamma, xv, factors = G.gamma_v_partition(ge, "x")
    assert gamma == {"x", "y", "z"}
    assert xv == {"x", "y", "z"}
    assert factors == []


def test_induced_subgraph_keeps_order():
    g = square4()
    h = G.induced_subgraph(g, {"c", "a", "b"})
    assert h.vertices == ("a", "b", "c")
    assert h.edge_names() == [("a", "b"), ("b", "c")]


def test_graph_automorphisms():
    g = path3()
    perms = G.graph_automorphisms(g)
    assert perms[0] == {"a": "a", "b": "b", "c": "c"}
    assert {"a": "c", "b": "b", "c": "a"} in perms
    assert len(perms) == 2
    ge = edgeless3()
    assert len(G.graph_automorphisms(ge)) == 6
    big = G.SimplicialGraph([str(i) for i in range(9)], [])
    with pytest.raises(SizeLimit):
        G.graph_automorphisms(big)
