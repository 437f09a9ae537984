import pytest

from selfsim.graph import (BoundaryPoint, Graph, GraphError, Path, concat, parse_point,
                           q_map, render_point, sample_points, strip_prefix)


def two_vertex():
    return Graph.from_edges(["v", "w"], {"e": ("w", "v"), "f": ("w", "v")})


def test_rose_validates():
    assert Graph.rose(2).validate(boundary_ready=True) == []


def test_edgeless_vertex_is_source_and_sink():
    g = Graph.from_edges(["v"], {})
    assert g.validate(boundary_ready=True) == ["vertex 'v' is source and sink"]


def test_single_edge_defects_at_both_ends():
    g = Graph.from_edges(["v", "w"], {"e": ("w", "v")})
    defects = g.validate(boundary_ready=True)
    assert len(defects) == 2
    assert any("'v'" in d for d in defects) and any("'w'" in d for d in defects)
    assert g.validate() == []


def test_concat_identity_and_words():
    g = Graph.rose(2)
    a = g.parse_path("01")
    assert concat(g.vertex_path(0), a) == a == concat(a, g.vertex_path(0))
    assert concat(a, g.parse_path("10")).edges == g.parse_path("0110").edges


def test_concat_undefined_on_mismatch():
    g = Graph.from_edges(["v", "w"], {"e": ("w", "v"), "f": ("w", "v")})
    e, f = g.parse_path("e"), g.parse_path("f")
    assert concat(e, f) is None
    with pytest.raises(GraphError):
        g.parse_path("e f")


def test_collapse():
    g = Graph.from_edges(["u", "v", "w"], {str(i): ("u", "v") for i in range(5)})
    c = g.collapse()
    assert c.num_vertices == 1 and c.num_edges == 5
    assert c.collapse() is c
    r = Graph.rose(3)
    assert r.collapse() is r


def test_q_map():
    g = two_vertex()
    assert q_map(g.vertex_path(1)).edges == ()
    p = Graph.rose(2).parse_path("011")
    assert q_map(p).edges == p.edges and len(q_map(p)) == 3


def test_path_counts_rose():
    for n in (2, 3):
        g = Graph.rose(n)
        for k in range(5):
            assert len(list(g.paths(k))) == n ** k


def test_path_counts_match_adjacency():
    import numpy as np
    g = Graph.from_edges(["v", "w"], {"a": ("v", "v"), "b": ("w", "w"),
                                      "c": ("v", "w"), "d": ("w", "v")})
    A = np.zeros((2, 2), dtype=int)
    for e in range(g.num_edges):
        A[g.range_of[e], g.source_of[e]] += 1
    for k in range(1, 5):
        assert len(list(g.paths(k))) == np.linalg.matrix_power(A, k).sum()


def test_strip_prefix():
    g = Graph.rose(2)
    assert strip_prefix(g.parse_path("01"), g.parse_path("0110")).edges == (1, 0)
    assert strip_prefix(g.parse_path("1"), g.parse_path("0110")) is None


def test_boundary_point_normal_form():
    assert BoundaryPoint((1, 1), (1,)) == BoundaryPoint((), (1,))
    assert BoundaryPoint((0,), (1, 0)) == BoundaryPoint((), (0, 1))
    assert BoundaryPoint((), (0, 0)) == BoundaryPoint((), (0,))
    x = BoundaryPoint((0, 1), (1, 0))
    assert x.prefix(6) == (0, 1, 1, 0, 1, 0)
    assert x.shift(3).prefix(3) == (0, 1, 0)
    with pytest.raises(ValueError):
        BoundaryPoint((0,), ())


def test_point_parse_render_roundtrip():
    g = Graph.rose(2)
    for text in ["(1)", "01(0)", "0(01)"]:
        assert render_point(g, parse_point(g, text)) == text
    assert render_point(g, parse_point(g, "1(01)")) == "(10)"
    with pytest.raises(GraphError):
        parse_point(g, "01")


def test_sample_points_have_requested_prefixes():
    g = Graph.rose(2)
    pts = sample_points(g, 4)
    assert {p.prefix(4) for p in pts} == {p.edges for p in g.paths(4)}
