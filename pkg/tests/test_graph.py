import random

import pytest

from ribbonmcg import graph as G
from ribbonmcg.graph import GraphError, GraphPath
from ribbonmcg.standard_form import random_admissible


def test_torus():
    g = G.torus_graph()
    assert g.vertex("x").order == ("a.s", "b.s", "a.t", "b.t")
    assert len(G.faces(g)) == 1
    assert G.genus(g) == 1
    assert G.has_cilium_bijection(g)


@pytest.mark.parametrize("genus,n", [(1, 0), (1, 1), (2, 0), (2, 2), (3, 1)])
def test_standard_graph_invariants(genus, n):
    g = G.standard_graph(genus, n)
    assert len(g.vertices) == n + 1
    assert len(G.faces(g)) == n + 1
    assert G.genus(g) == genus
    assert G.has_cilium_bijection(g)
    assert G.is_connected(g)
    assert len(G.generator_paths(genus, n)) == genus + G.curve_count(genus, n) ** 2


def test_standard_order_at_x():
    g = G.standard_graph(1, 1)
    assert g.vertex("x").order == ("m1.s", "n1.t", "m1.t", "a1.s", "b1.s", "a1.t", "b1.t")


def test_from_chords_reverses_baseline():
    g = G.from_chords(["a", "b"], [("ta", "b"), ("ta", "a"), ("st", "b"), ("st", "a")])
    assert g == G.torus_graph()


def test_validation_errors():
    with pytest.raises(GraphError):
        G.build_graph({"vertices": [{"id": "x", "order": ["a.s"]}],
                       "edges": [{"id": "a", "start": "a.s", "target": "a.t"}]})
    with pytest.raises(GraphError):
        G.build_graph({"vertices": [{"id": "x", "order": ["a.s", "a.t"]}, {"id": "x", "order": []}],
                       "edges": [{"id": "a", "start": "a.s", "target": "a.t"}]})


def test_json_roundtrip():
    g = G.standard_graph(2, 1)
    assert G.build_graph(g.dumps()) == g


def test_slide_labels_and_inverse():
    g = G.torus_graph()
    d = G.slide_descriptor(g, "b", "L")
    assert d.moved == "a.t"
    g2, pmap = G.slide(g, d)
    # a.t already sits right before b.t: same graph; old a runs along new a, then back along b
    assert g2 == g
    assert pmap["a"] == GraphPath((("a", 1), ("b", -1)))
    g3, back = G.slide(g2, d.inverse())
    assert g3 == g
    assert G.apply_path_map(back, pmap["a"]) == GraphPath((("a", 1),))


def test_slide_never_crosses_cilium():
    g = G.torus_graph()
    # the end before st(a) would wrap around the cilium
    with pytest.raises(G.CiliumCrossing):
        G.slide_candidate(g, "a", "R")


def test_every_defined_slide_is_invertible():
    rng = random.Random(3)
    for _ in range(10):
        g = random_admissible(2, 1, rng, steps=30)
        for e in g.edge_ids:
            for v in G.VARIANTS:
                try:
                    d = G.slide_descriptor(g, e, v)
                except GraphError:
                    continue
                if g.half_edges[d.moved].edge == e:
                    continue
                g2, _ = G.slide(g, d)
                assert G.genus(g2) == G.genus(g)
                assert G.slide(g2, d.inverse())[0] == g


def test_faces_partition_half_edges():
    g = G.standard_graph(2, 2)
    seen = [s for f in G.faces(g) for s in f.steps]
    assert len(seen) == len(set(seen)) == 2 * len(g.edges)


def test_add_and_remove_edge():
    g = G.standard_graph(1, 1)
    face = G.ciliated_face(g, "w1")
    g2, eid, _ = G.add_edge_to_face_path(g, face, "c")
    assert eid == "c"
    assert len(G.faces(g2)) == len(G.faces(g)) + 1
    assert G.remove_edge(g2, "c") == g


def test_add_loop_and_pendant():
    g = G.torus_graph()
    g2 = G.add_loop(g, "x", 0, "c")
    assert g2.vertex("x").order[:2] == ("c.t", "c.s")
    g3 = G.add_pendant(g, "x", 4, "d", "y")
    assert g3.vertex("y").order == ("d.t",)
    assert G.remove_edge(g3, "d") == g
    with pytest.raises(GraphError):
        G.add_loop(g, "x", 0, "a")


def test_reverse_edge_twice():
    g = G.standard_graph(1, 1)
    assert G.reverse_edge(G.reverse_edge(g, "m1"), "m1") == g


def test_rename_edges():
    g = G.torus_graph()
    h = G.rename_edges(g, {"a": "u"}, {"a.s": "u.s", "a.t": "u.t"}, order=("b", "u"))
    assert h.edge_ids == ("b", "u")
    assert h.vertex("x").order == ("u.s", "b.s", "u.t", "b.t")
