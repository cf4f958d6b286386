import random

import pytest

from ribbonmcg import graph as G
from ribbonmcg import standard_form as SF
from ribbonmcg.graph import GraphError


@pytest.mark.parametrize("genus,n", [(1, 0), (1, 1), (2, 0), (2, 1), (1, 2), (3, 0), (2, 2)])
def test_random_graphs_reduce(genus, n):
    rng = random.Random(genus * 10 + n)
    for _ in range(6):
        g = SF.random_admissible(genus, n, rng)
        sf = SF.standard_form(g)
        assert (sf.genus, sf.boundaries) == (genus, n)
        assert sf.standard == G.standard_graph(genus, n)
        final, crossings = SF.replay(sf.moves, g)
        assert crossings == 0
        assert final == sf.graph
        assert G.genus(final) == G.genus(g)


def test_chord_diagrams_reduce():
    rng = random.Random(5)
    for genus in (1, 2, 3):
        g = SF.random_chord_diagram(genus, rng)
        sf = SF.standard_form(g)
        assert sf.standard == G.standard_graph(genus, 0)


def test_standard_is_fixed():
    g = G.standard_graph(2, 1)
    sf = SF.standard_form(g)
    assert sf.moves == [] and sf.slide_count == 0
    assert SF.is_standard(g)
    moved = SF.random_admissible(2, 1, random.Random(1), rename=False)
    assert moved == g or not SF.is_standard(moved)


def test_rejects_bad_input():
    disconnected = G.build_graph({"vertices": [{"id": "x", "order": ["a.s", "a.t"]},
                                               {"id": "y", "order": ["b.s", "b.t"]}],
                                  "edges": [{"id": "a", "start": "a.s", "target": "a.t"},
                                            {"id": "b", "start": "b.s", "target": "b.t"}]})
    with pytest.raises(GraphError):
        SF.standard_form(disconnected)
    sphere = G.build_graph({"vertices": [{"id": "x", "order": ["a.s", "a.t"]}],
                            "edges": [{"id": "a", "start": "a.s", "target": "a.t"}]})
    with pytest.raises(GraphError):
        SF.standard_form(sphere)
