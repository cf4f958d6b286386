import pytest

from ribbonmcg import graph as G
from ribbonmcg import groups as GR
from ribbonmcg import mcg as M
from ribbonmcg.graph import GraphPath
from ribbonmcg.words import compose, parse_word


def test_torus_twist_formulas():
    g = G.torus_graph()
    assert M.symbolic(M.twist_loop_op(g, "b"))["a"] == parse_word("b a")
    assert M.symbolic(M.twist_loop_op(g, "a"))["b"] == parse_word("b a^-1")


def test_twist_on_s3_labels():
    g = G.torus_graph()
    grp = GR.symmetric(3)
    rel = M.symbolic(M.twist_loop_op(g, "b"))
    lab = {"a": grp.element("r"), "b": grp.element("s")}
    out = rel.evaluate(grp, grp.identity, lab)
    assert [grp.names[out[e]] for e in "ab"] == ["sr", "s"]


def test_operator_inverse():
    g = G.standard_graph(1, 1)
    op = M.generating_twists(1, 1)["gamma_0_1"]
    back = op.then(op.inverse())
    assert back.codomain == g
    assert M.symbolic(back) == M.symbolic(M.Operator.identity(g))


def test_twist_power_is_repeat():
    g = G.torus_graph()
    d = M.twist_loop_op(g, "b")
    assert M.symbolic(d ** 3) == M.symbolic(M.twist_loop_op(g, "b", 3))
    assert M.symbolic(M.twist_loop_op(g, "b", -1)) == M.symbolic(d.inverse())


def test_generator_count():
    assert len(M.generating_twists(2, 0)) == 11
    assert len(M.generating_twists(1, 1)) == 5


@pytest.mark.parametrize("genus,n,i,j", [(2, 0, 1, 2), (1, 2, 1, 2), (3, 0, 1, 2), (3, 0, 2, 4)])
def test_gamma_routes_agree(genus, n, i, j):
    a = M.twist_gamma_op(genus, n, i, j, route=1)
    b = M.twist_gamma_op(genus, n, i, j, route=2)
    assert a.codomain == b.codomain == G.standard_graph(genus, n)
    assert M.symbolic(a) == M.symbolic(b)


def test_twists_are_endomorphisms():
    g = G.standard_graph(1, 2)
    for op in M.generating_twists(1, 2).values():
        assert op.domain == g and op.codomain == g


def test_normalize_name():
    assert M.normalize_name("D_{δ₂}") == "delta_2"
    assert M.normalize_name("γ12") == "gamma_1_2"
    assert M.normalize_name("alpha1") == "alpha_1"


def test_word_op_composition_order():
    g = G.torus_graph()
    op = M.mcg_word_op(g, "D_a D_b")
    ra, rb = M.symbolic(M.twist_loop_op(g, "a")), M.symbolic(M.twist_loop_op(g, "b"))
    assert M.symbolic(op) == compose(ra, rb)
    full = M.mcg_word_op(g, "(D_b D_a D_b)^4")
    assert M.symbolic(full) == M.symbolic(M.vertex_face_twist_op(g, "x"))


def test_unknown_twist():
    with pytest.raises(KeyError):
        M.mcg_word_op(G.torus_graph(), "D_q")


def test_face_slide_label():
    g = G.torus_graph()
    op = M.face_slide_op(g, GraphPath((("b", 1),)))
    assert M.symbolic(op)["a"] == parse_word("b a")


def test_add_edge_then_remove():
    g = G.torus_graph()
    op, eid = M.add_edge_op(g, GraphPath((("a", 1),)), "c")
    back = op.then(M.remove_edge_op(op.codomain, eid))
    assert back.codomain == g
    assert M.symbolic(back) == M.symbolic(M.Operator.identity(g))
