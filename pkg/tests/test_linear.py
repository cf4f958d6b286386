import itertools

import pytest

from ribbonmcg import graph as G
from ribbonmcg import groups as GR
from ribbonmcg import hopf as HO
from ribbonmcg import linear as LI
from ribbonmcg import mcg as M


def test_group_algebra_matches_group_backend():
    """On F[G] every generator sends basis labelings to basis labelings as the group evaluation does."""
    grp = GR.dihedral(4)
    p = grp.element("r2")
    H = HO.group_algebra(grp, pivot="r2")
    calc = LI.Calculus(H)
    g = G.standard_graph(1, 1)
    edges = g.edge_ids
    for op in M.generating_twists(1, 1).values():
        rel = M.symbolic(op)
        for tup in itertools.islice(itertools.product(range(8), repeat=4), 0, 4096, 37):
            out = LI.run_linear(calc, op, {tup: H.field(1)})
            lab = rel.evaluate(grp, p, dict(zip(edges, tup)))
            assert out == {tuple(lab[e] for e in edges): 1}


def test_torus_dimensions_sweedler():
    calc = LI.Calculus(HO.sweedler4())
    bi = LI.biinvariants(calc, G.torus_graph(), "x")
    assert (len(bi.keys), bi.dim_coinv, bi.dim) == (16, 5, 5)


def test_torus_dimensions_group_algebra():
    grp = GR.symmetric(3)
    calc = LI.Calculus(HO.group_algebra(grp, pivot="e"))
    bi = LI.biinvariants(calc, G.torus_graph(), "x")
    assert (len(bi.keys), bi.dim_coinv, bi.dim) == (36, 18, 8)
    assert bi.dim == GR.biinvariants(grp, G.torus_graph(), "x", grp.identity).count


def test_braid_as_matrices():
    calc = LI.Calculus(HO.sweedler4())
    g = G.torus_graph()
    Da, Db = M.twist_loop_op(g, "a"), M.twist_loop_op(g, "b")
    ok, _ = LI.operators_equal(calc, Da.then(Db).then(Da), Db.then(Da).then(Db))
    assert ok
    ok, wit = LI.operators_equal(calc, Da, Db)
    assert not ok and wit is not None


def test_full_twist_identity_on_biinvariants():
    calc = LI.Calculus(HO.sweedler4())
    g = G.torus_graph()
    bi = LI.biinvariants(calc, g, "x")
    full = M.mcg_word_op(g, "(D_b D_a D_b)^4")
    assert LI.is_identity_map(LI.induced_on_biinv(bi, full))
    assert not LI.is_identity_map(LI.induced_on_biinv(bi, M.twist_loop_op(g, "a")))


def test_kernel():
    F = HO.QQ
    cols = [{"u": F(1)}, {"u": F(1)}, {"v": F(1)}]
    ker = LI.kernel(cols, F)
    assert len(ker) == 1
    (v,) = ker
    assert v[0] == -v[1] and 2 not in v


def test_dimension_budget():
    calc = LI.Calculus(HO.sweedler4())
    g = G.standard_graph(2, 0)
    with pytest.raises(LI.DimensionBudget):
        LI.biinvariants(calc, g, "x", max_dim=100)


def test_equivariance_z2():
    calc = LI.Calculus(HO.group_algebra(GR.cyclic(2), pivot="e"))
    for op in M.generating_twists(1, 1).values():
        for v in ("x", "w1"):
            assert LI.equivariance(calc, op, v)[0]
