import json

import pytest

from ribbonmcg import graph as G
from ribbonmcg import groups as GR
from ribbonmcg import hopf as HO
from ribbonmcg import verify as V


def test_report_json_is_deterministic():
    a = V.bene_suite().dumps(timings=False)
    b = V.bene_suite().dumps(timings=False)
    assert a == b
    d = json.loads(a)
    assert d["ok"] and d["total"] == len(d["cases"])


def test_controls_are_detected():
    rep = V.bene_suite()
    controls = [r for r in rep.results if r.expected == "fail"]
    assert controls and all(r.verdict == "fail" and r.witness for r in controls)


def test_broken_case_turns_suite_red():
    bad = V.Case("broken", lambda: (False, "w"))
    rep = V.run_cases("x", [bad])
    assert not rep.ok and "UNEXPECTED" in rep.summary()
    rep = V.run_cases("x", [V.Case("control", lambda: (True, None), control=True)])
    assert not rep.ok


@pytest.mark.parametrize("genus,n,count", [(2, 0, 21), (1, 1, 6), (1, 2, 21), (3, 0, 90)])
def test_iv_case_counts(genus, n, count):
    assert len(V.iv_triples(genus, n)) == count


def test_intersection_symmetric():
    curves = V.curve_list(2, 1)
    for a in curves:
        for b in curves:
            assert V.intersection(a, b, 2, 1) == V.intersection(b, a, 2, 1)


def test_gervais_genus_zero():
    with pytest.raises(V.PreconditionError):
        V.gervais_cases(0, 2)


def test_gervais_small():
    rep = V.gervais_suite(1, 1, crosscheck=[(GR.dihedral(4), "r2")])
    assert rep.ok, rep.summary()
    assert any("metamorphic" in r.tags for r in rep.results)


def test_wraparound_relation_tagged():
    tags = [c.tags for c in V.gervais_cases(2, 0) if c.name.startswith("i/")]
    assert tags and all("wraparound" in t for t in tags)


def test_perturbed_relation_fails():
    rc = V.RelationCase("wrong", ("delta_0",), ("delta_1",))
    rep = V.run_suite([rc], 2, 0)
    assert rep.results[0].verdict == "fail" and rep.results[0].witness["edge"]


def test_table_rows():
    assert V.table_suite().ok


def test_torus_and_lemmas_symbolic():
    assert V.torus_suite().ok
    assert V.lemma_suite().ok


def test_lemmas_linear_small():
    assert V.lemma_suite(V.make_backend("linear"), limit=2).ok


def test_closed_gate():
    with pytest.raises(V.PreconditionError):
        V.closed_suite(2, 0, GR.cyclic(3), "g")
    rep = V.closed_suite(2, 0, GR.dihedral(4), "r2")
    assert rep.ok, rep.summary()


def test_closed_torus_linear():
    assert V.closed_suite(1, 0, hopf=HO.sweedler4()).ok


def test_equivariance_group_backend():
    rep = V.equivariance_suite(1, 1, V.GroupBackend(GR.dihedral(4), "r2", 10 ** 6))
    assert rep.ok


def test_face_paths_are_face_paths():
    g = G.standard_graph(1, 1)
    for p in V.face_paths(g, 3):
        assert G.is_face_path(g, p)


def test_hopf_suite():
    rep = V.hopf_suite()
    assert rep.ok, rep.summary()
