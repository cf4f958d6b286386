import itertools

import pytest

from ribbonmcg import groups as GR
from ribbonmcg.graph import standard_graph, torus_graph


@pytest.mark.parametrize("grp", [GR.cyclic(4), GR.dihedral(4), GR.symmetric(3), GR.symmetric(4),
                                 GR.klein(), GR.quaternion()])
def test_axioms(grp):
    assert grp.check_axioms()


def test_centers():
    assert [GR.dihedral(4).names[z] for z in GR.dihedral(4).center] == ["e", "r2"]
    assert GR.symmetric(3).center == (GR.symmetric(3).identity,)
    assert len(GR.quaternion().center) == 2


def test_pivot_checks():
    s3 = GR.symmetric(3)
    with pytest.raises(GR.PivotError, match="not a central element"):
        s3.checked_pivot("r")
    with pytest.raises(GR.PivotError):
        s3.checked_pivot("nope")
    assert GR.dihedral(4).checked_pivot("r2") == GR.dihedral(4).element("r2")


def test_load_group_named_table(tmp_path):
    p = tmp_path / "z2.json"
    p.write_text('{"name": "Z2", "elements": ["e", "g"], "table": [["e", "g"], ["g", "e"]]}')
    assert GR.load_group(str(p)).order == 2
    with pytest.raises(ValueError):
        GR.group_from_table("bad", ["e", "g"], [[0, 1], [0, 1]])


def commuting_pairs(grp):
    return sum(grp.mul(a, b) == grp.mul(b, a) for a in range(grp.order) for b in range(grp.order))


@pytest.mark.parametrize("grp", [GR.cyclic(2), GR.symmetric(3), GR.dihedral(4)])
def test_torus_coinvariants_are_commuting_pairs(grp):
    co = GR.coinvariants(grp, torus_graph(), "x", grp.identity)
    assert len(co) == commuting_pairs(grp)


@pytest.mark.parametrize("grp,genus", [(GR.symmetric(3), 1), (GR.symmetric(3), 2), (GR.dihedral(4), 2)])
def test_class_function_count(grp, genus):
    assert GR.class_function_count(grp, genus) == GR.brute_force_commutator_count(grp, genus)


def test_orbits_torus_s3():
    grp = GR.symmetric(3)
    bi = GR.biinvariants(grp, torus_graph(), "x", grp.identity)
    # commuting pairs up to simultaneous conjugation
    seen = set()
    for a, b in itertools.product(range(6), repeat=2):
        if grp.mul(a, b) == grp.mul(b, a):
            seen.add(min((grp.mul(grp.mul(h, a), grp.inv(h)), grp.mul(grp.mul(h, b), grp.inv(h)))
                         for h in range(6)))
    assert bi.count == len(seen) == 8


def test_budget():
    with pytest.raises(GR.BudgetExceeded):
        GR.coinvariants(GR.symmetric(3), standard_graph(2, 0), "x", 0, max_states=100)


def test_boundary_coinvariants_count():
    grp = GR.cyclic(3)
    g = standard_graph(1, 1)
    co = GR.coinvariants(grp, g, "x", grp.identity)
    assert len(co) == 3 ** 3
