import pytest

from ribbonmcg import groups as GR
from ribbonmcg import hopf as HO


def instances():
    return [HO.group_algebra(GR.cyclic(2), pivot="e"), HO.group_algebra(GR.cyclic(3), pivot="e"),
            HO.group_algebra(GR.symmetric(3), pivot="e"), HO.sweedler4(),
            HO.sweedler4(HO.PrimeField(3)), HO.group_algebra(GR.dihedral(4), HO.PrimeField(5), "r2")]


@pytest.mark.parametrize("H", instances(), ids=lambda H: f"{H.name}/{H.field}")
def test_axioms_pivot_T(H):
    for name, ok, wit in HO.check_hopf_axioms(H) + HO.check_pivot(H) + HO.check_T(H):
        assert ok, (name, wit)


def test_corrupted_fails():
    bad = HO.corrupted(HO.group_algebra(GR.cyclic(3), pivot="e"))
    assert not all(ok for _, ok, _ in HO.check_hopf_axioms(bad))


def test_group_algebra_pivots_are_center():
    for grp in (GR.symmetric(3), GR.dihedral(4)):
        H = HO.group_algebra(grp)
        found = sorted(next(iter(p)) for p in HO.find_pivots(H))
        assert found == sorted(grp.center)


def test_sweedler_pivot_search():
    H = HO.sweedler4()
    found = HO.find_pivots(H)
    assert H.pivot in found
    assert H.e(0) not in found  # S^2 is not the identity


def test_sweedler_T_involution():
    H = HO.sweedler4()
    for i in range(4):
        assert H.T(H.T(H.e(i))) == H.e(i)


def test_json_roundtrip(tmp_path):
    import json
    H = HO.sweedler4()
    p = tmp_path / "h.json"
    p.write_text(json.dumps(H.to_json()))
    H2 = HO.load_hopf(str(p))
    nz = lambda d: {k: v for k, v in d.items() if v}
    assert nz(H2.mult) == nz(H.mult) and H2.comult == H.comult and H2.pivot == H.pivot


def test_sweedler_needs_odd_characteristic():
    with pytest.raises(ValueError):
        HO.sweedler4(HO.PrimeField(2))


def test_prime_field_inverse():
    F = HO.PrimeField(7)
    assert F(3) * F(5) == F(1)
    assert F(1) / F(3) == F(5)
