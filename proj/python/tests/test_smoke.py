import pytest

import floerforge as ff


def test_catalog_loads_and_selfchecks():
    ids = ff.catalog_ids()
    assert "T(2,8)" in ids and "unknot" in ids
    items = ff.catalog_selfcheck()
    assert items and all(i["ok"] for i in items)


def test_realize_decompose_round_trip():
    summands = ["B[-4][0,0]", "B[-6][-1,-1]", "Y[0]^0[2,2]"]
    for field in ("gf2", "q"):
        c = ff.realize(summands, field)
        assert ff.validate(c) == []
        got = ff.decompose(c)
        assert got == ff.census(c)
        ok, mismatches = ff.verify(c, got)
        assert ok, mismatches


def test_reduction_keeps_homology():
    c = ff.realize(["V[0]^2[0,0]", "X[1]^1[1/2,1/2]"], "q")
    r = ff.reduce(c)
    assert ff.homology(r) == ff.homology(c)
    assert ff.total_homology(r) == ff.total_homology(c)


def test_symmetry_is_involution():
    m = ff.module_of(["B[-4][0,0]", "V[1]^2[1,0]"])
    assert ff.symmetry_transform(ff.symmetry_transform(m)) == m


def test_conway_of_catalog_module():
    t28 = ff.catalog_entry("T(2,8)")
    r = ff.conway(t28["module"], route="torres", mode="strict-hoste")
    assert r["linking"] == "4"


def test_detect_t28():
    r = ff.detect(4)
    assert len(r["candidates"]) == 3
    assert r["survivors"] == ["B[-4][0,0] + B[-6][-1,-1]"]
    assert r["matches_catalog"]


def test_rank_four_botany():
    r = ff.classify_rank_thin(4, "3/2", 1)
    assert len(r["survivors"]) == 2


def test_khovanov():
    k = ff.kh_ranks("T(2,10)")
    assert (k["gf2"], k["q"], k["torsion"], k["reduced_gf2"]) == (20, 12, 4, 10)
    assert ff.dowlin_bound(k["reduced_gf2"], 2) == 20
    b = ff.batson_seed("T(2,8)", "T(2,3)", "unknot", 4)
    assert b["witness"] == "l=-12: rank^{i-j=-12}(link)=1 < rank^{i-j=-4}(tensor)=2"


def test_bad_input_raises():
    with pytest.raises(Exception):
        ff.realize(["Q[0][0,0]"])
