import pytest

from thickcentre.dercat import DObject

from thickcentre.mvseq import (excision_map, lambda_maps, verify_excision, verify_loc_products,
                               verify_MV_gamma, verify_MV_lambda, verify_noether)
from thickcentre.sweeps import pair_outcome, sweep_mayer_vietoris


def idx(s, *names):
    return [s.table.names.index(n) for n in names]


def test_a2_non_commuting_pair_breaks_the_sequence(get_setting):
    s = get_setting("A2")
    cat = s.category
    s2, p_, s1 = idx(s, "S2", "M[1,2]", "S1")
    fails = [verify_MV_lambda(cat, {s2}, {s1}, cat.module(x), cat.module(w))
             for x in range(3) for w in range(3)]
    assert not all(r.passed for r in fails)
    assert any(not r.connecting_exists for r in fails)
    assert not all(verify_excision(cat, {s2}, {s1}, cat.module(x)) for x in range(3))


def test_a2_commuting_pairs_pass(get_setting):
    s = get_setting("A2")
    cat, lat = s.category, s.lattice
    for i in range(lat.n):
        for j in range(lat.n):
            if not s.commuting(i, j):
                continue
            u, v = lat.members[i], lat.members[j]
            for x in range(3):
                assert verify_excision(cat, u, v, cat.module(x))
                for w in range(3):
                    r = verify_MV_lambda(cat, u, v, cat.module(x), cat.module(w))
                    g = verify_MV_gamma(cat, u, v, cat.module(x), cat.module(w))
                    assert r.passed and g.passed, (lat.labels[i], lat.labels[j])
                    assert r.existence_criterion


def test_sequence_is_nontrivial_for_semisimple_pair(get_setting):
    s = get_setting("A1+A1")
    cat = s.category
    a, b = 0, 1
    x = cat.realize(DObject(((a, 0, 1), (b, 0, 1))))
    r = verify_MV_lambda(cat, {a}, {b}, x, cat.module(a), (-1, 1))
    assert r.passed
    assert sum(r.dims) > 0
    # L_{U v V} X = 0, L_{U ^ V} X = X: the connecting map is zero but the spaces are not
    _, _, _, _, conn = lambda_maps(cat, {a}, {b}, x)
    assert conn is not None


@pytest.mark.parametrize("name,p", [("A2", 2), ("A1+A1", 101), ("A1", 2)])
def test_commuting_iff_mv_iff_excision(get_setting, name, p):
    s = get_setting(name, p)
    eq, central, outcomes = sweep_mayer_vietoris(s)
    assert eq.passed, eq.failures
    assert central.passed, central.failures
    for o in outcomes:
        if o.commuting:
            assert o.gamma_pass


def test_witnesses_recorded_for_non_commuting_pairs(get_setting):
    s = get_setting("A2")
    eq, _, outcomes = sweep_mayer_vietoris(s)
    wit = eq.details["expected_failures_on_noncommuting_pairs"]
    assert len(wit) == sum(1 for o in outcomes if not o.commuting) == 3
    assert all("X" in w and "W" in w for w in wit)


def test_exhaustive_pair_outcome_matches_early_exit(get_setting):
    s = get_setting("A2")
    lat = s.lattice
    s2, = idx(s, "S2")
    s1, = idx(s, "S1")
    i, j = lat.find({s2}), lat.find({s1})
    fast = pair_outcome(s, i, j)
    full = pair_outcome(s, i, j, exhaustive=True)
    assert (fast.lambda_pass, fast.gamma_pass, fast.excision_pass) == \
        (full.lambda_pass, full.gamma_pass, full.excision_pass)


def test_excision_map_for_nested_pair_is_identity_like(get_setting):
    s = get_setting("A3")
    cat, lat = s.category, s.lattice
    for i in range(lat.n):
        for j in range(lat.n):
            if lat.leq[i, j]:
                for x in range(len(s.table)):
                    f = excision_map(cat, lat.members[i], lat.members[j], cat.module(x))
                    assert f.is_chain_map()
                    assert cat.is_iso(f)


def test_noether_and_composites_for_commuting_pairs(get_setting):
    s = get_setting("A3")
    cat, lat = s.category, s.lattice
    checked = 0
    for i in range(lat.n):
        for j in range(lat.n):
            if s.commuting(i, j) and not (lat.leq[i, j] or lat.leq[j, i]):
                assert verify_noether(cat, lat.members[i], lat.members[j])["passed"]
                for x in range(len(s.table)):
                    res = verify_loc_products(cat, lat.members[i], lat.members[j], cat.module(x))
                    assert all(res.values()), res
                checked += 1
    assert checked > 0


def test_noether_for_nested_pairs(get_setting):
    s = get_setting("A2")
    cat, lat = s.category, s.lattice
    for i in range(lat.n):
        for j in range(lat.n):
            if lat.leq[i, j]:
                assert verify_noether(cat, lat.members[i], lat.members[j])["passed"]
