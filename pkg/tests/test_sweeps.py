import pytest

from thickcentre.fixtures import FIXTURES, fixture_quiver, setting
from thickcentre.sweeps import (centre_report, frame_functoriality, select_sublattice, sweep_loc_products,
                                sweep_noether, sweep_tensor)


def test_fixture_registry():
    for name in FIXTURES:
        q = fixture_quiver(name)
        assert q.name == name
        q.type_a_orders()
    with pytest.raises(KeyError):
        fixture_quiver("E6")


def test_settings_are_lazy():
    s = setting("A2", 3)
    assert "lattice" not in vars(s)
    assert s.lattice.n == 5
    assert s.p == 3


@pytest.mark.parametrize("name", ["A2", "A3", "A1+A1", "A2+A1"])
def test_restriction_and_quotient_are_frame_maps(get_setting, name):
    res = frame_functoriality(get_setting(name))
    assert res.passed, res.failures


@pytest.mark.parametrize("name", ["A2", "A3-sink", "A2+A1"])
def test_commuting_pair_sweeps(get_setting, name):
    s = get_setting(name)
    assert sweep_noether(s).passed
    assert sweep_loc_products(s).passed


def test_tensor_sweep_flags_rigidity(get_setting):
    assert sweep_tensor(get_setting("A1+A1")).details["rigid"]
    res = sweep_tensor(get_setting("A2"))
    assert res.passed and not res.details["rigid"]
    assert res.details["non_commuting_ideal_pairs"]


def test_interval_selector_and_relative_centre(get_setting):
    s = get_setting("A3")
    lat = s.lattice
    atom = next(b for a, b in lat.covers() if a == lat.bottom)
    sub = select_sublattice(s, f"interval:{atom},{lat.top}")
    assert sub[0] == atom and lat.top in sub
    rep = centre_report(s, sub)
    assert rep.passed
    assert atom in rep.central and lat.top in rep.central
    assert select_sublattice(s, f"interval:{lat.top},{lat.bottom}") == []
