import pytest

from rcfd.timing import TimingParams, access_timing


def test_default_80211g_values():
    t_round, t_acc = access_timing(TimingParams(28, 4, 1))
    assert t_round == 6.0
    assert t_acc == 46.0


def test_no_scan_no_propagation():
    assert access_timing(TimingParams(0, 4, 0)) == (4.0, 12.0)


def test_short_symbol():
    t_round, t_acc = access_timing(TimingParams(28, 3.2, 1))
    assert t_round == pytest.approx(5.2)
    assert t_acc == pytest.approx(43.6)


def test_invalid_params():
    with pytest.raises(ValueError):
        TimingParams(28, 0, 1)
    with pytest.raises(ValueError):
        TimingParams(-1, 4, 1)
    with pytest.raises(ValueError):
        TimingParams(28, 4, -0.5)


def test_properties_match_function():
    t = TimingParams(10, 2, 0.5)
    assert (t.t_round, t.t_acc) == access_timing(t)
