from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubioid.angles import (
    angle,
    arc_length,
    format_angle,
    in_closed_arc,
    in_open_arc,
    multiplicative_order,
    orbit_info,
    parse_angle,
    preimages,
    sigma,
    sigma_n,
)

fractions = st.fractions(min_value=0, max_value=1, max_denominator=500).map(lambda x: x % 1)


def test_sigma_small_cases():
    assert sigma(2, F(1, 3)) == F(2, 3)
    assert sigma(3, F(1, 3)) == 0
    assert sigma(3, F(5, 8)) == F(7, 8)
    assert sigma_n(2, F(1, 7), 3) == F(1, 7)


def test_rejects_other_degrees_and_floats():
    with pytest.raises(ValueError):
        sigma(4, F(1, 2))
    with pytest.raises(TypeError):
        angle(0.5)


def test_parse_and_format_round_trip():
    assert parse_angle(" 7/9 ") == F(7, 9)
    assert parse_angle("4/3") == F(1, 3)
    assert format_angle(F(0)) == "0"
    assert format_angle(F(5, 3)) == "2/3"
    with pytest.raises(ValueError):
        parse_angle("x/3")
    with pytest.raises(ValueError):
        parse_angle("")


def test_orbit_info():
    info = orbit_info(2, F(1, 7))
    assert (info.preperiod, info.period) == (0, 3)
    assert info.cycle == (F(1, 7), F(2, 7), F(4, 7))
    pre = orbit_info(3, F(1, 6))
    assert pre.preperiod == 1 and pre.period == 1 and pre.cycle == (F(1, 2),)


def test_arcs():
    assert arc_length(F(3, 4), F(1, 4)) == F(1, 2)
    with pytest.raises(ValueError):
        arc_length(F(1, 3), F(1, 3))
    assert in_open_arc(F(0), F(3, 4), F(1, 4))
    assert not in_open_arc(F(3, 4), F(3, 4), F(1, 4))
    assert in_closed_arc(F(3, 4), F(3, 4), F(1, 4))


def test_multiplicative_order():
    assert multiplicative_order(3, 8) == 2
    assert multiplicative_order(3, 80) == 4
    assert multiplicative_order(2, 1) == 1


@given(fractions, st.sampled_from([2, 3]))
def test_preimages_map_back(t, d):
    pre = preimages(d, t)
    assert len(set(pre)) == d
    assert all(sigma(d, x) == t for x in pre)
    assert pre == sorted(pre)


@given(fractions, st.integers(0, 6), st.integers(0, 6))
def test_sigma_n_composes(t, m, n):
    assert sigma_n(3, sigma_n(3, t, m), n) == sigma_n(3, t, m + n)
