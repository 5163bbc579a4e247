import cmath
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubioid.dynamics import CubicMap, green, ray_cycle_rotation, trace_ray
from cubioid.dynamics.cubic import describe_trace, distance_to_polyline, parse_complex

CUBE = CubicMap(0, 0)


def test_map_and_critical_points():
    f = CubicMap(0.5, 0.3 + 0.2j)
    z = 0.7 - 0.1j
    assert f(z) == pytest.approx(0.5 * z + (0.3 + 0.2j) * z ** 2 + z ** 3)
    for c in f.critical_points():
        assert abs(f.derivative(c)) < 1e-12
    assert f.iterate(z, 2) == f(f(z))


def test_green_of_cube_is_log_modulus():
    for z in (2.0, 1.5j, -3 + 4j):
        assert green(CUBE, z) == pytest.approx(math.log(abs(z)), abs=1e-15)
    assert green(CUBE, 0.5) == 0.0
    with pytest.raises(ValueError):
        green(CUBE, 2.0, iters=0)


@settings(max_examples=100, deadline=None)
@given(st.floats(1.1, 30.0), st.floats(0, 2 * math.pi))
def test_green_functional_equation(r, phi):
    f = CubicMap(0.4 + 0.3j, 0.2 - 0.5j)
    z = r * cmath.exp(1j * phi) + 2.0
    g = green(f, z)
    if g > 0:
        assert abs(green(f, f(z)) - 3 * g) < 1e-9 * max(1.0, g)


@pytest.mark.parametrize("theta, land", [(F(0), 1), (F(1, 2), -1), (F(1, 4), 1j), (F(3, 8), cmath.exp(0.75j * math.pi))])
def test_rays_of_cube_are_radial(theta, land):
    tr = trace_ray(CUBE, theta, samples_per_level=4)
    assert tr.landed and tr.status == "landed"
    assert abs(tr.landing_estimate - land) < 1e-8
    for z in tr.points:
        assert abs(cmath.phase(z / land)) < 1e-12


def test_potentials_decrease_geometrically():
    tr = trace_ray(CUBE, F(1, 8), samples_per_level=5, min_potential=1e-3)
    ratios = np.array(tr.potentials[1:]) / np.array(tr.potentials[:-1])
    assert np.allclose(ratios, 3 ** (-1 / 5))
    for t, z in zip(tr.potentials, tr.points):
        assert green(CUBE, z) == pytest.approx(t, rel=1e-9)


def test_csv_export():
    tr = trace_ray(CUBE, F(0), samples_per_level=2, min_potential=1e-2)
    lines = tr.to_csv().splitlines()
    assert lines[0] == "index,potential,re,im"
    assert len(lines) == len(tr.points) + 1
    idx, t, re_, im_ = lines[1].split(",")
    assert int(idx) == 0 and float(t) == tr.potentials[0] and float(re_) == tr.points[0].real


def test_short_trace_is_inconclusive():
    tr = trace_ray(CUBE, F(1, 4), min_potential=1e-2)
    assert not tr.landed and tr.status == "inconclusive"
    assert "inconclusive" in describe_trace(tr)


def test_ray_equivariance_on_non_symmetric_map():
    f = CubicMap(0.4 + 0.3j, 0.2 - 0.5j)
    s = 6
    a = trace_ray(f, F(1, 7), samples_per_level=s, min_potential=1e-5)
    b = trace_ray(f, F(3, 7), samples_per_level=s, min_potential=1e-5)
    worst = max(distance_to_polyline(f(z), b.points) / abs(f(z)) for z in a.points[s:])
    assert worst < 1e-6


def test_distance_to_polyline():
    assert distance_to_polyline(1j, [0, 2]) == 1.0
    assert distance_to_polyline(3, [0, 2]) == 1.0


def test_ray_cycle_rotation():
    assert ray_cycle_rotation([F(1, 8), F(3, 8)], 3) == F(1, 2)
    assert ray_cycle_rotation([F(1, 7), F(2, 7), F(4, 7)], 2) == F(1, 3)
    assert ray_cycle_rotation([F(0)], 3) == 0


def test_parse_complex():
    assert parse_complex("1,-2") == 1 - 2j
    assert parse_complex("0.5+1i") == 0.5 + 1j
    with pytest.raises(ValueError):
        parse_complex("abc")
