import cmath
import math

import pytest

from cubioid.dynamics import CubicMap, PetalError, ray_stability_experiment, repelling_petal
from cubioid.dynamics.petals import lands_at_parabolic, repelling_directions


def test_repelling_directions():
    # a v^q must be a positive real number
    for a, q in ((1, 1), (1, 2), (1j, 2), (-2, 3)):
        dirs = repelling_directions(a, q)
        assert len(dirs) == q
        for v in dirs:
            x = a * v ** q
            assert abs(x.imag) < 1e-12 and x.real > 0
    assert repelling_directions(1, 2)[0] == pytest.approx(1)
    assert repelling_directions(1, 2)[1] == pytest.approx(-1)
    with pytest.raises(PetalError):
        repelling_directions(0, 1)


@pytest.mark.parametrize("q", [1, 2])
def test_petal_certificate(q):
    coeffs = [1] + [0] * (q - 1) + [1, 1]
    P = repelling_petal(coeffs, q, 10)
    assert P.samples >= 1000
    assert P.max_remainder < 0.5
    assert P.max_shift <= -(q - 0.5)
    z = P.z_of(20.0)
    assert P.contains(z) and P.w_of(z) == pytest.approx(20.0)
    assert not P.contains(0) and not P.contains(-z)


def test_petal_second_sector():
    # the z^4 term pushes against the flow along -1, so this sector needs a larger r
    with pytest.raises(PetalError):
        repelling_petal([1, 0, 1, 1], 2, 10, sector=1)
    P = repelling_petal([1, 0, 1, 1], 2, 40, sector=1)
    assert P.direction == pytest.approx(-1)
    assert P.max_remainder < 0.5


def test_petal_fails_when_too_close():
    with pytest.raises(PetalError):
        repelling_petal([1, 1, 5], 1, 1.0)
    with pytest.raises(PetalError):
        repelling_petal([1, 0], 1, 10)


def test_callable_needs_leading_coefficient():
    with pytest.raises(ValueError):
        repelling_petal(lambda z: z + z * z, 1, 10)
    P = repelling_petal(lambda z: z + z * z + z ** 3, 1, 10, a=1)
    assert P.max_remainder < 0.5


def test_ray_zero_lands_at_parabolic_point():
    f = CubicMap(1, 1)
    info = lands_at_parabolic(f, 0, 1, 1.0, min_potential=1e-9)
    assert info["result"] == "lands"


def test_stability_of_fixed_ray():
    rep = ray_stability_experiment(0, 1, 1.0, 0, 1e-3, n_directions=4)
    assert rep.status == "stable"
    assert len(rep.directions) == 4 and not rep.untested
    for d in rep.directions:
        assert abs(abs(d["b"] - 1.0) - 1e-3) < 1e-12


def test_stability_zero_delta_and_preconditions():
    assert ray_stability_experiment(0, 1, 1.0, 0, 0.0).status == "stable"
    degenerate = ray_stability_experiment(0, 1, 0.0, 0, 1e-3)
    assert degenerate.status == "precondition unmet" and "degenerate" in degenerate.reason
    # the ray of angle 0 does not land at 0 for the 1/2-parabolic map with b = 1
    unmet = ray_stability_experiment(1, 2, 1.0, 0, 1e-3)
    assert unmet.status == "precondition unmet"
