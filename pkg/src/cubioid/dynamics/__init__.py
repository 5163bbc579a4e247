"""Numerics for the cubic family f(z) = lambda*z + b*z^2 + z^3."""

from .cubic import CubicMap, RayTrace, green, ray_cycle_rotation, trace_ray
from .cyclotomic import CyclotomicField, CyclotomicNumber, root_of_unity
from .petals import Petal, PetalError, StabilityReport, ray_stability_experiment, repelling_petal
from .series import BPoly, PowerSeriesPoly, compose_series, tpq
