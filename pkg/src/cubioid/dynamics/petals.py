"""Repelling petals at a parabolic fixed point and the ray stability experiment.

Near a fixed point with g(z) = z + a z^(q+1) + ..., the coordinate
w = z^(-q) turns g into F(w) = w - q a + alpha(w) with alpha small for
large w.  A repelling petal is the preimage, inside one repelling sector,
of a half-plane Re(w/a) > r on which |alpha| < |a|/2.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from ..angles import angle, format_angle
from .cubic import CubicMap, RayTrace, trace_ray
from .series import tpq

GLike = Union[Sequence[complex], Callable[[complex], complex]]


class PetalError(ArithmeticError):
    pass


def _as_map(g: GLike) -> Callable[[complex], complex]:
    if callable(g):
        return g
    coeffs = [complex(c) for c in g]

    def poly(z: complex) -> complex:
        value = 0j
        for c in reversed(coeffs):
            value = value * z + c
        return value * z
    return poly


@dataclass
class Petal:
    q: int
    a: complex
    r: float
    sector: int
    direction: complex
    samples: int = 0
    max_remainder: float = 0.0
    max_shift: float = 0.0   # max of Re((F(w) - w)/a); at most -(q - 1/2) when certified

    def w_of(self, z: complex) -> complex:
        return z ** (-self.q)

    def contains(self, z: complex) -> bool:
        """z is in the sector around ``direction`` and Re(z^-q / a) > r."""
        if z == 0:
            return False
        if abs(cmath.phase(z / self.direction)) >= math.pi / self.q:
            return False
        return (self.w_of(z) / self.a).real > self.r

    def z_of(self, w: complex) -> complex:
        """The branch of w^(-1/q) lying in this petal's sector."""
        base = w ** (-1.0 / self.q)
        best = None
        for k in range(self.q):
            z = base * cmath.exp(2j * math.pi * k / self.q)
            dev = abs(cmath.phase(z / self.direction))
            if best is None or dev < best[0]:
                best = (dev, z)
        return best[1]


def repelling_directions(a: complex, q: int) -> list[complex]:
    """Unit vectors v with a * v^q a positive real number."""
    if a == 0:
        raise PetalError("degenerate parabolic point: leading coefficient a = 0")
    base = -cmath.phase(a) / q
    return [cmath.exp(1j * (base + 2 * math.pi * k / q)) for k in range(q)]


def repelling_petal(g: GLike, q: int, r: float, a: complex | None = None, sector: int = 0,
                    n_samples: int = 1000) -> Petal:
    """Certify a repelling petal of g on a sample grid of the half-plane Re(w/a) > r.

    ``g`` is either the coefficient list [c1, c2, ...] of g(z) = c1 z + c2 z^2 + ...
    (with c1 = 1) or a callable; for a callable the leading coefficient ``a``
    must be supplied.  Raises PetalError when |F(w) - w + q a| < |a|/2 fails.
    """
    if q < 1:
        raise ValueError("q must be positive")
    if a is None:
        if callable(g):
            raise ValueError("pass the leading coefficient a with a callable g")
        coeffs = list(g)
        if len(coeffs) < q + 1:
            raise PetalError("g has no z^(q+1) term")
        a = complex(coeffs[q])
    a = complex(a)
    dirs = repelling_directions(a, q)
    petal = Petal(q, a, float(r), sector % q, dirs[sector % q])
    gm = _as_map(g)
    side = int(round(math.sqrt(n_samples)))
    # grid in u = w/a: Re u in (r, 8r], Im u in [-4r, 4r], denser near the boundary line
    re_vals = r * (1.0 + np.geomspace(1e-3, 7.0, side))
    im_vals = np.linspace(-4.0 * r, 4.0 * r, side)
    worst_rem, worst_shift, count = 0.0, -math.inf, 0
    for x in re_vals:
        for y in im_vals:
            w = a * complex(x, y)
            z = petal.z_of(w)
            Fw = gm(z) ** (-q)
            rem = abs(Fw - w + q * a)
            shift = ((Fw - w) / a).real
            worst_rem = max(worst_rem, rem)
            worst_shift = max(worst_shift, shift)
            count += 1
    petal.samples = count
    petal.max_remainder = worst_rem
    petal.max_shift = worst_shift
    if worst_rem >= abs(a) / 2:
        raise PetalError(f"remainder {worst_rem:.3g} >= |a|/2 on the grid; increase r")
    if worst_shift > -(q - 0.5):
        raise PetalError("the shifted half-plane containment fails on the grid")
    return petal


# ---------------------------------------------------------------- stability experiment

@dataclass
class StabilityReport:
    p: int
    q: int
    b_star: complex
    theta: Fraction
    delta: float
    status: str                     # "stable", "unstable", "precondition unmet", "partial"
    base: dict = field(default_factory=dict)
    directions: list[dict] = field(default_factory=list)
    reason: str = ""

    @property
    def untested(self) -> list[dict]:
        return [d for d in self.directions if d["result"] == "untested"]


def lands_at_parabolic(f: CubicMap, theta, q: int, a: complex, r: float = 10.0,
                       trace: RayTrace | None = None, **ray_kw) -> dict:
    """Trace the ray and certify landing at 0 by a fundamental segment inside a petal.

    The ray is fixed by the q-th iterate; once the samples spanning one
    3^q-fold range of potentials lie in a certified repelling petal, inverse
    iteration keeps the whole tail there, so the ray lands at 0.
    """
    g = lambda z: f.iterate(z, q)  # noqa: E731
    petals = [repelling_petal(g, q, r, a=a, sector=k) for k in range(q)]
    if trace is None:
        trace = trace_ray(f, theta, **ray_kw)
    s = trace.params["samples_per_level"]
    span = s * q
    pts = trace.points
    info = dict(samples=len(pts), trace_status=trace.status, petal_r=r)
    if trace.reason and trace.status != "landed" and not pts:
        info.update(result="untested", reason=trace.reason)
        return info
    for petal in petals:
        inside = [petal.contains(z) for z in pts]
        run = 0
        for i, ok in enumerate(inside):
            run = run + 1 if ok else 0
            if run > span:
                z = pts[i]
                info.update(result="lands", sector=petal.sector, entry_index=i - span,
                            closest=abs(pts[-1]), last_point=pts[-1])
                return info
    if trace.reason.startswith("Newton"):
        info.update(result="untested", reason=trace.reason)
    else:
        info.update(result="not certified", closest=abs(pts[-1]) if pts else math.inf,
                    last_point=pts[-1] if pts else None)
    return info


def ray_stability_experiment(p: int, q: int, b_star: complex, theta, delta: float,
                             n_directions: int = 8, r: float = 10.0,
                             min_potential: float = 1e-9, **ray_kw) -> StabilityReport:
    """Trace ray theta for b near b_star and check that it keeps landing at 0."""
    theta = angle(theta)
    T = tpq(p, q).poly
    lam = cmath.exp(2j * math.pi * p / q)
    a_star = T(b_star)
    report = StabilityReport(p, q, complex(b_star), theta, float(delta), "precondition unmet")
    if abs(a_star) < 1e-8:
        report.reason = "T_{p/q}(b*) vanishes: degenerate parabolic"
        return report
    base = lands_at_parabolic(CubicMap(lam, b_star), theta, q, a_star, r,
                              min_potential=min_potential, **ray_kw)
    report.base = base
    if base["result"] != "lands":
        report.reason = f"base ray of argument {format_angle(theta)} not certified to land at 0"
        return report
    if delta == 0:
        report.status = "stable"
        report.reason = "delta = 0: the perturbed map is the base map"
        return report
    for k in range(n_directions):
        phi = 2 * math.pi * k / n_directions
        b = b_star + delta * cmath.exp(1j * phi)
        a = T(b)
        if abs(a) < 1e-8:
            entry = dict(result="untested", reason="degenerate parabolic")
        else:
            try:
                entry = lands_at_parabolic(CubicMap(lam, b), theta, q, a, r,
                                           min_potential=min_potential, **ray_kw)
            except PetalError as exc:
                entry = dict(result="untested", reason=str(exc))
        entry.update(phi=phi, b=b)
        report.directions.append(entry)
    results = {d["result"] for d in report.directions}
    if results == {"lands"}:
        report.status = "stable"
    elif "not certified" in results:
        report.status = "unstable"
        report.reason = "some perturbed rays were not certified to land at 0"
    else:
        report.status = "partial"
        report.reason = "some directions are untested"
    return report
