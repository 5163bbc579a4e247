"""Green function and external rays of f(z) = lambda*z + b*z^2 + z^3."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..angles import angle, format_angle
from ..gaps import cyclic_shift


@dataclass(frozen=True)
class CubicMap:
    lam: complex
    b: complex

    def __call__(self, z: complex) -> complex:
        return z * (self.lam + z * (self.b + z))

    def derivative(self, z: complex) -> complex:
        return self.lam + z * (2 * self.b + 3 * z)

    def critical_points(self) -> tuple[complex, complex]:
        r = np.roots([3, 2 * self.b, self.lam])
        return tuple(sorted((complex(x) for x in r), key=lambda w: (w.real, w.imag)))

    def iterate(self, z: complex, n: int) -> complex:
        for _ in range(n):
            z = self(z)
        return z

    @property
    def escape_radius(self) -> float:
        return max(10.0, 2.0 * (1.0 + abs(self.lam) + abs(self.b)))


def green(f: CubicMap, z: complex, iters: int = 200, bailout: float = 1e20) -> float:
    """log|f^n(z)| / 3^n at the first n with |f^n(z)| > bailout; 0 if z does not escape.

    The bailout is far beyond the escape radius so that the Boettcher
    correction log|1 + b/w + lambda/w^2| is negligible.
    """
    if iters < 1:
        raise ValueError("iters must be at least 1")
    w = complex(z)
    for n in range(iters + 1):
        r = abs(w)
        if r > bailout:
            return math.log(r) / 3 ** n
        if n == iters:
            break
        w = f(w)
    return 0.0


@dataclass
class RayTrace:
    theta: Fraction
    potentials: list[float]
    points: list[complex]
    landing_estimate: complex | None = None
    status: str = "inconclusive"
    reason: str = ""
    params: dict = field(default_factory=dict)

    @property
    def landed(self) -> bool:
        return self.landing_estimate is not None

    def to_csv(self) -> str:
        lines = ["index,potential,re,im"]
        for i, (t, z) in enumerate(zip(self.potentials, self.points)):
            lines.append(f"{i},{t:.17g},{z.real:.17g},{z.imag:.17g}")
        return "\n".join(lines) + "\n"


TARGET_LOG = 46.0   # pull back from |w| ~ e^46, where phi(z) ~ z + b/3 to ~1e-20


def _newton(f: CubicMap, z: complex, n: int, target: complex, steps: int = 60) -> tuple[complex, bool]:
    for _ in range(steps):
        w, dw = z, 1.0 + 0j
        for _ in range(n):
            dw = dw * f.derivative(w)
            w = f(w)
        if dw == 0:
            return z, False
        step = (w - target) / dw
        z = z - step
        if abs(step) <= 1e-15 * max(1.0, abs(z)):
            return z, True
    return z, False


def trace_ray(f: CubicMap, theta, samples_per_level: int = 8, min_potential: float = 1e-11,
              max_samples: int = 4000, landing_tol: float = 1e-8,
              green_tol: float = 1e-10) -> RayTrace:
    """Samples of the dynamic ray of argument theta at potentials t0 * 3^(-j/s).

    Each sample z solves f^n(z) = phi^{-1}(exp(3^n t + 2 pi i 3^n theta))
    with phi^{-1}(w) ~ w - b/3, by Newton's method started from the
    previous sample.  n is the least integer with 3^n t above TARGET_LOG.
    """
    theta = angle(theta)
    s = samples_per_level
    t0 = math.log(f.escape_radius)
    params = dict(samples_per_level=s, t0=t0, min_potential=min_potential)
    pots: list[float] = []
    pts: list[complex] = []
    z = cmath.exp(t0 + 2j * math.pi * float(theta)) - f.b / 3
    j = 0
    status, reason = "inconclusive", ""
    while j < max_samples:
        t = t0 * 3 ** (-j / s)
        if t < min_potential:
            break
        n = max(0, math.ceil(math.log(TARGET_LOG / t, 3)))
        arg = float((3 ** n * theta) % 1)
        target = cmath.exp(3 ** n * t + 2j * math.pi * arg) - f.b / 3
        z_new, ok = _newton(f, z, n, target)
        if not ok or not math.isfinite(z_new.real) or not math.isfinite(z_new.imag):
            reason = f"Newton failed at potential {t:.3g} (branch ambiguity near a critical value?)"
            break
        z = z_new
        pots.append(t)
        pts.append(z)
        j += 1
    trace = RayTrace(theta, pots, pts, None, status, reason, params)
    if len(pts) >= 5 and not reason:
        tail = pts[-5:]
        spread = max(abs(a - b) for a in tail for b in tail)
        if spread < landing_tol and pots[-1] < green_tol:
            trace.landing_estimate = pts[-1]
            trace.status = "landed"
        else:
            trace.reason = f"samples stopped contracting (spread {spread:.3g} over the last 5)"
    return trace


def distance_to_polyline(z: complex, poly: list[complex]) -> float:
    best = math.inf
    for a, c in zip(poly, poly[1:]):
        seg = c - a
        denom = abs(seg) ** 2
        u = 0.0 if denom == 0 else max(0.0, min(1.0, ((z - a) * seg.conjugate()).real / denom))
        best = min(best, abs(z - (a + u * seg)))
    return best


def ray_cycle_rotation(args, d: int, r: int = 1) -> Fraction:
    """Combinatorial rotation number p/q of a cycle of ray arguments under d^r."""
    pts = sorted({angle(a) for a in args})
    k = cyclic_shift(pts, d, r)
    return Fraction(k, len(pts))


def parse_complex(text: str) -> complex:
    """'re,im' or a Python complex literal such as '1+2j'."""
    text = text.strip()
    if "," in text:
        re_, im_ = text.split(",", 1)
        return complex(float(re_), float(im_))
    return complex(text.replace("i", "j"))


def describe_trace(tr: RayTrace) -> str:
    est = "inconclusive" if tr.landing_estimate is None else \
        f"{tr.landing_estimate.real:.12g}{tr.landing_estimate.imag:+.12g}i"
    return f"theta={format_angle(tr.theta)} samples={len(tr.points)} status={tr.status} landing={est}"
