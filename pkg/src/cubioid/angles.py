"""Exact rational angles on the circle R/Z and the maps sigma_d."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

AngleLike = Union[Fraction, int, str]

DEGREES = (2, 3)


def angle(value: AngleLike) -> Fraction:
    """Return ``value`` as a reduced Fraction in [0, 1).

    Strings are parsed as ``"p/q"`` or an integer; everything is taken mod 1.
    """
    if isinstance(value, str):
        value = parse_angle(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact angles")
    return Fraction(value) % 1


def parse_angle(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty angle")
    try:
        return Fraction(text) % 1
    except ValueError:
        raise ValueError(f"not a rational angle: {text!r}") from None


def format_angle(t: Fraction) -> str:
    t = angle(t)
    if t == 0:
        return "0"
    return f"{t.numerator}/{t.denominator}"


def _check_degree(d: int) -> None:
    if d not in DEGREES:
        raise ValueError(f"degree must be 2 or 3, got {d!r}")


def sigma(d: int, t: AngleLike) -> Fraction:
    """The circle map t -> d*t mod 1."""
    _check_degree(d)
    return (d * angle(t)) % 1


def sigma_n(d: int, t: AngleLike, n: int) -> Fraction:
    _check_degree(d)
    if n < 0:
        raise ValueError("negative iterate")
    return (d ** n * angle(t)) % 1


def preimages(d: int, t: AngleLike) -> list[Fraction]:
    """The d preimages of t under sigma_d, in increasing order."""
    _check_degree(d)
    t = angle(t)
    return [(t + k) / d for k in range(d)]


@dataclass(frozen=True)
class OrbitInfo:
    preperiod: int
    period: int
    orbit: tuple[Fraction, ...]

    @property
    def cycle(self) -> tuple[Fraction, ...]:
        return self.orbit[self.preperiod:]

    @property
    def is_periodic(self) -> bool:
        return self.preperiod == 0


def orbit_info(d: int, t: AngleLike) -> OrbitInfo:
    """Preperiod, period and the distinct forward orbit of a rational angle."""
    _check_degree(d)
    t = angle(t)
    seen: dict[Fraction, int] = {}
    orbit: list[Fraction] = []
    while t not in seen:
        seen[t] = len(orbit)
        orbit.append(t)
        t = (d * t) % 1
    start = seen[t]
    return OrbitInfo(start, len(orbit) - start, tuple(orbit))


def multiplicative_order(d: int, m: int) -> int:
    """Order of d modulo m (m coprime to d); 1 for m == 1."""
    if m == 1:
        return 1
    if gcd(d, m) != 1:
        raise ValueError("d and m must be coprime")
    k, x = 1, d % m
    while x != 1:
        x = (x * d) % m
        k += 1
    return k


def arc_length(a: AngleLike, b: AngleLike) -> Fraction:
    """Length of the positively oriented arc from a to b; rejects a == b."""
    a, b = angle(a), angle(b)
    if a == b:
        raise ValueError("arc endpoints coincide")
    return (b - a) % 1


def in_open_arc(t: Fraction, a: Fraction, b: Fraction) -> bool:
    """True iff t lies strictly inside the positive arc from a to b.

    For a == b the open arc is the whole circle minus that point.
    """
    if a == b:
        return t != a
    return 0 < (t - a) % 1 < (b - a) % 1


def in_closed_arc(t: Fraction, a: Fraction, b: Fraction) -> bool:
    if t == a or t == b:
        return True
    return in_open_arc(t, a, b)


def cyclic_sorted(points) -> list[Fraction]:
    return sorted(angle(p) for p in points)
