"""Complementary gaps of a finite leaf system and their classification."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Union

from .angles import _check_degree, angle, format_angle, orbit_info, sigma_n
from .lamination import Chord, ClassPolygon, LaminationError, LeafSystem, as_class

MAX_PERIOD = 256

# piece kinds on a gap boundary
EDGE = "edge"
ARC = "arc"


@dataclass(frozen=True)
class Gap:
    """A complementary region of a leaf system.

    ``pieces`` lists the boundary counterclockwise: ``("edge", u, v)`` is a
    chord crossed from u to v (the skipped arc u->v lies outside the gap),
    ``("arc", u, v)`` a stretch of circle from u to v.  The whole disk is the
    single piece ``("arc", 0, 0)``.
    """

    pieces: tuple[tuple[str, Fraction, Fraction], ...]
    kind: str
    status: str = "unclassified"
    period: int | None = None
    return_degree: int | None = None
    rotation_number: Fraction | None = None
    siegel_type: bool = False

    @property
    def edges(self) -> tuple[Chord, ...]:
        return tuple(Chord(u, v) for k, u, v in self.pieces if k == EDGE)

    boundary_edges = edges

    @property
    def arcs(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple((u, v) for k, u, v in self.pieces if k == ARC)

    @property
    def vertices(self) -> tuple[Fraction, ...]:
        vs = {u for k, u, v in self.pieces if k == EDGE} | {v for k, u, v in self.pieces if k == EDGE}
        return tuple(sorted(vs))

    @property
    def basis_sample(self) -> tuple[Fraction, ...]:
        return self.vertices

    @property
    def is_whole_disk(self) -> bool:
        return not self.edges

    def arc_measure(self) -> Fraction:
        return sum((_arc_len(u, v) for u, v in self.arcs), Fraction(0))

    # germ tests: a point p approached from the positive (+) or negative (-) side
    def contains_germ(self, p: Fraction, side: int) -> bool:
        for u, v in self.arcs:
            length = _arc_len(u, v)
            x = (p - u) % 1
            if side > 0 and x < length:
                return True
            if side < 0 and 0 < (x if x else 1) <= length:
                return True
        return False

    def contains_point(self, p: Fraction) -> bool:
        if p in self.vertices:
            return True
        return any((p - u) % 1 <= _arc_len(u, v) for u, v in self.arcs)

    def describe(self) -> str:
        edges = " ".join(str(e) for e in self.edges) or "-"
        rot = format_angle(self.rotation_number) if self.rotation_number is not None else "-"
        return (f"kind={self.kind}{'(siegel-type)' if self.siegel_type else ''} "
                f"status={self.status} period={self.period or '-'} "
                f"degree={self.return_degree or '-'} rotation={rot} edges={edges}")


def _arc_len(u: Fraction, v: Fraction) -> Fraction:
    return Fraction(1) if u == v else (v - u) % 1


def enumerate_gaps(L: LeafSystem) -> list[Gap]:
    """All complementary regions of the chords of L.

    Faces are traced by walking each boundary counterclockwise: arriving at
    a vertex, the walk leaves along the dart that precedes the reverse of
    the incoming dart in the rotation at that vertex.
    """
    chords = sorted(L.leaves)
    if not chords:
        return [Gap(((ARC, Fraction(0), Fraction(0)),), "fatou")]
    pts = sorted({p for c in chords for p in c.endpoints})
    nxt = {p: pts[(i + 1) % len(pts)] for i, p in enumerate(pts)}
    out: dict[Fraction, list[tuple[Fraction, Fraction]]] = {p: [] for p in pts}
    for c in chords:
        out[c.a].append(((c.b - c.a) % 1, c.b))
        out[c.b].append(((c.a - c.b) % 1, c.a))
    for p in pts:
        out[p].sort()

    def step(kind, u, v):
        s_rev = Fraction(1) if kind == ARC else (u - v) % 1
        best = (ARC, v, nxt[v])
        for s, q in out[v]:
            if s < s_rev:
                best = (EDGE, v, q)
            else:
                break
        return best

    darts = [(ARC, p, nxt[p]) for p in pts]
    darts += [(EDGE, c.a, c.b) for c in chords] + [(EDGE, c.b, c.a) for c in chords]
    seen = set()
    gaps = []
    for start in darts:
        if start in seen:
            continue
        face = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            face.append(dart)
            dart = step(*dart)
        if dart != start:
            raise LaminationError("inconsistent face walk; chords must not cross")
        kind = "fatou" if any(k == ARC for k, _, _ in face) else "finite"
        gaps.append(Gap(tuple(_rotate_min(face)), kind))
    gaps.sort(key=lambda g: (g.kind, g.pieces))
    return gaps


def _rotate_min(face):
    i = min(range(len(face)), key=lambda j: (face[j][1], face[j][0] != EDGE))
    return face[i:] + face[:i]


def _maps_into_itself(G: Gap, d: int, n: int, L: LeafSystem) -> bool:
    f = lambda t: sigma_n(d, t, n)  # noqa: E731
    if G.kind == "finite":
        vs = set(G.vertices)
        return {f(v) for v in vs} == vs
    edges = set(G.edges)
    for k, u, v in G.pieces:
        if k == ARC:
            if G.is_whole_disk:
                return True
            if not (G.contains_germ(f(u), +1) and G.contains_germ(f(v), -1)):
                return False
        else:
            fu, fv = f(u), f(v)
            if fu == fv:
                if not G.contains_point(fu):
                    return False
            elif Chord(fu, fv) not in edges:
                return False
    return True


def _period_bound(G: Gap, d: int) -> int:
    bound = 1
    pre = 0
    for v in G.vertices:
        info = orbit_info(d, v)
        bound = lcm(bound, info.period)
        pre = max(pre, info.preperiod)
        if bound > MAX_PERIOD:
            return MAX_PERIOD
    return min(MAX_PERIOD, bound + pre)


def boundary_winding(G: Gap, d: int, n: int) -> Fraction:
    """Turns made by sigma_d^n along the boundary of G.

    Stretches of circle contribute d^n times their length; an edge u->v
    contributes the positive arc from its image endpoints (zero when the
    edge collapses).
    """
    total = Fraction(0)
    for k, u, v in G.pieces:
        if k == ARC:
            total += d ** n * _arc_len(u, v)
        else:
            fu, fv = sigma_n(d, u, n), sigma_n(d, v, n)
            if fu != fv:
                total += (fv - fu) % 1
    return total


def cyclic_shift(points: Iterable, d: int, n: int) -> int:
    """The shift k with sigma_d^n(p_i) = p_{i+k} on cyclically ordered points."""
    pts = sorted({angle(p) for p in points})
    m = len(pts)
    pos = {p: i for i, p in enumerate(pts)}
    img = [sigma_n(d, p, n) for p in pts]
    if any(x not in pos for x in img):
        raise ValueError("the points are not permuted by the map")
    k = (pos[img[0]] - 0) % m
    if any(pos[img[i]] != (i + k) % m for i in range(m)):
        raise ValueError("the map is not a cyclic-order-preserving shift")
    return k


def set_period(points: Iterable, d: int, limit: int = MAX_PERIOD) -> int | None:
    vs = frozenset(angle(p) for p in points)
    img = vs
    for n in range(1, limit + 1):
        img = frozenset((d * t) % 1 for t in img)
        if img == vs:
            return n
        if len(img) < len(vs):
            return None
    return None


def rotation_number(gamma: Union[ClassPolygon, Gap, Iterable], d: int) -> Fraction:
    """Rotation number k/m of a periodic finite class (or periodic finite gap)."""
    _check_degree(d)
    if isinstance(gamma, Gap):
        if gamma.kind != "finite":
            if gamma.rotation_number is not None:
                return gamma.rotation_number
            raise ValueError("rotation number of a Fatou gap is not determined by finite data")
        pts = gamma.vertices
    elif isinstance(gamma, ClassPolygon):
        pts = gamma.vertices
    else:
        pts = tuple(sorted({angle(p) for p in gamma}))
    n = set_period(pts, d)
    if n is None:
        raise ValueError("not a periodic set")
    k = cyclic_shift(pts, d, n)
    return Fraction(k, len(pts))


def classify_gap(G: Gap, L: LeafSystem) -> Gap:
    """Fill in period, return degree, rotation number and the Siegel flag."""
    d = L.degree
    period = None
    for n in range(1, _period_bound(G, d) + 1):
        if _maps_into_itself(G, d, n, L):
            period = n
            break
    if period is None:
        return replace(G, status="aperiodic-at-depth", period=None)
    winding = boundary_winding(G, d, period)
    if winding.denominator != 1:
        return replace(G, status="undetermined", period=period)
    degree = int(winding)
    rot = None
    siegel = False
    if G.kind == "finite":
        try:
            rot = Fraction(cyclic_shift(G.vertices, d, period), len(G.vertices))
        except ValueError:
            rot = None
    elif degree == 1:
        siegel = True
    return replace(G, status="periodic", period=period, return_degree=degree,
                   rotation_number=rot, siegel_type=siegel)


def classified_gaps(L: LeafSystem) -> list[Gap]:
    return [classify_gap(g, L) for g in enumerate_gaps(L)]


def rotational_sets(L: LeafSystem) -> list[Union[ClassPolygon, Gap]]:
    """Periodic finite classes/gaps with non-zero rotation, plus Siegel-flagged gaps."""
    d = L.degree
    found: list[Union[ClassPolygon, Gap]] = []
    seen: set[frozenset] = set()
    for c in L.classes:
        n = set_period(c.vertices, d)
        if n is None:
            continue
        if cyclic_shift(c.vertices, d, n) != 0:
            found.append(c)
            seen.add(frozenset(c.vertices))
    for g in classified_gaps(L):
        if g.status != "periodic":
            continue
        if g.kind == "finite":
            if frozenset(g.vertices) in seen:
                continue
            if g.rotation_number:
                found.append(g)
                seen.add(frozenset(g.vertices))
        elif g.siegel_type:
            found.append(g)
    return found


def adjacent_gaps(L: LeafSystem, leaf: Chord, gaps: list[Gap] | None = None) -> list[Gap]:
    gaps = classified_gaps(L) if gaps is None else gaps
    return [g for g in gaps if leaf in g.edges]


# ---------------------------------------------------------------- reports

def gap_report(gaps: list[Gap], fmt: str = "text") -> str:
    lines = []
    for i, g in enumerate(gaps):
        rot = format_angle(g.rotation_number) if g.rotation_number is not None else "-"
        edges = ",".join(str(e) for e in g.edges) or "-"
        if fmt == "kv":
            lines.append(
                f"gap={i} kind={g.kind} siegel={'yes' if g.siegel_type else 'no'} "
                f"status={g.status} period={g.period if g.period else '-'} "
                f"degree={g.return_degree if g.return_degree else '-'} "
                f"rotation={rot} edges={edges}")
        else:
            lines.append(f"gap {i}: {g.describe()}")
    return "\n".join(lines) + ("\n" if lines else "")
