"""Quadratic invariant gaps of sigma_3, their vassal gaps and the collapse map.

A major M is a critical or periodic chord cutting off a *hole* H(M) of
length between 1/3 and 1/2.  The gap U_M is bounded by M together with all
iterated preimages of M whose endpoints never enter H(M); collapsing its
edges turns sigma_3 on the boundary into the doubling map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .angles import angle, format_angle, in_open_arc, orbit_info, preimages, sigma, sigma_n
from .gaps import Gap, boundary_winding, enumerate_gaps
from .lamination import Chord, LeafSystem, pullback

D = 3
THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)


class InvalidMajor(ValueError):
    pass


@dataclass(frozen=True)
class Major:
    leaf: Chord
    type: str                       # "regular-critical" or "periodic"
    hole: tuple[Fraction, Fraction]  # open arc (h0, h1), positively oriented
    hole_length: Fraction
    period: int | None = None
    degenerate: str | None = None   # why U_M fails to be a quadratic gap, if it does

    @property
    def is_critical(self) -> bool:
        return self.type == "regular-critical"

    @property
    def is_quadratic(self) -> bool:
        return self.degenerate is None

    def in_hole(self, t: Fraction) -> bool:
        return in_open_arc(t, *self.hole)


def _orbit_enters(t: Fraction, h0: Fraction, h1: Fraction) -> bool:
    return any(in_open_arc(x, h0, h1) for x in orbit_info(D, t).orbit)


def _germ_in_closed(p: Fraction, side: int, a: Fraction, b: Fraction) -> bool:
    """Is the germ of p on the given side (+1 / -1) inside the closed arc [a, b]?"""
    length = (b - a) % 1 or Fraction(1)
    x = (p - a) % 1
    if side > 0:
        return x < length
    return 0 < (x or Fraction(1)) <= length


def _germ_enters(p: Fraction, side: int, h0: Fraction, h1: Fraction) -> bool:
    seen = set()
    while p not in seen:
        seen.add(p)
        if _germ_in_closed(p, side, h0, h1):
            return True
        p = sigma(D, p)
    return False


def chord_period(c: Chord, limit: int = 10_000) -> int | None:
    """Least n > 0 with sigma_3^n(c) == c, or None when c is not periodic."""
    x = c
    for n in range(1, limit + 1):
        x = x.image(D)
        if x.degenerate:
            return None
        if x == c:
            return n
    return None


def validate_major(M, flip_symmetric: bool = False) -> Major:
    """Decide whether the chord M is a major and compute its hole.

    The hole is the side of length in [1/3, 1/2].  For a diameter both
    sides qualify; the hole is (a, b) with a < b unless ``flip_symmetric``.
    """
    if not isinstance(M, Chord):
        M = Chord(*M)
    if M.degenerate:
        raise InvalidMajor("a major must be a non-degenerate chord")
    a, b = M.a, M.b
    inner = b - a
    candidates = []
    if THIRD <= inner <= HALF:
        candidates.append((a, b))
    if THIRD <= 1 - inner <= HALF:
        candidates.append((b, a))
    if not candidates:
        raise InvalidMajor(f"{M}: side lengths {format_angle(inner)} and "
                           f"{format_angle(1 - inner)} are outside [1/3, 1/2]")
    h0, h1 = candidates[-1] if flip_symmetric else candidates[0]
    length = (h1 - h0) % 1

    if M.is_critical(D):
        kind, period = "regular-critical", None
    else:
        period = chord_period(M)
        if period is None:
            raise InvalidMajor(f"{M} is neither critical nor periodic")
        kind = "periodic"
    for t in (a, b):
        if _orbit_enters(t, h0, h1):
            raise InvalidMajor(f"the orbit of {format_angle(t)} enters the hole "
                               f"({format_angle(h0)}, {format_angle(h1)})")
    degenerate = None
    if _germ_enters(h1, +1, h0, h1) or _germ_enters(h0, -1, h0, h1):
        degenerate = ("points of U' accumulating on M from the gap side enter the hole, "
                      "so M is not the edge of a quadratic gap")
    elif kind == "periodic":
        # the hole must be carried homeomorphically around the cycle: the arc
        # between the endpoints of sigma^i(M) has length 3^(i-1) (3L - 1)
        for i in range(1, period + 1):
            arc = (sigma_n(D, h1, i) - sigma_n(D, h0, i)) % 1
            want = 3 ** (i - 1) * (3 * length - 1)
            if i == period and want != length:
                degenerate = (f"a hole carried homeomorphically around a {period}-cycle has length "
                              f"{format_angle(Fraction(3 ** (period - 1), 3 ** period - 1))}, "
                              f"not {format_angle(length)}")
                break
            if arc != want:
                degenerate = (f"the arc cut off by the image of M after {i} steps has length "
                              f"{format_angle(arc)} instead of {want}, "
                              "so M is not the edge of a quadratic gap")
                break
    return Major(M, kind, (h0, h1), length, period, degenerate)


def _require_quadratic(M: Major) -> None:
    if M.degenerate:
        raise InvalidMajor(f"{M.leaf}: {M.degenerate}")


def _as_major(M) -> Major:
    return M if isinstance(M, Major) else validate_major(M)


@dataclass(frozen=True)
class GapEdge:
    """An edge of U together with its hidden arc (start, length) and level."""

    chord: Chord
    start: Fraction
    length: Fraction
    level: int

    @property
    def hidden(self) -> tuple[Fraction, Fraction]:
        return (self.start, (self.start + self.length) % 1)


@dataclass(frozen=True)
class QuadraticGapApprox:
    major: Major
    depth: int
    gap_edges: tuple[GapEdge, ...]
    vassal: "VassalGap | None" = None

    @property
    def edges(self) -> frozenset[Chord]:
        return frozenset(e.chord for e in self.gap_edges)

    def edges_at_level(self, j: int) -> list[Chord]:
        return sorted(e.chord for e in self.gap_edges if e.level == j)

    @property
    def vertices(self) -> list[Fraction]:
        return sorted({v for e in self.gap_edges for v in e.chord.endpoints})

    def leaf_system(self) -> LeafSystem:
        return LeafSystem.from_items(D, sorted(self.edges))

    def in_basis(self, t) -> bool:
        """True iff the forward orbit of t avoids the open hole."""
        return not _orbit_enters(angle(t), *self.major.hole)


def build_quadratic_gap(M, depth: int) -> QuadraticGapApprox:
    """Edges of U_M obtained by at most ``depth`` levels of pullback of M."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    M = _as_major(M)
    h0, h1 = M.hole
    first = GapEdge(M.leaf, h0, M.hole_length, 0)
    edges = [first]
    seen = {M.leaf}
    level = [first]
    for j in range(1, depth + 1):
        nxt = []
        for e in level:
            ell = e.length / 3
            for i in range(3):
                x = (e.start + i) / 3
                y = (x + ell) % 1
                if M.in_hole(x) or M.in_hole(y):
                    continue
                c = Chord(x, y)
                if c in seen:
                    continue
                seen.add(c)
                nxt.append(GapEdge(c, x, ell, j))
        nxt.sort(key=lambda g: g.chord)
        edges.extend(nxt)
        level = nxt
    return QuadraticGapApprox(M, depth, tuple(edges))


# ---------------------------------------------------------------- vassal

@dataclass(frozen=True)
class VassalGap:
    """The period-k gap inside H(M) spanned by M and its sibling N."""

    major: Major
    sibling: Chord
    period: int
    arcs: tuple[tuple[Fraction, Fraction], ...]   # closed arc A_n for n = 0..k-1
    gap_edges: tuple[GapEdge, ...]                # levels are sigma_3 levels
    return_degree: int
    gap: Gap

    @property
    def edges(self) -> frozenset[Chord]:
        return frozenset(e.chord for e in self.gap_edges)

    def in_basis(self, t) -> bool:
        """t stays in A_{n mod k} for every n >= 0 (decided on the finite orbit)."""
        t = angle(t)
        info = orbit_info(D, t)
        k = self.period
        orbit = list(info.orbit)
        # the pair (point, step mod k) is eventually periodic
        steps = len(orbit) + info.period * k
        x = t
        for n in range(steps):
            a, b = self.arcs[n % k]
            if not (x == a or x == b or in_open_arc(x, a, b)):
                return False
            x = sigma(D, x)
        return True


def build_vassal(M, depth: int = 2) -> VassalGap:
    """Sibling leaf, vassal edges (``depth`` return-map levels) and return degree."""
    M = _as_major(M)
    if M.type != "periodic":
        raise InvalidMajor("the vassal gap exists only for a periodic major")
    _require_quadratic(M)
    k = M.period
    h0, h1 = M.hole
    if sigma_n(D, h0, k) != h0:
        raise InvalidMajor(f"{M.leaf}: the return map swaps the endpoints")

    def sibling_in_hole(p):
        sibs = [q for q in ((p + i / Fraction(3)) % 1 for i in (1, 2)) if M.in_hole(q)]
        if len(sibs) != 1:
            raise InvalidMajor(f"no unique sibling of {format_angle(p)} inside the hole")
        return sibs[0]

    n0, n1 = sibling_in_hole(h1), sibling_in_hole(h0)
    N = Chord(n0, n1)
    # closed U-free arcs along the orbit: A_0 is the hole, A_n the hidden side of sigma^n(M)
    arcs = [(h0, h1)]
    for n in range(1, k):
        arcs.append((sigma_n(D, h0, n), sigma_n(D, h1, n)))
    scale = Fraction(1, 3 ** k)

    def branch(start, y):
        return (start + ((y - sigma_n(D, start, k)) % 1) * scale) % 1

    edges = [GapEdge(M.leaf, h1, 1 - M.hole_length, 0), GapEdge(N, n0, (n1 - n0) % 1, k)]
    level = [edges[1]]
    for _ in range(depth):
        nxt = []
        for e in level:
            for start in (h0, n1):
                x = branch(start, e.start)
                nxt.append(GapEdge(Chord(x, (x + e.length * scale) % 1), x,
                                   e.length * scale, e.level + k))
        nxt.sort(key=lambda g: g.chord)
        edges.extend(nxt)
        level = nxt

    system = LeafSystem.from_items(D, sorted({e.chord for e in edges}))
    gap = next(g for g in enumerate_gaps(system)
               if M.leaf in g.edges and N in g.edges and g.contains_germ(n0, -1))
    winding = boundary_winding(gap, D, k)
    if winding.denominator != 1:
        raise ArithmeticError("non-integral winding on the vassal boundary")
    return VassalGap(M, N, k, tuple(arcs), tuple(edges), int(winding), gap)


# ---------------------------------------------------------------- collapse map

@dataclass
class CollapseMap:
    """Itinerary coding of U' by two closed arcs A0 and A1.

    A0 runs from the fixed point z of sigma_3 in U' to the first other
    preimage of z in U', and A1 from the last such preimage back to z.
    sigma_3 maps each arc injectively, so the binary itinerary of a point
    is its image under psi_U.  For the diameter 0-1/2 both fixed points
    lie on M, and the arcs start and end at the two ends of M instead.
    Edge endpoints are coded along the germ lying on the U side.
    """

    major: Major
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        _require_quadratic(self.major)
        h0, h1 = self.major.hole
        fixed = [z for z in (Fraction(0), HALF) if not self.major.in_hole(z)]
        if len(fixed) == 2 and set(fixed) == {h0, h1}:
            z_start, z_end = h1, h0
        elif len(fixed) == 1:
            z_start = z_end = fixed[0]
        else:
            raise ValueError(f"{self.major.leaf}: the hole does not contain exactly one fixed angle")
        cands = sorted((p for z in {z_start, z_end} for p in preimages(D, z)
                        if p not in (z_start, z_end) and not _orbit_enters(p, h0, h1)),
                       key=lambda p: (p - z_start) % 1)
        if not cands:
            raise ValueError(f"{self.major.leaf}: no second preimage of the fixed point in U'")
        self.arc0 = (z_start, cands[0])
        self.arc1 = (cands[-1], z_end)

    def __call__(self, t) -> Fraction:
        t = angle(t)
        if t in self._cache:
            return self._cache[t]
        if self.major.in_hole(t) or _orbit_enters(t, *self.major.hole):
            raise ValueError(f"{format_angle(t)} is not in the basis of U (its orbit enters the hole)")
        side = +1 if not _germ_enters(t, +1, *self.major.hole) else -1
        if side < 0 and _germ_enters(t, -1, *self.major.hole):
            raise ValueError(f"{format_angle(t)} is an isolated point of the basis")
        bits: list[int] = []
        index: dict[Fraction, int] = {}
        p = t
        while p not in index:
            index[p] = len(bits)
            if _germ_in_closed(p, side, *self.arc1):
                bits.append(1)
            elif _germ_in_closed(p, side, *self.arc0):
                bits.append(0)
            else:
                raise ValueError(f"{format_angle(t)} leaves the coding arcs")
            p = sigma(D, p)
        value = _binary_value(bits, index[p])
        self._cache[t] = value
        return value

    def _branch(self, bit: int, y: Fraction) -> tuple[int, Fraction]:
        """The preimage of y in A_bit outside the hole, with its lift index.

        Boundary cases are settled by the + germ, matching the terminating
        binary expansion used for the itinerary.
        """
        arc = self.arc1 if bit else self.arc0
        for side in (+1, -1):
            for j in range(D):
                p = (y + j) / D
                if _germ_in_closed(p, side, *arc) and not self.major.in_hole(p):
                    return j, p
        raise ValueError(f"{format_angle(y)} has no preimage in A{bit}")

    def inverse(self, s) -> Fraction:
        """A basis point with the given binary itinerary (exact)."""
        s = angle(s)
        info = orbit_info(2, s)
        bits = [int(x >= HALF) for x in info.orbit]
        pre, per = bits[:info.preperiod], bits[info.preperiod:]
        # the periodic tail is the fixed point of a contraction by 3^-p; iterate
        # until the branch lifts settle, then solve the affine equation exactly
        y = self.arc0[0]
        result = None
        for _ in range(8):
            lifts = []
            for bit in reversed(per):
                j, y = self._branch(bit, y)
                lifts.append(j)
            c = sum(Fraction(j, D ** (i + 1)) for i, j in enumerate(reversed(lifts)))
            x = c / (1 - Fraction(1, D ** len(per)))
            if x < 1 and self._tail_ok(x, per):
                result = x
                break
        if result is None:
            raise ArithmeticError(f"periodic itinerary of {format_angle(s)} not found")
        for bit in reversed(pre):
            result = self._branch(bit, result)[1]
        if self(result) != s:
            raise ArithmeticError(f"inverse of {format_angle(s)} failed to verify")
        return result

    def _tail_ok(self, x: Fraction, per: list[int]) -> bool:
        y = x
        for bit in reversed(per):
            try:
                y = self._branch(bit, y)[1]
            except ValueError:
                return False
        return y == x


def _binary_value(bits: list[int], start: int) -> Fraction:
    pre, per = bits[:start], bits[start:]
    head = Fraction(int("".join(map(str, pre)) or "0", 2), 2 ** len(pre))
    tail = Fraction(int("".join(map(str, per)), 2), 2 ** len(per) - 1)
    return (head + tail / 2 ** len(pre)) % 1


def collapse_map(U) -> CollapseMap:
    major = U.major if isinstance(U, QuadraticGapApprox) else _as_major(U)
    return CollapseMap(major)


def psi_U(U, t) -> Fraction:
    return collapse_map(U)(t)


def psi_U_inverse(U, s) -> Fraction:
    return collapse_map(U).inverse(s)


# ---------------------------------------------------------------- canonical lamination

def generator_edges(M: Major, depth: int) -> tuple[list[Chord], list[Chord]]:
    """(seed chords, required chords) for the canonical lamination to ``depth``."""
    U = build_quadratic_gap(M, depth)
    required = set(U.edges)
    if M.type == "periodic":
        seeds = set()
        c = M.leaf
        for _ in range(M.period):
            seeds.add(c)
            c = c.image(D)
        V = build_vassal(M, depth // M.period)
        seeds.add(V.sibling)
        required |= {e.chord for e in V.gap_edges if e.level <= depth}
    else:
        seeds = {M.leaf}
    return sorted(seeds), sorted(required)


def canonical_lamination(M, depth: int) -> LeafSystem:
    """Pullback closure of U's (and for periodic majors V's) edges to ``depth``."""
    M = _as_major(M)
    _require_quadratic(M)
    seeds, required = generator_edges(M, depth)
    L = LeafSystem.from_items(D, seeds)
    return pullback(L, depth, required=required)


def parse_major(text: str) -> Chord:
    return Chord.parse(text)


def brute_force_majors(max_k: int = 4) -> Iterable[Chord]:
    """All sigma_3-periodic chords with denominators dividing 3^k - 1, k <= max_k."""
    found = set()
    for k in range(1, max_k + 1):
        m = 3 ** k - 1
        pts = [Fraction(i, m) for i in range(m)]
        for i, a in enumerate(pts):
            for b in pts[i + 1:]:
                c = Chord(a, b)
                if c not in found and chord_period(c) is not None:
                    found.add(c)
    return sorted(found)
