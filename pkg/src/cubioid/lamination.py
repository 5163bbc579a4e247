"""Chords, finite laminations and the sigma_d pullback engine.

A :class:`LeafSystem` is a finite truncation of an invariant lamination: a
collection of pairwise unlinked classes (leaves are two-point classes,
polygons are larger ones).  Classes that share a vertex are merged, since
in a lamination they lie in a single equivalence class.
"""
from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .angles import (
    _check_degree,
    angle,
    format_angle,
    in_open_arc,
    parse_angle,
    preimages,
    sigma,
)


class LaminationError(ValueError):
    pass


class PullbackError(LaminationError):
    """No admissible non-crossing choice of sibling preimages exists."""


@dataclass(frozen=True, order=True)
class Chord:
    """Unordered pair of angles, stored with the smaller angle first."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = angle(self.a), angle(self.b)
        if b < a:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, text: str) -> "Chord":
        if "," in text:
            parts = text.split(",")
        elif "-" in text.strip().lstrip("-"):
            parts = text.strip().split("-")
        else:
            parts = text.split()
        if len(parts) != 2:
            raise ValueError(f"expected two angles, got {text!r}")
        return cls(parse_angle(parts[0]), parse_angle(parts[1]))

    @property
    def degenerate(self) -> bool:
        return self.a == self.b

    @property
    def endpoints(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    @property
    def length(self) -> Fraction:
        """Length of the shorter of the two arcs cut off by the chord."""
        s = self.b - self.a
        return min(s, 1 - s)

    def image(self, d: int) -> "Chord":
        return Chord(sigma(d, self.a), sigma(d, self.b))

    def is_critical(self, d: int) -> bool:
        return not self.degenerate and sigma(d, self.a) == sigma(d, self.b)

    def __str__(self) -> str:
        return f"{format_angle(self.a)}-{format_angle(self.b)}"


def chords_cross(c1: Chord, c2: Chord) -> bool:
    """True iff the two chords meet in the open disk.

    Chords sharing an endpoint (or equal chords) do not cross.
    """
    if c1.degenerate or c2.degenerate:
        raise LaminationError("crossing is undefined for degenerate chords")
    if set(c1.endpoints) & set(c2.endpoints):
        return False
    return in_open_arc(c2.a, c1.a, c1.b) != in_open_arc(c2.b, c1.a, c1.b)


@dataclass(frozen=True, order=True)
class ClassPolygon:
    """Convex hull of a finite class; vertices kept in increasing order."""

    vertices: tuple[Fraction, ...]

    def __post_init__(self):
        vs = tuple(sorted({angle(v) for v in self.vertices}))
        if len(vs) < 2:
            raise LaminationError("a class polygon needs at least two distinct vertices")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.vertices)

    @property
    def is_leaf(self) -> bool:
        return len(self.vertices) == 2

    @property
    def edges(self) -> tuple[Chord, ...]:
        vs = self.vertices
        if len(vs) == 2:
            return (Chord(vs[0], vs[1]),)
        return tuple(Chord(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def image_set(self, d: int) -> frozenset[Fraction]:
        return frozenset(sigma(d, v) for v in self.vertices)

    def __str__(self) -> str:
        return "{" + ", ".join(format_angle(v) for v in self.vertices) + "}"


def as_class(item) -> ClassPolygon:
    if isinstance(item, ClassPolygon):
        return item
    if isinstance(item, Chord):
        return ClassPolygon(item.endpoints)
    return ClassPolygon(tuple(item))


def _merge_classes(items: Iterable) -> tuple[ClassPolygon, ...]:
    """Union classes that share vertices; drop degenerate ones."""
    parent: dict[Fraction, Fraction] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for item in items:
        if isinstance(item, Chord) and item.degenerate:
            continue
        vs = [angle(v) for v in (item.endpoints if isinstance(item, Chord) else item)]
        vs = list(dict.fromkeys(vs))
        if len(vs) < 2:
            continue
        for v in vs:
            parent.setdefault(v, v)
        root = find(vs[0])
        for v in vs[1:]:
            r = find(v)
            if r != root:
                parent[r] = root
    groups: dict[Fraction, list[Fraction]] = {}
    for v in parent:
        groups.setdefault(find(v), []).append(v)
    return tuple(sorted(ClassPolygon(tuple(g)) for g in groups.values()))


@dataclass(frozen=True)
class LeafSystem:
    """Finite, pairwise unlinked family of classes for sigma_degree."""

    degree: int
    classes: tuple[ClassPolygon, ...] = ()
    generators: tuple[ClassPolygon, ...] = ()
    depth: int = 0
    flags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        _check_degree(self.degree)

    @classmethod
    def from_items(cls, degree: int, items: Iterable = ()) -> "LeafSystem":
        classes = _merge_classes(items)
        system = cls(degree, classes, classes, 0)
        crossing = system.find_crossing()
        if crossing is not None:
            raise LaminationError(f"chords {crossing[0]} and {crossing[1]} cross")
        return system

    @property
    def leaves(self) -> frozenset[Chord]:
        return frozenset(e for c in self.classes for e in c.edges)

    @property
    def vertices(self) -> frozenset[Fraction]:
        return frozenset(v for c in self.classes for v in c)

    def class_of(self, t: Fraction) -> ClassPolygon | None:
        for c in self.classes:
            if t in c.vertices:
                return c
        return None

    def __len__(self) -> int:
        return len(self.classes)

    def is_empty(self) -> bool:
        return not self.classes

    def find_crossing(self) -> tuple[Chord, Chord] | None:
        index = _VertexIndex()
        for c in self.classes:
            hit = index.crossing(c)
            if hit is not None:
                return hit
            index.add(c)
        return None

    def with_classes(self, classes: Iterable[ClassPolygon], **kw) -> "LeafSystem":
        return replace(self, classes=tuple(sorted(set(classes))), **kw)


class _VertexIndex:
    """Sorted vertex list for fast crossing queries against many classes."""

    def __init__(self, classes: Iterable[ClassPolygon] = ()):
        self._verts: list[Fraction] = []
        self._owner: dict[Fraction, ClassPolygon] = {}
        for c in classes:
            self.add(c)

    def add(self, c: ClassPolygon) -> None:
        for v in c:
            if v in self._owner:
                raise LaminationError(f"vertex {format_angle(v)} already used")
            bisect.insort(self._verts, v)
            self._owner[v] = c

    def owner(self, v: Fraction) -> ClassPolygon | None:
        return self._owner.get(v)

    def _between(self, a: Fraction, b: Fraction) -> list[Fraction]:
        """Vertices strictly inside the positive arc from a to b."""
        vs = self._verts
        if a < b:
            return vs[bisect.bisect_right(vs, a):bisect.bisect_left(vs, b)]
        return vs[bisect.bisect_right(vs, a):] + vs[:bisect.bisect_left(vs, b)]

    def edge_crossing(self, e: Chord) -> ClassPolygon | None:
        """A stored class having vertices strictly on both sides of e."""
        a, b = e.a, e.b
        inner = self._between(a, b)
        outer_count = len(self._verts) - len(inner) - (a in self._owner) - (b in self._owner)
        if len(inner) > outer_count:
            inner, (a, b) = self._between(b, a), (b, a)
        for v in inner:
            c = self._owner[v]
            if any(w != a and w != b and not in_open_arc(w, a, b) for w in c):
                return c
        return None

    def crossing(self, c: ClassPolygon) -> tuple[Chord, Chord] | None:
        for e in c.edges:
            other = self.edge_crossing(e)
            if other is not None:
                for f in other.edges:
                    if chords_cross(e, f):
                        return (e, f)
        return None


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class CheckReport:
    ok: bool
    reason: str = ""
    violator: ClassPolygon | None = None
    winding: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_forward_invariant(L: LeafSystem) -> CheckReport:
    """Every class maps onto a class of L, or collapses to a free point."""
    by_vertices = {frozenset(c.vertices): c for c in L.classes}
    verts = L.vertices
    for c in L.classes:
        img = c.image_set(L.degree)
        if len(img) == 1:
            (p,) = img
            if p in verts:
                return CheckReport(False, f"{c} collapses onto {format_angle(p)}, "
                                          "which lies in a non-degenerate class", c)
            continue
        if img not in by_vertices:
            shown = "{" + ", ".join(format_angle(v) for v in sorted(img)) + "}"
            return CheckReport(False, f"image of {c} is {shown}, not a class", c)
    return CheckReport(True)


def check_class_covering(gamma, d: int) -> CheckReport:
    """Check that sigma_d on gamma extends to an orientation preserving covering.

    Walking once around gamma, each vertex image must be the next point of
    the image class in positive cyclic order; the number of turns is the
    covering degree.
    """
    gamma = as_class(gamma)
    _check_degree(d)
    images = [sigma(d, v) for v in gamma.vertices]
    target = sorted(set(images))
    pos = {t: i for i, t in enumerate(target)}
    s = len(target)
    if len(gamma) % s:
        return CheckReport(False, "class size is not a multiple of its image size", gamma)
    for i, w in enumerate(images):
        nxt = images[(i + 1) % len(images)]
        if pos[nxt] != (pos[w] + 1) % s:
            return CheckReport(False, "vertex images are not cyclically monotone", gamma)
    return CheckReport(True, winding=len(gamma) // s)


# ---------------------------------------------------------------- pullback

def _lift_groups(rem: list[list[Fraction]], r: int):
    """All ways to pick one remaining preimage per vertex for each of r lifts."""
    first = rem[0]
    for perms in itertools.product(itertools.permutations(range(r)), repeat=len(rem) - 1):
        groups = []
        for i in range(r):
            groups.append(tuple([first[i]] + [rem[j + 1][perms[j][i]] for j in range(len(rem) - 1)]))
        yield groups


def _option_cost(groups: Sequence[ClassPolygon]):
    length = sum((e.length for g in groups for e in g.edges), Fraction(0))
    return (length, tuple(sorted(g.vertices for g in groups)))


def _lift_class(V: ClassPolygon, d: int, index: _VertexIndex,
                fixed: list[ClassPolygon], required: dict[Chord, None],
                required_index: _VertexIndex | None) -> list[ClassPolygon]:
    used = {v for c in fixed for v in c}
    rem = []
    for v in V.vertices:
        pv = [p for p in preimages(d, v) if p not in used]
        rem.append(pv)
    counts = {len(x) for x in rem}
    if len(counts) != 1:
        raise PullbackError(f"preimages of {V} are unevenly consumed by critical classes")
    r = counts.pop()
    if r == 0:
        return []
    pool = {p for x in rem for p in x}
    needed = [c for c in required if c.a in pool and c.b in pool]
    best = None
    for raw in _lift_groups(rem, r):
        groups = []
        for g in raw:
            poly = ClassPolygon(g)
            if len(poly) != len(V) or not check_class_covering(poly, d).ok:
                break
            groups.append(poly)
        else:
            if not _admissible(groups, index, needed, required_index):
                continue
            cost = _option_cost(groups)
            if best is None or cost < best[0]:
                best = (cost, groups)
    if best is None:
        raise PullbackError(f"no non-crossing choice of preimages for {V}")
    return best[1]


def _admissible(groups, index, needed, required_index) -> bool:
    for g in groups:
        if any(index.owner(v) is not None for v in g):
            return False
        if index.crossing(g) is not None:
            return False
        if required_index is not None and required_index.crossing(g) is not None:
            return False
    for g, h in itertools.combinations(groups, 2):
        if any(chords_cross(e, f) for e in g.edges for f in h.edges):
            return False
    edges = {e for g in groups for e in g.edges}
    return all(c in edges for c in needed)


def pullback(L: LeafSystem, depth: int, required: Iterable[Chord] = ()) -> LeafSystem:
    """Enlarge L by sigma_d-preimages of its classes until ``L.depth == depth``.

    At each level every class gets its full set of preimage classes; the
    choice of which preimage points form a sibling class is the unique
    admissible one when the lamination forces it, otherwise the one of
    least total chord length (ties broken lexicographically).

    ``required`` chords are leaves of the intended lamination that are not
    yet in L: new classes may not cross them, and any of them that turns up
    among the candidate preimages must be chosen.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth <= L.depth:
        return L
    d = L.degree
    report = check_forward_invariant(L)
    if not report:
        raise LaminationError("pullback needs a forward invariant system: " + report.reason)
    required = {c: None for c in required if not c.degenerate}
    req_by_image: dict[frozenset, dict[Chord, None]] = {}
    for c in required:
        img = frozenset((sigma(d, c.a), sigma(d, c.b)))
        req_by_image.setdefault(img, {})[c] = None

    req_index = None
    if required:
        req_index = _VertexIndex()
        for c in sorted(required):
            if req_index.owner(c.a) is None and req_index.owner(c.b) is None:
                req_index.add(ClassPolygon(c.endpoints))

    classes = list(L.classes)
    index = _VertexIndex(classes)
    for level in range(L.depth, depth):
        by_image: dict[frozenset, list[ClassPolygon]] = {}
        for c in classes:
            by_image.setdefault(c.image_set(d), []).append(c)
        current = list(classes)
        for V in current:
            key = frozenset(V.vertices)
            req = req_by_image.get(key, {})
            new = _lift_class(V, d, index, by_image.get(key, []), req, req_index)
            for g in new:
                index.add(g)
                classes.append(g)
                by_image.setdefault(g.image_set(d), []).append(g)
    flags = set(L.flags) | {"forward-invariant", "siblings-complete"}
    return replace(L, classes=tuple(sorted(classes)), depth=depth, flags=frozenset(flags))


# ---------------------------------------------------------------- dichotomy

@dataclass(frozen=True)
class DichotomyReport:
    ok: bool
    edges: tuple[tuple[Chord, str], ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def edge_fate(d: int, e: Chord, limit: int = 10_000) -> str:
    """'precritical', 'periodic' or 'preperiodic' for a rational chord."""
    seen = set()
    c, n = e, 0
    while n < limit:
        if c.degenerate:
            return "precritical"
        key = (c.a, c.b)
        if key in seen:
            break
        seen.add(key)
        c = c.image(d)
        n += 1
    # the orbit of the chord closed up: periodic if e itself recurs
    c = e.image(d)
    for _ in range(len(seen)):
        if c == e:
            return "periodic"
        c = c.image(d)
    return "preperiodic"


def leaf_dichotomy_check(L: LeafSystem) -> DichotomyReport:
    """Every edge of a periodic gap is (pre)critical or (pre)periodic.

    For rational data the fate of each edge is decided by following its
    forward orbit; the report lists the fate of each such edge.
    """
    from .gaps import classify_gap, enumerate_gaps

    report = check_forward_invariant(L)
    if not report:
        raise LaminationError("leaf dichotomy needs a forward invariant system: " + report.reason)
    fates = {}
    for g in enumerate_gaps(L):
        g = classify_gap(g, L)
        if g.period is None:
            continue
        for e in g.edges:
            fates[e] = edge_fate(L.degree, e)
    ok = all(f in ("precritical", "periodic", "preperiodic") for f in fates.values())
    return DichotomyReport(ok, tuple(sorted(fates.items())))


# ---------------------------------------------------------------- text format

def format_lamination(L: LeafSystem) -> str:
    lines = [f"degree {L.degree}"]
    for c in L.classes:
        kw = "leaf" if c.is_leaf else "poly"
        lines.append(kw + " " + " ".join(format_angle(v) for v in c.vertices))
    return "\n".join(lines) + "\n"


def parse_lamination(text: str) -> LeafSystem:
    degree = None
    items = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "degree":
            if degree is not None or len(rest) != 1:
                raise LaminationError(f"line {lineno}: bad degree header")
            degree = int(rest[0])
        elif head == "leaf":
            if len(rest) != 2:
                raise LaminationError(f"line {lineno}: a leaf needs two angles")
            items.append(Chord(parse_angle(rest[0]), parse_angle(rest[1])))
        elif head == "poly":
            if len(rest) < 2:
                raise LaminationError(f"line {lineno}: a polygon needs at least two angles")
            items.append(tuple(parse_angle(x) for x in rest))
        else:
            raise LaminationError(f"line {lineno}: unknown item {head!r}")
    if degree is None:
        raise LaminationError("missing 'degree' header")
    return LeafSystem.from_items(degree, items)


def read_lamination(path) -> LeafSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_lamination(fh.read())


def write_lamination(L: LeafSystem, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_lamination(L))
