"""The cubioidal predicate and the tuning / coexistence classifier."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .gaps import Gap, classified_gaps, rotational_sets, set_period
from .lamination import (
    Chord,
    ClassPolygon,
    LaminationError,
    LeafSystem,
    _VertexIndex,
    edge_fate,
)
from .quadgap import QuadraticGapApprox, collapse_map

CUBIOIDAL = "cubioidal"
NOT_CUBIOIDAL = "not-cubioidal"
UNDETERMINED = "undetermined-at-depth"

CASE_TUNES = "tunes (1)"
CASE_COEXISTS = "coexists-weak-tunes (2)"
CASE_NEITHER = "neither"
CASE_UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class CubioidReport:
    verdict: str
    rotational_sets_found: tuple = ()
    violating_leaf: Chord | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict == CUBIOIDAL


def periodic_leaves(L: LeafSystem) -> list[Chord]:
    return sorted(e for e in L.leaves if edge_fate(L.degree, e) == "periodic")


def _side_status(g: Gap) -> str:
    """'pass', 'finite' or 'unknown' for a gap attached to a periodic leaf."""
    if g.kind == "finite":
        return "finite"
    if g.status == "periodic" and g.return_degree is not None and g.return_degree >= 2:
        return "pass"
    return "unknown"


def is_cubioidal(L: LeafSystem) -> CubioidReport:
    """At most one rotational set, and every periodic leaf has an attached Fatou gap."""
    if L.degree != 3:
        raise ValueError("is_cubioidal expects a degree-3 lamination")
    rs = tuple(rotational_sets(L))
    if len(rs) >= 2:
        return CubioidReport(NOT_CUBIOIDAL, rs, None, f"{len(rs)} rotational sets")
    gaps = classified_gaps(L)
    undetermined = None
    for leaf in periodic_leaves(L):
        sides = [_side_status(g) for g in gaps if leaf in g.edges]
        if "pass" in sides:
            continue
        if all(s == "finite" for s in sides):
            return CubioidReport(NOT_CUBIOIDAL, rs, leaf,
                                 f"periodic leaf {leaf} has finite gaps on both sides")
        if undetermined is None:
            undetermined = leaf
    if undetermined is not None:
        return CubioidReport(UNDETERMINED, rs, undetermined,
                             f"no certified periodic Fatou gap of degree >= 2 at {undetermined}")
    return CubioidReport(CUBIOIDAL, rs)


@dataclass(frozen=True)
class CardioidReport:
    member: bool
    witness: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.member


def quadratic_cardioid_member(L2: LeafSystem) -> CardioidReport:
    """Empty, or a single invariant rotational set carrying every periodic leaf."""
    if L2.degree != 2:
        raise ValueError("quadratic_cardioid_member expects a degree-2 lamination")
    if L2.is_empty():
        return CardioidReport(True, reason="empty lamination")
    rs = rotational_sets(L2)
    if len(rs) != 1:
        return CardioidReport(False, tuple(rs), f"{len(rs)} rotational sets")
    (R,) = rs
    if isinstance(R, Gap):
        invariant = R.period == 1
        edges = set(R.edges)
    else:
        invariant = set_period(R.vertices, 2) == 1
        edges = set(R.edges)
    if not invariant:
        return CardioidReport(False, R, "the rotational set is not invariant")
    for leaf in periodic_leaves(L2):
        if leaf not in edges:
            return CardioidReport(False, leaf, f"periodic leaf {leaf} is not an edge of the rotational set")
    return CardioidReport(True, R)


@dataclass(frozen=True)
class ClassificationReport:
    case: str
    gap_U: QuadraticGapApprox
    induced_quadratic: LeafSystem | None = None
    cardioid_member: bool | None = None
    witness: object = None
    reason: str = ""


def _u_crossing(L: LeafSystem, edges) -> tuple[Chord, Chord] | None:
    index = _VertexIndex(L.classes)
    for e in sorted(edges):
        other = index.edge_crossing(e)
        if other is not None:
            for f in other.edges:
                if not set(f.endpoints) & set(e.endpoints):
                    from .lamination import chords_cross
                    if chords_cross(e, f):
                        return (f, e)
    return None


def induced_quadratic(L: LeafSystem, U: QuadraticGapApprox) -> LeafSystem:
    """Transport the classes of L lying in the basis of U to sigma_2 through psi_U."""
    psi = collapse_map(U)
    items = []
    for c in L.classes:
        if not all(U.in_basis(v) for v in c.vertices):
            continue
        img = {psi(v) for v in c.vertices}
        if len(img) >= 2:
            items.append(tuple(sorted(img)))
    return LeafSystem.from_items(2, items)


def classify_tuning(L: LeafSystem, U: QuadraticGapApprox) -> ClassificationReport:
    """Does L tune U's canonical lamination, coexist with U, or neither?"""
    if L.degree != 3:
        raise ValueError("classify_tuning expects a degree-3 lamination")
    if U.depth != L.depth:
        return ClassificationReport(CASE_UNDETERMINED, U,
                                    reason=f"depth mismatch: lamination {L.depth}, gap {U.depth}")
    hit = _u_crossing(L, U.edges)
    if hit is not None:
        return ClassificationReport(CASE_NEITHER, U, witness=hit,
                                    reason=f"leaf {hit[0]} crosses gap edge {hit[1]}")
    leaves = L.leaves
    missing = [e for e in sorted(U.edges) if e not in leaves]
    if not missing and U.major.type == "periodic":
        from .quadgap import build_vassal
        V = build_vassal(U.major, max(1, L.depth // U.major.period))
        missing = [e.chord for e in V.gap_edges if e.level <= L.depth and e.chord not in leaves]
        if missing:
            return ClassificationReport(CASE_NEITHER, U, witness=missing[0],
                                        reason=f"vassal edge {missing[0]} is not a leaf")
    if not missing:
        case = CASE_TUNES
    elif U.major.type == "regular-critical":
        case = CASE_COEXISTS
    else:
        return ClassificationReport(CASE_NEITHER, U, witness=missing[0],
                                    reason=f"gap edge {missing[0]} is not a leaf and U is periodic")
    try:
        Q = induced_quadratic(L, U)
    except LaminationError as exc:
        return ClassificationReport(CASE_UNDETERMINED, U, reason=f"transport failed: {exc}")
    member = quadratic_cardioid_member(Q)
    return ClassificationReport(case, U, Q, member.member, member.witness, member.reason)


RotationalObject = Union[ClassPolygon, Gap]
