from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubioid.angles import parse_angle
from cubioid.gaps import (
    adjacent_gaps,
    boundary_winding,
    classified_gaps,
    cyclic_shift,
    enumerate_gaps,
    gap_report,
    rotation_number,
    rotational_sets,
    set_period,
)
from cubioid.lamination import Chord, ClassPolygon, LeafSystem, pullback
from cubioid.quadgap import canonical_lamination

TRIANGLE = (F(1, 7), F(2, 7), F(4, 7))


def by_kind(gaps, kind):
    return [g for g in gaps if g.kind == kind]


def test_empty_system_is_the_whole_disk():
    (g,) = classified_gaps(LeafSystem.from_items(3, []))
    assert g.is_whole_disk and g.arc_measure() == 1
    assert (g.kind, g.period, g.return_degree) == ("fatou", 1, 3)


def test_diameter_splits_disk_into_two_degree_two_gaps():
    L = LeafSystem.from_items(3, [Chord(F(0), F(1, 2))])
    gaps = classified_gaps(L)
    assert len(gaps) == 2
    assert sorted(g.arc_measure() for g in gaps) == [F(1, 2), F(1, 2)]
    for g in gaps:
        assert g.kind == "fatou" and g.period == 1 and g.return_degree == 2
        assert not g.siegel_type


def test_triangle_gaps():
    L = LeafSystem.from_items(2, [TRIANGLE])
    gaps = classified_gaps(L)
    assert len(gaps) == 4
    (fin,) = by_kind(gaps, "finite")
    assert fin.vertices == TRIANGLE
    assert fin.period == 1 and fin.rotation_number == F(1, 3)
    assert len(by_kind(gaps, "fatou")) == 3


def test_gap_arcs_partition_circle():
    L = canonical_lamination(Chord(F(1, 3), F(2, 3)), 2)
    gaps = enumerate_gaps(L)
    assert sum(g.arc_measure() for g in gaps) == 1
    # each leaf borders exactly two gaps
    for leaf in L.leaves:
        assert len(adjacent_gaps(L, leaf, gaps)) == 2


def test_germ_membership():
    L = LeafSystem.from_items(3, [Chord(F(0), F(1, 2))])
    upper = next(g for g in enumerate_gaps(L) if g.contains_point(F(1, 4)))
    assert upper.contains_germ(F(0), +1)
    assert not upper.contains_germ(F(0), -1)
    assert upper.contains_germ(F(1, 2), -1)
    assert not upper.contains_germ(F(1, 2), +1)


@pytest.mark.parametrize("points, d, expected", [
    (TRIANGLE, 2, F(1, 3)),
    ((F(1, 8), F(3, 8)), 3, F(1, 2)),
    ((F(0),), 3, F(0)),
])
def test_rotation_number(points, d, expected):
    assert rotation_number(points, d) == expected
    if len(points) > 1:
        assert rotation_number(ClassPolygon(points), d) == expected


def test_rotation_number_rejects_non_periodic():
    with pytest.raises(ValueError):
        rotation_number([F(1, 6), F(1, 3)], 3)


def test_cyclic_shift_and_period():
    assert set_period(TRIANGLE, 2) == 1
    assert cyclic_shift(TRIANGLE, 2, 1) == 1
    assert set_period([F(1, 7)], 2) == 3


def test_boundary_winding_of_half_disk():
    L = LeafSystem.from_items(3, [Chord(F(0), F(1, 2))])
    for g in enumerate_gaps(L):
        assert boundary_winding(g, 3, 1) == 2


def test_rotational_sets():
    assert rotational_sets(canonical_lamination(Chord(F(1, 3), F(2, 3)), 3)) == []
    one = pullback(LeafSystem.from_items(3, [Chord(F(1, 8), F(3, 8))]), 3)
    (r,) = rotational_sets(one)
    assert set(r.vertices) == {F(1, 8), F(3, 8)}
    assert rotation_number(r, 3) == F(1, 2)
    two = pullback(LeafSystem.from_items(3, [Chord(F(1, 8), F(3, 8)), Chord(F(5, 8), F(7, 8))]), 3)
    assert len(rotational_sets(two)) == 2


def test_periodic_gap_of_cantor_lamination():
    L = canonical_lamination(Chord(F(1, 3), F(2, 3)), 2)
    periodic = [g for g in classified_gaps(L) if g.status == "periodic"]
    (U,) = [g for g in periodic if g.kind == "fatou"]
    assert U.return_degree == 2 and U.period == 1
    assert Chord(F(1, 3), F(2, 3)) in U.edges


def test_gap_report_formats():
    gaps = classified_gaps(LeafSystem.from_items(2, [TRIANGLE]))
    kv = gap_report(gaps, "kv").splitlines()
    assert len(kv) == 4
    assert all(line.startswith(f"gap={i} ") for i, line in enumerate(kv))
    assert any("kind=finite" in line and "rotation=1/3" in line for line in kv)
    text = gap_report(gaps)
    assert text.startswith("gap 0: kind=")


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["0,1/2", "1/3,2/3", "1/8,3/8", "1/9,4/9", "1/13,3/13,9/13"]), st.integers(0, 3))
def test_arc_measures_always_sum_to_one(seed, depth):
    L = pullback(LeafSystem.from_items(3, [tuple(parse_angle(x) for x in seed.split(","))]), depth)
    gaps = enumerate_gaps(L)
    assert sum(g.arc_measure() for g in gaps) == 1
    # a leaf adds one region, an n-gon adds n (its n outer sides minus one, plus the inside)
    assert len(gaps) == 1 + sum(1 if len(c) == 2 else len(c) for c in L.classes)
