from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubioid.lamination import (
    Chord,
    ClassPolygon,
    LaminationError,
    LeafSystem,
    check_class_covering,
    check_forward_invariant,
    chords_cross,
    edge_fate,
    format_lamination,
    leaf_dichotomy_check,
    parse_lamination,
    pullback,
    read_lamination,
    write_lamination,
)
from cubioid.quadgap import canonical_lamination


def ch(a, b):
    return Chord(F(a), F(b))


def test_chord_is_normalized():
    c = Chord(F(2, 3), F(4, 3))
    assert c.endpoints == (F(1, 3), F(2, 3))
    assert c.length == F(1, 3)
    assert Chord.parse("2/3,1/3") == c
    assert Chord.parse("1/3-2/3") == c
    assert str(c) == "1/3-2/3"
    assert c.is_critical(3) and not c.is_critical(2)


@pytest.mark.parametrize("c1, c2, expected", [
    (("0", "1/2"), ("1/4", "3/4"), True),
    (("1/7", "2/7"), ("4/7", "5/7"), False),
    (("1/3", "2/3"), ("1/3", "2/3"), False),
    (("1/3", "2/3"), ("2/3", "5/6"), False),   # shared endpoint
    (("1/8", "5/8"), ("3/8", "7/8"), True),
])
def test_chords_cross(c1, c2, expected):
    assert chords_cross(ch(*c1), ch(*c2)) is expected
    assert chords_cross(ch(*c2), ch(*c1)) is expected


def test_from_items_rejects_crossings_and_merges_classes():
    with pytest.raises(LaminationError):
        LeafSystem.from_items(3, [ch("0", "1/2"), ch("1/4", "3/4")])
    L = LeafSystem.from_items(2, [ch("1/7", "2/7"), ch("2/7", "4/7"), ch("4/7", "1/7")])
    assert len(L.classes) == 1
    assert L.classes[0].vertices == (F(1, 7), F(2, 7), F(4, 7))
    assert len(L.leaves) == 3


@pytest.mark.parametrize("degree, leaf, ok", [
    (2, ("1/3", "2/3"), True),
    (3, ("0", "1/2"), True),
    (2, ("1/7", "2/7"), False),
])
def test_forward_invariance(degree, leaf, ok):
    assert check_forward_invariant(LeafSystem.from_items(degree, [ch(*leaf)])).ok is ok


def test_class_covering():
    tri = check_class_covering([F(1, 7), F(2, 7), F(4, 7)], 2)
    assert tri.ok and tri.winding == 1
    swap = check_class_covering([F(1, 8), F(3, 8)], 3)
    assert swap.ok and swap.winding == 1
    # the square doubles onto the diameter {0, 1/2}, wrapping twice
    sq = check_class_covering([F(0), F(1, 4), F(1, 2), F(3, 4)], 2)
    assert sq.ok and sq.winding == 2
    assert check_class_covering([F(1, 9), F(2, 9), F(4, 9), F(5, 9)], 3).winding == 2
    reversing = check_class_covering([F(0), F(1, 4), F(1, 2)], 3)
    assert not reversing.ok and "monotone" in reversing.reason
    assert not check_class_covering([F(0), F(1, 9), F(1, 3)], 3).ok


def test_pullback_depth_zero_is_identity():
    L = LeafSystem.from_items(3, [ch("1/3", "2/3")])
    assert pullback(L, 0).classes == L.classes


def test_pullback_of_period_two_leaf():
    # 1/3-2/3 is its own image under doubling; its sibling is 1/6-5/6
    L = pullback(LeafSystem.from_items(2, [ch("1/3", "2/3")]), 1)
    assert L.leaves == {ch("1/3", "2/3"), ch("1/6", "5/6")}
    assert check_forward_invariant(L)


def test_pullback_of_invariant_diameter_under_tripling():
    L = pullback(LeafSystem.from_items(3, [ch("0", "1/2")]), 1)
    assert L.leaves == {ch("0", "1/2"), ch("1/6", "1/3"), ch("2/3", "5/6")}
    assert L.depth == 1
    assert check_forward_invariant(L)


def test_pullback_of_critical_leaf_is_cantor_like():
    L = pullback(LeafSystem.from_items(3, [ch("1/3", "2/3")]), 2)
    assert ch("1/9", "2/9") in L.leaves and ch("7/9", "8/9") in L.leaves
    assert ch("4/9", "5/9") in L.leaves
    assert len(L.leaves) == 13
    assert L.find_crossing() is None


def test_pullback_respects_required_chords():
    base = LeafSystem.from_items(3, [ch("1/3", "2/3")])
    L = pullback(base, 1, required=[ch("1/9", "2/9")])
    assert ch("1/9", "2/9") in L.leaves


def test_edge_fates():
    assert edge_fate(3, ch("1/9", "2/9")) == "precritical"
    assert edge_fate(2, ch("1/3", "2/3")) == "periodic"
    assert edge_fate(3, ch("1/6", "1/3")) == "preperiodic"


def test_leaf_dichotomy():
    rep = leaf_dichotomy_check(canonical_lamination(Chord(F(1, 3), F(2, 3)), 2))
    assert rep.ok
    assert rep.edges and all(fate == "precritical" for _, fate in rep.edges)
    assert leaf_dichotomy_check(LeafSystem.from_items(2, [ch("1/3", "2/3")])).ok
    with pytest.raises(LaminationError):
        leaf_dichotomy_check(LeafSystem.from_items(2, [ch("1/6", "1/3")]))


def test_text_format_round_trip(tmp_path):
    L = LeafSystem.from_items(2, [(F(1, 7), F(2, 7), F(4, 7)), ch("5/7", "6/7")])
    text = format_lamination(L)
    assert text.splitlines()[0] == "degree 2"
    assert "poly 1/7 2/7 4/7" in text
    assert parse_lamination(text).classes == L.classes
    path = tmp_path / "l.lam"
    write_lamination(L, path)
    assert read_lamination(path).classes == L.classes


@pytest.mark.parametrize("text", [
    "leaf 1/3 2/3\n",
    "degree 3\nleaf 1/3\n",
    "degree 3\nsquare 0 1/4 1/2 3/4\n",
    "degree 5\n",
    "degree 3\ndegree 3\n",
])
def test_text_format_errors(text):
    with pytest.raises(ValueError):
        parse_lamination(text)


def test_comments_and_blank_lines_are_ignored():
    L = parse_lamination("# cantor\n\ndegree 3\nleaf 1/3 2/3  # major\n")
    assert L.leaves == {ch("1/3", "2/3")}


chords = st.tuples(st.integers(0, 23), st.integers(0, 23)).filter(lambda p: p[0] != p[1]).map(
    lambda p: Chord(F(p[0], 24), F(p[1], 24)))


@settings(max_examples=200)
@given(chords, chords)
def test_crossing_is_symmetric_and_irreflexive(c1, c2):
    assert chords_cross(c1, c2) == chords_cross(c2, c1)
    assert not chords_cross(c1, c1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["0,1/2", "1/3,2/3", "1/8,3/8", "1/9,4/9", "2/9,5/9"]), st.integers(1, 3))
def test_pullback_is_unlinked_and_invariant(seed, depth):
    base = LeafSystem.from_items(3, [Chord.parse(seed)])
    L = pullback(base, depth)
    assert L.find_crossing() is None
    assert set(base.leaves) <= set(L.leaves)
    for c in L.classes:
        img = c.image_set(3)
        assert len(img) == 1 or any(set(img) == set(k.vertices) for k in L.classes) or c in base.classes
