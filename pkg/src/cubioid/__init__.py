"""Exact combinatorics of sigma_2/sigma_3 invariant laminations and a
numerical toolkit for the cubic family f(z) = lambda*z + b*z^2 + z^3."""

from .angles import OrbitInfo, angle, arc_length, format_angle, orbit_info, parse_angle, sigma
from .lamination import (
    Chord,
    ClassPolygon,
    LaminationError,
    LeafSystem,
    PullbackError,
    check_class_covering,
    check_forward_invariant,
    chords_cross,
    format_lamination,
    leaf_dichotomy_check,
    parse_lamination,
    pullback,
    read_lamination,
    write_lamination,
)
from .gaps import Gap, classify_gap, enumerate_gaps, gap_report, rotation_number, rotational_sets
from .quadgap import (
    InvalidMajor,
    Major,
    build_quadratic_gap,
    build_vassal,
    canonical_lamination,
    psi_U,
    psi_U_inverse,
    validate_major,
)
from .classify import classify_tuning, is_cubioidal, quadratic_cardioid_member
from .render import RenderSpec, render_svg

__version__ = "0.1.0"
