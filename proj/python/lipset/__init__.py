"""Exact interval-set algebra, one-sided densities, a zig-zag function
builder with exact rational evaluation, and fat-Cantor stage constructions.

All numeric values cross the boundary as exact rational strings ("p/q");
convert with fractions.Fraction on the python side.
"""

from ._lipset import (  # noqa: F401
    IntervalSet,
    LipFunction,
    build_f_infinity,
    complement_in,
    default_schedule,
    distance,
    intersect,
    left_density,
    level1_open,
    levelk_open,
    lip_scan,
    measure_in,
    right_density,
    sosd_scan,
    union_of,
    verify,
)

__all__ = [
    "IntervalSet",
    "LipFunction",
    "build_f_infinity",
    "complement_in",
    "default_schedule",
    "distance",
    "intersect",
    "left_density",
    "level1_open",
    "levelk_open",
    "lip_scan",
    "measure_in",
    "right_density",
    "sosd_scan",
    "union_of",
    "verify",
]
