"""Homology of finite categories with coefficients, group (co)homology and free resolutions."""
from .bar import (
    BarComplexTruncation,
    bar_complex,
    chain_counts,
    check_budget,
    derived_burnside,
    functor_chain_map,
    group_cohomology,
    group_homology,
    orbit_groupoid,
)
from .category import ActionGroupoid, CoefficientSystem, FinCategory, GroupoidSum
from .resolution import RESOLUTION_KINDS, FreeResolution

__all__ = [
    # Categories
    "FinCategory",
    "ActionGroupoid",
    "GroupoidSum",
    "CoefficientSystem",
    # Bar complexes
    "BarComplexTruncation",
    "bar_complex",
    "chain_counts",
    "check_budget",
    "functor_chain_map",
    "orbit_groupoid",
    # Group (co)homology
    "group_homology",
    "group_cohomology",
    "derived_burnside",
    "FreeResolution",
    "RESOLUTION_KINDS",
]
