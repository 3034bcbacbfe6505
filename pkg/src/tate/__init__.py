"""Classical and family-relative Tate cohomology."""
from .adapted import ADAPTED_KINDS, AdaptedComplex, build_adapted, check_family_adapted
from .generalized import (
    check_schedule,
    default_schedule,
    first_stage,
    generalized_tate,
    stage_cochains,
    tate_annihilation_check,
)
from .periodic import PeriodicResolution, TateResult, classical_tate, resolve_window

__all__ = [
    # Classical
    "PeriodicResolution",
    "TateResult",
    "classical_tate",
    "resolve_window",
    # Adapted complexes
    "ADAPTED_KINDS",
    "AdaptedComplex",
    "build_adapted",
    "check_family_adapted",
    # Family Tate cohomology
    "check_schedule",
    "default_schedule",
    "first_stage",
    "generalized_tate",
    "stage_cochains",
    "tate_annihilation_check",
]
