"""Simplicial G-sets, Bredon chains and representation spheres."""
from .complex import BredonComplex, bredon_complex
from .simplicial import (
    DimensionPayload,
    SimplicialGSet,
    SimplicialPayload,
    fixed_subcomplex,
    simplicial_homology,
    sort_with_sign,
)
from .spheres import (
    SUMMAND_KINDS,
    Summand,
    fixed_dimension,
    is_homology_sphere,
    parse_representation,
    representation_sphere,
    smash,
    sphere_invertibility_hypotheses,
    unit_sphere,
)

__all__ = [
    # Simplicial G-sets
    "SimplicialGSet",
    "fixed_subcomplex",
    "simplicial_homology",
    "sort_with_sign",
    "DimensionPayload",
    "SimplicialPayload",
    # Bredon chains
    "BredonComplex",
    "bredon_complex",
    # Spheres
    "SUMMAND_KINDS",
    "Summand",
    "fixed_dimension",
    "is_homology_sphere",
    "parse_representation",
    "representation_sphere",
    "smash",
    "sphere_invertibility_hypotheses",
    "unit_sphere",
]
