"""Finite G-sets and the orbit category."""
from .gset import (
    GMap,
    GSet,
    GSetPayload,
    coset_representatives,
    coset_space,
    equivariant_maps,
    fibered_product,
    fixed_points,
    linearize,
    orbit_partition,
    orbits,
    product,
)
from .orbitcat import Morphism, OrbitCat, OrbitFunctor, TFunctor, t_functor

__all__ = [
    "GSet",
    "GMap",
    "GSetPayload",
    "coset_representatives",
    "coset_space",
    "equivariant_maps",
    "fibered_product",
    "fixed_points",
    "linearize",
    "orbit_partition",
    "orbits",
    "product",
    "Morphism",
    "OrbitCat",
    "OrbitFunctor",
    "TFunctor",
    "t_functor",
]
