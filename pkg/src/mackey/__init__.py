"""Burnside rings, spans of orbits and Mackey functors with free values."""
from .burnside import BurnsideRing, burnside_ring, decompose
from .functor import MackeyFunctorData, fixed_point_mackey, validate_mackey
from .spans import (
    Span,
    SpanHom,
    canonical_span,
    compose_combinations,
    compose_spans,
    identity_span,
    span_counts,
    span_from_map,
    span_hom,
    transpose,
    transpose_combination,
)

__all__ = [
    "BurnsideRing",
    "burnside_ring",
    "decompose",
    "MackeyFunctorData",
    "fixed_point_mackey",
    "validate_mackey",
    "Span",
    "SpanHom",
    "canonical_span",
    "compose_combinations",
    "compose_spans",
    "identity_span",
    "span_counts",
    "span_from_map",
    "span_hom",
    "transpose",
    "transpose_combination",
]
