"""Factorization groupoids and the T/Φ complexes built from them."""
from .coefficients import InducedCoefficients, induced_coefficients, inflation, supported_on
from .complexes import (
    PhiComplex,
    TComplex,
    aut_of_morphism,
    check_adaptedness_combinatorial,
    families_from_c1,
    phi_complex,
    t_complex,
)
from .factorization import Diagram, DiagramClass, FactorizationGroupoid, enumerate_cn

__all__ = [
    # Factorization groupoids
    "Diagram",
    "DiagramClass",
    "FactorizationGroupoid",
    "enumerate_cn",
    # Complexes
    "TComplex",
    "PhiComplex",
    "t_complex",
    "phi_complex",
    "aut_of_morphism",
    "check_adaptedness_combinatorial",
    "families_from_c1",
    # Coefficients
    "InducedCoefficients",
    "induced_coefficients",
    "inflation",
    "supported_on",
]
