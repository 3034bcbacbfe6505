"""
Exact integer linear algebra and bounded chain complexes.

Everything downstream (group homology, T/Φ complexes, Tate cohomology,
Bredon chains) computes homology through this package.
"""
from .abgroup import AbGroup
from .complex import (
    ChainComplexPayload,
    ChainMap,
    IntChainComplex,
    Window,
    bar_window,
    block_offsets,
    cone,
    homology,
    shift,
    tensor,
    total_complex,
)
from .lattice import IntLattice, KernelBasis, integer_kernel, stacked_kernel
from .matrix import IntMatrix
from .reduction import FilteredComplex
from .snf import SmithForm, invariant_factors, rank, smith_normal_form

__all__ = [
    # Matrices
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "invariant_factors",
    "rank",
    # Lattices
    "IntLattice",
    "KernelBasis",
    "integer_kernel",
    "stacked_kernel",
    # Abelian groups
    "AbGroup",
    # Complexes
    "IntChainComplex",
    "ChainMap",
    "ChainComplexPayload",
    "Window",
    "bar_window",
    "block_offsets",
    "cone",
    "homology",
    "shift",
    "tensor",
    "total_complex",
    "FilteredComplex",
]
