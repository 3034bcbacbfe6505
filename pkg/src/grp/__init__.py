"""Finite permutation groups, their subgroups and integral representations."""
from .builtins import (
    BUILTIN_GROUPS,
    GroupPayload,
    alternating,
    cyclic,
    dihedral,
    resolve_group,
    symmetric,
    trivial,
)
from .group import PermGroup, Subgroup, closure, compose, generating_set, invert
from .module import GModule, PermutationComplex
from .subgroups import (
    all_subgroups,
    are_conjugate,
    class_index,
    double_coset_classes,
    double_cosets,
    family_closure,
    is_p_group,
    left_cosets,
    maximal_members,
    normalizer,
    proper_family,
    subgroup_classes,
    weyl_group,
)

__all__ = [
    # Groups
    "PermGroup",
    "Subgroup",
    "closure",
    "compose",
    "generating_set",
    "invert",
    # Named groups
    "BUILTIN_GROUPS",
    "GroupPayload",
    "alternating",
    "cyclic",
    "dihedral",
    "resolve_group",
    "symmetric",
    "trivial",
    # Subgroup combinatorics
    "all_subgroups",
    "are_conjugate",
    "class_index",
    "double_coset_classes",
    "double_cosets",
    "family_closure",
    "is_p_group",
    "left_cosets",
    "maximal_members",
    "normalizer",
    "proper_family",
    "subgroup_classes",
    "weyl_group",
    # Modules
    "GModule",
    "PermutationComplex",
]
