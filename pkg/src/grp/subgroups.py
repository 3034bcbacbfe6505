"""
Subgroup combinatorics: conjugacy classes, normalizers, Weyl groups,
cosets and double cosets, families of subgroups.
"""
import logging
from typing import Iterable, List, Optional, Set

from sympy import factorint

from src.config import get_config
from src.errors import GroupTooLarge
from src.grp.group import PermGroup, Subgroup, closure

logger = logging.getLogger(__name__)


def _check_bound(g: PermGroup, max_order: Optional[int]) -> None:
    bound = max_order if max_order is not None else get_config().limits.max_group_order
    if g.order > bound:
        raise GroupTooLarge(g.order, bound)


def all_subgroups(g: PermGroup, max_order: Optional[int] = None) -> List[Subgroup]:
    """
    Every subgroup of ``g``, sorted by order then by element tuple.

    Subgroups are found as joins of cyclic subgroups, which reach every
    subgroup since each is generated by its cyclic subgroups.

    Raises:
        GroupTooLarge: If |g| exceeds ``max_order`` (default: configured bound)
    """
    _check_bound(g, max_order)
    cyclic = {closure(g, [x]) for x in g}
    found: Set[frozenset] = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new: Set[frozenset] = set()
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                joined = closure(g, sorted(h | c))
                if joined not in found:
                    found.add(joined)
                    new.add(joined)
        frontier = new
    out = [Subgroup(g, elems, validate=False) for elems in found]
    out.sort(key=lambda s: s.key)
    logger.debug(f"{g} has {len(out)} subgroups")
    return out


def subgroup_classes(g: PermGroup, max_order: Optional[int] = None) -> List[Subgroup]:
    """
    One representative per conjugacy class of subgroups.

    Each representative is the smallest member of its class in the
    (order, element tuple) ordering, and the list is sorted the same way.

    Args:
        g: The group
        max_order: Enumeration bound (default: ``limits.max_group_order``)

    Returns:
        Class representatives, from the trivial subgroup up to ``g`` itself

    Raises:
        GroupTooLarge: If |g| exceeds the bound

    Example:
        >>> [h.order for h in subgroup_classes(symmetric(3))]
        [1, 2, 3, 6]
    """
    reps: List[Subgroup] = []
    seen: Set[frozenset] = set()
    for h in all_subgroups(g, max_order):
        if h.elements in seen:
            continue
        reps.append(h)
        for x in g:
            seen.add(h.conjugate(x).elements)
    return reps


def class_index(classes: List[Subgroup], h: Subgroup) -> int:
    """Position of the conjugacy class of ``h`` in ``classes``."""
    for k, rep in enumerate(classes):
        if rep.order == h.order and any(rep.conjugate(x) == h for x in h.parent):
            return k
    raise ValueError(f"{h} is not conjugate to any listed class representative")


def are_conjugate(a: Subgroup, b: Subgroup) -> bool:
    return a.order == b.order and any(a.conjugate(x) == b for x in a.parent)


def normalizer(h: Subgroup) -> Subgroup:
    """N_H = {g : gHg⁻¹ = H}."""
    g = h.parent
    return Subgroup(g, (x for x in g if h.conjugate(x) == h), validate=False)


def left_cosets(h: Subgroup, within: Optional[Subgroup] = None) -> List[frozenset]:
    """
    Left cosets xH, ordered by their smallest element index.

    Args:
        h: The subgroup
        within: Restrict to cosets inside this overgroup (default: the parent)
    """
    g = h.parent
    pool = sorted(within.elements) if within is not None else list(g)
    assigned: Set[int] = set()
    out: List[frozenset] = []
    for x in pool:
        if x in assigned:
            continue
        coset = frozenset(g.mul(x, y) for y in h.elements)
        assigned |= coset
        out.append(coset)
    return out


def weyl_group(h: Subgroup) -> PermGroup:
    """
    W_H = N_H/H as a permutation group on the cosets N_H/H.

    Example:
        >>> weyl_group(symmetric(3).trivial_subgroup()).order
        6
    """
    g = h.parent
    n = normalizer(h)
    cosets = left_cosets(h, within=n)
    position = {}
    for k, coset in enumerate(cosets):
        for x in coset:
            position[x] = k
    gens = []
    for s in n.generators:
        images = tuple(position[g.mul(s, min(coset))] for coset in cosets)
        if images != tuple(range(len(cosets))):
            gens.append(images)
    return PermGroup(len(cosets), gens)


def double_cosets(h1: Subgroup, h2: Subgroup) -> List[int]:
    """
    Representatives of H1\\G/H2, each the smallest element index of its class.

    Raises:
        ValueError: If the subgroups live in different groups
    """
    return [min(c) for c in double_coset_classes(h1, h2)]


def double_coset_classes(h1: Subgroup, h2: Subgroup) -> List[frozenset]:
    """The double cosets H1 g H2 as element sets, ordered by smallest element."""
    if h1.parent != h2.parent:
        raise ValueError("Double cosets need subgroups of the same group")
    g = h1.parent
    assigned: Set[int] = set()
    out: List[frozenset] = []
    for x in g:
        if x in assigned:
            continue
        cls = frozenset(g.mul(g.mul(a, x), b) for a in h1.elements for b in h2.elements)
        assigned |= cls
        out.append(cls)
    return out


def family_closure(subgroups: Iterable[Subgroup]) -> List[Subgroup]:
    """
    Close a family under taking subgroups and conjugates.

    Returns:
        Every member of the closed family, sorted by (order, elements).
        The trivial subgroup is always included.
    """
    subgroups = list(subgroups)
    if not subgroups:
        raise ValueError("A family needs at least one subgroup")
    g = subgroups[0].parent
    members = {g.trivial_subgroup().elements}
    everything = all_subgroups(g, max_order=max(g.order, get_config().limits.max_group_order))
    for h in subgroups:
        for k in everything:
            if k.is_subgroup_of(h):
                for x in g:
                    members.add(k.conjugate(x).elements)
    out = [Subgroup(g, m, validate=False) for m in members]
    out.sort(key=lambda s: s.key)
    return out


def maximal_members(family: List[Subgroup]) -> List[Subgroup]:
    """Members of a family not properly contained in another member."""
    return [
        h for h in family
        if not any(h.elements < k.elements for k in family)
    ]


def proper_family(g: PermGroup) -> List[Subgroup]:
    """All proper subgroups of ``g``."""
    return [h for h in all_subgroups(g) if not h.is_whole]


def is_p_group(g: PermGroup) -> Optional[int]:
    """The prime p if |g| is a power of p, else None (also None for |g| = 1)."""
    primes = factorint(g.order)
    if len(primes) == 1:
        return next(iter(primes))
    return None
