"""
Representation spheres, smash products and the fixed-sphere hypotheses.

S^V is modelled as the unreduced suspension of the unit sphere S(V), itself
the join of the unit spheres of the summands of V:

* trivial: two fixed points
* sign: two points swapped by the complement of an index-2 subgroup
* rotation: a polygon rotated by a generator of a cyclic group
* regular / permutation: the boundary of the cross-polytope on ±e_x,
  subdivided once when the permutation action is not regular
"""
import logging
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field

from src.bredon.simplicial import Simplex, SimplicialGSet, fixed_subcomplex
from src.config import resolve_budget
from src.errors import BudgetExceeded, ComplexInvalid, InvalidInput, UnsupportedRepresentation
from src.galois import aut_of_morphism, families_from_c1
from src.grp import PermGroup, Subgroup, all_subgroups, are_conjugate, subgroup_classes
from src.gset import GSet, OrbitCat
from src.intalg import AbGroup
from src.report import Report

logger = logging.getLogger(__name__)

SUMMAND_KINDS = ("trivial", "sign", "rotation", "regular", "permutation")


class Summand(BaseModel):
    """One irreducible-or-permutation piece of a real representation."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: str = Field(description="One of SUMMAND_KINDS")
    multiplicity: int = Field(default=1, ge=1)
    index: int = Field(default=0, ge=0, description="Which index-2 subgroup a sign summand uses")
    gset: Optional[GSet] = Field(default=None, description="The G-set of a permutation summand")

    def label(self) -> str:
        base = f"{self.kind}:{self.index}" if self.kind == "sign" and self.index else self.kind
        return base if self.multiplicity == 1 else f"{base}^{self.multiplicity}"


Representation = Union[str, Sequence[Union[str, GSet, Summand]]]


def _parse_token(token: str) -> Summand:
    text = token.strip()
    multiplicity = 1
    if "^" in text:
        text, power = text.split("^", 1)
        if not power.isdigit() or int(power) < 1:
            raise UnsupportedRepresentation(f"Bad multiplicity in summand {token!r}")
        multiplicity = int(power)
    index = 0
    if ":" in text:
        text, suffix = text.split(":", 1)
        if text != "sign" or not suffix.isdigit():
            raise UnsupportedRepresentation(f"Only sign summands take a subgroup index, got {token!r}")
        index = int(suffix)
    if text not in SUMMAND_KINDS:
        raise UnsupportedRepresentation(
            f"Unknown summand {token!r}; expected one of {SUMMAND_KINDS}", {"summand": token}
        )
    return Summand(kind=text, multiplicity=multiplicity, index=index)


def parse_representation(g: PermGroup, rep: Representation) -> List[Summand]:
    """
    Parse ``"trivial^2+sign"``-style strings, or a list mixing such tokens
    with GSets (each GSet is a permutation summand).

    ``permutation`` without a G-set means the action of g on its ground set.

    Raises:
        UnsupportedRepresentation: For unknown summands
    """
    items = rep.split("+") if isinstance(rep, str) else list(rep)
    out = []
    for item in items:
        if isinstance(item, Summand):
            out.append(item)
        elif isinstance(item, GSet):
            if item.group != g:
                raise UnsupportedRepresentation("Permutation summand is a G-set for a different group")
            out.append(Summand(kind="permutation", gset=item))
        elif item.strip():
            out.append(_parse_token(item))
    return out


def _sign_kernel(g: PermGroup, index: int) -> Subgroup:
    candidates = sorted((h for h in all_subgroups(g) if 2 * h.order == g.order), key=lambda h: h.key)
    if index >= len(candidates):
        raise UnsupportedRepresentation(
            f"{g} has {len(candidates)} index-2 subgroups, no sign summand {index}",
            {"available": len(candidates)},
        )
    return candidates[index]


def _generator_exponents(g: PermGroup) -> List[int]:
    sigma = next((s for s in g if g.element_order(s) == g.order), None)
    if sigma is None:
        raise UnsupportedRepresentation(f"Rotation summands need a cyclic group, got {g}")
    exponents = [0] * g.order
    for e in range(g.order):
        exponents[g.power(sigma, e)] = e
    return exponents


def _permutation_gset(g: PermGroup, s: Summand) -> GSet:
    if s.kind == "regular":
        return GSet(g, [[g.mul(x, y) for y in g] for x in g], validate=False)
    if s.gset is not None:
        return s.gset
    return GSet(g, [list(g.perm(x)) for x in g], validate=False)


def summand_fixed_dimension(g: PermGroup, s: Summand, h: Subgroup) -> int:
    """dim V^H for one copy of the summand."""
    if s.kind == "trivial":
        return 1
    if s.kind == "sign":
        return 1 if h.is_subgroup_of(_sign_kernel(g, s.index)) else 0
    if s.kind == "rotation":
        _generator_exponents(g)
        return 2 if h.is_trivial else 0
    x = _permutation_gset(g, s)
    orbits = set()
    for p in range(x.size):
        orbits.add(min(x.act(k, p) for k in h))
    return len(orbits)


def fixed_dimension(g: PermGroup, rep: Representation, h: Subgroup) -> int:
    """dim_R V^H."""
    return sum(s.multiplicity * summand_fixed_dimension(g, s, h) for s in parse_representation(g, rep))


def _empty(g: PermGroup) -> SimplicialGSet:
    return SimplicialGSet(GSet(g, [()] * g.order, [], validate=False), [], validate=False)


def unit_sphere(g: PermGroup, s: Summand, tag: str = "", budget: Optional[int] = None) -> SimplicialGSet:
    """S(V) for a single copy of the summand, regular."""
    if s.kind == "trivial":
        vertices = GSet(g, [(0, 1)] * g.order, [f"{tag}+", f"{tag}-"], validate=False)
        return SimplicialGSet(vertices, [], validate=False)
    if s.kind == "sign":
        kernel = _sign_kernel(g, s.index)
        table = [(0, 1) if x in kernel else (1, 0) for x in g]
        return SimplicialGSet(GSet(g, table, [f"{tag}+", f"{tag}-"], validate=False), [], validate=False)
    if s.kind == "rotation":
        exponents = _generator_exponents(g)
        n = g.order
        m = n if n >= 3 else 4
        step = m // n
        table = [[(v + exponents[x] * step) % m for v in range(m)] for x in g]
        vertices = GSet(g, table, [f"{tag}{v}" for v in range(m)], validate=False)
        return SimplicialGSet(vertices, [tuple(sorted((v, (v + 1) % m))) for v in range(m)], validate=False)

    x = _permutation_gset(g, s)
    n = x.size
    limit = resolve_budget(budget)
    if 3 ** n > limit:
        raise BudgetExceeded(n - 1, 3 ** n, limit, "cross-polytope simplices")
    table = [[2 * x.act(k, v // 2) + v % 2 for v in range(2 * n)] for k in g]
    names = [f"{tag}{'+' if v % 2 == 0 else '-'}{x.names[v // 2]}" for v in range(2 * n)]
    level: List[Simplex] = [()]
    for coordinate in range(n):
        level = level + [c + (2 * coordinate + sign,) for c in level for sign in (0, 1)]
    simplices = [c for c in level if c]
    sphere = SimplicialGSet(GSet(g, table, names, validate=False), simplices, validate=False)
    return sphere.regularized(budget)


def representation_sphere(
    g: PermGroup,
    rep: Representation,
    verify: bool = True,
    budget: Optional[int] = None,
) -> SimplicialGSet:
    """
    A regular simplicial model of S^V, based at ∞.

    Args:
        g: The group
        rep: ``+``-joined summands (``trivial``, ``trivial^k``, ``sign``,
            ``sign:<i>``, ``rotation``, ``regular``, ``permutation``) or a
            list of tokens and GSets
        verify: Check that every fixed subcomplex is a sphere of dimension
            dim V^H
        budget: Maximal simplex count per dimension

    Raises:
        UnsupportedRepresentation: For summands without a model
        ComplexInvalid: If verification fails

    Example:
        >>> s = representation_sphere(cyclic(3), "regular")
        >>> s.homology(reduced=True)[3]
        AbGroup(free_rank=1, torsion=())
    """
    summands = parse_representation(g, rep)
    sphere = _empty(g)
    for k, s in enumerate(summands):
        for copy in range(s.multiplicity):
            piece = unit_sphere(g, s, tag=f"{s.kind[0]}{k}.{copy}", budget=budget)
            sphere = sphere.join(piece)
    model = sphere.suspension()
    model.check_regular()
    logger.info(f"S^V for V = {'+'.join(s.label() for s in summands) or '0'} over {g}: simplices {model.simplex_counts()}")
    if verify:
        for h in subgroup_classes(g):
            d = sum(s.multiplicity * summand_fixed_dimension(g, s, h) for s in summands)
            if not is_homology_sphere(fixed_subcomplex(model, h), d):
                raise ComplexInvalid(
                    f"Fixed points of subgroup of order {h.order} are not a {d}-sphere",
                    {"subgroup": list(h.sorted_elements), "dimension": d},
                )
    return model


def is_homology_sphere(x: SimplicialGSet, d: int) -> bool:
    """Reduced homology is Z in degree d and zero elsewhere."""
    homology = x.homology(reduced=True)
    z = AbGroup.free(1)
    return all(a == (z if k == d else AbGroup.trivial()) for k, a in homology.items()) and (
        homology.get(d) == z
    )


# ============================================================================
# Smash products
# ============================================================================


def smash(x: SimplicialGSet, y: SimplicialGSet, budget: Optional[int] = None) -> SimplicialGSet:
    """
    X ∧ Y as (X × Y) ∪ C(X ∨ Y): the order complex of the product of the
    face posets with a cone on the chains inside the wedge. The cone point
    is the basepoint; the result is regular.

    Raises:
        InvalidInput: For unbased complexes or different groups
        BudgetExceeded: If the order complex is too large
    """
    if x.group != y.group:
        raise InvalidInput("Cannot smash complexes over different groups")
    if x.basepoint is None or y.basepoint is None:
        raise InvalidInput("Smash products need based complexes")
    g = x.group
    xs = [s for level in x.simplices for s in level]
    ys = [s for level in y.simplices for s in level]
    x_pos = {s: k for k, s in enumerate(xs)}
    y_pos = {s: k for k, s in enumerate(ys)}
    width = len(ys)
    pairs = [(a, b) for a in xs for b in ys]
    table = [
        [x_pos[x.act(k, a)[0]] * width + y_pos[y.act(k, b)[0]] for a, b in pairs]
        for k in g
    ]
    names = [f"{x.simplex_name(a)}×{y.simplex_name(b)}" for a, b in pairs]
    poset = GSet(g, table, names, validate=False)
    product = SimplicialGSet.order_complex(
        poset,
        lambda p, q: set(pairs[p][0]) <= set(pairs[q][0]) and set(pairs[p][1]) <= set(pairs[q][1]),
        budget=budget,
    )
    x0, y0 = (x.basepoint,), (y.basepoint,)
    wedge = {k for k, (a, b) in enumerate(pairs) if a == x0 or b == y0}
    cone = len(pairs)
    simplices = [s for level in product.simplices for s in level]
    simplices += [s + (cone,) for s in simplices if wedge.issuperset(s)]
    vertices = GSet(g, [list(row) + [cone] for row in table], names + ["*"], validate=False)
    out = SimplicialGSet(vertices, simplices, cone, validate=False)
    logger.debug(f"Smash of {x} and {y}: simplices {out.simplex_counts()}")
    return out


# ============================================================================
# Sphere invertibility hypotheses
# ============================================================================


def _orbit_category_with(g: PermGroup, h1: Subgroup, h2: Subgroup) -> OrbitCat:
    chosen = []
    for rep in subgroup_classes(g):
        if are_conjugate(rep, h1):
            chosen.append(h1)
        elif are_conjugate(rep, h2):
            chosen.append(h2)
        else:
            chosen.append(rep)
    return OrbitCat(g, chosen)


def sphere_invertibility_hypotheses(
    g: PermGroup,
    rep: Representation,
    h1: Subgroup,
    h2: Subgroup,
    budget: Optional[int] = None,
) -> Report:
    """
    Check the combinatorial hypotheses for inverting S^V along G/H1 → G/H2.

    (a) S_i = (S^V)^{H_i} has the reduced homology of a sphere of dimension
    dim V^{H_i}. (b) Every cell of S_1 outside S_2 has its stabilizer in
    W = Aut(G/H1 → G/H2) inside Aut(α) for some α ∈ C_1; whether each
    stabilizer is proper in W is recorded as well.

    Only this sufficient condition is checked; the derived-category
    statement it feeds is not.

    Raises:
        InvalidInput: If h1 is not contained in h2
    """
    if h1.parent != g or h2.parent != g:
        raise InvalidInput("Subgroups belong to a different group")
    if not h1.is_subgroup_of(h2):
        raise InvalidInput("Expected h1 ⊆ h2")
    summands = parse_representation(g, rep)
    label = "+".join(s.label() for s in summands) or "0"
    report = Report(title=f"sphere invertibility for V = {label}")
    sphere = representation_sphere(g, summands, verify=False, budget=budget)

    for name, h in (("H1", h1), ("H2", h2)):
        d = fixed_dimension(g, summands, h)
        fixed = fixed_subcomplex(sphere, h)
        homology = fixed.homology(reduced=True)
        report.add(
            f"fixed points of {name} form a {d}-sphere",
            is_homology_sphere(fixed, d),
            ", ".join(f"H_{k} = {a}" for k, a in homology.items()),
        )

    if h1 == h2:
        report.add("cell stabilizers inside some Aut(alpha)", True, "H1 = H2: no cells outside S_2")
        report.notes["statement"] = "combinatorial sufficient condition only"
        return report

    cat = _orbit_category_with(g, h1, h2)
    i, j = cat.subgroups.index(h1), cat.subgroups.index(h2)
    images = [cat.objects[j].act(cat.coset_rep(i, p), 0) for p in range(cat.objects[i].size)]
    f = (i, j, cat.index_of(i, j, images))
    w = aut_of_morphism(cat, f)
    aut = cat.automorphism_group(i)
    movers = {sigma: cat.coset_rep(i, aut.perm(sigma)[0]) for sigma in w}
    families = families_from_c1(cat, f, budget)

    outer = set(s for level in sphere.fixed_simplices(h2) for s in level)
    cells = [s for level in sphere.fixed_simplices(h1) for s in level if s not in outer]
    witnesses: List[Dict[str, Any]] = []
    inside, proper = 0, 0
    for s in cells:
        stabilizer = frozenset(sigma for sigma, n in movers.items() if sphere.act(n, s)[0] == s)
        ok = any(stabilizer <= a.elements for a in families)
        is_proper = stabilizer != w.elements
        inside += ok
        proper += is_proper
        if not ok or not is_proper:
            witnesses.append({"cell": sphere.simplex_name(s), "stabilizer": sorted(stabilizer)})
    report.add(
        "cell stabilizers inside some Aut(alpha)",
        inside == len(cells),
        f"{inside} of {len(cells)} cells",
    )
    report.add("cell stabilizers proper in W", proper == len(cells), f"{proper} of {len(cells)} cells")
    report.notes.update({
        "W_order": w.order,
        "aut_alpha_orders": [a.order for a in families],
        "cells": len(cells),
        "witnesses": witnesses,
        "statement": "combinatorial sufficient condition only",
    })
    return report
