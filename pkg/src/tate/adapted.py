"""
Complexes adapted to a family of subgroups.

An adapted complex is a complex of permutation modules with Z (trivial
action) in degree 0, every positive-degree basis stabilizer in the family,
and vanishing homology through its top degree. Two constructions are
available: the T-complex of [G/e] → [G/G] over the orbit category cut down
to the family, and the much smaller orbit simplex complex on
X = ⊔ G/M, M running over the maximal members.
"""
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.cathom import check_budget
from src.config import get_config
from src.errors import InvalidInput
from src.galois import TComplex, check_adaptedness_combinatorial, t_complex
from src.grp import (
    PermGroup,
    PermutationComplex,
    Subgroup,
    are_conjugate,
    family_closure,
    maximal_members,
)
from src.gset import OrbitCat, coset_space
from src.intalg import ChainMap, IntChainComplex, IntMatrix, Window
from src.report import Report

logger = logging.getLogger(__name__)

ADAPTED_KINDS = ("t_complex", "orbit_simplex")


def _class_representatives(subgroups: Sequence[Subgroup]) -> List[Subgroup]:
    out: List[Subgroup] = []
    for h in subgroups:
        if not any(are_conjugate(h, k) for k in out):
            out.append(h)
    return out


def family_key(family: Sequence[Subgroup]) -> List[List[int]]:
    return [list(h.sorted_elements) for h in family]


class AdaptedComplex:
    """
    A family-adapted permutation complex over G, truncated at ``top``.

    Attributes:
        group: G
        family: The closed family, sorted by (order, elements)
        kind: ``"t_complex"`` or ``"orbit_simplex"``
        carrier: The complex with G permuting each basis
        report: Adaptedness checks
        top: Highest degree present
        exact_below: Highest degree through which the homology is known to vanish
    """

    def __init__(
        self,
        group: PermGroup,
        family: List[Subgroup],
        kind: str,
        carrier: PermutationComplex,
        report: Report,
        exact_below: int,
    ):
        self.group = group
        self.family = family
        self.kind = kind
        self.carrier = carrier
        self.report = report
        self.top = carrier.complex.hi
        self.exact_below = exact_below

    @property
    def complex(self) -> IntChainComplex:
        return self.carrier.complex

    def stage(self, l: int) -> PermutationComplex:
        """F^l: the stupid truncation to degrees ≤ l."""
        if l < 0 or l > self.top:
            raise InvalidInput(f"Stage {l} outside 0..{self.top}")
        return self.carrier.stage(l)

    def inclusion(self, l: int, l2: int) -> ChainMap:
        """F^l ⊆ F^{l2}, the identity in degrees ≤ l."""
        if l > l2:
            raise InvalidInput(f"Cannot include stage {l} into the smaller stage {l2}")
        source, target = self.stage(l).complex, self.stage(l2).complex
        return ChainMap(
            source,
            target,
            {d: IntMatrix.identity(source.rank(d)) for d in source.degrees()},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "family": family_key(self.family),
            "top": self.top,
            "exact_below": self.exact_below,
            "ranks": self.complex.ranks,
            "report": self.report.to_dict(),
        }

    def __repr__(self) -> str:
        return f"AdaptedComplex(kind={self.kind}, family={len(self.family)} subgroups, ranks={self.complex.ranks})"


def check_family_adapted(carrier: PermutationComplex, family: Sequence[Subgroup]) -> Report:
    """Degree 0 is Z with trivial action and positive-degree stabilizers lie in the family."""
    report = Report(title="family adaptedness")
    members = {h.elements for h in family}
    c = carrier.complex
    trivial_action = all(carrier.action(0, g) == (0,) for g in carrier.group) if c.rank(0) == 1 else False
    report.add("degree 0 is Z with trivial action", c.lo == 0 and trivial_action, f"rank {c.rank(0)}")
    witnesses: List[Dict[str, Any]] = []
    for d in c.degrees():
        if d <= 0:
            continue
        outside = [(x, s) for x, s in carrier.basis_orbits(d) if s not in members]
        for x, s in outside:
            witnesses.append({"degree": d, "basis": x, "stabilizer": sorted(s)})
        report.add(f"degree {d} stabilizers in family", not outside, f"{len(outside)} orbits outside")
    report.notes["witnesses"] = witnesses
    return report


def _aut_identification(cat: OrbitCat, free: int) -> List[int]:
    """g ↦ (x ↦ x·g⁻¹) as indices of ``cat.automorphism_group(free)``."""
    g = cat.group
    size = cat.objects[free].size
    reps = [cat.coset_rep(free, p) for p in range(size)]
    point_of = {r: p for p, r in enumerate(reps)}
    aut = cat.automorphism_group(free)
    return [aut.index([point_of[g.mul(reps[p], g.inv(s))] for p in range(size)]) for s in g]


def _t_complex_carrier(
    g: PermGroup,
    closed: List[Subgroup],
    top: int,
    budget: Optional[int],
) -> Tuple[PermutationComplex, Report, int]:
    whole = g.whole()
    objects = _class_representatives(closed + [whole])
    cat = OrbitCat(g, objects)
    f = (cat.free_orbit, cat.terminal, 0)
    t: TComplex = t_complex(cat, f, top, top, budget)
    carrier = t.pullback(g, _aut_identification(cat, cat.free_orbit))
    report = check_adaptedness_combinatorial(t)
    return carrier, report, t.window.hi


def _orbit_simplex_carrier(
    g: PermGroup,
    closed: List[Subgroup],
    top: int,
    budget: Optional[int],
) -> Tuple[PermutationComplex, Report, int]:
    maximal = _class_representatives(maximal_members(closed))
    spaces = [coset_space(g, m) for m in maximal]
    offsets = [0]
    for x in spaces:
        offsets.append(offsets[-1] + x.size)
    n = offsets[-1]
    act = [
        [offsets[k] + x.act(s, p) for k, x in enumerate(spaces) for p in range(x.size)]
        for s in g
    ]
    counts = [1] + [n * (n - 1) ** (i - 1) for i in range(1, top + 1)]
    check_budget(counts, budget, "orbit simplices")

    cells: List[List[Tuple[int, ...]]] = [[()], [(x,) for x in range(n)]]
    for i in range(2, top + 1):
        cells.append([c + (y,) for c in cells[-1] for y in range(n) if y != c[-1]])
    cells = cells[: top + 1]
    index = [{c: k for k, c in enumerate(level)} for level in cells]

    boundaries: Dict[int, IntMatrix] = {}
    if top >= 1:
        boundaries[1] = IntMatrix.from_rows([[1] * n])
    for i in range(2, top + 1):
        entries = []
        for k, cell in enumerate(cells[i]):
            for j in range(i):
                face = cell[:j] + cell[j + 1:]
                if any(face[a] == face[a + 1] for a in range(len(face) - 1)):
                    continue
                entries.append((index[i - 1][face], k, (-1) ** j))
        boundaries[i] = IntMatrix.from_entries(len(cells[i - 1]), len(cells[i]), entries)

    chains = IntChainComplex(0, top, [len(level) for level in cells], boundaries)
    actions = {
        i: [tuple(index[i][tuple(act[s][x] for x in c)] for c in cells[i]) for s in g]
        for i in range(top + 1)
    }
    carrier = PermutationComplex(chains, g, actions)
    report = Report(title="orbit simplex complex")
    report.notes["points"] = n
    report.notes["maximal_members"] = family_key(maximal)
    if top >= 1:
        below = Window(lo=0, hi=top - 1)
        report.add("acyclic below the top degree", chains.is_acyclic_in(below), f"degrees 0..{top - 1}")
    return carrier, report, top - 1


def build_adapted(
    g: PermGroup,
    family: Sequence[Subgroup],
    n_max: Optional[int] = None,
    d_bar: Optional[int] = None,
    kind: str = "t_complex",
    budget: Optional[int] = None,
) -> AdaptedComplex:
    """
    Build an adapted complex for the family closure of ``family``.

    Args:
        g: The group
        family: Generating subgroups; closure under subgroups and
            conjugates is always applied
        n_max: Chain-length truncation (default: configured)
        d_bar: Bar truncation (default: configured)
        kind: ``"t_complex"`` or ``"orbit_simplex"``
        budget: Maximal basis size per degree

    Raises:
        InvalidInput: For an empty family, a foreign subgroup or an unknown kind
        BudgetExceeded: If some degree is too large

    Example:
        >>> p = build_adapted(cyclic(2), [cyclic(2).trivial_subgroup()], 3, 3, kind="orbit_simplex")
        >>> p.complex.ranks
        [1, 2, 2, 2]
    """
    if kind not in ADAPTED_KINDS:
        raise InvalidInput(f"Unknown adapted complex kind {kind!r}, expected one of {ADAPTED_KINDS}")
    family = list(family)
    if not family:
        raise InvalidInput("A family needs at least one subgroup")
    if any(h.parent != g for h in family):
        raise InvalidInput("Family members are subgroups of a different group")
    closed = family_closure(family)
    truncation = get_config().truncation
    top = min(
        d_bar if d_bar is not None else truncation.d_bar,
        n_max if n_max is not None else truncation.n_max,
    )
    if top < 0:
        raise InvalidInput(f"Truncation must be nonnegative, got {top}")

    if kind == "t_complex":
        carrier, combinatorial, exact_below = _t_complex_carrier(g, closed, top, budget)
    else:
        carrier, combinatorial, exact_below = _orbit_simplex_carrier(g, closed, top, budget)

    report = Report(title=f"{kind} adapted to {len(closed)} subgroups")
    report.extend(combinatorial)
    report.extend(check_family_adapted(carrier, closed))
    report.notes.update(combinatorial.notes)
    report.notes["closure"] = {
        "given": family_key(sorted(family, key=lambda h: h.key)),
        "closed": family_key(closed),
        "added": len(closed) - len({h.elements for h in family}),
    }
    logger.info(
        f"{kind} adapted complex for {g}: ranks {carrier.complex.ranks}, "
        f"{len(report.violations)} violations"
    )
    return AdaptedComplex(g, closed, kind, carrier, report, exact_below)
