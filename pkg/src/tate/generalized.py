"""
Tate cohomology relative to a family of subgroups.

Ĥ^t_F(G, M) is the colimit over l of H^t(G; M ⊗ F^l P) for an adapted
complex P. All scheduled stages come from one total complex of
Hom_G(F_a, M ⊗ P_b) over a reduced free resolution F, with b up to the last
stage, kept only in the total degrees the window needs (H^t sits in degree
−t). A block belongs to the first stage that contains its P_b. Unit pivots
inside one stage are cancelled before any Smith form is taken, which keeps
every stage and every stage inclusion up to homotopy.

The value in degree t is the image of the last scheduled inclusion. With
three or more stages l1 < l2 < l3 at the end of the schedule, a degree is
stable when the images of l1 → l2, l2 → l3 and l1 → l3 are isomorphic. With
two stages it is stable when the inclusion is an isomorphism.
"""
import logging
from bisect import bisect_left
from typing import Dict, List, Optional, Sequence, Tuple

from src.cathom import FreeResolution, check_budget
from src.config import get_config
from src.errors import BudgetExceeded, InvalidInput
from src.grp import GModule, PermGroup, Subgroup, is_p_group, proper_family
from src.intalg import AbGroup, FilteredComplex, IntMatrix, Window
from src.report import Report
from src.tate.adapted import AdaptedComplex, build_adapted, family_key
from src.tate.periodic import TateResult, resolve_window

logger = logging.getLogger(__name__)


def first_stage(window: Window) -> int:
    """Least stage whose cochains reach the window's lowest degree."""
    return max(1, -window.lo)


def default_schedule(window: Window, gap: int = 1) -> List[int]:
    """Three stages ``gap`` apart, starting at ``first_stage(window)``."""
    l0 = first_stage(window)
    return [l0, l0 + gap, l0 + 2 * gap]


def check_schedule(schedule: Sequence[int], window: Window) -> None:
    """
    Raises:
        InvalidInput: Fewer than two stages, stages not increasing, or a
            first stage too low to reach the window's lowest degree
    """
    if len(schedule) < 2:
        raise InvalidInput(f"A stage schedule needs at least two stages, got {list(schedule)}")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise InvalidInput(f"Stage schedule must be increasing, got {list(schedule)}")
    lowest = max(0, -window.lo)
    if schedule[0] < lowest:
        raise InvalidInput(
            f"Stage {schedule[0]} has no cochains in degree {window.lo}; "
            f"the first stage must be at least {lowest}",
            {"schedule": list(schedule), "window": [window.lo, window.hi]},
        )


def stage_cochains(
    res: FreeResolution,
    p: AdaptedComplex,
    m: GModule,
    schedule: Sequence[int],
    band: Window,
    budget: Optional[int] = None,
) -> FilteredComplex:
    """
    Hom_G(F_•, M ⊗ F^l P) for the last scheduled l, in the total degrees of
    ``band``, with every basis element at the index of its first stage.

    Raises:
        BudgetExceeded: If some total degree is too large
    """
    last = schedule[-1]
    carrier = p.stage(last)
    modules = {b: m.tensor(carrier.module(b)) for b in range(last + 1)}
    identity = IntMatrix.identity(m.rank)
    boundaries = {b: identity.kron(carrier.complex.boundary(b)) for b in range(1, last + 1)}
    blocks = {
        (-a, b): res.ranks[a] * mod.rank
        for a in range(res.length + 1)
        for b, mod in modules.items()
        if b - a in band
    }
    totals: Dict[int, int] = {}
    for (q, b), r in blocks.items():
        totals[q + b] = totals.get(q + b, 0) + r
    check_budget([totals.get(d, 0) for d in band.degrees()], budget, f"cochains up to stage {last}")
    chains = res.hypercohomology_complex(modules, boundaries, band)
    level = [bisect_left(schedule, b) for b in range(last + 1)]
    levels: Dict[int, List[int]] = {}
    for pq in sorted(blocks):
        levels.setdefault(pq[0] + pq[1], []).extend([level[pq[1]]] * blocks[pq])
    logger.debug(f"Stages {list(schedule)}: cochain ranks {chains.ranks} in {band}")
    return FilteredComplex(chains, levels)


def _compare(cochains: FilteredComplex, stages: int, w: Window) -> Tuple[Dict[int, AbGroup], Dict[int, bool]]:
    last = cochains.inclusion(stages - 2, stages - 1)
    groups: Dict[int, AbGroup] = {}
    stable: Dict[int, bool] = {}
    for t in w.degrees():
        groups[t] = last.image_in_homology(-t)
    if stages == 2:
        before, after = cochains.sublevel(0), cochains.sublevel(1)
        for t in w.degrees():
            stable[t] = before.homology(-t) == groups[t] == after.homology(-t)
    else:
        earlier = cochains.inclusion(stages - 3, stages - 2)
        across = cochains.inclusion(stages - 3, stages - 1)
        for t in w.degrees():
            stable[t] = earlier.image_in_homology(-t) == groups[t] == across.image_in_homology(-t)
    return groups, stable


def _tate_on_schedule(
    g: PermGroup,
    family: Sequence[Subgroup],
    m: GModule,
    w: Window,
    schedule: List[int],
    adapted: Optional[AdaptedComplex],
    budget: Optional[int],
) -> TateResult:
    last = schedule[-1]
    if adapted is None:
        adapted = build_adapted(g, family, n_max=last, d_bar=last, kind="orbit_simplex", budget=budget)
    if last > min(adapted.top, adapted.exact_below + 1):
        raise InvalidInput(
            f"Stage {last} needs an adapted complex exact through degree {last - 1}, "
            f"got top {adapted.top} exact through {adapted.exact_below}"
        )
    res = FreeResolution(g, max(w.hi, 0) + last + 1, kind="reduced", budget=budget)
    band = Window(lo=-w.hi - 1, hi=-w.lo + 1)
    cochains = stage_cochains(res, adapted, m, schedule, band, budget).reduced()
    groups, stable = _compare(cochains, len(schedule), w)
    return TateResult(
        method="generalized",
        group=g.name or str(g),
        family=family_key(adapted.family),
        window=(w.lo, w.hi),
        groups=groups,
        stable=stable,
        l_stages=schedule,
        notes={
            "adapted": adapted.kind,
            "adapted_ranks": adapted.complex.ranks,
            "resolution_ranks": res.ranks,
            "reduced_ranks": cochains.chains.ranks,
            "closure_added": adapted.report.notes.get("closure", {}).get("added", 0),
        },
    )


def generalized_tate(
    g: PermGroup,
    family: Sequence[Subgroup],
    m: Optional[GModule] = None,
    window: Optional[Tuple[int, int]] = None,
    l_schedule: Optional[Sequence[int]] = None,
    adapted: Optional[AdaptedComplex] = None,
    budget: Optional[int] = None,
) -> TateResult:
    """
    Family Tate cohomology Ĥ^t_F(G, M) on a window.

    Args:
        g: The group
        family: Generating subgroups of the family
        m: Coefficient module (default: trivial Z)
        window: Inclusive degree window (default: configured)
        l_schedule: Increasing filtration stages; the value is the image of
            the last inclusion. By default three stages 1, 2, 4, ... apart
            are tried, up to ``tate.max_stage_gap``, until every degree is
            stable.
        adapted: A prebuilt adapted complex (default: the orbit simplex
            complex of the family, built up to the last stage)
        budget: Maximal cochain rank per total degree

    Raises:
        InvalidInput: For a foreign module, a bad schedule or an adapted
            complex too short for the schedule
        BudgetExceeded: If the first attempted schedule is too large

    Example:
        >>> h = generalized_tate(cyclic(2), [cyclic(2).trivial_subgroup()], window=(0, 1))
        >>> [str(h[t]) for t in (0, 1)]
        ['Z/2', '0']
    """
    m = m if m is not None else GModule.trivial(g)
    if m.group != g:
        raise InvalidInput("Coefficient module is over a different group")
    if adapted is not None and adapted.group != g:
        raise InvalidInput("Adapted complex is over a different group")
    w = resolve_window(window)

    if l_schedule is not None:
        schedule = list(l_schedule)
        check_schedule(schedule, w)
        result = _tate_on_schedule(g, family, m, w, schedule, adapted, budget)
    else:
        gap = 1
        result = _tate_on_schedule(g, family, m, w, default_schedule(w, gap), adapted, budget)
        widest = get_config().tate.max_stage_gap
        while not result.all_stable and 2 * gap <= widest:
            gap *= 2
            try:
                result = _tate_on_schedule(g, family, m, w, default_schedule(w, gap), adapted, budget)
            except (BudgetExceeded, InvalidInput) as e:
                result.notes["widening_stopped"] = e.message
                break

    unstable = [t for t, s in result.stable.items() if not s]
    if unstable:
        logger.warning(f"Tate degrees {unstable} did not stabilize on stages {result.l_stages}")
    logger.info(
        f"Generalized Tate of {g} on [{w.lo}, {w.hi}]: {', '.join(str(h) for h in result.groups.values())}"
    )
    return result


def tate_annihilation_check(
    g: PermGroup,
    family: Optional[Sequence[Subgroup]] = None,
    m: Optional[GModule] = None,
    window: Optional[Tuple[int, int]] = None,
    l_schedule: Optional[Sequence[int]] = None,
) -> Report:
    """
    For a p-group, check that Ĥ_F is killed by p: every invariant factor
    equals p and there is no free part.

    A degree that did not stabilize fails its "stabilized" check and is left
    out of the annihilation checks; it is listed under ``notes["provisional"]``.

    Args:
        g: The group
        family: Family generators (default: all proper subgroups)
        m: Coefficient module (default: trivial Z)
        window: Degree window (default: configured)
        l_schedule: Stage schedule passed to ``generalized_tate``

    Returns:
        Report; a non-p-group gives a single failed precondition check
    """
    report = Report(title=f"Tate annihilation for {g}")
    p = is_p_group(g)
    report.add("group is a p-group", p is not None, f"order {g.order}")
    if p is None:
        return report
    if family is None:
        family = proper_family(g)
    result = generalized_tate(g, family, m, window, l_schedule)
    report.notes["prime"] = p
    report.notes["groups"] = {str(t): str(h) for t, h in result.groups.items()}
    report.notes["l_stages"] = result.l_stages
    provisional = []
    for t, h in result.groups.items():
        report.add(f"degree {t} stabilized", result.stable[t], f"stages {result.l_stages}")
        if not result.stable[t]:
            provisional.append(t)
            continue
        report.add(f"degree {t} has no free part", h.free_rank == 0, str(h))
        wrong = [x for x in h.torsion if x != p]
        report.add(f"degree {t} is killed by {p}", not wrong, str(h))
    report.notes["provisional"] = provisional
    return report
