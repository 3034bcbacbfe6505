"""
The regression suite behind ``verify-lemmas``: every computable statement
the library checks, run for one group and collected into one Report.
"""
import logging
from typing import Optional

from src.bredon import representation_sphere, sphere_invertibility_hypotheses
from src.cathom import derived_burnside, group_homology
from src.errors import ComplexInvalid
from src.galois import check_adaptedness_combinatorial, t_complex
from src.grp import GModule, PermGroup, all_subgroups, cyclic, is_p_group, proper_family, subgroup_classes
from src.gset import OrbitCat
from src.intalg import AbGroup
from src.mackey import burnside_ring, fixed_point_mackey, span_hom, validate_mackey
from src.report import Report
from src.tate import classical_tate, generalized_tate, tate_annihilation_check

logger = logging.getLogger(__name__)

TATE_WINDOW = (-2, 3)


def _is_cyclic(g: PermGroup) -> bool:
    return any(g.element_order(s) == g.order for s in g)


def sphere_for(g: PermGroup) -> str:
    """The smallest nontrivial representation with a sphere model."""
    if _is_cyclic(g) and g.order > 2:
        return "rotation"
    if any(2 * h.order == g.order for h in all_subgroups(g)):
        return "sign"
    return "trivial"


def _algebra(g: PermGroup, report: Report) -> None:
    report.extend(burnside_ring(g).check(), "burnside: ")
    cat = OrbitCat(g)
    homs = {(i, j): span_hom(cat, i, j) for i in range(len(cat)) for j in range(len(cat))}
    mismatched = [pair for pair, hom in homs.items() if hom.rank != hom.predicted_rank()]
    report.add("spans: hom ranks match double coset counts", not mismatched, f"mismatched pairs {mismatched}")
    for name, module in (("trivial", GModule.trivial(g)), ("regular", GModule.regular(g))):
        mackey = validate_mackey(fixed_point_mackey(module, cat))
        report.add(f"mackey: double coset formula for the {name} module", mackey.passed,
                   f"{len(mackey.violations)} violations")


def _homology(g: PermGroup, report: Report, budget: Optional[int]) -> None:
    h0 = derived_burnside(g, 2, budget)[0]
    classes = len(subgroup_classes(g))
    report.add("derived burnside: H_0 is free on the subgroup classes", h0 == AbGroup.free(classes), str(h0))
    if _is_cyclic(g) and g.order > 1:
        c = cyclic(g.order)
        bar = group_homology(c, GModule.trivial(c), 4, budget)
        positive = [i for i in bar if i >= 1]
        periodic = classical_tate(g.order, window=(-max(positive) - 1, -2))
        agree = all(bar[i] == periodic[-i - 1] for i in positive)
        report.add("cathom: bar and periodic homology agree", agree,
                   ", ".join(f"H_{i} = {bar[i]}" for i in positive))


def _galois(g: PermGroup, report: Report, budget: Optional[int]) -> None:
    if g.order == 1:
        report.notes["tcomplex"] = "trivial group: no morphism G/e → G/G to resolve"
        return
    cat = OrbitCat(g)
    t = t_complex(cat, (cat.free_orbit, cat.terminal, 0), 3, 3, budget)
    report.extend(check_adaptedness_combinatorial(t), "tcomplex: ")


def _tate(g: PermGroup, report: Report) -> None:
    if g.order == 1:
        report.notes["tate"] = "trivial group: the proper family is empty"
        return
    if is_p_group(g) is not None:
        report.extend(tate_annihilation_check(g, window=(-1, 1)), "tate: ")
        return
    result = generalized_tate(g, proper_family(g), window=TATE_WINDOW)
    lo, hi = TATE_WINDOW
    report.add(
        f"tate: proper family Tate cohomology vanishes in degrees {lo}..{hi}",
        all(h.is_trivial for h in result.groups.values()),
        ", ".join(f"{t}: {h}" for t, h in result.groups.items()),
    )
    report.add("tate: every degree stabilized", result.all_stable, f"stages {result.l_stages}")


def _bredon(g: PermGroup, report: Report, budget: Optional[int]) -> None:
    rep = sphere_for(g)
    report.notes["representation"] = rep
    try:
        representation_sphere(g, rep, verify=True, budget=budget)
        report.add(f"bredon: fixed points of S^{rep} are spheres", True)
    except ComplexInvalid as e:
        report.add(f"bredon: fixed points of S^{rep} are spheres", False, e.message)
        return
    classes = subgroup_classes(g)
    failures = []
    for h1 in classes:
        for h2 in classes:
            if h1 != h2 and h1.is_subgroup_of(h2):
                pair = sphere_invertibility_hypotheses(g, rep, h1, h2, budget)
                if not pair.passed:
                    failures.append(f"{h1.order}⊂{h2.order}")
    report.add("bredon: invertibility hypotheses for nested subgroup classes", not failures,
               f"failing pairs {failures}")


def verify_lemmas(g: PermGroup, budget: Optional[int] = None) -> Report:
    """
    Run the regression suite for one group.

    Example:
        >>> verify_lemmas(cyclic(2)).passed
        True
    """
    report = Report(title=f"regression suite for {g.name or g}")
    _algebra(g, report)
    _homology(g, report, budget)
    _galois(g, report, budget)
    _tate(g, report)
    _bredon(g, report, budget)
    logger.info(f"Regression suite for {g}: {len(report.checks)} checks, {len(report.violations)} failed")
    return report
