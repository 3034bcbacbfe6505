"""
Job specifications and their dispatch.

Every handler returns a JSON-ready dict. Homology is always reported together
with the window it is valid in; a handler that checks something also
returns a Report under ``"report"``.
"""
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from src.bredon import bredon_complex, fixed_dimension, representation_sphere
from src.cathom import CoefficientSystem, FinCategory, bar_complex, derived_burnside
from src.cli.lemmas import verify_lemmas
from src.config import get_config
from src.errors import GroupTooLarge, InvalidInput
from src.galois import check_adaptedness_combinatorial, inflation, phi_complex, supported_on, t_complex
from src.grp import GModule, PermGroup, Subgroup, cyclic, is_p_group, proper_family, resolve_group, subgroup_classes
from src.gset import OrbitCat, OrbitFunctor, coset_space, linearize
from src.intalg import AbGroup
from src.mackey import burnside_ring, fixed_point_mackey, span_hom, validate_mackey
from src.report import Report
from src.tate import classical_tate, generalized_tate

logger = logging.getLogger(__name__)

SUBCOMMANDS = (
    "group",
    "burnside",
    "spans",
    "mackey-check",
    "cathom",
    "derived-burnside",
    "tate",
    "tcomplex",
    "phi",
    "bredon",
    "verify-lemmas",
)

Subcommand = Literal[
    "group",
    "burnside",
    "spans",
    "mackey-check",
    "cathom",
    "derived-burnside",
    "tate",
    "tcomplex",
    "phi",
    "bredon",
    "verify-lemmas",
]


class JobSpec(BaseModel):
    """One CLI job. Truncations and windows are validated before dispatch."""

    subcommand: Subcommand = Field(description="What to compute")
    group: str = Field(default="C2", description="Builtin group name or path to a JSON group file")
    method: Literal["classical", "generalized"] = Field(default="generalized", description="Tate flavour")
    family: str = Field(
        default="proper",
        description='"proper", "trivial" or comma-separated subgroup class indices',
    )
    module: str = Field(default="trivial", description='"trivial", "regular" or "coset:<class index>"')
    d_bar: Optional[int] = Field(default=None, ge=2, description="Bar truncation")
    n_max: Optional[int] = Field(default=None, ge=1, description="Chain-length truncation")
    window: Optional[Tuple[int, int]] = Field(default=None, description="Inclusive degree window")
    schedule: Optional[List[int]] = Field(default=None, description="Filtration stages for generalized Tate")
    orbit: Optional[int] = Field(default=None, ge=0, description="Object of the orbit category (phi)")
    morphism: Optional[Tuple[int, int, int]] = Field(default=None, description="Morphism (i, j, k) for tcomplex")
    coefficients: Literal["inflation", "constant", "supported"] = Field(
        default="inflation", description="Coefficient system for phi"
    )
    representation: str = Field(default="sign", description="Representation for bredon, as summands joined by +")
    budget: Optional[int] = Field(default=None, gt=0, description="Enumeration budget")
    output: Optional[Path] = Field(default=None, description="Write the result here instead of stdout")
    format: Literal["json", "text"] = Field(default="json")

    @model_validator(mode="after")
    def check_reliability(self) -> "JobSpec":
        if self.window is not None and self.window[0] > self.window[1]:
            raise ValueError(f"Window lower end {self.window[0]} exceeds upper end {self.window[1]}")
        if self.schedule is not None:
            if len(self.schedule) < 2 or any(b <= a for a, b in zip(self.schedule, self.schedule[1:])):
                raise ValueError(f"Schedule must list at least two increasing stages, got {self.schedule}")
            if self.schedule[0] < 0:
                raise ValueError("Schedule stages must be nonnegative")
            if self.window is not None and self.schedule[0] < -self.window[0]:
                raise ValueError(
                    f"First stage {self.schedule[0]} has no cochains in degree {self.window[0]}; "
                    f"use at least {-self.window[0]}"
                )
        return self


# ============================================================================
# Argument resolution
# ============================================================================


def load_group(spec: JobSpec) -> PermGroup:
    """
    Raises:
        GroupTooLarge: Above ``limits.cli_max_group_order``
    """
    g = resolve_group(spec.group)
    bound = get_config().limits.cli_max_group_order
    if g.order > bound:
        raise GroupTooLarge(g.order, bound)
    return g


def parse_family(g: PermGroup, text: str) -> List[Subgroup]:
    if text == "proper":
        return proper_family(g)
    if text == "trivial":
        return [g.trivial_subgroup()]
    classes = subgroup_classes(g)
    try:
        indices = [int(part) for part in text.split(",")]
        return [classes[k] for k in indices]
    except (ValueError, IndexError):
        raise InvalidInput(
            f"Family must be proper, trivial or class indices below {len(classes)}, got {text!r}"
        )


def parse_module(g: PermGroup, text: str) -> GModule:
    if text == "trivial":
        return GModule.trivial(g)
    if text == "regular":
        return GModule.regular(g)
    if text.startswith("coset:"):
        classes = subgroup_classes(g)
        suffix = text.split(":", 1)[1]
        if not suffix.isdigit() or int(suffix) >= len(classes):
            raise InvalidInput(f"Coset module needs a class index below {len(classes)}, got {suffix!r}")
        return linearize(coset_space(g, classes[int(suffix)]))
    raise InvalidInput(f"Unknown module {text!r}; expected trivial, regular or coset:<i>")


def _homology_dict(homology: Dict[int, Any]) -> Dict[str, str]:
    return {str(d): str(h) for d, h in sorted(homology.items())}


def _subgroup_dict(k: int, h: Subgroup) -> Dict[str, Any]:
    return {"index": k, "order": h.order, "elements": list(h.sorted_elements), "normal": h.is_normal()}


# ============================================================================
# Handlers
# ============================================================================


def _group(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    return {
        "group": g.name or str(g),
        "order": g.order,
        "abelian": g.is_abelian,
        "p_group": is_p_group(g),
        "generators": [list(g.perm(s)) for s in g.generator_indices],
        "subgroup_classes": [_subgroup_dict(k, h) for k, h in enumerate(subgroup_classes(g))],
    }


def _burnside(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    ring = burnside_ring(g)
    return {
        "group": g.name or str(g),
        "basis": [ring.label(i) for i in range(ring.rank)],
        "table": ring.table(),
        "marks": ring.marks,
        "report": ring.check(),
    }


def _spans(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    cat = OrbitCat(g)
    report = Report(title=f"span hom ranks for {g}")
    ranks = {}
    for i in range(len(cat)):
        for j in range(len(cat)):
            hom = span_hom(cat, i, j)
            ranks[f"{i},{j}"] = hom.rank
            report.add(f"rank {i},{j} matches double coset count", hom.rank == hom.predicted_rank(),
                       f"{hom.rank} vs {hom.predicted_rank()}")
    return {"group": g.name or str(g), "ranks": ranks, "report": report}


def _mackey_check(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    d = fixed_point_mackey(parse_module(g, spec.module))
    return {"group": g.name or str(g), "module": spec.module, "ranks": d.ranks, "report": validate_mackey(d)}


def _cathom(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    m = parse_module(g, spec.module)
    bg = FinCategory.one_object(g)
    bar = bar_complex(bg, CoefficientSystem.from_module(bg, m), spec.d_bar, budget=spec.budget)
    dual_bar = bar_complex(bg, CoefficientSystem.from_module(bg, m.dual()), spec.d_bar, budget=spec.budget)
    dual = dual_bar.underlying.dual()
    window = bar.reliable_window
    return {
        "group": g.name or str(g),
        "module": spec.module,
        "window": [window.lo, window.hi],
        "ranks": bar.underlying.ranks,
        "homology": _homology_dict(bar.homology()),
        "cohomology": _homology_dict({j: dual.homology(-j) for j in dual_bar.reliable_window.degrees()}),
    }


def _derived_burnside(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    homology = derived_burnside(g, spec.d_bar, spec.budget)
    classes = len(subgroup_classes(g))
    report = Report(title=f"derived Burnside ring of {g}")
    report.add("H_0 is free on the subgroup classes", homology[0] == AbGroup.free(classes), str(homology[0]))
    return {
        "group": g.name or str(g),
        "window": [min(homology), max(homology)],
        "homology": _homology_dict(homology),
        "report": report,
    }


def _tate(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    if spec.method == "classical":
        if not any(g.element_order(s) == g.order for s in g):
            raise InvalidInput(f"Classical Tate cohomology here needs a cyclic group, got {g}")
        c = cyclic(g.order)
        result = classical_tate(g.order, parse_module(c, spec.module), spec.window)
    else:
        result = generalized_tate(
            g,
            parse_family(g, spec.family),
            parse_module(g, spec.module),
            spec.window,
            spec.schedule,
            budget=spec.budget,
        )
    return result.to_dict()


def _default_morphism(cat: OrbitCat) -> Tuple[int, int, int]:
    return (cat.free_orbit, cat.terminal, 0)


def _tcomplex(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    cat = OrbitCat(g)
    f = tuple(spec.morphism) if spec.morphism is not None else _default_morphism(cat)
    t = t_complex(cat, f, spec.d_bar, spec.n_max, spec.budget)
    out = t.to_dict()
    out["group"] = g.name or str(g)
    out["report"] = check_adaptedness_combinatorial(t)
    return out


def _coefficients(spec: JobSpec, cat: OrbitCat, c: int) -> OrbitFunctor:
    if spec.coefficients == "constant":
        return OrbitFunctor.constant(cat)
    if spec.coefficients == "supported":
        return supported_on(cat, c)
    free = cat.free_orbit
    return inflation(cat, free, GModule.trivial(cat.automorphism_group(free)))


def _phi(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    cat = OrbitCat(g)
    c = spec.orbit if spec.orbit is not None else cat.terminal
    if c >= len(cat):
        raise InvalidInput(f"Object {c} is not in the orbit category ({len(cat)} objects)")
    phi = phi_complex(cat, c, _coefficients(spec, cat, c), spec.d_bar, spec.n_max, spec.budget)
    out = phi.to_dict()
    out["group"] = g.name or str(g)
    out["coefficients"] = spec.coefficients
    return out


def _bredon(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    sphere = representation_sphere(g, spec.representation, budget=spec.budget)
    b = bredon_complex(sphere)
    out = b.to_dict()
    for orbit, h in zip(out["orbits"], b.cat.subgroups):
        orbit["fixed_dimension"] = fixed_dimension(g, spec.representation, h)
    out["group"] = g.name or str(g)
    out["representation"] = spec.representation
    out["simplices"] = sphere.simplex_counts()
    # finite complex: every degree is exact
    out["window"] = [0, len(sphere.simplices) - 1]
    out["report"] = b.euler_check()
    return out


def _verify_lemmas(spec: JobSpec, g: PermGroup) -> Dict[str, Any]:
    report = verify_lemmas(g, budget=spec.budget)
    return {"group": g.name or str(g), "report": report}


HANDLERS: Dict[str, Callable[[JobSpec, PermGroup], Dict[str, Any]]] = {
    "group": _group,
    "burnside": _burnside,
    "spans": _spans,
    "mackey-check": _mackey_check,
    "cathom": _cathom,
    "derived-burnside": _derived_burnside,
    "tate": _tate,
    "tcomplex": _tcomplex,
    "phi": _phi,
    "bredon": _bredon,
    "verify-lemmas": _verify_lemmas,
}


def dispatch(spec: JobSpec) -> Dict[str, Any]:
    """Run one job and return its result; reports stay Report objects."""
    g = load_group(spec)
    logger.info(f"Running {spec.subcommand} for {g}")
    result = HANDLERS[spec.subcommand](spec, g)
    result["subcommand"] = spec.subcommand
    return result
