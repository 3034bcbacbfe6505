"""
Classical Tate cohomology of cyclic groups from the 2-periodic resolution.

F_k = Z[Z/n] in every degree with ∂ alternating between 1−σ (odd k) and the
norm N = 1 + σ + … + σ^{n−1} (even k). Splicing F with its dual gives the
complete resolution, whose cochains against M are M in every degree with
δ^even = 1−σ and δ^odd = N.
"""
import logging
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.cathom import FreeResolution
from src.config import get_config, resolve_budget
from src.errors import InvalidInput
from src.grp import GModule, PermutationComplex, cyclic
from src.intalg import AbGroup, ChainMap, IntChainComplex, IntMatrix, Window, cone

logger = logging.getLogger(__name__)


class TateResult(BaseModel):
    """
    Tate cohomology groups on a window of degrees.

    ``stable[t]`` is False for degrees whose value is provisional: the
    compared filtration stages disagree there.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    method: str = Field(description="'classical' or 'generalized'")
    group: str = Field(description="Name of the group")
    family: List[List[int]] = Field(default_factory=list, description="Closed family, as sorted element lists")
    window: Tuple[int, int] = Field(description="Inclusive degree window")
    groups: Dict[int, AbGroup] = Field(default_factory=dict)
    stable: Dict[int, bool] = Field(default_factory=dict)
    l_stages: List[int] = Field(default_factory=list, description="Filtration stages that were compared")
    notes: Dict[str, Any] = Field(default_factory=dict)

    def __getitem__(self, t: int) -> AbGroup:
        return self.groups[t]

    @property
    def all_stable(self) -> bool:
        return all(self.stable.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "group": self.group,
            "family": self.family,
            "window": list(self.window),
            "groups": {str(t): str(h) for t, h in sorted(self.groups.items())},
            "stable": {str(t): s for t, s in sorted(self.stable.items())},
            "l_stages": self.l_stages,
            "notes": self.notes,
        }


def resolve_window(window: Optional[Tuple[int, int]]) -> Window:
    lo, hi = window if window is not None else get_config().tate.window
    if lo > hi:
        raise InvalidInput(f"Window lower end {lo} exceeds upper end {hi}")
    return Window(lo=lo, hi=hi)


class PeriodicResolution(FreeResolution):
    """
    The 2-periodic free resolution of Z over Z/n.

    Args:
        n: Order of the cyclic group
        length: Top degree (default: configured resolution length)

    Example:
        >>> res = PeriodicResolution(3, 4)
        >>> res.ranks
        [1, 1, 1, 1, 1]
    """

    def __init__(self, n: int, length: Optional[int] = None, budget: Optional[int] = None):
        if n < 1:
            raise InvalidInput(f"Cyclic order must be positive, got {n}")
        self.n = n
        self.group = cyclic(n)
        self.length = length if length is not None else get_config().truncation.resolution_length
        if self.length < 1:
            raise InvalidInput(f"Resolution length must be positive, got {self.length}")
        self.kind = "periodic"
        self._budget = resolve_budget(budget)
        self._check(self.length, 1)
        self.sigma = next(g for g in self.group if self.group.element_order(g) == n)
        self.ranks: List[int] = [1] * (self.length + 1)
        one_minus_sigma = {self.group.identity: 1, self.sigma: -1} if n > 1 else {}
        norm = {h: 1 for h in self.group}
        self._boundaries: Dict[int, IntMatrix] = {
            k: self._free_map([one_minus_sigma if k % 2 else norm], n)
            for k in range(1, self.length + 1)
        }
        self._coefficients = {}
        logger.debug(f"Periodic resolution of Z/{n} up to degree {self.length}")

    def powers(self) -> List[int]:
        """σ^0, …, σ^{n−1} as element indices."""
        return [self.group.power(self.sigma, k) for k in range(self.n)]

    def one_minus_sigma(self, m: GModule) -> IntMatrix:
        return IntMatrix.identity(m.rank) - m.matrix(self.sigma)

    def norm(self, m: GModule) -> IntMatrix:
        out = IntMatrix.zeros(m.rank, m.rank)
        for g in self.powers():
            out = out + m.matrix(g)
        return out

    def tate_complex(self, m: GModule, window: Window) -> IntChainComplex:
        """
        The complete cochains M → M → … covering the window; Ĥ^t(Z/n, M) is
        the homology in degree −t.
        """
        if m.group != self.group:
            raise InvalidInput(f"Module is not over Z/{self.n}")
        lo, hi = window.lo - 1, window.hi + 1
        delta = {0: self.one_minus_sigma(m), 1: self.norm(m)}
        boundaries = {-t: delta[t % 2] for t in range(lo, hi)}
        return IntChainComplex(-hi, -lo, [m.rank] * (hi - lo + 1), boundaries)

    def p_tilde(self) -> PermutationComplex:
        """
        The cone of the augmentation F → Z: Z in degree 0 and F_{k−1} in
        degree k, with Z/n permuting the group-ring basis.
        """
        f = self.complex()
        augmentation = ChainMap(f, IntChainComplex.unit(), {0: self.augmentation})
        total = cone(augmentation)
        g = self.group
        regular = [tuple(g.mul(s, h) for h in g) for s in g]
        actions = {0: [(0,)] * g.order}
        for d in range(1, total.hi + 1):
            actions[d] = regular
        return PermutationComplex(total, g, actions)

    def __repr__(self) -> str:
        return f"PeriodicResolution(n={self.n}, length={self.length})"


def classical_tate(
    n: int,
    m: Optional[GModule] = None,
    window: Optional[Tuple[int, int]] = None,
) -> TateResult:
    """
    Ĥ^t(Z/n, M) for t in the window.

    Args:
        n: Order of the cyclic group
        m: Module over ``cyclic(n)`` (default: trivial Z)
        window: Inclusive degree window (default: configured)

    Example:
        >>> str(classical_tate(2, window=(0, 1))[0])
        'Z/2'
    """
    res = PeriodicResolution(n, 1)
    m = m if m is not None else GModule.trivial(res.group)
    w = resolve_window(window)
    cochains = res.tate_complex(m, w)
    groups = {t: cochains.homology(-t) for t in w.degrees()}
    logger.info(f"Classical Tate of Z/{n} on [{w.lo}, {w.hi}]: {', '.join(str(h) for h in groups.values())}")
    return TateResult(
        method="classical",
        group=f"C{n}",
        family=[[res.group.identity]],
        window=(w.lo, w.hi),
        groups=groups,
        stable={t: True for t in groups},
    )
