"""Coefficient functors on an orbit category, the inputs Φ is evaluated on."""
import logging
from typing import Dict, Mapping, Optional

from src.errors import InvalidInput
from src.grp import GModule
from src.gset import OrbitCat, OrbitFunctor, t_functor
from src.intalg import AbGroup, IntMatrix

logger = logging.getLogger(__name__)


def inflation(cat: OrbitCat, c: int, m: GModule) -> OrbitFunctor:
    """
    The underived inflation j ↦ (M ⊗ Z[Hom(c, j)])^{Aut(c)}.

    Args:
        cat: Orbit category
        c: Object whose automorphisms act on ``m``
        m: Module over ``cat.automorphism_group(c)``

    Raises:
        InvalidInput: If ``m`` is over another group

    Example:
        >>> cat = OrbitCat(cyclic(2))
        >>> e = inflation(cat, cat.free_orbit, GModule.trivial(cat.automorphism_group(0)))
        >>> e.ranks
        [1, 1]
    """
    if m.group != cat.automorphism_group(c):
        raise InvalidInput(f"Module is not over the automorphism group of object {c}")
    t = t_functor(cat, c)
    invariants = [m.tensor(t.aut_source_action(j)).invariants() for j in range(len(cat))]
    eye = IntMatrix.identity(m.rank)

    def matrix(i: int, j: int, k: int) -> IntMatrix:
        return invariants[j].coordinates @ eye.kron(t.matrix(i, j, k)) @ invariants[i].basis

    functor = OrbitFunctor(cat, [inv.dimension for inv in invariants], matrix, validate=False)
    logger.debug(f"Inflation from object {c}: ranks {functor.ranks}")
    return functor


def supported_on(cat: OrbitCat, c: int, rank: int = 1, module: Optional[GModule] = None) -> OrbitFunctor:
    """
    E with E(c) = Z^rank (or ``module``) and zero on every other object.

    Automorphisms of c act trivially unless a module is given.
    """
    if not 0 <= c < len(cat):
        raise InvalidInput(f"Object {c} is not in the category")
    if module is not None:
        if module.group != cat.automorphism_group(c):
            raise InvalidInput(f"Module is not over the automorphism group of object {c}")
        rank = module.rank
    ranks = [rank if i == c else 0 for i in range(len(cat))]

    def matrix(i: int, j: int, k: int) -> IntMatrix:
        if i != c or j != c:
            return IntMatrix.zeros(ranks[j], ranks[i])
        if module is None:
            return IntMatrix.identity(rank)
        hom = cat.hom(c, c)[k].images
        return module.matrix(cat.automorphism_group(c).index(hom))

    return OrbitFunctor(cat, ranks, matrix, validate=False)


class InducedCoefficients:
    """
    ⊕_d (T^d)^{k_d}, the left Kan extension of ⊕_d Z[Aut d]^{k_d} from the
    orbit groupoid.

    Attributes:
        functor: The coefficient functor
        multiplicities: k_d per object d
    """

    def __init__(self, functor: OrbitFunctor, multiplicities: Dict[int, int]):
        self.functor = functor
        self.multiplicities = multiplicities

    def expected(self, c: int) -> AbGroup:
        """Φ^c of these coefficients: Z^{k_c·|Aut c|} in degree 0."""
        k = self.multiplicities.get(c, 0)
        return AbGroup.free(k * self.functor.cat.automorphism_group(c).order)

    def __repr__(self) -> str:
        return f"InducedCoefficients({self.multiplicities})"


def induced_coefficients(cat: OrbitCat, multiplicities: Mapping[int, int]) -> InducedCoefficients:
    """
    Build ⊕_d (T^d)^{k_d}.

    Raises:
        InvalidInput: For an unknown object or a negative multiplicity
    """
    functor = OrbitFunctor.zero(cat)
    for d, k in sorted(multiplicities.items()):
        if not 0 <= d < len(cat):
            raise InvalidInput(f"Object {d} is not in the category")
        if k < 0:
            raise InvalidInput(f"Multiplicity of object {d} is negative: {k}")
        if k:
            functor = functor + t_functor(cat, d).scale_multiplicity(k)
    return InducedCoefficients(functor, dict(multiplicities))
