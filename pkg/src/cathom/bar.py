"""
Bar complexes of finite categories with coefficients.

Chains of length k are composable strings x_0 → x_1 → … → x_k; the degree-k
term is the direct sum of E(x_0) over them. Faces: d_0 pushes the
coefficient along the first arrow, d_i composes arrows i and i+1, d_k drops
the last arrow. The boundary is Σ (−1)^i d_i.
"""
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from src.config import get_config, resolve_budget
from src.errors import BudgetExceeded, InvalidInput
from src.grp import GModule, PermGroup
from src.gset import OrbitCat
from src.intalg import AbGroup, ChainMap, IntChainComplex, IntMatrix, Window, bar_window
from src.cathom.category import CoefficientSystem, FinCategory

logger = logging.getLogger(__name__)

Chain = Tuple[int, Tuple[int, ...]]


def chain_counts(cat: FinCategory, e: CoefficientSystem, top: int, normalized: bool = True) -> List[int]:
    """Rank of every bar degree 0..top, without enumerating chains."""
    weights = [e.rank(x) for x in range(len(cat))]
    counts = [sum(weights)]
    for _ in range(top):
        nxt = [0] * len(cat)
        for f in range(cat.n_morphisms):
            if normalized and cat.is_identity(f):
                continue
            nxt[cat.target(f)] += weights[cat.source(f)]
        weights = nxt
        counts.append(sum(weights))
    return counts


def check_budget(counts: Sequence[int], budget: Optional[int], what: str) -> None:
    """
    Raises:
        BudgetExceeded: For the first degree whose count exceeds the budget
    """
    limit = resolve_budget(budget)
    for degree, count in enumerate(counts):
        if count > limit:
            raise BudgetExceeded(degree, count, limit, what)


class BarComplexTruncation:
    """
    A bar complex truncated at degree D, with the degrees whose homology is
    unaffected by the truncation.

    Attributes:
        underlying: The truncated complex in degrees 0..D
        truncation_degree: D
        reliable_window: Degrees 0..D−2
        chains: Chains of each degree, in basis order
        offsets: Basis offset of each chain's coefficient block
    """

    def __init__(
        self,
        underlying: IntChainComplex,
        truncation_degree: int,
        chains: List[List[Chain]],
        offsets: List[Dict[Chain, int]],
        normalized: bool,
    ):
        self.underlying = underlying
        self.truncation_degree = truncation_degree
        self.reliable_window: Window = bar_window(truncation_degree)
        self.chains = chains
        self.offsets = offsets
        self.normalized = normalized

    def homology(self) -> Dict[int, AbGroup]:
        """Homology in the reliable window only."""
        return self.underlying.homology_window(self.reliable_window)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "truncation_degree": self.truncation_degree,
            "window": [self.reliable_window.lo, self.reliable_window.hi],
            "ranks": self.underlying.ranks,
            "homology": {str(d): str(h) for d, h in self.homology().items()},
        }

    def __repr__(self) -> str:
        return f"BarComplexTruncation(D={self.truncation_degree}, ranks={self.underlying.ranks})"


def _enumerate_chains(cat: FinCategory, top: int, normalized: bool) -> List[List[Chain]]:
    chains: List[List[Chain]] = [[(x, ()) for x in range(len(cat))]]
    for _ in range(top):
        nxt: List[Chain] = []
        for x0, arrows in chains[-1]:
            end = cat.target(arrows[-1]) if arrows else x0
            for f in cat.out_of(end):
                if normalized and cat.is_identity(f):
                    continue
                nxt.append((x0, arrows + (f,)))
        chains.append(nxt)
    return chains


def _faces(cat: FinCategory, chain: Chain, normalized: bool):
    """Yield (sign, face chain, pushes) with pushes True only for d_0."""
    x0, arrows = chain
    k = len(arrows)
    yield 1, (cat.target(arrows[0]), arrows[1:]), True
    for i in range(1, k):
        composite = cat.compose(arrows[i - 1], arrows[i])
        if normalized and cat.is_identity(composite):
            continue
        yield (-1) ** i, (x0, arrows[: i - 1] + (composite,) + arrows[i + 1:]), False
    yield (-1) ** k, (x0, arrows[:-1]), False


def bar_complex(
    cat: FinCategory,
    e: CoefficientSystem,
    d: Optional[int] = None,
    normalized: bool = True,
    budget: Optional[int] = None,
) -> BarComplexTruncation:
    """
    Build the bar complex C_•(cat, e) in degrees 0..d.

    Args:
        cat: Finite category
        e: Coefficients
        d: Truncation degree (default: configured ``truncation.d_bar``)
        normalized: Drop chains containing an identity
        budget: Maximal rank per degree (default: configured budget)

    Returns:
        BarComplexTruncation with reliable window 0..d−2

    Raises:
        BudgetExceeded: Naming the first degree over budget, before enumeration
    """
    d = d if d is not None else get_config().truncation.d_bar
    if d < 0:
        raise InvalidInput(f"Truncation degree must be nonnegative, got {d}")
    counts = chain_counts(cat, e, d, normalized)
    check_budget(counts, budget, "bar chains")

    chains = _enumerate_chains(cat, d, normalized)
    offsets: List[Dict[Chain, int]] = []
    for level in chains:
        running, table = 0, {}
        for chain in level:
            table[chain] = running
            running += e.rank(chain[0])
        offsets.append(table)

    boundaries: Dict[int, IntMatrix] = {}
    for k in range(1, d + 1):
        entries = []
        for chain in chains[k]:
            col = offsets[k][chain]
            rank = e.rank(chain[0])
            for sign, face, pushes in _faces(cat, chain, normalized):
                row = offsets[k - 1][face]
                if pushes:
                    for r, c, v in e.matrix(chain[1][0]).items():
                        entries.append((row + r, col + c, sign * v))
                else:
                    entries.extend((row + j, col + j, sign) for j in range(rank))
        boundaries[k] = IntMatrix.from_entries(counts[k - 1], counts[k], entries)

    complex_ = IntChainComplex(0, d, counts, boundaries)
    logger.debug(f"Bar complex of {cat} up to degree {d}: ranks {counts}")
    return BarComplexTruncation(complex_, d, chains, offsets, normalized)


def functor_chain_map(
    source: BarComplexTruncation,
    target: BarComplexTruncation,
    object_map: Sequence[int],
    morphism_map: "Sequence[int] | Callable[[int], int]",
    transformation: Sequence[IntMatrix],
    is_identity: Callable[[int], bool],
    check: bool = True,
) -> ChainMap:
    """
    The chain map induced by a functor F and a natural transformation
    η: E → E'∘F, sending (x_0, f_1..f_k; v) to (F x_0, F f_1..F f_k; η v).

    Args:
        source: Bar complex of (C, E)
        target: Bar complex of (C', E')
        object_map: F on objects
        morphism_map: F on morphisms
        transformation: η_x per object of C
        is_identity: Identity test in C' (images of identities vanish when normalized)
        check: Verify ∂f = f∂ on construction

    Raises:
        NotChainMap: If F and η are not compatible with the faces
    """
    top = min(source.truncation_degree, target.truncation_degree)
    mapping = morphism_map if callable(morphism_map) else morphism_map.__getitem__
    components: Dict[int, IntMatrix] = {}
    for k in range(top + 1):
        entries = []
        for chain in source.chains[k]:
            x0, arrows = chain
            images = tuple(mapping(f) for f in arrows)
            if target.normalized and any(is_identity(f) for f in images):
                continue
            row = target.offsets[k][(object_map[x0], images)]
            col = source.offsets[k][chain]
            entries.extend((row + r, col + c, v) for r, c, v in transformation[x0].items())
        components[k] = IntMatrix.from_entries(
            target.underlying.rank(k), source.underlying.rank(k), entries
        )
    return ChainMap(
        source.underlying.truncate(top),
        target.underlying.truncate(top),
        components,
        check=check,
    )


# ============================================================================
# Group (co)homology and the derived Burnside ring
# ============================================================================


def group_homology(
    g: PermGroup, m: GModule, d: Optional[int] = None, budget: Optional[int] = None
) -> Dict[int, AbGroup]:
    """
    H_i(G, M) from the normalized bar complex of BG, on the reliable window.

    Example:
        >>> str(group_homology(cyclic(3), GModule.trivial(cyclic(3)))[1])
        'Z/3'
    """
    bg = FinCategory.one_object(g)
    return bar_complex(bg, CoefficientSystem.from_module(bg, m), d, budget=budget).homology()


def group_cohomology(
    g: PermGroup, m: GModule, d: Optional[int] = None, budget: Optional[int] = None
) -> Dict[int, AbGroup]:
    """
    H^j(G, M) as the homology in degree −j of the dual of the bar complex
    with contragredient coefficients.
    """
    bg = FinCategory.one_object(g)
    bar = bar_complex(bg, CoefficientSystem.from_module(bg, m.dual()), d, budget=budget)
    dual = bar.underlying.dual()
    return {j: dual.homology(-j) for j in bar.reliable_window.degrees()}


def orbit_groupoid(cat: OrbitCat) -> FinCategory:
    """The groupoid of orbits and their automorphisms."""
    sources, targets, identities = [], [], []
    composition: Dict[Tuple[int, int], int] = {}
    offset = []
    for i in range(len(cat)):
        offset.append(len(sources))
        n = len(cat.hom(i, i))
        sources.extend([i] * n)
        targets.extend([i] * n)
        identities.append(offset[i] + cat.identity(i))
        for a in range(n):
            for b in range(n):
                composition[(offset[i] + a, offset[i] + b)] = offset[i] + cat.compose(i, i, i, a, b)
    names = [f"G/H{i}" for i in range(len(cat))]
    return FinCategory(names, sources, targets, identities, composition, validate=False, name="orbit groupoid")


def derived_burnside(
    g: PermGroup, d: Optional[int] = None, budget: Optional[int] = None
) -> Dict[int, AbGroup]:
    """
    Homology of the groupoid of G-orbits and isomorphisms with coefficients Z,
    the sum over subgroup classes of H_•(W_G H, Z).
    """
    groupoid = orbit_groupoid(OrbitCat(g))
    return bar_complex(groupoid, CoefficientSystem.constant(groupoid), d, budget=budget).homology()
