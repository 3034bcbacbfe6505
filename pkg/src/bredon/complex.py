"""
Bredon chains: the coefficient-system-valued complex [G/H] ↦ C_•(X^H).

A morphism G/H → G/K with eH ↦ gK induces C_•(X^K) → C_•(X^H), x ↦ g·x,
well defined because K fixes X^K.
"""
import logging
from typing import Any, Dict, List, Optional

from src.bredon.simplicial import Simplex, SimplicialGSet
from src.errors import ComplexInvalid, InvalidInput, NotChainMap
from src.gset import Morphism, OrbitCat
from src.intalg import AbGroup, ChainMap, IntChainComplex, IntMatrix
from src.report import Report

logger = logging.getLogger(__name__)


class BredonComplex:
    """
    Chains of the fixed subcomplexes of a regular SimplicialGSet, one per
    orbit of the orbit category.

    Args:
        x: A regular simplicial G-set
        reduced: Quotient every value by the basepoint
        cat: Orbit category to index over (default: all orbits of G)
        validate: Check functoriality of the restriction maps

    Raises:
        NotRegular: If x is not regular
        InvalidInput: For reduced chains of an unbased complex
        ComplexInvalid: If the restrictions are not functorial
    """

    def __init__(
        self,
        x: SimplicialGSet,
        reduced: bool = True,
        cat: Optional[OrbitCat] = None,
        validate: bool = True,
    ):
        x.check_regular()
        self.x = x
        self.reduced = reduced
        self.cat = cat if cat is not None else OrbitCat(x.group)
        self._simplices: List[List[List[Simplex]]] = []
        self._values: List[IntChainComplex] = []
        if reduced and x.basepoint is None:
            raise InvalidInput("Reduced Bredon chains need a basepoint")
        for h in self.cat.subgroups:
            levels = x.fixed_simplices(h)
            if reduced and levels:
                levels = [[s for s in levels[0] if s != (x.basepoint,)]] + levels[1:]
            self._simplices.append(levels)
            self._values.append(x.chain_complex(levels))
        self._maps: Dict[Morphism, ChainMap] = {}
        logger.debug(
            f"Bredon complex of {x}: ranks "
            f"{ {str(h.order): c.ranks for h, c in zip(self.cat.subgroups, self._values)} }"
        )
        if validate:
            self.check_functoriality()

    def value(self, i: int) -> IntChainComplex:
        """C_•(X^{H_i}), reduced if requested."""
        return self._values[i]

    def restriction(self, m: Morphism) -> ChainMap:
        """The chain map C_•(X^K) → C_•(X^H) of f: G/H → G/K."""
        if m not in self._maps:
            i, j, k = m
            g = self.cat.base_image(i, j, k)
            source, target = self._values[j], self._values[i]
            positions = [
                {s: r for r, s in enumerate(level)} for level in self._simplices[i]
            ]
            components = {}
            for d, level in enumerate(self._simplices[j]):
                entries = []
                for col, s in enumerate(level):
                    image, sign = self.x.act(g, s)
                    entries.append((positions[d][image], col, sign))
                components[d] = IntMatrix.from_entries(target.rank(d), source.rank(d), entries)
            self._maps[m] = ChainMap(source, target, components, check=False)
        return self._maps[m]

    def check_functoriality(self) -> None:
        """
        Raises:
            ComplexInvalid: If some restriction is not a chain map, an identity
                does not act as the identity, or composition is not respected
        """
        cat = self.cat
        n = len(cat)
        for i in range(n):
            for j in range(n):
                for k in range(len(cat.hom(i, j))):
                    try:
                        self.restriction((i, j, k)).check()
                    except NotChainMap as e:
                        raise ComplexInvalid(f"Restriction along {(i, j, k)} is not a chain map: {e}")
            identity = self.restriction((i, i, cat.identity(i)))
            for d in self._values[i].degrees():
                if identity.component(d) != IntMatrix.identity(self._values[i].rank(d)):
                    raise ComplexInvalid(f"Identity of object {i} acts nontrivially in degree {d}")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for first in range(len(cat.hom(a, b))):
                        for second in range(len(cat.hom(b, c))):
                            composite = cat.compose(a, b, c, first, second)
                            expected = self.restriction((a, c, composite))
                            actual = self.restriction((a, b, first)).compose(self.restriction((b, c, second)))
                            for d in self._values[c].degrees():
                                if actual.component(d) != expected.component(d):
                                    raise ComplexInvalid(
                                        f"Restrictions do not compose in degree {d} for {(a, b, first)}, {(b, c, second)}",
                                        {"degree": d},
                                    )

    def homology(self, i: int) -> Dict[int, AbGroup]:
        c = self._values[i]
        return {d: c.homology(d) for d in c.degrees()}

    def euler_check(self) -> Report:
        """χ(X^H) from homology equals the alternating fixed-simplex count, per orbit."""
        report = Report(title="euler characteristics")
        for i, h in enumerate(self.cat.subgroups):
            counted = sum((-1) ** d * len(level) for d, level in enumerate(self._simplices[i]))
            from_homology = sum((-1) ** d * a.free_rank for d, a in self.homology(i).items())
            report.add(f"orbit {i} (|H| = {h.order})", counted == from_homology, f"{counted} vs {from_homology}")
        return report

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reduced": self.reduced,
            "orbits": [
                {
                    "subgroup": list(h.sorted_elements),
                    "ranks": self._values[i].ranks,
                    "homology": {str(d): str(a) for d, a in self.homology(i).items()},
                }
                for i, h in enumerate(self.cat.subgroups)
            ],
        }

    def __repr__(self) -> str:
        return f"BredonComplex({self.x}, reduced={self.reduced})"


def bredon_complex(x: SimplicialGSet, reduced: bool = True, validate: bool = True) -> BredonComplex:
    """
    Build the Bredon chain complex of a regular simplicial G-set.

    Example:
        >>> s = representation_sphere(cyclic(2), "sign")
        >>> b = bredon_complex(s)
        >>> b.homology(b.cat.free_orbit)[1], b.homology(b.cat.terminal)[0]
        (AbGroup(free_rank=1, torsion=()), AbGroup(free_rank=1, torsion=()))
    """
    return BredonComplex(x, reduced, validate=validate)
