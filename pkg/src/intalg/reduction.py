"""
Filtered chain complexes and their reduction by unit pivots.

A unit entry u of ∂_d between x ∈ C_d and y ∈ C_{d-1} splits off the
contractible pair (x, y). Cancelling it leaves a homotopy equivalent complex
on the remaining basis, with ∂'(x') = ∂x' − ∂(x')_y · u · ∂x. Only pairs of
equal filtration level are cancelled, so every sublevel complex is reduced
along with the whole and the inclusions between sublevels still induce the
original maps in homology.
"""
import logging
from typing import Dict, List, Mapping, Sequence, Set

from src.errors import ComplexInvalid
from src.intalg.complex import ChainMap, IntChainComplex
from src.intalg.matrix import IntMatrix

logger = logging.getLogger(__name__)


class FilteredComplex:
    """
    A chain complex whose basis elements carry filtration levels.

    Basis elements of level ≤ k span a subcomplex for every k.

    Args:
        chains: The complex
        levels: Level of every basis element, per degree

    Raises:
        ComplexInvalid: If a degree has the wrong number of levels or a
            boundary raises the level

    Example:
        >>> c = IntChainComplex(0, 1, [1, 1], {1: IntMatrix.from_rows([[1]])})
        >>> FilteredComplex(c, {0: [0], 1: [1]}).reduced().chains.ranks
        [1, 1]
    """

    def __init__(self, chains: IntChainComplex, levels: Mapping[int, Sequence[int]]):
        self.chains = chains
        self.levels: Dict[int, List[int]] = {d: list(levels.get(d, [])) for d in chains.degrees()}
        for d in chains.degrees():
            if len(self.levels[d]) != chains.rank(d):
                raise ComplexInvalid(
                    f"Degree {d} has {chains.rank(d)} basis elements but {len(self.levels[d])} levels",
                    {"degree": d},
                )
        for d in range(chains.lo + 1, chains.hi + 1):
            above, below = self.levels[d], self.levels[d - 1]
            if any(below[i] > above[j] for i, j, _ in chains.boundary(d).items()):
                raise ComplexInvalid(f"Boundary in degree {d} raises the filtration level", {"degree": d})
        self._sublevels: Dict[int, IntChainComplex] = {}

    def _positions(self, d: int, k: int) -> List[int]:
        return [i for i, level in enumerate(self.levels[d]) if level <= k]

    def sublevel(self, k: int) -> IntChainComplex:
        """The subcomplex spanned by the basis elements of level ≤ k."""
        if k not in self._sublevels:
            c = self.chains
            keep = {d: self._positions(d, k) for d in c.degrees()}
            boundaries = {
                d: c.boundary(d).submatrix(keep[d - 1], keep[d]) for d in range(c.lo + 1, c.hi + 1)
            }
            self._sublevels[k] = IntChainComplex(
                c.lo, c.hi, {d: len(v) for d, v in keep.items()}, boundaries, validate=False
            )
        return self._sublevels[k]

    def inclusion(self, j: int, k: int) -> ChainMap:
        """Sublevel j ⊆ sublevel k, a coordinate inclusion."""
        if j > k:
            raise ComplexInvalid(f"Sublevel {j} is not contained in sublevel {k}")
        source, target = self.sublevel(j), self.sublevel(k)
        components: Dict[int, IntMatrix] = {}
        for d in self.chains.degrees():
            inner = {i: n for n, i in enumerate(self._positions(d, k))}
            entries = [(inner[i], n, 1) for n, i in enumerate(self._positions(d, j))]
            components[d] = IntMatrix.from_entries(target.rank(d), source.rank(d), entries)
        return ChainMap(source, target, components)

    def reduced(self) -> "FilteredComplex":
        """
        Cancel unit pivots between basis elements of equal level until none is left.

        Returns:
            A FilteredComplex on the surviving basis, in the original order.
            Each sublevel is homotopy equivalent to the old one, compatibly
            with the inclusions.
        """
        c = self.chains
        lo, hi = c.lo, c.hi
        alive = {d: set(range(c.rank(d))) for d in c.degrees()}
        # columns[d][x] = ∂x as {y: v}; rows[d][y] = the x with ∂(x)_y ≠ 0
        columns: Dict[int, Dict[int, Dict[int, int]]] = {}
        rows: Dict[int, Dict[int, Set[int]]] = {}
        for d in range(lo + 1, hi + 1):
            cols: Dict[int, Dict[int, int]] = {x: {} for x in range(c.rank(d))}
            hits: Dict[int, Set[int]] = {y: set() for y in range(c.rank(d - 1))}
            for y, x, v in c.boundary(d).items():
                cols[x][y] = v
                hits[y].add(x)
            columns[d], rows[d] = cols, hits

        def cancel(d: int, x: int, y: int, u: int) -> None:
            cx = columns[d].pop(x)
            for z in cx:
                rows[d][z].discard(x)
            for other in rows[d].pop(y):
                co = columns[d][other]
                f = co.pop(y) * u
                for z, v in cx.items():
                    if z == y:
                        continue
                    new = co.get(z, 0) - f * v
                    if new:
                        if z not in co:
                            rows[d][z].add(other)
                        co[z] = new
                    elif z in co:
                        del co[z]
                        rows[d][z].discard(other)
            if d - 1 > lo:
                for z in columns[d - 1].pop(y):
                    rows[d - 1][z].discard(y)
            if d + 1 <= hi:
                for w in rows[d + 1].pop(x):
                    del columns[d + 1][w][x]
            alive[d].discard(x)
            alive[d - 1].discard(y)

        cancelled = 0
        progress = True
        while progress:
            progress = False
            for d in range(hi, lo, -1):
                above, below = self.levels[d], self.levels[d - 1]
                for x in sorted(columns[d]):
                    cx = columns[d].get(x)
                    if not cx:
                        continue
                    best = None
                    for y, v in cx.items():
                        if (v == 1 or v == -1) and below[y] == above[x]:
                            count = len(rows[d][y])
                            if best is None or count < best[0]:
                                best = (count, y, v)
                                if count == 1:
                                    break
                    if best is not None:
                        cancel(d, x, best[1], best[2])
                        cancelled += 1
                        progress = True

        keep = {d: sorted(alive[d]) for d in c.degrees()}
        position = {d: {i: n for n, i in enumerate(v)} for d, v in keep.items()}
        boundaries = {}
        for d in range(lo + 1, hi + 1):
            entries = [
                (position[d - 1][y], position[d][x], v)
                for x, cx in columns[d].items()
                for y, v in cx.items()
            ]
            boundaries[d] = IntMatrix.from_entries(len(keep[d - 1]), len(keep[d]), entries)
        chains = IntChainComplex(lo, hi, {d: len(v) for d, v in keep.items()}, boundaries)
        logger.debug(f"Cancelled {cancelled} unit pivots: ranks {c.ranks} -> {chains.ranks}")
        return FilteredComplex(chains, {d: [self.levels[d][i] for i in v] for d, v in keep.items()})

    def __repr__(self) -> str:
        return f"FilteredComplex(ranks={self.chains.ranks})"
