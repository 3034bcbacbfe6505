"""
Free Z[G]-resolutions of the trivial module Z.

F_k = Z[G]^{r_k}. The Z-basis element (a, h) of F_k, stored at index
a·|G| + h, is h·e_a; G acts by left multiplication on h. Boundaries are kept
as Z-matrices, equivariant by construction.
"""
import logging
from itertools import product as cartesian
from typing import Dict, List, Mapping, Optional, Tuple

from src.config import get_config, resolve_budget
from src.errors import BudgetExceeded, InvalidInput
from src.grp import GModule, PermGroup
from src.intalg import IntChainComplex, IntLattice, IntMatrix, Window, integer_kernel, total_complex

logger = logging.getLogger(__name__)

RESOLUTION_KINDS = ("bar", "reduced")


class FreeResolution:
    """
    A free resolution F_• → Z of length ``length``.

    Args:
        group: The group
        length: Top degree of F
        kind: ``"bar"`` (normalized bar resolution) or ``"reduced"``
            (generators chosen greedily from kernel lattices)
        budget: Maximal Z-rank of any F_k (default: configured budget)

    Raises:
        InvalidInput: For an unknown kind
        BudgetExceeded: If some F_k is too large

    Example:
        >>> res = FreeResolution(cyclic(2), 3)
        >>> res.ranks
        [1, 1, 1, 1]
    """

    def __init__(
        self,
        group: PermGroup,
        length: Optional[int] = None,
        kind: str = "reduced",
        budget: Optional[int] = None,
    ):
        if kind not in RESOLUTION_KINDS:
            raise InvalidInput(f"Unknown resolution kind {kind!r}, expected one of {RESOLUTION_KINDS}")
        self.group = group
        self.length = length if length is not None else get_config().truncation.resolution_length
        self.kind = kind
        self._budget = resolve_budget(budget)
        self.ranks: List[int] = [1]
        self._boundaries: Dict[int, IntMatrix] = {}
        if kind == "bar":
            self._build_bar()
        else:
            self._build_reduced()
        self._coefficients: Dict[int, Dict[Tuple[int, int], Dict[int, int]]] = {}
        logger.debug(f"{kind} resolution of {group}: Z[G]-ranks {self.ranks}")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def _check(self, k: int, rank: int) -> None:
        size = rank * self.group.order
        if size > self._budget:
            raise BudgetExceeded(k, size, self._budget, "resolution basis elements")

    def _translate(self, h: int, vector: Mapping[int, int]) -> Dict[int, int]:
        n = self.group.order
        return {(i // n) * n + self.group.mul(h, i % n): v for i, v in vector.items()}

    def _free_map(self, images: List[Dict[int, int]], rows: int) -> IntMatrix:
        """The equivariant map sending e_a to images[a]."""
        columns = [self._translate(h, v) for v in images for h in range(self.group.order)]
        return IntMatrix.from_columns(rows, columns)

    def _build_bar(self) -> None:
        g = self.group
        n = g.order
        letters = [x for x in g if x != g.identity]
        cells: List[List[Tuple[int, ...]]] = [[()]]
        for k in range(1, self.length + 1):
            self._check(k, len(letters) ** k)
            cells.append(list(cartesian(letters, repeat=k)))
        self.ranks = [len(c) for c in cells]
        for k in range(1, self.length + 1):
            index = {cell: a for a, cell in enumerate(cells[k - 1])}
            images = []
            for cell in cells[k]:
                image: Dict[int, int] = {}

                def add(h: int, face: Tuple[int, ...], sign: int) -> None:
                    key = index[face] * n + h
                    image[key] = image.get(key, 0) + sign

                add(cell[0], cell[1:], 1)
                for i in range(1, k):
                    merged = g.mul(cell[i - 1], cell[i])
                    if merged != g.identity:
                        add(g.identity, cell[: i - 1] + (merged,) + cell[i + 1:], (-1) ** i)
                add(g.identity, cell[:-1], (-1) ** k)
                images.append({key: v for key, v in image.items() if v})
            self._boundaries[k] = self._free_map(images, self.ranks[k - 1] * n)

    def _build_reduced(self) -> None:
        n = self.group.order
        previous = self.augmentation
        for k in range(1, self.length + 1):
            kernel = integer_kernel(previous)
            dimension = previous.cols
            span = IntLattice(dimension)
            images: List[Dict[int, int]] = []
            for j in range(kernel.dimension):
                vector = kernel.vector(j)
                dense = [vector.get(i, 0) for i in range(dimension)]
                if dense in span:
                    continue
                images.append(vector)
                for h in range(n):
                    moved = self._translate(h, vector)
                    span.add([moved.get(i, 0) for i in range(dimension)])
            self._check(k, len(images))
            self.ranks.append(len(images))
            previous = self._free_map(images, dimension)
            self._boundaries[k] = previous

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    @property
    def augmentation(self) -> IntMatrix:
        """ε: F_0 = Z[G] → Z."""
        return IntMatrix.from_rows([[1] * self.group.order])

    def boundary(self, k: int) -> IntMatrix:
        return self._boundaries[k]

    def complex(self) -> IntChainComplex:
        """F_• as a complex of free abelian groups in degrees 0..length."""
        n = self.group.order
        return IntChainComplex(0, self.length, [r * n for r in self.ranks], self._boundaries)

    def coefficients(self, k: int) -> Dict[Tuple[int, int], Dict[int, int]]:
        """``c[(a, b)][g]``: ∂e_a = Σ c[(a, b)][g]·g·e_b for generators a of F_k."""
        if k not in self._coefficients:
            n = self.group.order
            columns = self._boundaries[k].columns()
            out: Dict[Tuple[int, int], Dict[int, int]] = {}
            for a in range(self.ranks[k]):
                for row, v in columns.get(a * n + self.group.identity, {}).items():
                    out.setdefault((a, row // n), {})[row % n] = v
            self._coefficients[k] = out
        return self._coefficients[k]

    def _tensor_blocks(self, k: int, m: GModule) -> IntMatrix:
        # M ⊗_G F: block (b, a) = Σ_g c ρ(g⁻¹)
        g = self.group
        blocks = {}
        for (a, b), terms in self.coefficients(k).items():
            acc = IntMatrix.zeros(m.rank, m.rank)
            for x, c in terms.items():
                acc = acc + m.matrix(g.inv(x)).scale(c)
            blocks[(b, a)] = acc
        return IntMatrix.block([m.rank] * self.ranks[k - 1], [m.rank] * self.ranks[k], blocks)

    def _hom_blocks(self, k: int, m: GModule, sign: int = 1) -> IntMatrix:
        # Hom_G(F, M): φ ↦ φ∘∂_k, block (a, b) = Σ_g c ρ(g)
        blocks = {}
        for (a, b), terms in self.coefficients(k).items():
            acc = IntMatrix.zeros(m.rank, m.rank)
            for x, c in terms.items():
                acc = acc + m.matrix(x).scale(c * sign)
            blocks[(a, b)] = acc
        return IntMatrix.block([m.rank] * self.ranks[k], [m.rank] * self.ranks[k - 1], blocks)

    def homology(self, m: GModule) -> IntChainComplex:
        """
        M ⊗_G F_•, whose homology is H_•(G, M) in degrees 0..length−1.
        """
        boundaries = {k: self._tensor_blocks(k, m) for k in range(1, self.length + 1)}
        return IntChainComplex(0, self.length, [r * m.rank for r in self.ranks], boundaries)

    def cohomology(self, m: GModule) -> IntChainComplex:
        """
        Hom_G(F_•, M) in homological grading: degree −k holds M^{r_k}, and
        H^j(G, M) is its homology in degree −j for j ≤ length−1.
        """
        boundaries = {-(k - 1): self._hom_blocks(k, m) for k in range(1, self.length + 1)}
        return IntChainComplex(
            -self.length, 0, [r * m.rank for r in reversed(self.ranks)], boundaries
        )

    @property
    def window(self) -> Window:
        """Cohomological degrees that the truncation does not affect."""
        return Window(lo=0, hi=self.length - 1)

    def hypercohomology_complex(
        self,
        modules: Mapping[int, GModule],
        boundaries: Mapping[int, IntMatrix],
        window: Optional[Window] = None,
    ) -> IntChainComplex:
        """
        Total complex of Hom_G(F_a, C_b) for a bounded complex C of G-modules.

        Hom_G(F_a, C_b) ≅ C_b^{r_a} sits in homological degree b − a. The
        differential is ∂_C∘φ + (−1)^b φ∘∂_F.

        Args:
            modules: C_b per degree b
            boundaries: ∂_b: C_b → C_{b−1}, equivariant
            window: Keep only the total degrees in this window; homology
                strictly inside it is unaffected

        Returns:
            The total complex; its homology in degree −t is H^t(G; C)
            wherever the truncation at a = length does not interfere
        """
        g = self.group
        if any(mod.group != g for mod in modules.values()):
            raise InvalidInput("Coefficient modules are over a different group")
        blocks: Dict[Tuple[int, int], int] = {}
        for a in range(self.length + 1):
            for b, mod in modules.items():
                if window is None or b - a in window:
                    blocks[(-a, b)] = self.ranks[a] * mod.rank
        maps: Dict[Tuple[Tuple[int, int], Tuple[int, int]], IntMatrix] = {}
        for (p, b) in blocks:
            a = -p
            if (p, b - 1) in blocks and b in boundaries:
                maps[((p, b), (p, b - 1))] = IntMatrix.identity(self.ranks[a]).kron(boundaries[b])
            if (p - 1, b) in blocks:
                sign = -1 if b % 2 else 1
                maps[((p, b), (p - 1, b))] = self._hom_blocks(a + 1, modules[b], sign)
        return total_complex(blocks, maps)

    def __repr__(self) -> str:
        return f"FreeResolution({self.group}, kind={self.kind}, ranks={self.ranks})"
