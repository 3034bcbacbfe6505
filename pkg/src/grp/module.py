"""
Integral representations of permutation groups.

``GModule`` is a free abelian group Z^rank with one integer matrix per group
element. ``PermutationComplex`` is a chain complex whose chain groups are
permutation modules, the common carrier of T-complexes and adapted complexes.
"""
import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.errors import ComplexInvalid, InvalidInput
from src.grp.group import PermGroup, Subgroup
from src.intalg import IntChainComplex, IntMatrix, KernelBasis, stacked_kernel

logger = logging.getLogger(__name__)


class GModule:
    """
    A G-module with free carrier Z^rank.

    Args:
        group: The acting group
        rank: Rank of the carrier
        matrices: One rank × rank matrix per element index
        validate: Check the homomorphism property on the Cayley graph
        name: Optional label

    Raises:
        InvalidInput: If the matrices do not define an action
    """

    def __init__(
        self,
        group: PermGroup,
        rank: int,
        matrices: Sequence[IntMatrix],
        validate: bool = True,
        name: Optional[str] = None,
    ):
        if len(matrices) != group.order:
            raise InvalidInput(f"Expected {group.order} matrices, got {len(matrices)}")
        for m in matrices:
            if m.shape != (rank, rank):
                raise InvalidInput(f"Action matrix has shape {m.shape}, expected {(rank, rank)}")
        self.group = group
        self.rank = rank
        self._matrices = list(matrices)
        self.name = name
        if validate:
            self.validate()

    def validate(self) -> None:
        """
        Check ρ(e) = 1 and ρ(s·x) = ρ(s)ρ(x) for generators s and all x.

        Raises:
            InvalidInput: Naming the first failing pair
        """
        g = self.group
        if self._matrices[0] != IntMatrix.identity(self.rank):
            raise InvalidInput("Identity element does not act as the identity matrix")
        for s in g.generator_indices:
            for x in g:
                if self._matrices[g.mul(s, x)] != self._matrices[s] @ self._matrices[x]:
                    raise InvalidInput(
                        f"Matrices are not a homomorphism at generator {list(g.perm(s))} "
                        f"and element {list(g.perm(x))}"
                    )

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_generators(
        cls,
        group: PermGroup,
        rank: int,
        generator_matrices: Sequence[IntMatrix],
        name: Optional[str] = None,
    ) -> "GModule":
        """
        Extend generator matrices (aligned with ``group.generators``) to the group.

        Raises:
            InvalidInput: If the generator matrices violate a relation
        """
        if len(generator_matrices) != len(group.generator_indices):
            raise InvalidInput(
                f"Expected {len(group.generator_indices)} generator matrices, got {len(generator_matrices)}"
            )
        mats: Dict[int, IntMatrix] = {0: IntMatrix.identity(rank)}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s, m in zip(group.generator_indices, generator_matrices):
                    y = group.mul(s, x)
                    if y not in mats:
                        mats[y] = m @ mats[x]
                        nxt.append(y)
            frontier = nxt
        return cls(group, rank, [mats[x] for x in group], name=name)

    @classmethod
    def trivial(cls, group: PermGroup, rank: int = 1) -> "GModule":
        identity = IntMatrix.identity(rank)
        return cls(group, rank, [identity] * group.order, validate=False, name="trivial" if rank == 1 else f"trivial^{rank}")

    @classmethod
    def zero(cls, group: PermGroup) -> "GModule":
        return cls(group, 0, [IntMatrix.zeros(0, 0)] * group.order, validate=False, name="zero")

    @classmethod
    def from_permutation(
        cls,
        group: PermGroup,
        images: Sequence[Sequence[int]],
        name: Optional[str] = None,
    ) -> "GModule":
        """
        Permutation module Z[X] from an action table.

        Args:
            group: The group
            images: ``images[g][x]`` is g·x, for every element index g
        """
        if len(images) != group.order:
            raise InvalidInput(f"Expected {group.order} permutation rows, got {len(images)}")
        rank = len(images[0]) if images else 0
        return cls(group, rank, [IntMatrix.permutation(row) for row in images], name=name)

    @classmethod
    def regular(cls, group: PermGroup) -> "GModule":
        """Z[G] with G acting by left multiplication on the basis {e_h}."""
        images = [[group.mul(g, h) for h in group] for g in group]
        return cls(group, group.order, [IntMatrix.permutation(row) for row in images], validate=False, name="regular")

    # ------------------------------------------------------------------
    # Access and constructions
    # ------------------------------------------------------------------

    def matrix(self, g: int) -> IntMatrix:
        return self._matrices[g]

    @property
    def matrices(self) -> List[IntMatrix]:
        return list(self._matrices)

    @property
    def is_trivial_action(self) -> bool:
        identity = IntMatrix.identity(self.rank)
        return all(m == identity for m in self._matrices)

    def direct_sum(self, other: "GModule") -> "GModule":
        self._same_group(other)
        return GModule(
            self.group,
            self.rank + other.rank,
            [IntMatrix.block_diagonal([a, b]) for a, b in zip(self._matrices, other._matrices)],
            validate=False,
        )

    def __add__(self, other: "GModule") -> "GModule":
        return self.direct_sum(other)

    def tensor(self, other: "GModule") -> "GModule":
        """Diagonal action on the Kronecker product; basis (i, j) ↦ i·other.rank + j."""
        self._same_group(other)
        return GModule(
            self.group,
            self.rank * other.rank,
            [a.kron(b) for a, b in zip(self._matrices, other._matrices)],
            validate=False,
        )

    def dual(self) -> "GModule":
        """Contragredient: ρ*(g) = ρ(g⁻¹)ᵀ."""
        return GModule(
            self.group,
            self.rank,
            [self._matrices[self.group.inv(g)].transpose() for g in self.group],
            validate=False,
        )

    def restrict(self, h: Subgroup) -> "GModule":
        """Restriction to a subgroup, over ``h.as_group()``."""
        if h.parent != self.group:
            raise ValueError("Subgroup does not belong to the module's group")
        sub, embedding = h.as_group()
        return GModule(sub, self.rank, [self._matrices[x] for x in embedding], validate=False)

    def invariants(self, h: Optional[Subgroup] = None) -> KernelBasis:
        """Saturated Z-basis of M^H (default H = G)."""
        gens = h.generators if h is not None else self.group.generator_indices
        identity = IntMatrix.identity(self.rank)
        return stacked_kernel([self._matrices[s] - identity for s in gens], self.rank)

    def _same_group(self, other: "GModule") -> None:
        if other.group != self.group:
            raise ValueError("Modules over different groups")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GModule):
            return NotImplemented
        return self.group == other.group and self.rank == other.rank and self._matrices == other._matrices

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        label = f", {self.name}" if self.name else ""
        return f"GModule({self.group}, rank={self.rank}{label})"


class PermutationComplex:
    """
    A chain complex with a group permuting each chain basis.

    Args:
        complex: The underlying complex
        group: Acting group
        actions: ``actions[d][g][x]`` is the image of basis vector x of degree
            d under element g; degrees with rank 0 may be omitted
        validate: Check that the action commutes with the boundaries

    Raises:
        ComplexInvalid: If a boundary is not equivariant
    """

    def __init__(
        self,
        complex: IntChainComplex,
        group: PermGroup,
        actions: Mapping[int, Sequence[Sequence[int]]],
        validate: bool = True,
    ):
        self.complex = complex
        self.group = group
        self._actions = {d: [tuple(row) for row in rows] for d, rows in actions.items()}
        for d in complex.degrees():
            if d not in self._actions:
                if complex.rank(d):
                    raise ComplexInvalid(f"Missing group action in degree {d}")
                self._actions[d] = [()] * group.order
        self._modules: Dict[int, GModule] = {}
        if validate:
            self.check_equivariance()

    def action(self, d: int, g: int) -> Tuple[int, ...]:
        return self._actions[d][g]

    def module(self, d: int) -> GModule:
        if d not in self._modules:
            rows = self._actions.get(d)
            if rows is None:
                self._modules[d] = GModule.zero(self.group)
            else:
                self._modules[d] = GModule(
                    self.group,
                    self.complex.rank(d),
                    [IntMatrix.permutation(row) for row in rows],
                    validate=False,
                )
        return self._modules[d]

    def check_equivariance(self) -> None:
        for d in range(self.complex.lo + 1, self.complex.hi + 1):
            boundary = self.complex.boundary(d)
            for s in self.group.generator_indices:
                if boundary @ self.module(d).matrix(s) != self.module(d - 1).matrix(s) @ boundary:
                    raise ComplexInvalid(
                        f"Boundary in degree {d} is not equivariant for {list(self.group.perm(s))}",
                        {"degree": d},
                    )

    def basis_orbits(self, d: int) -> List[Tuple[int, frozenset]]:
        """Orbit representatives of the degree-d basis with their stabilizers."""
        out = []
        seen = set()
        rows = self._actions[d]
        for x in range(self.complex.rank(d)):
            if x in seen:
                continue
            seen.update(rows[g][x] for g in self.group)
            stabilizer = frozenset(g for g in self.group if rows[g][x] == x)
            out.append((x, stabilizer))
        return out

    def stage(self, top: int) -> "PermutationComplex":
        """Stupid truncation to degrees ≤ top."""
        truncated = self.complex.truncate(top)
        return PermutationComplex(
            truncated,
            self.group,
            {d: self._actions[d] for d in truncated.degrees()},
            validate=False,
        )
