"""
Finite permutation groups with eagerly enumerated elements.

Elements are addressed by their index in the lexicographically sorted list
of image tuples, so index 0 is always the identity. Composition follows
(p∘q)(i) = p(q(i)).
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

from src.errors import InvalidInput

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """(p∘q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class PermGroup:
    """
    A finite group given by permutation generators on {0, …, ground_size-1}.

    Args:
        ground_size: Number of points permuted
        generators: Image tuples; an empty list gives the trivial group
        name: Optional display name (e.g. "S3")

    Raises:
        InvalidInput: If a generator is not a permutation of the ground set

    Example:
        >>> g = PermGroup(3, [(1, 2, 0)])
        >>> g.order
        3
    """

    def __init__(self, ground_size: int, generators: Sequence[Sequence[int]], name: Optional[str] = None):
        if ground_size < 1:
            raise InvalidInput(f"Ground set must be nonempty, got size {ground_size}")
        gens: List[Perm] = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if sorted(g) != list(range(ground_size)):
                raise InvalidInput(
                    f"Generator {list(g)} is not a permutation of {ground_size} points",
                    {"generator": list(g)},
                )
            gens.append(g)

        perms = [Permutation(list(g)) for g in gens] or [Permutation(list(range(ground_size)))]
        closure = PermutationGroup(perms).generate_dimino(af=True)

        self.ground_size = ground_size
        self.name = name
        self.generators: Tuple[Perm, ...] = tuple(gens)
        self.elements: List[Perm] = sorted(tuple(p) for p in closure)
        self._index: Dict[Perm, int] = {p: i for i, p in enumerate(self.elements)}
        self._mul = [
            [self._index[compose(p, q)] for q in self.elements]
            for p in self.elements
        ]
        self._inv = [row.index(0) for row in self._mul]
        self.generator_indices: Tuple[int, ...] = tuple(self._index[g] for g in gens)
        logger.debug(f"Enumerated group {self} of order {self.order}")

    # ------------------------------------------------------------------
    # Element arithmetic (on indices)
    # ------------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, h: int) -> int:
        """g h g⁻¹."""
        return self._mul[self._mul[g][h]][self._inv[g]]

    def power(self, g: int, k: int) -> int:
        out = 0
        base = g if k >= 0 else self._inv[g]
        for _ in range(abs(k)):
            out = self._mul[out][base]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self._mul[x][g]
            k += 1
        return k

    def perm(self, g: int) -> Perm:
        return self.elements[g]

    def index(self, p: Sequence[int]) -> int:
        try:
            return self._index[tuple(p)]
        except KeyError:
            raise InvalidInput(f"Permutation {list(p)} is not an element of {self}")

    def __contains__(self, p: Sequence[int]) -> bool:
        return tuple(p) in self._index

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.order))

    def __len__(self) -> int:
        return self.order

    @property
    def is_abelian(self) -> bool:
        return all(self._mul[a][b] == self._mul[b][a] for a in self for b in self)

    # ------------------------------------------------------------------
    # Subgroups
    # ------------------------------------------------------------------

    def generate(self, generators: Iterable[int]) -> "Subgroup":
        """The subgroup generated by element indices."""
        gens = tuple(sorted(set(generators)))
        return Subgroup(self, closure(self, gens), gens, validate=False)

    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order), self.generator_indices, validate=False)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [0], (), validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.ground_size == other.ground_size and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.ground_size, tuple(self.elements)))

    def __repr__(self) -> str:
        if self.name:
            return f"PermGroup({self.name})"
        return f"PermGroup(degree={self.ground_size}, order={self.order})"

    __str__ = __repr__


def closure(group: PermGroup, generators: Iterable[int]) -> FrozenSet[int]:
    """Breadth-first closure of element indices under multiplication."""
    gens = list(generators)
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = group.mul(s, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def generating_set(group: PermGroup, elements: Iterable[int]) -> Tuple[int, ...]:
    """A small generating set for a subgroup, chosen greedily by index."""
    gens: List[int] = []
    span = frozenset([0])
    for x in sorted(elements):
        if x not in span:
            gens.append(x)
            span = closure(group, gens)
    return tuple(gens)


class Subgroup:
    """
    A subgroup of a PermGroup, stored as a frozenset of element indices.

    Args:
        parent: Ambient group
        elements: Element indices
        generators: Optional generating indices (computed if omitted)
        validate: Check closure under the group law

    Raises:
        InvalidInput: If ``elements`` is not closed under multiplication
    """

    def __init__(
        self,
        parent: PermGroup,
        elements: Iterable[int],
        generators: Optional[Sequence[int]] = None,
        validate: bool = True,
    ):
        self.parent = parent
        self.elements: FrozenSet[int] = frozenset(elements)
        if validate:
            if 0 not in self.elements:
                raise InvalidInput("Subgroup must contain the identity")
            for a in self.elements:
                for b in self.elements:
                    if parent.mul(a, b) not in self.elements:
                        raise InvalidInput(
                            f"Elements are not closed under composition: "
                            f"{list(parent.perm(a))} ∘ {list(parent.perm(b))}"
                        )
        self._generators = tuple(generators) if generators is not None else None
        self._as_group: Optional[Tuple[PermGroup, List[int]]] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generators(self) -> Tuple[int, ...]:
        if self._generators is None:
            self._generators = generating_set(self.parent, self.elements)
        return self._generators

    @property
    def sorted_elements(self) -> Tuple[int, ...]:
        return tuple(sorted(self.elements))

    @property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        """Sort key: order, then the lexicographic element tuple."""
        return (self.order, self.sorted_elements)

    def __contains__(self, g: int) -> bool:
        return g in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_elements)

    def __len__(self) -> int:
        return self.order

    def conjugate(self, g: int) -> "Subgroup":
        """g H g⁻¹."""
        return Subgroup(self.parent, (self.parent.conj(g, h) for h in self.elements), validate=False)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def is_normal(self) -> bool:
        return all(self.conjugate(g) == self for g in self.parent.generator_indices)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def as_group(self) -> Tuple[PermGroup, List[int]]:
        """
        This subgroup as a PermGroup on the same ground set.

        Returns:
            (group, embedding) where embedding[i] is the parent index of the
            i-th element of the new group
        """
        if self._as_group is None:
            group = PermGroup(
                self.parent.ground_size,
                [self.parent.perm(g) for g in self.generators],
            )
            embedding = [self.parent.index(p) for p in group.elements]
            self._as_group = (group, embedding)
        return self._as_group

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        same_parent = self.parent is other.parent or self.parent == other.parent
        return same_parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elements={list(self.sorted_elements)})"
