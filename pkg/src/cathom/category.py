"""
Finite categories given by tables, action groupoids, and coefficient systems.

Morphisms are integers. ``compose(f, g)`` is g∘f for f: x → y and g: y → z.
"""
import logging
import random
from bisect import bisect_right
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from src.errors import InvalidInput
from src.grp import GModule, PermGroup, cyclic
from src.intalg import IntMatrix, block_offsets

logger = logging.getLogger(__name__)


class FinCategory:
    """
    A finite category with an explicit composition table.

    Args:
        objects: Object names
        sources: Source object of each morphism
        targets: Target object of each morphism
        identities: Identity morphism of each object
        composition: ``composition[(f, g)]`` is g∘f for every composable pair
        validate: Check unitality and associativity
        name: Optional label

    Raises:
        InvalidInput: If the table does not define a category

    Example:
        >>> cat = FinCategory.poset(2, [(0, 1)])
        >>> cat.hom(0, 1)
        [1]
    """

    def __init__(
        self,
        objects: Sequence[str],
        sources: Sequence[int],
        targets: Sequence[int],
        identities: Sequence[int],
        composition: Mapping[Tuple[int, int], int],
        validate: bool = True,
        name: Optional[str] = None,
    ):
        if len(sources) != len(targets):
            raise InvalidInput("Sources and targets have different lengths")
        if len(identities) != len(objects):
            raise InvalidInput(f"Expected {len(objects)} identities, got {len(identities)}")
        self.objects = list(objects)
        self.name = name
        self._sources = list(sources)
        self._targets = list(targets)
        self._identities = list(identities)
        self._identity_set = set(identities)
        self._composition = dict(composition)
        self._out: Dict[int, List[int]] = {x: [] for x in range(len(self.objects))}
        for f, s in enumerate(self._sources):
            self._out[s].append(f)
        if validate:
            self.validate()

    # ------------------------------------------------------------------
    # Primitive structure
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self._sources)

    def source(self, f: int) -> int:
        return self._sources[f]

    def target(self, f: int) -> int:
        return self._targets[f]

    def identity(self, x: int) -> int:
        return self._identities[x]

    def is_identity(self, f: int) -> bool:
        return f in self._identity_set

    def compose(self, f: int, g: int) -> int:
        """g∘f."""
        try:
            return self._composition[(f, g)]
        except KeyError:
            raise InvalidInput(f"Morphisms {f} and {g} are not composable") from None

    def out_of(self, x: int) -> List[int]:
        """Morphisms with source x."""
        return self._out[x]

    # ------------------------------------------------------------------
    # Derived structure
    # ------------------------------------------------------------------

    def hom(self, x: int, y: int) -> List[int]:
        return [f for f in self.out_of(x) if self.target(f) == y]

    def is_iso(self, f: int) -> bool:
        x, y = self.source(f), self.target(f)
        return any(
            self.compose(f, g) == self.identity(x) and self.compose(g, f) == self.identity(y)
            for g in self.hom(y, x)
        )

    def hom_counts(self, normalized: bool = False) -> List[List[int]]:
        """Number of (non-identity, if normalized) morphisms between each pair of objects."""
        n = len(self)
        counts = [[0] * n for _ in range(n)]
        for f in range(self.n_morphisms):
            if normalized and self.is_identity(f):
                continue
            counts[self.source(f)][self.target(f)] += 1
        return counts

    def validate(self) -> None:
        """
        Check unitality and associativity on all composable pairs and triples.

        Raises:
            InvalidInput: Naming the first failing morphisms
        """
        for x, ident in enumerate(self._identities):
            if self.source(ident) != x or self.target(ident) != x:
                raise InvalidInput(f"Identity of object {x} is not an endomorphism of it")
        for f in range(self.n_morphisms):
            x, y = self.source(f), self.target(f)
            if self.compose(self.identity(x), f) != f or self.compose(f, self.identity(y)) != f:
                raise InvalidInput(f"Morphism {f} violates unitality", {"morphism": f})
            for g in self.out_of(y):
                gf = self.compose(f, g)
                if self.source(gf) != x or self.target(gf) != self.target(g):
                    raise InvalidInput(f"Composite of {f} and {g} has the wrong endpoints")
                for h in self.out_of(self.target(g)):
                    if self.compose(gf, h) != self.compose(f, self.compose(g, h)):
                        raise InvalidInput(
                            f"Composition is not associative on ({f}, {g}, {h})",
                            {"morphisms": [f, g, h]},
                        )

    def __repr__(self) -> str:
        return f"FinCategory({self.name or 'anonymous'}, objects={len(self)}, morphisms={self.n_morphisms})"

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def one_object(cls, group: PermGroup, validate: bool = False) -> "FinCategory":
        """BG: one object, one morphism per group element."""
        n = group.order
        composition = {(f, g): group.mul(g, f) for f in range(n) for g in range(n)}
        return cls(["*"], [0] * n, [0] * n, [group.identity], composition, validate=validate, name=f"B{group}")

    @classmethod
    def poset(cls, size: int, relations: Sequence[Tuple[int, int]]) -> "FinCategory":
        """
        The poset generated by relations a ≤ b.

        Raises:
            InvalidInput: If the relations contain a cycle
        """
        below = [[a == b for b in range(size)] for a in range(size)]
        for a, b in relations:
            below[a][b] = True
        for k in range(size):
            for a in range(size):
                if below[a][k]:
                    for b in range(size):
                        if below[k][b]:
                            below[a][b] = True
        for a in range(size):
            for b in range(a + 1, size):
                if below[a][b] and below[b][a]:
                    raise InvalidInput(f"Relations force {a} = {b}")
        pairs = [(a, b) for a in range(size) for b in range(size) if below[a][b]]
        index = {p: k for k, p in enumerate(pairs)}
        composition = {
            (index[(a, b)], index[(b, c)]): index[(a, c)]
            for (a, b) in pairs
            for c in range(size)
            if below[b][c]
        }
        return cls(
            [str(a) for a in range(size)],
            [a for a, _ in pairs],
            [b for _, b in pairs],
            [index[(a, a)] for a in range(size)],
            composition,
            name="poset",
        )

    @classmethod
    def with_initial_object(cls, base: "FinCategory") -> "FinCategory":
        """Adjoin a new object 0 with exactly one morphism to every object."""
        n, m = len(base), base.n_morphisms
        # new morphisms: 0 is id of the new object, 1 + x is the unique map to
        # old object x, 1 + n + f is old morphism f
        sources = [0] + [0] * n + [base.source(f) + 1 for f in range(m)]
        targets = [0] + [x + 1 for x in range(n)] + [base.target(f) + 1 for f in range(m)]
        identities = [0] + [1 + n + base.identity(x) for x in range(n)]
        composition: Dict[Tuple[int, int], int] = {(0, 0): 0}
        for x in range(n):
            composition[(0, 1 + x)] = 1 + x
            for f in base.out_of(x):
                composition[(1 + x, 1 + n + f)] = 1 + base.target(f)
        for f in range(m):
            for g in base.out_of(base.target(f)):
                composition[(1 + n + f, 1 + n + g)] = 1 + n + base.compose(f, g)
        return cls(["initial"] + base.objects, sources, targets, identities, composition, name="cone")

    @classmethod
    def disjoint_union(cls, a: "FinCategory", b: "FinCategory") -> "FinCategory":
        na, ma = len(a), a.n_morphisms
        sources = [a.source(f) for f in range(ma)] + [b.source(f) + na for f in range(b.n_morphisms)]
        targets = [a.target(f) for f in range(ma)] + [b.target(f) + na for f in range(b.n_morphisms)]
        identities = [a.identity(x) for x in range(na)] + [b.identity(x) + ma for x in range(len(b))]
        composition: Dict[Tuple[int, int], int] = {}
        for f in range(ma):
            for g in a.out_of(a.target(f)):
                composition[(f, g)] = a.compose(f, g)
        for f in range(b.n_morphisms):
            for g in b.out_of(b.target(f)):
                composition[(f + ma, g + ma)] = b.compose(f, g) + ma
        return cls(a.objects + b.objects, sources, targets, identities, composition, validate=False, name="union")

    @classmethod
    def random_category_with_initial_object(cls, rng: random.Random, size: int = 3) -> "FinCategory":
        """A random poset plus a small BG, with an initial object adjoined."""
        relations = [(a, b) for a in range(size) for b in range(a + 1, size) if rng.random() < 0.4]
        base = cls.disjoint_union(cls.poset(size, relations), cls.one_object(cyclic(rng.choice([2, 3]))))
        return cls.with_initial_object(base)


class ActionGroupoid(FinCategory):
    """
    The groupoid X//K of a permutation action, without a composition table.

    Morphism ``k * |X| + x`` is x → k·x.

    Args:
        group: The acting group K
        table: ``table[k][x]`` is k·x
        names: Optional object names
    """

    def __init__(self, group: PermGroup, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None):
        self.group = group
        self.table = [tuple(row) for row in table]
        self.size = len(self.table[0]) if self.table else 0
        self.objects = list(names) if names is not None else [str(x) for x in range(self.size)]
        self.name = f"X//{group}"
        self.validate()

    @property
    def n_morphisms(self) -> int:
        return self.group.order * self.size

    def morphism(self, k: int, x: int) -> int:
        return k * self.size + x

    def element(self, f: int) -> int:
        return f // self.size

    def source(self, f: int) -> int:
        return f % self.size

    def target(self, f: int) -> int:
        return self.table[f // self.size][f % self.size]

    def identity(self, x: int) -> int:
        return self.morphism(self.group.identity, x)

    def is_identity(self, f: int) -> bool:
        return f // self.size == self.group.identity

    def compose(self, f: int, g: int) -> int:
        if self.source(g) != self.target(f):
            raise InvalidInput(f"Morphisms {f} and {g} are not composable")
        return self.morphism(self.group.mul(self.element(g), self.element(f)), self.source(f))

    def out_of(self, x: int) -> List[int]:
        return [self.morphism(k, x) for k in range(self.group.order)]

    def is_iso(self, f: int) -> bool:
        return True

    def orbits(self) -> List[List[int]]:
        seen, out = set(), []
        for x in range(self.size):
            if x in seen:
                continue
            orbit = sorted({row[x] for row in self.table})
            seen.update(orbit)
            out.append(orbit)
        return out

    def stabilizer(self, x: int) -> List[int]:
        return [k for k in range(self.group.order) if self.table[k][x] == x]

    def validate(self) -> None:
        if self.table[self.group.identity] != tuple(range(self.size)):
            raise InvalidInput("Identity element does not act trivially")


class GroupoidSum(FinCategory):
    """
    A disjoint union of action groupoids, possibly for different groups.

    Objects and morphisms of part b are numbered after those of parts
    0..b−1; ``locate_*`` and ``*_index`` convert between global and local
    numbering.
    """

    def __init__(self, parts: Sequence[ActionGroupoid], name: Optional[str] = None):
        self.parts = list(parts)
        self.objects = [label for part in self.parts for label in part.objects]
        self.name = name or "groupoid sum"
        self._object_offsets = block_offsets(len(part) for part in self.parts)
        self._morphism_offsets = block_offsets(part.n_morphisms for part in self.parts)

    @property
    def n_morphisms(self) -> int:
        return self._morphism_offsets[-1]

    @staticmethod
    def _locate(offsets: List[int], index: int) -> Tuple[int, int]:
        b = bisect_right(offsets, index) - 1
        return b, index - offsets[b]

    def locate_object(self, x: int) -> Tuple[int, int]:
        return self._locate(self._object_offsets, x)

    def locate_morphism(self, f: int) -> Tuple[int, int]:
        return self._locate(self._morphism_offsets, f)

    def object_index(self, b: int, x: int) -> int:
        return self._object_offsets[b] + x

    def morphism_index(self, b: int, f: int) -> int:
        return self._morphism_offsets[b] + f

    def source(self, f: int) -> int:
        b, local = self.locate_morphism(f)
        return self.object_index(b, self.parts[b].source(local))

    def target(self, f: int) -> int:
        b, local = self.locate_morphism(f)
        return self.object_index(b, self.parts[b].target(local))

    def identity(self, x: int) -> int:
        b, local = self.locate_object(x)
        return self.morphism_index(b, self.parts[b].identity(local))

    def is_identity(self, f: int) -> bool:
        b, local = self.locate_morphism(f)
        return self.parts[b].is_identity(local)

    def compose(self, f: int, g: int) -> int:
        bf, lf = self.locate_morphism(f)
        bg, lg = self.locate_morphism(g)
        if bf != bg:
            raise InvalidInput(f"Morphisms {f} and {g} are not composable")
        return self.morphism_index(bf, self.parts[bf].compose(lf, lg))

    def out_of(self, x: int) -> List[int]:
        b, local = self.locate_object(x)
        offset = self._morphism_offsets[b]
        return [offset + f for f in self.parts[b].out_of(local)]

    def is_iso(self, f: int) -> bool:
        return True


# ============================================================================
# Coefficient systems
# ============================================================================


class CoefficientSystem:
    """
    A functor from a finite category to free abelian groups.

    Args:
        cat: The category
        ranks: Rank of the value at each object
        matrices: Matrix (rank target × rank source) per morphism, as a
            mapping or a callable; computed values are cached
        validate: Check functoriality on the full composition table

    Raises:
        InvalidInput: If a matrix has the wrong shape or the data is not functorial
    """

    def __init__(
        self,
        cat: FinCategory,
        ranks: Sequence[int],
        matrices: "Mapping[int, IntMatrix] | Callable[[int], IntMatrix]",
        validate: bool = True,
    ):
        if len(ranks) != len(cat):
            raise InvalidInput(f"Expected {len(cat)} ranks, got {len(ranks)}")
        self.cat = cat
        self.ranks = list(ranks)
        self._source = matrices
        self._cache: Dict[int, IntMatrix] = {}
        if validate:
            self.check_functoriality()

    def rank(self, x: int) -> int:
        return self.ranks[x]

    def matrix(self, f: int) -> IntMatrix:
        if f not in self._cache:
            if callable(self._source):
                m = self._source(f)
            else:
                m = self._source.get(f)
            shape = (self.ranks[self.cat.target(f)], self.ranks[self.cat.source(f)])
            if m is None:
                m = IntMatrix.zeros(*shape)
            if m.shape != shape:
                raise InvalidInput(f"Matrix of morphism {f} has shape {m.shape}, expected {shape}")
            self._cache[f] = m
        return self._cache[f]

    def check_functoriality(self) -> None:
        cat = self.cat
        for x in range(len(cat)):
            if self.matrix(cat.identity(x)) != IntMatrix.identity(self.ranks[x]):
                raise InvalidInput(f"Identity of object {x} does not act as the identity")
        for f in range(cat.n_morphisms):
            for g in cat.out_of(cat.target(f)):
                if self.matrix(cat.compose(f, g)) != self.matrix(g) @ self.matrix(f):
                    raise InvalidInput(
                        f"Coefficients do not respect the composite of {f} and {g}",
                        {"morphisms": [f, g]},
                    )

    @classmethod
    def constant(cls, cat: FinCategory, rank: int = 1) -> "CoefficientSystem":
        eye = IntMatrix.identity(rank)
        return cls(cat, [rank] * len(cat), lambda f: eye, validate=False)

    @classmethod
    def from_module(cls, cat: FinCategory, m: GModule) -> "CoefficientSystem":
        """Coefficients on BG (from ``FinCategory.one_object``) given by a G-module."""
        if len(cat) != 1 or cat.n_morphisms != m.group.order:
            raise InvalidInput("Module coefficients need the one-object category of the module's group")
        return cls(cat, [m.rank], lambda f: m.matrix(f), validate=False)

    def __repr__(self) -> str:
        return f"CoefficientSystem(ranks={self.ranks})"
