"""
The orbit category O_G and covariant functors on it.

Objects are coset spaces G/H for conjugacy class representatives (or a
chosen subset, giving a full subcategory). Hom-sets are enumerated eagerly;
a morphism is addressed by (source, target, index) and its index is its
position in ``hom(source, target)``.
"""
import logging
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from src.errors import InvalidInput
from src.grp import GModule, PermGroup, Subgroup, subgroup_classes
from src.gset.gset import GMap, GSet, coset_representatives, coset_space, fixed_points
from src.intalg import IntMatrix

logger = logging.getLogger(__name__)

Morphism = Tuple[int, int, int]


class OrbitCat:
    """
    The orbit category of a group, or a full subcategory of it.

    Args:
        group: The group
        subgroups: Pairwise non-conjugate subgroups naming the objects
            (default: all conjugacy class representatives)
        validate: Check that every endomorphism is invertible

    Example:
        >>> cat = OrbitCat(cyclic(2))
        >>> [len(cat.hom(i, j)) for i in range(2) for j in range(2)]
        [2, 1, 0, 1]
    """

    def __init__(
        self,
        group: PermGroup,
        subgroups: Optional[Sequence[Subgroup]] = None,
        validate: bool = True,
    ):
        self.group = group
        self.subgroups: List[Subgroup] = list(subgroups) if subgroups is not None else subgroup_classes(group)
        self.objects: List[GSet] = [coset_space(group, h) for h in self.subgroups]
        self._reps = [coset_representatives(x) for x in self.objects]
        self._homs: Dict[Tuple[int, int], List[GMap]] = {}
        self._hom_index: Dict[Tuple[int, int], Dict[Tuple[int, ...], int]] = {}
        for i in range(len(self.objects)):
            for j in range(len(self.objects)):
                homs = self._enumerate(i, j)
                self._homs[(i, j)] = homs
                self._hom_index[(i, j)] = {f.images: k for k, f in enumerate(homs)}
        self._aut_groups: Dict[int, PermGroup] = {}
        logger.debug(
            f"Orbit category of {group}: {len(self.objects)} objects, "
            f"{sum(len(h) for h in self._homs.values())} morphisms"
        )
        if validate:
            self.validate()

    def _enumerate(self, i: int, j: int) -> List[GMap]:
        # f(eH) = gK requires H ⊆ gKg⁻¹, i.e. gK ∈ (G/K)^H
        source, target = self.objects[i], self.objects[j]
        out = []
        for base in fixed_points(target, self.subgroups[i]):
            images = [target.act(r, base) for r in self._reps[i]]
            out.append(GMap(source, target, images, validate=False))
        return out

    # ------------------------------------------------------------------
    # Category structure
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.objects)

    def hom(self, i: int, j: int) -> List[GMap]:
        return self._homs[(i, j)]

    def morphism(self, m: Morphism) -> GMap:
        i, j, k = m
        return self._homs[(i, j)][k]

    def index_of(self, i: int, j: int, images: Sequence[int]) -> int:
        return self._hom_index[(i, j)][tuple(images)]

    def identity(self, i: int) -> int:
        return self.index_of(i, i, range(self.objects[i].size))

    def compose(self, i: int, j: int, k: int, first: int, second: int) -> int:
        """Index of second ∘ first for first: i → j and second: j → k."""
        a = self._homs[(i, j)][first].images
        b = self._homs[(j, k)][second].images
        return self._hom_index[(i, k)][tuple(b[y] for y in a)]

    def is_iso(self, i: int, j: int, k: int) -> bool:
        return i == j and self._homs[(i, j)][k].is_iso

    def base_image(self, i: int, j: int, k: int) -> int:
        """The element index g with f(eH_i) = gH_j (smallest such g)."""
        return self._reps[j][self._homs[(i, j)][k].images[0]]

    def coset_rep(self, i: int, point: int) -> int:
        return self._reps[i][point]

    def object_of(self, h: Subgroup) -> int:
        """Index of the object isomorphic to G/H."""
        for k, rep in enumerate(self.subgroups):
            if rep.order == h.order and any(rep.conjugate(x) == h for x in self.group):
                return k
        raise ValueError(f"{h} is not conjugate to an object of this category")

    def identify_orbit(self, x: GSet, points: Sequence[int]) -> Tuple[int, List[int]]:
        """
        Identify an orbit of a G-set with an object of this category.

        Args:
            x: The G-set
            points: The points of one orbit

        Returns:
            (object index a, φ) where φ[p] is the image in x of point p of
            G/H_a under an isomorphism G/H_a ≅ orbit; φ sends eH_a to a point
            whose stabilizer is exactly H_a
        """
        a = self.object_of(x.stabilizer(points[0]))
        h = self.subgroups[a]
        base = next(y for y in points if x.stabilizer(y) == h)
        return a, [x.act(r, base) for r in self._reps[a]]

    @property
    def terminal(self) -> Optional[int]:
        """The object G/G, if present."""
        for k, h in enumerate(self.subgroups):
            if h.is_whole:
                return k
        return None

    @property
    def free_orbit(self) -> Optional[int]:
        """The object G/e, if present."""
        for k, h in enumerate(self.subgroups):
            if h.is_trivial:
                return k
        return None

    def automorphism_group(self, i: int) -> PermGroup:
        """Aut(G/H) as a permutation group on the points of G/H."""
        if i not in self._aut_groups:
            autos = [f.images for f in self._homs[(i, i)] if f.images != tuple(range(self.objects[i].size))]
            self._aut_groups[i] = PermGroup(self.objects[i].size, autos)
        return self._aut_groups[i]

    def aut_morphism(self, i: int, element: int) -> int:
        """Hom index of an element of ``automorphism_group(i)``."""
        return self.index_of(i, i, self.automorphism_group(i).perm(element))

    def validate(self) -> None:
        """
        Check that endomorphisms are invertible and composition is closed.

        Raises:
            InvalidInput: Naming the offending object
        """
        for i in range(len(self.objects)):
            for f in self._homs[(i, i)]:
                if not f.is_iso:
                    raise InvalidInput(
                        f"Endomorphism {list(f.images)} of object {i} is not invertible",
                        {"object": i},
                    )
        for (i, j), homs in self._homs.items():
            for k in range(len(self.objects)):
                for a in homs:
                    for b in self._homs[(j, k)]:
                        if tuple(b.images[y] for y in a.images) not in self._hom_index[(i, k)]:
                            raise InvalidInput(f"Composite {i}→{j}→{k} is not a listed morphism")

    def morphisms(self) -> List[Morphism]:
        return [(i, j, k) for (i, j), homs in sorted(self._homs.items()) for k in range(len(homs))]

    def __repr__(self) -> str:
        return f"OrbitCat({self.group}, objects={[h.order for h in self.subgroups]})"


# ============================================================================
# Covariant functors with free values
# ============================================================================


class OrbitFunctor:
    """
    A covariant functor on an OrbitCat with values Z^rank.

    Args:
        cat: The orbit category
        ranks: Rank of the value at each object
        matrices: Matrix (ranks[j] × ranks[i]) per morphism (i, j, k), as a
            mapping or a callable; missing entries are zero
        validate: Check identities and composition

    Raises:
        InvalidInput: If the data is not functorial
    """

    def __init__(
        self,
        cat: OrbitCat,
        ranks: Sequence[int],
        matrices: "Mapping[Morphism, IntMatrix] | Callable[[int, int, int], IntMatrix]",
        validate: bool = True,
    ):
        if len(ranks) != len(cat):
            raise InvalidInput(f"Expected {len(cat)} ranks, got {len(ranks)}")
        self.cat = cat
        self.ranks = list(ranks)
        self._table: Dict[Morphism, IntMatrix] = {}
        for m in cat.morphisms():
            i, j, _ = m
            if callable(matrices):
                mat = matrices(*m)
            else:
                mat = matrices.get(m, IntMatrix.zeros(self.ranks[j], self.ranks[i]))
            if mat.shape != (self.ranks[j], self.ranks[i]):
                raise InvalidInput(f"Matrix for {m} has shape {mat.shape}, expected {(self.ranks[j], self.ranks[i])}")
            self._table[m] = mat
        if validate:
            self.check_functoriality()

    def matrix(self, i: int, j: int, k: int) -> IntMatrix:
        return self._table[(i, j, k)]

    def check_functoriality(self) -> None:
        cat = self.cat
        for i in range(len(cat)):
            if self._table[(i, i, cat.identity(i))] != IntMatrix.identity(self.ranks[i]):
                raise InvalidInput(f"Identity of object {i} does not act as the identity")
        for (i, j, a) in cat.morphisms():
            for k in range(len(cat)):
                for b in range(len(cat.hom(j, k))):
                    c = cat.compose(i, j, k, a, b)
                    if self._table[(i, k, c)] != self._table[(j, k, b)] @ self._table[(i, j, a)]:
                        raise InvalidInput(
                            f"Functor does not respect composition {i}→{j}→{k}",
                            {"first": [i, j, a], "second": [j, k, b]},
                        )

    def direct_sum(self, other: "OrbitFunctor") -> "OrbitFunctor":
        return OrbitFunctor(
            self.cat,
            [a + b for a, b in zip(self.ranks, other.ranks)],
            {m: IntMatrix.block_diagonal([self._table[m], other._table[m]]) for m in self._table},
            validate=False,
        )

    def __add__(self, other: "OrbitFunctor") -> "OrbitFunctor":
        return self.direct_sum(other)

    def scale_multiplicity(self, k: int) -> "OrbitFunctor":
        """The direct sum of k copies."""
        out = OrbitFunctor.zero(self.cat)
        for _ in range(k):
            out = out.direct_sum(self)
        return out

    def aut_action(self, i: int) -> GModule:
        """The value at object i as a module over ``cat.automorphism_group(i)``."""
        aut = self.cat.automorphism_group(i)
        return GModule(
            aut,
            self.ranks[i],
            [self._table[(i, i, self.cat.aut_morphism(i, g))] for g in aut],
            validate=False,
        )

    @classmethod
    def zero(cls, cat: OrbitCat) -> "OrbitFunctor":
        return cls(cat, [0] * len(cat), {}, validate=False)

    @classmethod
    def constant(cls, cat: OrbitCat, rank: int = 1) -> "OrbitFunctor":
        return cls(cat, [rank] * len(cat), lambda i, j, k: IntMatrix.identity(rank), validate=False)

    def __repr__(self) -> str:
        return f"OrbitFunctor(ranks={self.ranks})"


class TFunctor(OrbitFunctor):
    """
    The functor T^c(c') = Z[Hom(c, c')] with maps by post-composition.

    Aut(c) acts on every value by precomposition, σ·h = h∘σ⁻¹.
    """

    def __init__(self, cat: OrbitCat, c: int):
        self.source_object = c
        ranks = [len(cat.hom(c, j)) for j in range(len(cat))]

        def post(i: int, j: int, k: int) -> IntMatrix:
            images = [cat.compose(c, i, j, h, k) for h in range(ranks[i])]
            return IntMatrix.from_entries(ranks[j], ranks[i], [(img, h, 1) for h, img in enumerate(images)])

        super().__init__(cat, ranks, post, validate=False)

    def precomposition(self, j: int, sigma: int) -> IntMatrix:
        """Matrix of σ ∈ Aut(c) (a hom index) acting on T^c(j) by h ↦ h∘σ⁻¹."""
        cat, c = self.cat, self.source_object
        sigma_images = cat.hom(c, c)[sigma].images
        inverse = [0] * len(sigma_images)
        for x, y in enumerate(sigma_images):
            inverse[y] = x
        sigma_inv = cat.index_of(c, c, inverse)
        n = self.ranks[j]
        return IntMatrix.from_entries(n, n, [(cat.compose(c, c, j, sigma_inv, h), h, 1) for h in range(n)])

    def aut_source_action(self, j: int) -> GModule:
        """T^c(j) as a module over ``cat.automorphism_group(c)`` (precomposition)."""
        cat, c = self.cat, self.source_object
        aut = cat.automorphism_group(c)
        return GModule(aut, self.ranks[j], [self.precomposition(j, cat.aut_morphism(c, g)) for g in aut])


def t_functor(cat: OrbitCat, c: int) -> TFunctor:
    """T^c on ``cat``, with the Aut(c)-action by precomposition."""
    return TFunctor(cat, c)
