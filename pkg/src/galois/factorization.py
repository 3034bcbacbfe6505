"""
Groupoids of factorization diagrams in an orbit category.

For an object c, C_n(c) has objects c_1 → … → c_n → c whose last map is not
invertible. For a morphism f: c' → c, C_n(f) has objects
c' → c_1 → … → c_n → c composing to f, again with a non-invertible last map.
Isomorphisms are tuples (φ_1, …, φ_n) ∈ ∏ Aut(c_i) acting by
g_i ↦ φ_{i+1}∘g_i∘φ_i⁻¹, where φ is the identity at c' and at c.

n = 0 is used for the bottom row of the bicomplexes: C_0(c) is the empty
diagram and C_0(f) is f itself.
"""
import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple, Union

from src.cathom import ActionGroupoid, GroupoidSum
from src.config import resolve_budget
from src.errors import BudgetExceeded, InvalidInput
from src.grp import PermGroup
from src.gset import Morphism, OrbitCat
from src.intalg import block_offsets

logger = logging.getLogger(__name__)


class Diagram(NamedTuple):
    """
    Intermediate objects c_1..c_n and the hom indices along the path.

    For C_n(c) the maps are g_1..g_n; for C_n(f) they are g_0..g_n with
    g_0: c' → c_1.
    """

    objects: Tuple[int, ...]
    maps: Tuple[int, ...]


class DiagramClass(NamedTuple):
    """An isomorphism class: representative, class size, automorphism count."""

    representative: Diagram
    size: int
    automorphisms: int


class DiagramBlock:
    """
    The diagrams sharing one tuple of intermediate objects.

    Attributes:
        objects: (c_1, …, c_n)
        group: K = ∏ Aut(c_i) on the disjoint union of the points
        components: Hom indices (φ_1, …, φ_n) of every element of K
        element_of: Inverse of ``components``
        diagrams: The diagrams, sorted
        table: ``table[k][x]`` is the local index of k·x
    """

    def __init__(self, cat: OrbitCat, objects: Tuple[int, ...], diagrams: List[Diagram]):
        self.objects = objects
        self.group, self.components = product_of_automorphisms(cat, objects)
        self.element_of = {comps: k for k, comps in enumerate(self.components)}
        self.diagrams = diagrams
        self.table: List[Tuple[int, ...]] = []

    def __len__(self) -> int:
        return len(self.diagrams)


def product_of_automorphisms(cat: OrbitCat, objects: Tuple[int, ...]) -> Tuple[PermGroup, List[Tuple[int, ...]]]:
    """
    ∏ Aut(c_i) as one permutation group.

    Returns:
        (group, components) where components[k] holds the hom index of each
        factor of element k
    """
    if not objects:
        return PermGroup(1, []), [()]
    sizes = [cat.objects[c].size for c in objects]
    offsets = block_offsets(sizes)
    generators = []
    for c, offset in zip(objects, offsets):
        for gen in cat.automorphism_group(c).generators:
            perm = list(range(offsets[-1]))
            perm[offset: offset + len(gen)] = [offset + y for y in gen]
            generators.append(perm)
    group = PermGroup(offsets[-1], generators)
    components = []
    for k in group:
        p = group.perm(k)
        components.append(tuple(
            cat.index_of(c, c, [y - offset for y in p[offset: offset + size]])
            for c, offset, size in zip(objects, offsets, sizes)
        ))
    return group, components


class FactorizationGroupoid:
    """
    C_n(c) or C_n(f) with its isomorphisms.

    Args:
        cat: A lattice-like orbit category (every endomorphism invertible)
        target: An object c, or a morphism f = (c', c, k)
        n: Number of intermediate objects
        budget: Maximal number of diagrams (default: configured budget)

    Raises:
        InvalidInput: For indices outside the category or n < 0
        BudgetExceeded: If the enumeration outgrows the budget
    """

    def __init__(
        self,
        cat: OrbitCat,
        target: Union[int, Morphism],
        n: int,
        budget: Optional[int] = None,
    ):
        if n < 0:
            raise InvalidInput(f"Diagram length must be nonnegative, got {n}")
        self.cat = cat
        self.n = n
        self._budget = resolve_budget(budget)
        if isinstance(target, tuple):
            start, end, k = target
            if not (0 <= start < len(cat) and 0 <= end < len(cat) and 0 <= k < len(cat.hom(start, end))):
                raise InvalidInput(f"Morphism {list(target)} is not in the category")
            self.kind = "morphism"
            self.f: Optional[Morphism] = (start, end, k)
            self.start: Optional[int] = start
        else:
            if not 0 <= target < len(cat):
                raise InvalidInput(f"Object {target} is not in the category")
            self.kind = "object"
            self.f = None
            self.start = None
            end = target
        self.end = end
        self._offset = 1 if self.kind == "morphism" else 0

        by_objects: Dict[Tuple[int, ...], List[Diagram]] = {}
        for d in self._enumerate():
            by_objects.setdefault(d.objects, []).append(d)
        self.blocks = [DiagramBlock(cat, key, sorted(ds)) for key, ds in sorted(by_objects.items())]
        self.diagrams: List[Diagram] = [d for block in self.blocks for d in block.diagrams]
        self.index: Dict[Diagram, int] = {d: x for x, d in enumerate(self.diagrams)}
        parts = []
        for block in self.blocks:
            local = {d: x for x, d in enumerate(block.diagrams)}
            inverses = [block.components[block.group.inv(k)] for k in block.group]
            block.table = [
                tuple(local[self.transport(d, block.components[k], inverses[k])] for d in block.diagrams)
                for k in block.group
            ]
            parts.append(ActionGroupoid(block.group, block.table, [self.label(d) for d in block.diagrams]))
        self.groupoid = GroupoidSum(parts, name=f"C_{n}({self.target_label})")
        logger.debug(
            f"{self.groupoid.name}: {len(self.diagrams)} diagrams in {len(self.blocks)} blocks, "
            f"{self.groupoid.n_morphisms} isomorphisms"
        )

    # ------------------------------------------------------------------
    # Enumeration
    # ------------------------------------------------------------------

    def _enumerate(self) -> List[Diagram]:
        cat, n, end = self.cat, self.n, self.end
        if self.kind == "object" and n == 0:
            return [Diagram((), ())]
        reachable = [o for o in range(len(cat)) if cat.hom(o, end)]
        out: List[Diagram] = []

        def finish(objects: Tuple[int, ...], maps: Tuple[int, ...], composite: Optional[int]) -> None:
            last = objects[-1] if objects else self.start
            for g in range(len(cat.hom(last, end))):
                if n and cat.is_iso(last, end, g):
                    continue
                if self.f is not None and cat.compose(self.start, last, end, composite, g) != self.f[2]:
                    continue
                out.append(Diagram(objects, maps + (g,)))
                if len(out) > self._budget:
                    raise BudgetExceeded(n, len(out), self._budget, "diagrams")

        def extend(objects: Tuple[int, ...], maps: Tuple[int, ...], composite: Optional[int]) -> None:
            if len(objects) == n:
                finish(objects, maps, composite)
                return
            for o in reachable:
                if not objects and self.start is None:
                    extend((o,), maps, None)
                    continue
                last = objects[-1] if objects else self.start
                for g in range(len(cat.hom(last, o))):
                    step = None if composite is None else cat.compose(self.start, last, o, composite, g)
                    extend(objects + (o,), maps + (g,), step)

        initial = cat.identity(self.start) if self.start is not None else None
        extend((), (), initial)
        return out

    # ------------------------------------------------------------------
    # Diagram operations
    # ------------------------------------------------------------------

    @property
    def target_label(self) -> str:
        if self.f is not None:
            return f"{self.f[0]}->{self.f[1]}#{self.f[2]}"
        return str(self.end)

    def label(self, d: Diagram) -> str:
        path = self.path(d)
        return " ".join(
            f"{path[t]} -{g}->" for t, g in enumerate(d.maps)
        ) + f" {self.end}"

    def path(self, d: Diagram) -> Tuple[int, ...]:
        """Objects along the diagram, including c' (for C_n(f)) and c."""
        head = (self.start,) if self.start is not None else ()
        return head + d.objects + (self.end,)

    def first_object(self, d: Diagram) -> int:
        """c_1, or c for the empty diagram."""
        return d.objects[0] if d.objects else self.end

    def transport(self, d: Diagram, phi: Tuple[int, ...], phi_inv: Tuple[int, ...]) -> Diagram:
        """The image of d under (φ_1, …, φ_m), m = len(d.objects)."""
        cat, path, offset = self.cat, self.path(d), self._offset
        m = len(d.objects)
        maps = []
        for t, g in enumerate(d.maps):
            a, b = path[t], path[t + 1]
            if offset <= t < offset + m:
                g = cat.compose(a, a, b, phi_inv[t - offset], g)
            if offset <= t + 1 < offset + m:
                g = cat.compose(a, b, b, g, phi[t + 1 - offset])
            maps.append(g)
        return Diagram(d.objects, tuple(maps))

    def delete(self, d: Diagram, i: int) -> Diagram:
        """Forget c_i (1 ≤ i ≤ len(d.objects)), composing the maps around it."""
        if not 1 <= i <= len(d.objects):
            raise InvalidInput(f"Cannot delete object {i} of a diagram of length {len(d.objects)}")
        p = i - 1 + self._offset
        path = self.path(d)
        objects = d.objects[: i - 1] + d.objects[i:]
        if p == 0:
            return Diagram(objects, d.maps[1:])
        merged = self.cat.compose(path[p - 1], path[p], path[p + 1], d.maps[p - 1], d.maps[p])
        return Diagram(objects, d.maps[: p - 1] + (merged,) + d.maps[p + 1:])

    def truncate_to_first(self, d: Diagram) -> Diagram:
        """c' → c_1 → c, forgetting c_2..c_n."""
        for i in range(len(d.objects), 1, -1):
            d = self.delete(d, i)
        return d

    # ------------------------------------------------------------------
    # Functors and actions
    # ------------------------------------------------------------------

    def deletion_functor(
        self, i: int, target: "FactorizationGroupoid"
    ) -> Tuple[List[int], Callable[[int], int]]:
        """
        The functor C_n → C_{n−1} forgetting c_i.

        Returns:
            (object map, morphism map) in the global numbering of the two
            groupoids
        """
        if target.kind != self.kind or target.n != self.n - 1 or (target.f, target.end) != (self.f, self.end):
            raise InvalidInput(f"{target.groupoid.name} is not the row below {self.groupoid.name}")
        object_map = [target.index[self.delete(d, i)] for d in self.diagrams]
        source, dest = self.groupoid, target.groupoid

        def morphism_map(f: int) -> int:
            b, local = source.locate_morphism(f)
            part = source.parts[b]
            k = part.element(local)
            y = object_map[source.object_index(b, part.source(local))]
            tb, ty = dest.locate_object(y)
            comps = self.blocks[b].components[k]
            k2 = target.blocks[tb].element_of[comps[: i - 1] + comps[i:]]
            return dest.morphism_index(tb, dest.parts[tb].morphism(k2, ty))

        return object_map, morphism_map

    def source_action(self, sigma: int) -> List[int]:
        """
        Diagram permutation of σ ∈ Aut(f) (an element of
        ``cat.automorphism_group(c')``), acting by g_0 ↦ g_0∘σ⁻¹.

        Raises:
            InvalidInput: If σ does not fix f
        """
        if self.start is None:
            raise InvalidInput("Only diagrams under a morphism have a source action")
        cat, c_prime = self.cat, self.start
        aut = cat.automorphism_group(c_prime)
        inverse = cat.aut_morphism(c_prime, aut.inv(sigma))
        out = []
        for d in self.diagrams:
            nxt = self.path(d)[1]
            moved = Diagram(d.objects, (cat.compose(c_prime, c_prime, nxt, inverse, d.maps[0]),) + d.maps[1:])
            if moved not in self.index:
                raise InvalidInput(f"Automorphism {list(aut.perm(sigma))} does not commute with f")
            out.append(self.index[moved])
        return out

    def target_action(self, tau: int) -> List[int]:
        """Diagram permutation of τ ∈ Aut(c), acting by g_n ↦ τ∘g_n."""
        if self.start is not None:
            raise InvalidInput("Only diagrams over an object have a target action")
        cat, c = self.cat, self.end
        tau_hom = cat.aut_morphism(c, tau)
        out = []
        for d in self.diagrams:
            if not d.maps:
                out.append(self.index[d])
                continue
            last = self.path(d)[-2]
            moved = Diagram(d.objects, d.maps[:-1] + (cat.compose(last, c, c, d.maps[-1], tau_hom),))
            out.append(self.index[moved])
        return out

    def move_morphism(self, f: int, diagram_perm: List[int]) -> int:
        """Transport an isomorphism along a diagram permutation commuting with K."""
        b, local = self.groupoid.locate_morphism(f)
        part = self.groupoid.parts[b]
        y = diagram_perm[self.groupoid.object_index(b, part.source(local))]
        yb, y_local = self.groupoid.locate_object(y)
        return self.groupoid.morphism_index(yb, part.morphism(part.element(local), y_local))

    def first_component(self, f: int) -> int:
        """φ_1 (a hom index) of an isomorphism; the identity of c for n = 0."""
        b, local = self.groupoid.locate_morphism(f)
        comps = self.blocks[b].components[self.groupoid.parts[b].element(local)]
        return comps[0] if comps else self.cat.identity(self.end)

    # ------------------------------------------------------------------
    # Reporting
    # ------------------------------------------------------------------

    def classes(self) -> List[DiagramClass]:
        out = []
        for block, part in zip(self.blocks, self.groupoid.parts):
            for orbit in part.orbits():
                x = orbit[0]
                out.append(DiagramClass(block.diagrams[x], len(orbit), len(part.stabilizer(x))))
        return out

    def summary(self) -> dict:
        return {
            "kind": self.kind,
            "target": list(self.f) if self.f is not None else self.end,
            "n": self.n,
            "diagrams": len(self.diagrams),
            "classes": [
                {
                    "objects": list(cls.representative.objects),
                    "maps": list(cls.representative.maps),
                    "size": cls.size,
                    "automorphisms": cls.automorphisms,
                }
                for cls in self.classes()
            ],
        }

    def __len__(self) -> int:
        return len(self.diagrams)

    def __repr__(self) -> str:
        return f"FactorizationGroupoid({self.groupoid.name}, diagrams={len(self.diagrams)})"


def enumerate_cn(
    cat: OrbitCat,
    target: Union[int, Morphism],
    n: int,
    budget: Optional[int] = None,
) -> FactorizationGroupoid:
    """
    Enumerate C_n(c) (target an object) or C_n(f) (target a morphism).

    Args:
        cat: Lattice-like orbit category
        target: Object index or morphism (source, target, index)
        n: Chain length, at least 1
        budget: Maximal number of diagrams

    Raises:
        InvalidInput: If n < 1
        BudgetExceeded: If the diagrams outgrow the budget

    Example:
        >>> cat = OrbitCat(cyclic(3))
        >>> cn = enumerate_cn(cat, (0, 1, 0), 1)
        >>> [(c.size, c.automorphisms) for c in cn.classes()]
        [(3, 1)]
    """
    if n < 1:
        raise InvalidInput(f"Diagram length must be at least 1, got {n}")
    groupoid = FactorizationGroupoid(cat, target, n, budget)
    logger.info(f"Enumerated {groupoid.groupoid.name}: {len(groupoid)} diagrams, {len(groupoid.classes())} classes")
    return groupoid
