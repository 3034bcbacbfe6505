"""
Finite G-sets, equivariant maps and the basic constructions on them.

A G-set stores the full action table ``table[g][x] = g·x`` for every element
index g. Points are numbered 0..size-1 and carry display names.
"""
import json
import logging
from itertools import product as iter_product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, ValidationError

from src.errors import InvalidInput
from src.grp import GModule, PermGroup, Subgroup, left_cosets, resolve_group
from src.intalg import IntMatrix

logger = logging.getLogger(__name__)


class GSet:
    """
    A finite set with an action of a PermGroup.

    Args:
        group: Acting group
        table: ``table[g][x]`` is g·x for every element index g
        names: Optional point names (default "0", "1", …)
        validate: Check the action laws

    Raises:
        InvalidInput: If the table is not a group action
    """

    def __init__(
        self,
        group: PermGroup,
        table: Sequence[Sequence[int]],
        names: Optional[Sequence[str]] = None,
        validate: bool = True,
    ):
        if len(table) != group.order:
            raise InvalidInput(f"Action table has {len(table)} rows, expected {group.order}")
        self.group = group
        self.table: List[Tuple[int, ...]] = [tuple(row) for row in table]
        self.size = len(self.table[0])
        self.names: List[str] = list(names) if names is not None else [str(x) for x in range(self.size)]
        if len(self.names) != self.size:
            raise InvalidInput(f"Got {len(self.names)} point names for {self.size} points")
        if validate:
            self.validate()

    def validate(self) -> None:
        g = self.group
        if self.table[0] != tuple(range(self.size)):
            raise InvalidInput("Identity element does not act trivially")
        for row in self.table:
            if sorted(row) != list(range(self.size)):
                raise InvalidInput(f"Action row {list(row)} is not a permutation of the points")
        for s in g.generator_indices:
            for x in g:
                expected = tuple(self.table[s][p] for p in self.table[x])
                if self.table[g.mul(s, x)] != expected:
                    raise InvalidInput(
                        f"Action table is not compatible with composition at {list(g.perm(s))}"
                    )

    @classmethod
    def from_generators(
        cls,
        group: PermGroup,
        generator_images: Sequence[Sequence[int]],
        names: Optional[Sequence[str]] = None,
    ) -> "GSet":
        """
        Build the action table from images of the group's generators.

        Raises:
            InvalidInput: If the generator images do not respect the relations
        """
        if len(generator_images) != len(group.generator_indices):
            raise InvalidInput(
                f"Expected images for {len(group.generator_indices)} generators, got {len(generator_images)}"
            )
        if not generator_images:
            size = len(names) if names is not None else 1
            return cls(group, [tuple(range(size))], names)
        size = len(generator_images[0])
        rows: Dict[int, Tuple[int, ...]] = {0: tuple(range(size))}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s, images in zip(group.generator_indices, generator_images):
                    y = group.mul(s, x)
                    if y not in rows:
                        rows[y] = tuple(images[p] for p in rows[x])
                        nxt.append(y)
            frontier = nxt
        return cls(group, [rows[x] for x in group], names)

    @classmethod
    def trivial(cls, group: PermGroup, size: int = 1) -> "GSet":
        return cls(group, [tuple(range(size))] * group.order, validate=False)

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]

    def __len__(self) -> int:
        return self.size

    def orbit(self, x: int) -> List[int]:
        return sorted({row[x] for row in self.table})

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(self.group, (g for g in self.group if self.table[g][x] == x), validate=False)

    def restrict(self, h: Subgroup) -> "GSet":
        """The same points with the action restricted to ``h`` (over ``h.as_group()``)."""
        sub, embedding = h.as_group()
        return GSet(sub, [self.table[x] for x in embedding], self.names, validate=False)

    def is_transitive(self) -> bool:
        return self.size > 0 and len(self.orbit(0)) == self.size

    def __repr__(self) -> str:
        return f"GSet({self.group}, size={self.size})"


class GMap:
    """
    An equivariant map between G-sets.

    Raises:
        InvalidInput: If the map is not equivariant (checked on generators)
    """

    def __init__(self, source: GSet, target: GSet, images: Sequence[int], validate: bool = True):
        self.source = source
        self.target = target
        self.images: Tuple[int, ...] = tuple(images)
        if validate:
            if len(self.images) != source.size:
                raise InvalidInput(f"Map has {len(self.images)} images for {source.size} points")
            if source.group != target.group:
                raise InvalidInput("Map between G-sets over different groups")
            for s in source.group.generator_indices:
                for x in range(source.size):
                    if self.images[source.act(s, x)] != target.act(s, self.images[x]):
                        raise InvalidInput(
                            f"Map is not equivariant at point {source.names[x]}",
                            {"point": source.names[x]},
                        )

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, first: "GMap") -> "GMap":
        """self ∘ first."""
        return GMap(first.source, self.target, [self.images[y] for y in first.images], validate=False)

    @classmethod
    def identity(cls, x: GSet) -> "GMap":
        return cls(x, x, range(x.size), validate=False)

    @property
    def is_iso(self) -> bool:
        return self.source.size == self.target.size and len(set(self.images)) == self.source.size

    def fiber(self, y: int) -> List[int]:
        return [x for x, fx in enumerate(self.images) if fx == y]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GMap):
            return NotImplemented
        return self.images == other.images and self.target.size == other.target.size

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"GMap({list(self.images)})"


# ============================================================================
# Constructions
# ============================================================================


def coset_space(g: PermGroup, h: Subgroup) -> GSet:
    """
    G/H with left multiplication; point k is the k-th coset ordered by smallest
    element, so point 0 is the coset eH.
    """
    cosets = left_cosets(h)
    position = {}
    for k, coset in enumerate(cosets):
        for x in coset:
            position[x] = k
    reps = [min(c) for c in cosets]
    table = [[position[g.mul(x, r)] for r in reps] for x in g]
    names = [f"{r}H" for r in reps]
    return GSet(g, table, names, validate=False)


def coset_representatives(x: GSet, base: int = 0) -> List[int]:
    """For a transitive G-set, the smallest element index g with g·base = point."""
    reps: Dict[int, int] = {}
    for g in x.group:
        p = x.act(g, base)
        if p not in reps:
            reps[p] = g
    return [reps[p] for p in range(x.size)]


def orbit_partition(x: GSet) -> List[List[int]]:
    """Orbits as sorted point lists, ordered by smallest point."""
    seen = set()
    out = []
    for p in range(x.size):
        if p in seen:
            continue
        orb = x.orbit(p)
        seen.update(orb)
        out.append(orb)
    return out


def orbits(x: GSet) -> List[Tuple[GSet, Subgroup]]:
    """
    Decompose into transitive pieces.

    Returns:
        One (orbit G-set, stabilizer of its smallest point) per orbit; the
        orbit G-set keeps the original point names
    """
    out = []
    for orb in orbit_partition(x):
        local = {p: k for k, p in enumerate(orb)}
        table = [[local[row[p]] for p in orb] for row in x.table]
        piece = GSet(x.group, table, [x.names[p] for p in orb], validate=False)
        out.append((piece, x.stabilizer(orb[0])))
    return out


def product(x: GSet, y: GSet) -> GSet:
    """X × Y with the diagonal action; point (a, b) has index a·|Y| + b."""
    if x.group != y.group:
        raise ValueError("Product of G-sets over different groups")
    table = [
        [rx[a] * y.size + ry[b] for a in range(x.size) for b in range(y.size)]
        for rx, ry in zip(x.table, y.table)
    ]
    names = [f"({na},{nb})" for na in x.names for nb in y.names]
    return GSet(x.group, table, names, validate=False)


def fibered_product(f: GMap, g: GMap) -> Tuple[GSet, GMap, GMap]:
    """
    The fibered product {(a, b) : f(a) = g(b)} with its two projections.

    Raises:
        ValueError: If the maps have different targets
    """
    if f.target is not g.target and f.target.table != g.target.table:
        raise ValueError("Fibered product needs maps with a common target")
    pairs = [(a, b) for a in range(f.source.size) for b in range(g.source.size) if f(a) == g(b)]
    index = {p: k for k, p in enumerate(pairs)}
    x, y = f.source, g.source
    table = [[index[(rx[a], ry[b])] for a, b in pairs] for rx, ry in zip(x.table, y.table)]
    names = [f"({x.names[a]},{y.names[b]})" for a, b in pairs]
    fp = GSet(x.group, table, names, validate=False)
    return fp, GMap(fp, x, [a for a, _ in pairs], validate=False), GMap(fp, y, [b for _, b in pairs], validate=False)


def fixed_points(x: GSet, h: Subgroup) -> List[int]:
    """X^H as a sorted list of points."""
    gens = h.generators
    return [p for p in range(x.size) if all(x.act(s, p) == p for s in gens)]


def equivariant_maps(x: GSet, y: GSet) -> List[GMap]:
    """
    Every G-map X → Y.

    A map is fixed by the images of one base point per orbit of X, each of
    which must be fixed by the base point's stabilizer.
    """
    pieces = []
    for orb in orbit_partition(x):
        base = orb[0]
        stab = x.stabilizer(base)
        reps = {}
        for g in x.group:
            p = x.act(g, base)
            if p not in reps:
                reps[p] = g
        pieces.append((reps, fixed_points(y, stab)))
    out = []
    for choice in iter_product(*(targets for _, targets in pieces)):
        images = [0] * x.size
        for (reps, _), target in zip(pieces, choice):
            for p, g in reps.items():
                images[p] = y.act(g, target)
        out.append(GMap(x, y, images, validate=False))
    return out


def linearize(x: GSet) -> GModule:
    """The permutation module Z[X]."""
    return GModule(
        x.group,
        x.size,
        [IntMatrix.permutation(row) for row in x.table],
        validate=False,
        name="permutation",
    )


# ============================================================================
# JSON format
# ============================================================================


class GSetPayload(BaseModel):
    """JSON G-set: {"group": ref, "points": [names], "action": {gen_index: [images]}}."""

    group: str = Field(description="Group reference (builtin name or JSON path)")
    points: List[str] = Field(description="Point names")
    action: Dict[int, List[int]] = Field(
        default_factory=dict,
        description="Images of the points under each generator, keyed by generator position"
    )

    def build(self, group: Optional[PermGroup] = None) -> GSet:
        g = group if group is not None else resolve_group(self.group)
        size = len(self.points)
        images = []
        for k in range(len(g.generator_indices)):
            row = self.action.get(k, list(range(size)))
            if len(row) != size:
                raise InvalidInput(f"Generator {k} has {len(row)} images for {size} points")
            images.append(row)
        if not images:
            return GSet(g, [tuple(range(size))], self.points)
        return GSet.from_generators(g, images, self.points)

    @classmethod
    def from_gset(cls, x: GSet, group_ref: str) -> "GSetPayload":
        return cls(
            group=group_ref,
            points=list(x.names),
            action={k: list(x.table[s]) for k, s in enumerate(x.group.generator_indices)},
        )

    def to_json_file(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.model_dump_json(indent=2))

    @classmethod
    def from_json_file(cls, path: Path) -> "GSetPayload":
        if not path.exists():
            raise FileNotFoundError(f"G-set file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                return cls.model_validate(json.load(f))
        except ValidationError as e:
            raise InvalidInput(f"Invalid G-set file {path}: {e}")
