"""
Finite ordered simplicial complexes with a group acting on the vertices.

A simplex is the sorted tuple of its vertex indices; the set of simplices is
closed under taking faces. An element acts on a simplex by acting on its
vertices and re-sorting, and the sign of the sorting permutation orients the
image in the chain complex.
"""
import json
import logging
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, ValidationError

from src.config import resolve_budget
from src.errors import BudgetExceeded, InvalidInput, NotRegular
from src.grp import PermGroup, Subgroup, resolve_group, trivial
from src.gset import GSet
from src.intalg import AbGroup, IntChainComplex, IntMatrix, invariant_factors

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


def sort_with_sign(vertices: Sequence[int]) -> Tuple[Simplex, int]:
    """Sorted tuple and the sign of the sorting permutation."""
    items = list(vertices)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return tuple(items), sign


def _faces(s: Simplex) -> List[Simplex]:
    return [s[:i] + s[i + 1:] for i in range(len(s))]


class SimplicialGSet:
    """
    A simplicial complex with a simplicial G-action and an optional basepoint.

    Args:
        vertices: The vertex G-set; its point names name the vertices
        simplices: Simplices as vertex tuples (any order); every vertex is
            a 0-simplex whether listed or not
        basepoint: A G-fixed vertex, or None for an unbased complex
        validate: Check face closure, the action and the basepoint

    Raises:
        InvalidInput: On a missing face, a simplex with repeated vertices,
            an action that does not preserve simplices or a moved basepoint

    Example:
        >>> x = SimplicialGSet(GSet.trivial(trivial(), 3), [(0, 1), (1, 2), (0, 2)])
        >>> x.homology()[1]
        AbGroup(free_rank=1, torsion=())
    """

    def __init__(
        self,
        vertices: GSet,
        simplices: Iterable[Sequence[int]] = (),
        basepoint: Optional[int] = None,
        validate: bool = True,
    ):
        self.vertices = vertices
        self.group: PermGroup = vertices.group
        self.basepoint = basepoint
        self.parent_vertices: Optional[List[int]] = None
        found = {(v,) for v in range(vertices.size)}
        for s in simplices:
            key = tuple(sorted(s))
            if len(set(key)) != len(key):
                raise InvalidInput(f"Simplex {list(s)} repeats a vertex")
            found.add(key)
        top = max((len(s) for s in found), default=0)
        self.simplices: List[List[Simplex]] = [
            sorted(s for s in found if len(s) == d + 1) for d in range(top)
        ]
        self._index: List[Dict[Simplex, int]] = [
            {s: k for k, s in enumerate(level)} for level in self.simplices
        ]
        if validate:
            self.validate()

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    @property
    def dim(self) -> int:
        """Top dimension; −1 for the empty complex."""
        return len(self.simplices) - 1

    @property
    def names(self) -> List[str]:
        return self.vertices.names

    def count(self, d: int) -> int:
        return len(self.simplices[d]) if 0 <= d <= self.dim else 0

    def index(self, s: Simplex) -> int:
        return self._index[len(s) - 1][s]

    def __contains__(self, s: Sequence[int]) -> bool:
        key = tuple(sorted(s))
        return 0 < len(key) <= len(self._index) and key in self._index[len(key) - 1]

    def act(self, g: int, s: Simplex) -> Tuple[Simplex, int]:
        """g·s as a sorted simplex, and the orientation sign."""
        return sort_with_sign([self.vertices.act(g, v) for v in s])

    def simplex_name(self, s: Simplex) -> str:
        if len(s) == 1:
            return self.names[s[0]]
        return "[" + ",".join(self.names[v] for v in s) + "]"

    def validate(self) -> None:
        for d in range(1, self.dim + 1):
            for s in self.simplices[d]:
                for face in _faces(s):
                    if face not in self._index[d - 1]:
                        raise InvalidInput(f"Face {list(face)} of simplex {list(s)} is missing")
        for g in self.group.generator_indices:
            for level in self.simplices:
                for s in level:
                    if self.act(g, s)[0] not in self._index[len(s) - 1]:
                        raise InvalidInput(
                            f"Generator {list(self.group.perm(g))} maps simplex {list(s)} outside the complex"
                        )
        if self.basepoint is not None:
            if not 0 <= self.basepoint < self.vertices.size:
                raise InvalidInput(f"Basepoint {self.basepoint} is not a vertex")
            if any(self.vertices.act(g, self.basepoint) != self.basepoint for g in self.group.generator_indices):
                raise InvalidInput(f"Basepoint {self.names[self.basepoint]} is not fixed by the group")

    # ------------------------------------------------------------------
    # Regularity and fixed points
    # ------------------------------------------------------------------

    def regularity_witness(self) -> Optional[Tuple[int, Simplex]]:
        """An element fixing a simplex setwise but not vertexwise, if any."""
        for g in self.group:
            if g == self.group.identity:
                continue
            for level in self.simplices[1:]:
                for s in level:
                    image, _ = self.act(g, s)
                    if image == s and any(self.vertices.act(g, v) != v for v in s):
                        return g, s
        return None

    @property
    def is_regular(self) -> bool:
        return self.regularity_witness() is None

    def check_regular(self) -> None:
        """
        Raises:
            NotRegular: With the offending element and simplex
        """
        witness = self.regularity_witness()
        if witness is not None:
            g, s = witness
            raise NotRegular(self.group.perm(g), s)

    def regularized(self, budget: Optional[int] = None) -> "SimplicialGSet":
        """This complex if regular, else its barycentric subdivision."""
        if self.is_regular:
            return self
        logger.debug(f"Subdividing {self} to make the action regular")
        return self.barycentric_subdivision(budget)

    def fixed_vertices(self, h: Subgroup) -> List[int]:
        return [v for v in range(self.vertices.size) if all(self.vertices.act(g, v) == v for g in h)]

    def fixed_simplices(self, h: Subgroup) -> List[List[Simplex]]:
        """Per dimension, the simplices all of whose vertices are H-fixed."""
        fixed = set(self.fixed_vertices(h))
        return [[s for s in level if fixed.issuperset(s)] for level in self.simplices]

    # ------------------------------------------------------------------
    # Chains
    # ------------------------------------------------------------------

    def chain_complex(
        self,
        simplices: Optional[List[List[Simplex]]] = None,
        reduced: bool = False,
    ) -> IntChainComplex:
        """
        Oriented simplicial chains of this complex or of a subcomplex.

        Args:
            simplices: A subcomplex given per dimension (default: everything)
            reduced: Drop the basepoint from degree 0 (the quotient by the
                basepoint summand)

        Raises:
            InvalidInput: For a reduced complex without basepoint
        """
        levels = simplices if simplices is not None else self.simplices
        levels = [level for level in levels]
        while levels and not levels[-1]:
            levels.pop()
        if reduced:
            if self.basepoint is None:
                raise InvalidInput("Reduced chains need a basepoint")
            bp = (self.basepoint,)
            if levels and bp in levels[0]:
                levels = [[s for s in levels[0] if s != bp]] + levels[1:]
        if not levels:
            return IntChainComplex(0, 0, [0])
        index = [{s: k for k, s in enumerate(level)} for level in levels]
        boundaries = {}
        for d in range(1, len(levels)):
            entries = []
            for k, s in enumerate(levels[d]):
                for i, face in enumerate(_faces(s)):
                    row = index[d - 1].get(face)
                    if row is not None:
                        entries.append((row, k, (-1) ** i))
            boundaries[d] = IntMatrix.from_entries(len(levels[d - 1]), len(levels[d]), entries)
        return IntChainComplex(0, len(levels) - 1, [len(level) for level in levels], boundaries)

    def homology(self, reduced: bool = False) -> Dict[int, AbGroup]:
        c = self.chain_complex(reduced=reduced)
        return {d: c.homology(d) for d in c.degrees()}

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(level) for d, level in enumerate(self.simplices))

    # ------------------------------------------------------------------
    # Constructions
    # ------------------------------------------------------------------

    @classmethod
    def order_complex(
        cls,
        elements: GSet,
        leq: Callable[[int, int], bool],
        basepoint: Optional[int] = None,
        budget: Optional[int] = None,
    ) -> "SimplicialGSet":
        """
        The chains of a finite G-poset.

        Args:
            elements: The poset elements with an order-preserving G-action
            leq: The partial order
            basepoint: Optional fixed element serving as basepoint
            budget: Maximal number of simplices in one dimension

        Raises:
            BudgetExceeded: If some dimension has too many chains
        """
        limit = resolve_budget(budget)
        n = elements.size
        above = [[y for y in range(n) if y != x and leq(x, y)] for x in range(n)]
        level: List[Simplex] = [(x,) for x in range(n)]
        out: List[Simplex] = list(level)
        d = 0
        while level:
            d += 1
            level = [c + (y,) for c in level for y in above[c[-1]]]
            if len(level) > limit:
                raise BudgetExceeded(d, len(level), limit, "simplices")
            out.extend(level)
        return cls(elements, out, basepoint, validate=False)

    def barycentric_subdivision(self, budget: Optional[int] = None) -> "SimplicialGSet":
        """
        The order complex of the face poset; vertex ``k`` is the k-th simplex
        in (dimension, vertex tuple) order. The result is always regular.
        """
        cells = [s for level in self.simplices for s in level]
        position = {s: k for k, s in enumerate(cells)}
        table = [[position[self.act(g, s)[0]] for s in cells] for g in self.group]
        faces = GSet(self.group, table, [self.simplex_name(s) for s in cells], validate=False)
        basepoint = position[(self.basepoint,)] if self.basepoint is not None else None
        subdivided = SimplicialGSet.order_complex(
            faces, lambda a, b: set(cells[a]) <= set(cells[b]), basepoint, budget
        )
        logger.debug(f"Barycentric subdivision: {self.simplex_counts()} → {subdivided.simplex_counts()}")
        return subdivided

    def suspension(self) -> "SimplicialGSet":
        """Unreduced suspension with fixed poles ``0`` and ``∞``; the basepoint is ∞."""
        n = self.vertices.size
        zero, infinity = n, n + 1
        table = [list(row) + [zero, infinity] for row in self.vertices.table]
        vertices = GSet(self.group, table, self.names + ["0", "∞"], validate=False)
        simplices: List[Simplex] = [(zero,), (infinity,)]
        for level in self.simplices:
            for s in level:
                simplices.extend([s, s + (zero,), s + (infinity,)])
        return SimplicialGSet(vertices, simplices, infinity, validate=False)

    def join(self, other: "SimplicialGSet") -> "SimplicialGSet":
        """X * Y on the disjoint union of the vertex sets; unbased."""
        if other.group != self.group:
            raise InvalidInput("Cannot join complexes over different groups")
        n = self.vertices.size
        table = [
            list(row) + [n + y for y in orow]
            for row, orow in zip(self.vertices.table, other.vertices.table)
        ]
        vertices = GSet(self.group, table, self.names + other.names, validate=False)
        left: List[Simplex] = [()] + [s for level in self.simplices for s in level]
        right: List[Simplex] = [()] + [tuple(n + v for v in s) for level in other.simplices for s in level]
        simplices = [a + b for a in left for b in right if a or b]
        return SimplicialGSet(vertices, simplices, validate=False)

    def with_basepoint(self, basepoint: Optional[int]) -> "SimplicialGSet":
        return SimplicialGSet(self.vertices, [s for level in self.simplices for s in level], basepoint)

    def simplex_counts(self) -> List[int]:
        return [len(level) for level in self.simplices]

    def to_dict(self) -> Dict[str, object]:
        return {
            "group": self.group.name or str(self.group),
            "simplices": self.simplex_counts(),
            "basepoint": self.names[self.basepoint] if self.basepoint is not None else None,
            "regular": self.is_regular,
        }

    def __repr__(self) -> str:
        return f"SimplicialGSet({self.group}, simplices={self.simplex_counts()})"


def fixed_subcomplex(x: SimplicialGSet, h: Subgroup) -> SimplicialGSet:
    """
    X^H as a complex with trivial action.

    Vertex ``k`` of the result is vertex ``parent_vertices[k]`` of X.

    Raises:
        NotRegular: If X is not regular
    """
    if h.parent != x.group:
        raise InvalidInput("Subgroup does not belong to the complex's group")
    x.check_regular()
    keep = x.fixed_vertices(h)
    renumber = {v: k for k, v in enumerate(keep)}
    vertices = GSet.trivial(trivial(), len(keep))
    vertices.names = [x.names[v] for v in keep]
    simplices = [tuple(renumber[v] for v in s) for level in x.fixed_simplices(h) for s in level]
    basepoint = renumber.get(x.basepoint) if x.basepoint is not None else None
    out = SimplicialGSet(vertices, simplices, basepoint, validate=False)
    out.parent_vertices = keep
    return out


# ============================================================================
# Non-equivariant homology
# ============================================================================


def simplicial_homology(payload: "SimplicialPayload", reduced: bool = False) -> Dict[int, AbGroup]:
    """
    Homology straight from the face lists of a payload, without building a
    SimplicialGSet.

    Face ``i`` of a d-simplex enters the boundary with sign (−1)^i.
    """
    counts = [len(level.simplices) for level in payload.dims]
    drop = None
    if reduced:
        if payload.basepoint is None:
            raise InvalidInput("Reduced homology needs a basepoint")
        drop = payload.dims[0].simplices.index(payload.basepoint)
    matrices: Dict[int, IntMatrix] = {}
    for d in range(1, len(counts)):
        entries = []
        for k, faces in enumerate(payload.dims[d].faces):
            for i, face in enumerate(faces):
                if d == 1 and face == drop:
                    continue
                row = face - 1 if d == 1 and drop is not None and face > drop else face
                entries.append((row, k, (-1) ** i))
        rows = counts[0] - (1 if drop is not None else 0) if d == 1 else counts[d - 1]
        matrices[d] = IntMatrix.from_entries(rows, counts[d], entries)
    sizes = list(counts)
    if drop is not None:
        sizes[0] -= 1
    out: Dict[int, AbGroup] = {}
    for d, n in enumerate(sizes):
        outgoing = invariant_factors(matrices[d]) if d in matrices else []
        incoming = invariant_factors(matrices[d + 1]) if d + 1 in matrices else []
        out[d] = AbGroup(
            free_rank=n - len(outgoing) - len(incoming),
            torsion=tuple(f for f in incoming if f > 1),
        )
    return out


# ============================================================================
# JSON format
# ============================================================================


class DimensionPayload(BaseModel):
    """One dimension: simplex names, face indices and generator images."""

    simplices: List[str] = Field(description="Simplex names")
    faces: List[List[int]] = Field(
        default_factory=list,
        description="For each simplex, the indices of its faces one dimension down (face i omits vertex i)"
    )
    action: Dict[int, List[int]] = Field(
        default_factory=dict,
        description="Images of the simplices under each generator, keyed by generator position"
    )


class SimplicialPayload(BaseModel):
    """
    JSON simplicial G-set:
    {"group": ref, "dims": [{"simplices": [...], "faces": [[...]], "action": {gen: [...]}}], "basepoint": name}.
    """

    group: str = Field(description="Group reference (builtin name or JSON path)")
    dims: List[DimensionPayload] = Field(description="Dimension 0 first")
    basepoint: Optional[str] = Field(default=None, description="Name of the basepoint vertex")

    def build(self, group: Optional[PermGroup] = None) -> SimplicialGSet:
        """
        Raises:
            InvalidInput: On inconsistent faces or actions
        """
        g = group if group is not None else resolve_group(self.group)
        if not self.dims:
            raise InvalidInput("A simplicial G-set needs at least the vertex dimension")
        names = self.dims[0].simplices
        generators = len(g.generator_indices)
        images = [self.dims[0].action.get(k, list(range(len(names)))) for k in range(generators)]
        vertices = GSet.from_generators(g, images, names)
        vertex_sets: List[List[Simplex]] = [[(v,) for v in range(len(names))]]
        for d, level in enumerate(self.dims[1:], start=1):
            if len(level.faces) != len(level.simplices):
                raise InvalidInput(f"Dimension {d} lists {len(level.faces)} face lists for {len(level.simplices)} simplices")
            current = []
            for name, faces in zip(level.simplices, level.faces):
                if len(faces) != d + 1:
                    raise InvalidInput(f"Simplex {name!r} has {len(faces)} faces, expected {d + 1}")
                try:
                    spanned = set().union(*(vertex_sets[d - 1][f] for f in faces))
                except IndexError:
                    raise InvalidInput(f"Simplex {name!r} refers to a missing face")
                simplex = tuple(sorted(spanned))
                if len(simplex) != d + 1 or [vertex_sets[d - 1][f] for f in faces] != _faces(simplex):
                    raise InvalidInput(f"Faces of simplex {name!r} do not form a simplex in face order")
                current.append(simplex)
            vertex_sets.append(current)
        simplices = [s for level in vertex_sets for s in level]
        basepoint = None
        if self.basepoint is not None:
            if self.basepoint not in names:
                raise InvalidInput(f"Basepoint {self.basepoint!r} is not a vertex")
            basepoint = names.index(self.basepoint)
        x = SimplicialGSet(vertices, simplices, basepoint)
        for d, level in enumerate(self.dims[1:], start=1):
            for k, images in level.action.items():
                s = g.generator_indices[k]
                expected = [vertex_sets[d].index(x.act(s, simplex)[0]) for simplex in vertex_sets[d]]
                if list(images) != expected:
                    raise InvalidInput(f"Action of generator {k} in dimension {d} disagrees with the vertex action")
        return x

    @classmethod
    def from_simplicial(cls, x: SimplicialGSet, group_ref: str) -> "SimplicialPayload":
        dims = []
        for d, level in enumerate(x.simplices):
            faces = [[x.index(f) for f in _faces(s)] for s in level] if d else []
            action = {
                k: [x.index(x.act(s, simplex)[0]) for simplex in level]
                for k, s in enumerate(x.group.generator_indices)
            }
            dims.append(DimensionPayload(
                simplices=[x.simplex_name(s) for s in level],
                faces=faces,
                action=action,
            ))
        basepoint = x.names[x.basepoint] if x.basepoint is not None else None
        return cls(group=group_ref, dims=dims, basepoint=basepoint)

    def to_json_file(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.model_dump_json(indent=2))

    @classmethod
    def from_json_file(cls, path: Path) -> "SimplicialPayload":
        if not path.exists():
            raise FileNotFoundError(f"Simplicial G-set file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                return cls.model_validate(json.load(f))
        except ValidationError as e:
            raise InvalidInput(f"Invalid simplicial G-set file {path}: {e}")
