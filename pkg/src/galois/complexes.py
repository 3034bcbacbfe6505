"""
The T- and Φ-complexes: totalized bicomplexes over factorization groupoids.

Row n is the normalized bar complex of C_n with coefficients, truncated so
that only terms with n + j ≤ D = min(d_bar, n_max) appear. The vertical
differential is Σ_{i=1..n} (−1)^{i−1} d_i, d_i forgetting c_i, and the total
differential is ∂ = d_bar + (−1)^j d_vert on the (n, j) term.
"""
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.cathom import BarComplexTruncation, CoefficientSystem, bar_complex, chain_counts, check_budget, functor_chain_map
from src.config import get_config
from src.errors import ComplexInvalid, InvalidInput
from src.galois.factorization import Diagram, FactorizationGroupoid
from src.grp import GModule, PermGroup, PermutationComplex, Subgroup
from src.gset import Morphism, OrbitCat, OrbitFunctor
from src.intalg import AbGroup, IntMatrix, Window, bar_window, total_complex
from src.report import Report

logger = logging.getLogger(__name__)

Chain = Tuple[int, Tuple[int, ...]]

# (row n, deleted object i, diagram index x) → η_x
Transformation = Callable[[int, int, int], IntMatrix]


class _Bicomplex:
    """Rows, their bar complexes and the totalized complex with its basis layout."""

    def __init__(
        self,
        rows: List[FactorizationGroupoid],
        coefficients: List[CoefficientSystem],
        transformation: Transformation,
        top: int,
        budget: Optional[int],
    ):
        self.rows = rows
        self.coefficients = coefficients
        self.top = top
        counts = [chain_counts(row.groupoid, e, top - n) for n, (row, e) in enumerate(zip(rows, coefficients))]
        totals = [sum(counts[n][t - n] for n in range(t + 1)) for t in range(top + 1)]
        check_budget(totals, budget, "basis elements")

        self.bars: List[BarComplexTruncation] = [
            bar_complex(row.groupoid, e, top - n, budget=budget)
            for n, (row, e) in enumerate(zip(rows, coefficients))
        ]
        blocks = {(n, j): bar.underlying.rank(j) for n, bar in enumerate(self.bars) for j in range(top - n + 1)}
        maps: Dict[Tuple[Tuple[int, int], Tuple[int, int]], IntMatrix] = {}
        for n, bar in enumerate(self.bars):
            for j in range(1, top - n + 1):
                maps[((n, j), (n, j - 1))] = bar.underlying.boundary(j)
        for n in range(1, top + 1):
            below = rows[n - 1]
            for i in range(1, n + 1):
                object_map, morphism_map = rows[n].deletion_functor(i, below)
                eta = [transformation(n, i, x) for x in range(len(rows[n]))]
                face = functor_chain_map(
                    self.bars[n], self.bars[n - 1], object_map, morphism_map, eta,
                    below.groupoid.is_identity, check=False,
                )
                for j in range(top - n + 1):
                    term = face.component(j).scale((-1) ** (i - 1 + j))
                    key = ((n, j), (n - 1, j))
                    maps[key] = maps[key] + term if key in maps else term
        self.total = total_complex(blocks, maps)
        self.window: Window = bar_window(top)
        self._layout: Dict[int, List[Tuple[int, int, int]]] = {}
        filled: Dict[int, int] = {}
        for (n, j), rank in sorted(blocks.items()):
            start = filled.get(n + j, 0)
            self._layout.setdefault(n + j, []).append((n, j, start))
            filled[n + j] = start + rank

    def blocks_in(self, d: int) -> List[Tuple[int, int, int]]:
        """(n, j, offset) of the summands of total degree d."""
        return self._layout.get(d, [])

    def locate(self, d: int, x: int) -> Tuple[int, Chain, int]:
        """Row, bar chain and coefficient coordinate of basis vector x in degree d."""
        for n, j, start in reversed(self.blocks_in(d)):
            if x >= start:
                local = x - start
                bar = self.bars[n]
                e = self.coefficients[n]
                for chain in bar.chains[j]:
                    offset = bar.offsets[j][chain]
                    if offset <= local < offset + e.rank(chain[0]):
                        return n, chain, local - offset
        raise InvalidInput(f"No basis vector {x} in degree {d}")

    def moved_chain(self, n: int, chain: Chain, diagram_perm: List[int]) -> Chain:
        row = self.rows[n]
        x0, arrows = chain
        return diagram_perm[x0], tuple(row.move_morphism(f, diagram_perm) for f in arrows)

    def basis_permutation(self, d: int, diagram_perms: List[List[int]]) -> List[int]:
        """Basis images in degree d of a symmetry permuting the diagrams of each row."""
        images: List[int] = []
        for n, j, start in self.blocks_in(d):
            bar, e = self.bars[n], self.coefficients[n]
            for chain in bar.chains[j]:
                moved = self.moved_chain(n, chain, diagram_perms[n])
                base = start + bar.offsets[j][moved]
                images.extend(base + r for r in range(e.rank(chain[0])))
        return images

    def summary(self) -> Dict[str, Any]:
        return {
            "truncation": self.top,
            "window": [self.window.lo, self.window.hi],
            "diagrams": [len(row) for row in self.rows],
            "ranks": self.total.ranks,
            "homology": {str(d): str(h) for d, h in self.homology().items()},
        }

    def homology(self) -> Dict[int, AbGroup]:
        return self.total.homology_window(self.window)


def _truncation(d_bar: Optional[int], n_max: Optional[int]) -> int:
    truncation = get_config().truncation
    d_bar = d_bar if d_bar is not None else truncation.d_bar
    n_max = n_max if n_max is not None else truncation.n_max
    if d_bar < 0 or n_max < 0:
        raise InvalidInput(f"Truncations must be nonnegative, got d_bar={d_bar}, n_max={n_max}")
    return min(d_bar, n_max)


# ============================================================================
# T-complexes
# ============================================================================


class TComplex:
    """
    T(f) for f: c' → c, with Aut(f) permuting the basis.

    Attributes:
        f: The morphism (c', c, k)
        total: Total complex of the rows C_•(C_n(f), Z)
        aut: Aut(f) = {σ ∈ Aut(c') | f∘σ = f} as a subgroup of
            ``cat.automorphism_group(c')``
        carrier: The total complex as a PermutationComplex over Aut(f)
        window: Degrees unaffected by the truncation
    """

    def __init__(self, cat: OrbitCat, f: Morphism, bicomplex: _Bicomplex, aut: Subgroup):
        self.cat = cat
        self.f = f
        self._bicomplex = bicomplex
        self.rows = bicomplex.rows
        self.total = bicomplex.total
        self.window = bicomplex.window
        self.aut = aut
        self.group, self.embedding = aut.as_group()
        perms = [[row.source_action(self.embedding[s]) for row in self.rows] for s in self.group]
        actions = {
            d: [bicomplex.basis_permutation(d, perms[s]) for s in self.group]
            for d in self.total.degrees()
        }
        self.carrier = PermutationComplex(self.total, self.group, actions)

    def locate(self, d: int, x: int) -> Tuple[int, Chain]:
        """Row n and bar chain of basis vector x in total degree d."""
        n, chain, _ = self._bicomplex.locate(d, x)
        return n, chain

    def diagram(self, n: int, chain: Chain) -> Diagram:
        """The first diagram of a bar chain in row n."""
        return self.rows[n].diagrams[chain[0]]

    def pullback(self, group: PermGroup, hom: List[int]) -> PermutationComplex:
        """
        The carrier with ``group`` acting through ``hom`` (indices of Aut(f)
        in ``cat.automorphism_group(c')``).

        Raises:
            InvalidInput: If some image is not in Aut(f)
        """
        position = {parent: s for s, parent in enumerate(self.embedding)}
        missing = [g for g, image in enumerate(hom) if image not in position]
        if missing:
            raise InvalidInput(f"{len(missing)} elements do not map into Aut(f)")
        actions = {
            d: [self.carrier.action(d, position[hom[g]]) for g in group]
            for d in self.total.degrees()
        }
        return PermutationComplex(self.total, group, actions, validate=False)

    def homology(self) -> Dict[int, AbGroup]:
        return self._bicomplex.homology()

    def to_dict(self) -> Dict[str, Any]:
        out = self._bicomplex.summary()
        out["f"] = list(self.f)
        out["aut_order"] = self.aut.order
        return out

    def __repr__(self) -> str:
        return f"TComplex(f={list(self.f)}, ranks={self.total.ranks})"


def aut_of_morphism(cat: OrbitCat, f: Morphism) -> Subgroup:
    """Aut(f) = {σ ∈ Aut(c') | f∘σ = f}."""
    start, end, k = f
    aut = cat.automorphism_group(start)
    elements = [s for s in aut if cat.compose(start, start, end, cat.aut_morphism(start, s), k) == k]
    return Subgroup(aut, elements, validate=False)


def t_complex(
    cat: OrbitCat,
    f: Morphism,
    d_bar: Optional[int] = None,
    n_max: Optional[int] = None,
    budget: Optional[int] = None,
) -> TComplex:
    """
    Build T(f) through total degree D = min(d_bar, n_max).

    Args:
        cat: Lattice-like orbit category
        f: Morphism (c', c, k)
        d_bar: Bar truncation (default: configured)
        n_max: Chain-length truncation (default: configured)
        budget: Maximal basis size per total degree

    Raises:
        InvalidInput: For a morphism outside the category
        BudgetExceeded: Naming the first total degree over budget
        ComplexInvalid: If the totalized differential does not square to zero

    Example:
        >>> t = t_complex(OrbitCat(cyclic(2)), (0, 1, 0), 4, 4)
        >>> all(h.is_trivial for h in t.homology().values())
        True
    """
    top = _truncation(d_bar, n_max)
    rows = [FactorizationGroupoid(cat, f, n, budget) for n in range(top + 1)]
    coefficients = [CoefficientSystem.constant(row.groupoid) for row in rows]
    one = IntMatrix.identity(1)
    bicomplex = _Bicomplex(rows, coefficients, lambda n, i, x: one, top, budget)
    t = TComplex(cat, f, bicomplex, aut_of_morphism(cat, f))
    logger.info(f"T({list(f)}) through degree {top}: ranks {t.total.ranks}")
    return t


# ============================================================================
# Φ-complexes
# ============================================================================


class PhiComplex:
    """
    Φ^c(E) with Aut(c) acting by post-composition.

    Attributes:
        c: The object
        coefficients: E
        total: Rows C_•(C_n(c), σ^*E) with row 0 = E(c)
        aut: ``cat.automorphism_group(c)``
        window: Degrees unaffected by the truncation
        calibration: Tate degree of a Φ degree
    """

    calibration = "tate_degree = -phi_degree"

    def __init__(self, cat: OrbitCat, c: int, e: OrbitFunctor, bicomplex: _Bicomplex):
        self.cat = cat
        self.c = c
        self.coefficients = e
        self._bicomplex = bicomplex
        self.rows = bicomplex.rows
        self.total = bicomplex.total
        self.window = bicomplex.window
        self.aut = cat.automorphism_group(c)
        self._perms = [[row.target_action(t) for row in self.rows] for t in self.aut]
        self._modules: Dict[int, GModule] = {}

    def action(self, d: int, tau: int) -> IntMatrix:
        """Matrix of τ ∈ Aut(c) on total degree d."""
        images = self._bicomplex.basis_permutation(d, self._perms[tau])
        entries = []
        for n, j, start in self._bicomplex.blocks_in(d):
            rank = self._bicomplex.bars[n].underlying.rank(j)
            if n == 0:
                local = self.coefficients.matrix(self.c, self.c, self.cat.aut_morphism(self.c, tau))
                entries.extend((start + r, start + s, v) for r, s, v in local.items())
            else:
                entries.extend((images[x], x, 1) for x in range(start, start + rank))
        size = self.total.rank(d)
        return IntMatrix.from_entries(size, size, entries)

    def module(self, d: int) -> GModule:
        if d not in self._modules:
            self._modules[d] = GModule(
                self.aut, self.total.rank(d), [self.action(d, t) for t in self.aut], validate=False
            )
        return self._modules[d]

    def check_equivariance(self) -> None:
        """
        Raises:
            ComplexInvalid: If ∂ does not commute with some generator
        """
        for d in range(self.total.lo + 1, self.total.hi + 1):
            boundary = self.total.boundary(d)
            for s in self.aut.generator_indices:
                if boundary @ self.action(d, s) != self.action(d - 1, s) @ boundary:
                    raise ComplexInvalid(f"Boundary in degree {d} is not Aut(c)-equivariant", {"degree": d})

    def homology(self) -> Dict[int, AbGroup]:
        return self._bicomplex.homology()

    def tate_degrees(self) -> Dict[int, AbGroup]:
        """Homology re-indexed by Tate degree t = −(Φ degree)."""
        return {-d: h for d, h in self.homology().items()}

    def to_dict(self) -> Dict[str, Any]:
        out = self._bicomplex.summary()
        out["object"] = self.c
        out["calibration"] = self.calibration
        out["tate"] = {str(t): str(h) for t, h in sorted(self.tate_degrees().items())}
        return out

    def __repr__(self) -> str:
        return f"PhiComplex(c={self.c}, ranks={self.total.ranks})"


def phi_complex(
    cat: OrbitCat,
    c: int,
    e: OrbitFunctor,
    d_bar: Optional[int] = None,
    n_max: Optional[int] = None,
    budget: Optional[int] = None,
) -> PhiComplex:
    """
    Build Φ^c(E) through total degree D = min(d_bar, n_max).

    Deleting c_1 pushes coefficients along E(c_1 → c_2), or along
    E(c_1 → c) into row 0; every other deletion is the identity on
    coefficients.

    Raises:
        InvalidInput: If E lives on another category or c is out of range
        BudgetExceeded: Naming the first total degree over budget
    """
    if e.cat is not cat:
        raise InvalidInput("Coefficients are defined on a different orbit category")
    top = _truncation(d_bar, n_max)
    rows = [FactorizationGroupoid(cat, c, n, budget) for n in range(top + 1)]

    def coefficients_for(row: FactorizationGroupoid) -> CoefficientSystem:
        firsts = [row.first_object(d) for d in row.diagrams]
        groupoid = row.groupoid

        def matrix(f: int) -> IntMatrix:
            x = firsts[groupoid.source(f)]
            return e.matrix(x, x, row.first_component(f))

        return CoefficientSystem(groupoid, [e.ranks[x] for x in firsts], matrix, validate=False)

    coefficients = [coefficients_for(row) for row in rows]

    def transformation(n: int, i: int, x: int) -> IntMatrix:
        row = rows[n]
        d = row.diagrams[x]
        first = d.objects[0]
        if i != 1:
            return IntMatrix.identity(e.ranks[first])
        nxt = row.path(d)[1]
        return e.matrix(first, nxt, d.maps[0])

    bicomplex = _Bicomplex(rows, coefficients, transformation, top, budget)
    phi = PhiComplex(cat, c, e, bicomplex)
    logger.info(f"Φ^{c} through degree {top}: ranks {phi.total.ranks}")
    return phi


# ============================================================================
# Adaptedness and families
# ============================================================================


def stabilizer_of_first_map(cat: OrbitCat, f: Morphism, g0: int, target: int, aut: Subgroup) -> Subgroup:
    """Aut(α) for α = (c' -g0-> c_1 → c): the σ ∈ Aut(f) with g0∘σ = g0."""
    start = f[0]
    elements = [s for s in aut if cat.compose(start, start, target, cat.aut_morphism(start, s), g0) == g0]
    return Subgroup(aut.parent, elements, validate=False)


def check_adaptedness_combinatorial(t: TComplex) -> Report:
    """
    Check that every basis orbit in positive degrees has its stabilizer inside
    Aut(α), α the C_1-truncation of the orbit's first diagram.

    Returns:
        Report with one check per degree; failing orbits are listed in
        ``notes["witnesses"]``
    """
    report = Report(title=f"adaptedness of T({list(t.f)})")
    report.notes["window"] = [t.window.lo, t.window.hi]
    z = t.total.rank(0) == 1 and t.total.lo == 0
    report.add("degree 0 is Z", z, f"rank {t.total.rank(0)}")
    witnesses: List[Dict[str, Any]] = []
    for d in t.total.degrees():
        if d <= 0:
            continue
        failures = 0
        for x, stabilizer in t.carrier.basis_orbits(d):
            n, chain = t.locate(d, x)
            row = t.rows[n]
            alpha = row.truncate_to_first(row.diagrams[chain[0]])
            allowed = stabilizer_of_first_map(t.cat, t.f, alpha.maps[0], alpha.objects[0], t.aut)
            parents = {t.embedding[s] for s in stabilizer}
            if not parents <= allowed.elements:
                failures += 1
                witnesses.append({
                    "degree": d,
                    "basis": x,
                    "diagram": {"objects": list(alpha.objects), "maps": list(alpha.maps)},
                    "stabilizer": sorted(parents),
                })
        report.add(f"degree {d} stabilizers inside Aut(alpha)", failures == 0, f"{failures} failing orbits")
    report.notes["witnesses"] = witnesses
    return report


def families_from_c1(cat: OrbitCat, f: Morphism, budget: Optional[int] = None) -> List[Subgroup]:
    """
    The distinct groups Aut(α) ⊆ Aut(f) for α ∈ C_1(f), ordered by size.

    Subgroups live in ``cat.automorphism_group(c')``.
    """
    aut = aut_of_morphism(cat, f)
    c1 = FactorizationGroupoid(cat, f, 1, budget)
    found: Dict[frozenset, Subgroup] = {}
    for d in c1.diagrams:
        h = stabilizer_of_first_map(cat, f, d.maps[0], d.objects[0], aut)
        found.setdefault(h.elements, h)
    return sorted(found.values(), key=lambda h: h.key)
