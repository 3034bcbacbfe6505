"""
Bounded chain complexes of finitely generated free abelian groups.

Grading is homological throughout: boundaries lower degree by one, and a
cohomological object in degree j is stored in degree -j (see ``dual``).
"""
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.errors import ComplexInvalid, NotChainMap
from src.intalg.abgroup import AbGroup
from src.intalg.lattice import integer_kernel
from src.intalg.matrix import IntMatrix
from src.intalg.snf import invariant_factors, smith_normal_form

logger = logging.getLogger(__name__)


# ============================================================================
# Reliability windows
# ============================================================================


class Window(BaseModel):
    """
    Inclusive degree range in which computed homology is trustworthy.

    An empty window has ``hi < lo``.
    """

    model_config = ConfigDict(frozen=True)

    lo: int = Field(description="Lowest reliable degree")
    hi: int = Field(description="Highest reliable degree")

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, degree: int) -> bool:
        return self.lo <= degree <= self.hi

    @property
    def is_empty(self) -> bool:
        return self.hi < self.lo

    def intersect(self, other: "Window") -> "Window":
        return Window(lo=max(self.lo, other.lo), hi=min(self.hi, other.hi))

    def __str__(self) -> str:
        return f"[{self.lo}..{self.hi}]"


def bar_window(top: int, lo: int = 0) -> Window:
    """
    Window of a complex built through degree ``top``.

    Degrees up to ``top - 2`` are reported, so H_i always sees chains through
    degree i + 1 with room to spare.
    """
    return Window(lo=lo, hi=top - 2)


# ============================================================================
# Chain complexes
# ============================================================================


class IntChainComplex:
    """
    A bounded complex C_lo ← … ← C_hi of free abelian groups.

    Args:
        lo: Lowest degree
        hi: Highest degree
        ranks: Rank per degree, as a mapping or a list starting at ``lo``
        boundaries: Boundary ∂_d: C_d → C_{d-1} per degree (missing = zero)
        validate: Check shapes and ∂∘∂ = 0 on construction

    Raises:
        ComplexInvalid: If shapes mismatch or ∂∘∂ ≠ 0
    """

    def __init__(
        self,
        lo: int,
        hi: int,
        ranks: "Mapping[int, int] | List[int]",
        boundaries: Optional[Mapping[int, IntMatrix]] = None,
        validate: bool = True,
    ):
        if hi < lo:
            raise ComplexInvalid(f"Degree range [{lo}, {hi}] is empty")
        if isinstance(ranks, Mapping):
            self._ranks = {d: int(ranks.get(d, 0)) for d in range(lo, hi + 1)}
        else:
            if len(ranks) != hi - lo + 1:
                raise ComplexInvalid(f"Expected {hi - lo + 1} ranks, got {len(ranks)}")
            self._ranks = {lo + k: int(r) for k, r in enumerate(ranks)}
        self.lo = lo
        self.hi = hi
        self._boundaries: Dict[int, IntMatrix] = {}
        for d, m in (boundaries or {}).items():
            if not lo < d <= hi:
                if m.is_zero():
                    continue
                raise ComplexInvalid(f"Boundary in degree {d} outside ({lo}, {hi}]")
            self._boundaries[d] = m
        self._factor_cache: Dict[int, List[int]] = {}
        self._validated = False
        if validate:
            self.validate()

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "IntChainComplex":
        return cls(0, 0, [0])

    @classmethod
    def unit(cls) -> "IntChainComplex":
        """Z concentrated in degree 0."""
        return cls(0, 0, [1])

    @classmethod
    def concentrated(cls, rank: int, degree: int = 0) -> "IntChainComplex":
        return cls(degree, degree, [rank])

    def rank(self, d: int) -> int:
        return self._ranks.get(d, 0)

    @property
    def ranks(self) -> List[int]:
        return [self._ranks[d] for d in range(self.lo, self.hi + 1)]

    def boundary(self, d: int) -> IntMatrix:
        m = self._boundaries.get(d)
        if m is None:
            return IntMatrix.zeros(self.rank(d - 1), self.rank(d))
        return m

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def validate(self) -> None:
        """
        Check boundary shapes and ∂∘∂ = 0.

        Raises:
            ComplexInvalid: On the first failing degree
        """
        for d, m in self._boundaries.items():
            if m.shape != (self.rank(d - 1), self.rank(d)):
                raise ComplexInvalid(
                    f"Boundary in degree {d} has shape {m.shape}, "
                    f"expected {(self.rank(d - 1), self.rank(d))}",
                    {"degree": d},
                )
        for d in range(self.lo + 2, self.hi + 1):
            if d in self._boundaries and d - 1 in self._boundaries:
                if not (self._boundaries[d - 1] @ self._boundaries[d]).is_zero():
                    raise ComplexInvalid(
                        f"Boundary squares to a nonzero map at degree {d}",
                        {"degree": d},
                    )
        self._validated = True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntChainComplex):
            return NotImplemented
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        for d in range(lo, hi + 1):
            if self.rank(d) != other.rank(d):
                return False
            if self.boundary(d) != other.boundary(d):
                return False
        return True

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"IntChainComplex(lo={self.lo}, hi={self.hi}, ranks={self.ranks})"

    # ------------------------------------------------------------------
    # Homology
    # ------------------------------------------------------------------

    def _factors(self, d: int) -> List[int]:
        if d not in self._factor_cache:
            if not self._validated:
                self.validate()
            self._factor_cache[d] = invariant_factors(self.boundary(d))
        return self._factor_cache[d]

    def homology(self, d: int) -> AbGroup:
        """
        H_d = ker ∂_d / im ∂_{d+1}.

        Args:
            d: Degree; outside [lo, hi] the result is trivial

        Returns:
            AbGroup in invariant-factor form
        """
        n = self.rank(d)
        if n == 0:
            return AbGroup()
        out_rank = len(self._factors(d))
        incoming = self._factors(d + 1)
        free = n - out_rank - len(incoming)
        return AbGroup(free_rank=free, torsion=tuple(x for x in incoming if x > 1))

    def homology_window(self, window: Window) -> Dict[int, AbGroup]:
        return {d: self.homology(d) for d in window.degrees()}

    def rational_betti(self, d: int) -> int:
        return self.homology(d).free_rank

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * r for d, r in self._ranks.items())

    def is_acyclic_in(self, window: Window) -> bool:
        return all(self.homology(d).is_trivial for d in window.degrees())

    # ------------------------------------------------------------------
    # Constructions
    # ------------------------------------------------------------------

    def shift(self, n: int) -> "IntChainComplex":
        """c[n]_d = c_{d-n} with boundary multiplied by (-1)^n."""
        sign = -1 if n % 2 else 1
        return IntChainComplex(
            self.lo + n,
            self.hi + n,
            self.ranks,
            {d + n: m.scale(sign) for d, m in self._boundaries.items()},
            validate=False,
        )

    def dual(self) -> "IntChainComplex":
        """Hom(-, Z): rank in degree -d is rank(d); boundary is the transpose."""
        return IntChainComplex(
            -self.hi,
            -self.lo,
            list(reversed(self.ranks)),
            {-(d - 1): m.transpose() for d, m in self._boundaries.items()},
            validate=False,
        )

    def direct_sum(self, other: "IntChainComplex") -> "IntChainComplex":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return IntChainComplex(
            lo,
            hi,
            {d: self.rank(d) + other.rank(d) for d in range(lo, hi + 1)},
            {
                d: IntMatrix.block_diagonal([self.boundary(d), other.boundary(d)])
                for d in range(lo + 1, hi + 1)
            },
            validate=False,
        )

    def truncate(self, hi: int) -> "IntChainComplex":
        """Stupid truncation: keep degrees ≤ hi."""
        hi = min(hi, self.hi)
        if hi < self.lo:
            return IntChainComplex(self.lo, self.lo, [0])
        return IntChainComplex(
            self.lo,
            hi,
            {d: self.rank(d) for d in range(self.lo, hi + 1)},
            {d: m for d, m in self._boundaries.items() if d <= hi},
            validate=False,
        )

    def tensor(self, other: "IntChainComplex") -> "IntChainComplex":
        """
        Total complex of the tensor product.

        ∂(x⊗y) = ∂x⊗y + (-1)^{|x|} x⊗∂y. In each total degree, summands are
        ordered by the degree of the left factor, and within a summand the
        left index is major.
        """
        blocks: Dict[Tuple[int, int], int] = {}
        for i in self.degrees():
            for j in other.degrees():
                blocks[(i, j)] = self.rank(i) * other.rank(j)
        maps: Dict[Tuple[Tuple[int, int], Tuple[int, int]], IntMatrix] = {}
        for (i, j) in blocks:
            if (i - 1, j) in blocks:
                maps[((i, j), (i - 1, j))] = self.boundary(i).kron(IntMatrix.identity(other.rank(j)))
            if (i, j - 1) in blocks:
                sign = -1 if i % 2 else 1
                maps[((i, j), (i, j - 1))] = IntMatrix.identity(self.rank(i)).kron(other.boundary(j)).scale(sign)
        return total_complex(blocks, maps)

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_payload(self, window: Optional[Window] = None) -> "ChainComplexPayload":
        return ChainComplexPayload(
            lo=self.lo,
            hi=self.hi,
            ranks=self.ranks,
            boundaries=[self.boundary(d).to_rows() for d in range(self.lo + 1, self.hi + 1)],
            window=window,
        )

    @classmethod
    def from_payload(cls, payload: "ChainComplexPayload") -> "IntChainComplex":
        if len(payload.boundaries) != payload.hi - payload.lo:
            raise ComplexInvalid(
                f"Expected {payload.hi - payload.lo} boundary matrices, got {len(payload.boundaries)}"
            )
        ranks = {payload.lo + k: r for k, r in enumerate(payload.ranks)}
        boundaries = {}
        for k, rows in enumerate(payload.boundaries):
            d = payload.lo + 1 + k
            boundaries[d] = IntMatrix.from_rows(rows, ranks[d]) if rows else IntMatrix.zeros(ranks[d - 1], ranks[d])
        return cls(payload.lo, payload.hi, ranks, boundaries)


class ChainComplexPayload(BaseModel):
    """JSON form of a chain complex: {"lo", "hi", "ranks", "boundaries"}."""

    lo: int
    hi: int
    ranks: List[int]
    boundaries: List[List[List[int]]] = Field(
        default_factory=list,
        description="Dense boundary matrices for degrees lo+1..hi"
    )
    window: Optional[Window] = None

    def to_dict(self) -> dict:
        return self.model_dump(exclude_none=True)

    def to_json_file(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.model_dump_json(indent=2, exclude_none=True))

    @classmethod
    def from_json_file(cls, path: Path) -> "ChainComplexPayload":
        if not path.exists():
            raise FileNotFoundError(f"Chain complex file not found: {path}")
        with open(path, "r", encoding="utf-8") as f:
            return cls.model_validate(json.load(f))


# ============================================================================
# Chain maps and totalization
# ============================================================================


class ChainMap:
    """
    Degreewise matrices f_d: A_d → B_d.

    Raises:
        NotChainMap: From ``check`` (run on construction by default) if
            ∂^B f ≠ f ∂^A in some degree or a component has the wrong shape
    """

    def __init__(
        self,
        source: IntChainComplex,
        target: IntChainComplex,
        components: Mapping[int, IntMatrix],
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self._components = dict(components)
        if check:
            self.check()

    def component(self, d: int) -> IntMatrix:
        m = self._components.get(d)
        if m is None:
            return IntMatrix.zeros(self.target.rank(d), self.source.rank(d))
        return m

    @classmethod
    def identity(cls, c: IntChainComplex) -> "ChainMap":
        return cls(c, c, {d: IntMatrix.identity(c.rank(d)) for d in c.degrees()}, check=False)

    def check(self) -> None:
        for d, m in self._components.items():
            if m.shape != (self.target.rank(d), self.source.rank(d)):
                raise NotChainMap(
                    f"Component in degree {d} has shape {m.shape}, "
                    f"expected {(self.target.rank(d), self.source.rank(d))}",
                    {"degree": d},
                )
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for d in range(lo + 1, hi + 1):
            left = self.target.boundary(d) @ self.component(d)
            right = self.component(d - 1) @ self.source.boundary(d)
            if left != right:
                raise NotChainMap(f"Map does not commute with boundaries in degree {d}", {"degree": d})

    def compose(self, first: "ChainMap") -> "ChainMap":
        """self ∘ first."""
        degrees = set(self._components) | set(first._components)
        return ChainMap(
            first.source,
            self.target,
            {d: self.component(d) @ first.component(d) for d in degrees},
            check=False,
        )

    def image_in_homology(self, d: int) -> AbGroup:
        """
        The image of H_d(f): H_d(A) → H_d(B).

        Computed as (f(Z_d A) + B_d B) / B_d B: the span is put in Smith
        form, and the boundaries are rewritten in coordinates of its basis.
        """
        if self.source.rank(d) == 0 or self.target.rank(d) == 0:
            return AbGroup()
        cycles = integer_kernel(self.source.boundary(d)).basis
        incoming = self.target.boundary(d + 1)
        span = IntMatrix.hstack([self.component(d) @ cycles, incoming])
        if span.is_zero():
            return AbGroup()
        snf = smith_normal_form(span)
        r = len(snf.diag)
        coordinates = snf.left @ incoming
        relations = IntMatrix.from_entries(
            r, incoming.cols, [(i, j, v // snf.diag[i]) for i, j, v in coordinates.items() if i < r]
        )
        factors = invariant_factors(relations)
        return AbGroup(free_rank=r - len(factors), torsion=tuple(x for x in factors if x > 1))


def cone(f: ChainMap) -> IntChainComplex:
    """
    Mapping cone: cone_d = A_{d-1} ⊕ B_d, ∂(a, b) = (-∂a, f(a) + ∂b).

    Raises:
        NotChainMap: If f does not commute with the boundaries
    """
    f.check()
    a, b = f.source, f.target
    lo = min(a.lo + 1, b.lo)
    hi = max(a.hi + 1, b.hi)
    ranks = {d: a.rank(d - 1) + b.rank(d) for d in range(lo, hi + 1)}
    boundaries = {}
    for d in range(lo + 1, hi + 1):
        boundaries[d] = IntMatrix.block(
            [a.rank(d - 2), b.rank(d - 1)],
            [a.rank(d - 1), b.rank(d)],
            {
                (0, 0): a.boundary(d - 1).scale(-1),
                (1, 0): f.component(d - 1),
                (1, 1): b.boundary(d),
            },
        )
    return IntChainComplex(lo, hi, ranks, boundaries)


def total_complex(
    blocks: Mapping[Tuple[int, int], int],
    maps: Mapping[Tuple[Tuple[int, int], Tuple[int, int]], IntMatrix],
    validate: bool = True,
) -> IntChainComplex:
    """
    Totalize a double complex whose differentials are already signed.

    Args:
        blocks: Rank of each bidegree (p, q); total degree is p + q
        maps: Signed components, keyed by (source bidegree, target bidegree);
            each target has total degree one less than its source
        validate: Check ∂∘∂ = 0 on the result

    Returns:
        The total complex. In each total degree, summands are ordered by p.
    """
    if not blocks:
        return IntChainComplex.zero()
    by_degree: Dict[int, List[Tuple[int, int]]] = {}
    for pq in sorted(blocks):
        by_degree.setdefault(pq[0] + pq[1], []).append(pq)
    lo, hi = min(by_degree), max(by_degree)
    ranks = {d: sum(blocks[pq] for pq in by_degree.get(d, [])) for d in range(lo, hi + 1)}
    boundaries = {}
    for d in range(lo + 1, hi + 1):
        src = by_degree.get(d, [])
        dst = by_degree.get(d - 1, [])
        pieces = {}
        for si, s in enumerate(src):
            for ti, t in enumerate(dst):
                m = maps.get((s, t))
                if m is not None:
                    pieces[(ti, si)] = m
        boundaries[d] = IntMatrix.block(
            [blocks[t] for t in dst],
            [blocks[s] for s in src],
            pieces,
        )
    logger.debug(f"Total complex in degrees {lo}..{hi} with ranks {[ranks[d] for d in range(lo, hi + 1)]}")
    return IntChainComplex(lo, hi, ranks, boundaries, validate=validate)


def tensor(a: IntChainComplex, b: IntChainComplex) -> IntChainComplex:
    return a.tensor(b)


def shift(c: IntChainComplex, n: int) -> IntChainComplex:
    return c.shift(n)


def homology(c: IntChainComplex, d: int) -> AbGroup:
    return c.homology(d)


def block_offsets(sizes: Iterable[int]) -> List[int]:
    """Running offsets of consecutive blocks."""
    out = [0]
    for s in sizes:
        out.append(out[-1] + s)
    return out
