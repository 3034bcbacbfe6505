"""
Mackey functors with free values on the orbit category.

A Mackey functor here assigns a rank to every orbit G/H and, to every
morphism f: G/H_i → G/H_j, a covariant matrix f_* (transfer) and a
contravariant matrix f^* (restriction).
"""
import logging
from typing import Dict, Optional, Sequence

from src.errors import InvalidInput
from src.grp import GModule
from src.gset import Morphism, OrbitCat, fibered_product, orbit_partition
from src.intalg import IntMatrix, KernelBasis
from src.report import Report

logger = logging.getLogger(__name__)


class MackeyFunctorData:
    """
    Ranks and transfer/restriction matrices on an orbit category.

    Args:
        cat: The orbit category (all subgroup classes, for validation)
        ranks: Rank of M^{H} per object
        push: f_* (ranks[j] × ranks[i]) per morphism (i, j, k); missing is zero
        pull: f^* (ranks[i] × ranks[j]) per morphism (i, j, k); missing is zero

    Raises:
        InvalidInput: If a matrix has the wrong shape
    """

    def __init__(
        self,
        cat: OrbitCat,
        ranks: Sequence[int],
        push: Dict[Morphism, IntMatrix],
        pull: Dict[Morphism, IntMatrix],
        name: Optional[str] = None,
    ):
        if len(ranks) != len(cat):
            raise InvalidInput(f"Expected {len(cat)} ranks, got {len(ranks)}")
        self.cat = cat
        self.ranks = list(ranks)
        self.name = name
        self._push: Dict[Morphism, IntMatrix] = {}
        self._pull: Dict[Morphism, IntMatrix] = {}
        for m in cat.morphisms():
            i, j, _ = m
            covariant = push.get(m, IntMatrix.zeros(self.ranks[j], self.ranks[i]))
            contravariant = pull.get(m, IntMatrix.zeros(self.ranks[i], self.ranks[j]))
            if covariant.shape != (self.ranks[j], self.ranks[i]):
                raise InvalidInput(f"Transfer for {m} has shape {covariant.shape}")
            if contravariant.shape != (self.ranks[i], self.ranks[j]):
                raise InvalidInput(f"Restriction for {m} has shape {contravariant.shape}")
            self._push[m] = covariant
            self._pull[m] = contravariant

    def push(self, m: Morphism) -> IntMatrix:
        """f_* for f = m."""
        return self._push[m]

    def pull(self, m: Morphism) -> IntMatrix:
        """f^* for f = m."""
        return self._pull[m]

    def with_push(self, m: Morphism, matrix: IntMatrix) -> "MackeyFunctorData":
        """A copy with one transfer matrix replaced."""
        push = dict(self._push)
        push[m] = matrix
        return MackeyFunctorData(self.cat, self.ranks, push, self._pull, self.name)

    def with_pull(self, m: Morphism, matrix: IntMatrix) -> "MackeyFunctorData":
        """A copy with one restriction matrix replaced."""
        pull = dict(self._pull)
        pull[m] = matrix
        return MackeyFunctorData(self.cat, self.ranks, self._push, pull, self.name)

    def direct_sum(self, other: "MackeyFunctorData") -> "MackeyFunctorData":
        if other.cat is not self.cat:
            raise ValueError("Mackey functors on different orbit categories")
        return MackeyFunctorData(
            self.cat,
            [a + b for a, b in zip(self.ranks, other.ranks)],
            {m: IntMatrix.block_diagonal([a, other._push[m]]) for m, a in self._push.items()},
            {m: IntMatrix.block_diagonal([a, other._pull[m]]) for m, a in self._pull.items()},
        )

    def __add__(self, other: "MackeyFunctorData") -> "MackeyFunctorData":
        return self.direct_sum(other)

    @classmethod
    def zero(cls, cat: OrbitCat) -> "MackeyFunctorData":
        return cls(cat, [0] * len(cat), {}, {}, name="0")

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"MackeyFunctorData({self.cat.group}{label}, ranks={self.ranks})"


def _oriented(kernel: KernelBasis) -> KernelBasis:
    # leading entry of every basis column positive
    basis = kernel.basis.columns()
    flips = [k for k in range(kernel.dimension) if basis.get(k) and basis[k][min(basis[k])] < 0]
    if not flips:
        return kernel
    signs = IntMatrix.diagonal([-1 if k in flips else 1 for k in range(kernel.dimension)])
    return KernelBasis(kernel.basis @ signs, signs @ kernel.coordinates)


def fixed_point_mackey(m: GModule, cat: Optional[OrbitCat] = None) -> MackeyFunctorData:
    """
    The fixed-point Mackey functor of a G-module: G/H ↦ M^H.

    For f: G/H_i → G/H_j with f(eH_i) = gH_j, restriction is m ↦ g·m and
    transfer sums the action of coset representatives over the fiber of f
    above eH_j.

    Args:
        m: Module with free carrier
        cat: Orbit category of m.group (default: all subgroup classes)

    Example:
        >>> d = fixed_point_mackey(GModule.trivial(cyclic(2)))
        >>> d.ranks
        [1, 1]
    """
    cat = cat if cat is not None else OrbitCat(m.group)
    if cat.group != m.group:
        raise ValueError("Orbit category and module are over different groups")
    kernels = [_oriented(m.invariants(h)) for h in cat.subgroups]
    ranks = [k.dimension for k in kernels]
    push: Dict[Morphism, IntMatrix] = {}
    pull: Dict[Morphism, IntMatrix] = {}
    for (i, j, k) in cat.morphisms():
        g = cat.base_image(i, j, k)
        pull[(i, j, k)] = kernels[i].coordinates @ m.matrix(g) @ kernels[j].basis
        f = cat.morphism((i, j, k))
        transfer = IntMatrix.zeros(m.rank, m.rank)
        for x in f.fiber(0):
            transfer = transfer + m.matrix(cat.coset_rep(i, x))
        push[(i, j, k)] = kernels[j].coordinates @ transfer @ kernels[i].basis
    logger.debug(f"Fixed-point Mackey functor of {m}: ranks {ranks}")
    return MackeyFunctorData(cat, ranks, push, pull, name=m.name)


def _morphism_name(m: Morphism) -> str:
    i, j, k = m
    return f"{i}->{j}#{k}"


def validate_mackey(d: MackeyFunctorData) -> Report:
    """
    Check identities, functoriality of both variances, and the double coset
    formula g^*∘f_* = Σ_p (π2φ_p)_*∘(π1φ_p)^* for every pair f, g with a
    common target, where φ_p runs over the orbits of the fibered product.

    Returns:
        Report listing every violated instance by morphism name
    """
    cat = d.cat
    report = Report(title=f"mackey axioms for {d!r}")
    for i in range(len(cat)):
        ident = (i, i, cat.identity(i))
        eye = IntMatrix.identity(d.ranks[i])
        if d.push(ident) != eye or d.pull(ident) != eye:
            report.add(f"identity {i}", False, "identity morphism does not act as the identity")

    for (i, j, a) in cat.morphisms():
        for k in range(len(cat)):
            for b in range(len(cat.hom(j, k))):
                c = (i, k, cat.compose(i, j, k, a, b))
                name = f"{_morphism_name((i, j, a))} then {_morphism_name((j, k, b))}"
                if d.push(c) != d.push((j, k, b)) @ d.push((i, j, a)):
                    report.add(f"covariant {name}", False)
                if d.pull(c) != d.pull((i, j, a)) @ d.pull((j, k, b)):
                    report.add(f"contravariant {name}", False)

    pairs = 0
    for j in range(len(cat)):
        for i in range(len(cat)):
            for a in range(len(cat.hom(i, j))):
                f = cat.morphism((i, j, a))
                for l in range(len(cat)):
                    for b in range(len(cat.hom(l, j))):
                        g = cat.morphism((l, j, b))
                        lhs = d.pull((l, j, b)) @ d.push((i, j, a))
                        rhs = IntMatrix.zeros(d.ranks[l], d.ranks[i])
                        fp, p1, p2 = fibered_product(f, g)
                        for points in orbit_partition(fp):
                            apex, phi = cat.identify_orbit(fp, points)
                            left = (apex, i, cat.index_of(apex, i, [p1(x) for x in phi]))
                            right = (apex, l, cat.index_of(apex, l, [p2(x) for x in phi]))
                            rhs = rhs + d.push(right) @ d.pull(left)
                        pairs += 1
                        if lhs != rhs:
                            report.add(
                                f"double coset f={_morphism_name((i, j, a))} g={_morphism_name((l, j, b))}",
                                False,
                                f"{lhs.to_rows()} != {rhs.to_rows()}",
                            )
    if not report.checks:
        report.add("mackey axioms", True, f"{len(cat.morphisms())} morphisms, {pairs} double coset pairs")
    report.notes["pairs"] = pairs
    return report
