"""
The Burnside ring A^G and the table of marks.

Basis elements are the orbit classes [G/H], ordered like the conjugacy class
representatives (by order, then element tuple); [G/G] is the unit.
"""
import logging
from typing import Dict, List, Optional, Sequence

from src.grp import PermGroup, Subgroup, subgroup_classes
from src.gset import coset_space, fixed_points, orbits, product
from src.report import Report

logger = logging.getLogger(__name__)


def decompose(classes: Sequence[Subgroup], x) -> List[int]:
    """Multiplicity of each orbit class in a G-set."""
    counts = [0] * len(classes)
    for _, stab in orbits(x):
        for k, rep in enumerate(classes):
            if rep.order == stab.order and any(rep.conjugate(g) == stab for g in stab.parent):
                counts[k] += 1
                break
    return counts


class BurnsideRing:
    """
    The Burnside ring of a finite group, with structure constants from orbit
    decompositions of products of orbits.

    Args:
        group: The group
        classes: Subgroup class representatives (default: all classes)

    Example:
        >>> ring = BurnsideRing(cyclic(2))
        >>> ring.multiply_basis(0, 0)
        [2, 0]
    """

    def __init__(self, group: PermGroup, classes: Optional[Sequence[Subgroup]] = None):
        self.group = group
        self.classes: List[Subgroup] = list(classes) if classes is not None else subgroup_classes(group)
        self._orbits = [coset_space(group, h) for h in self.classes]
        n = len(self.classes)
        self.constants: List[List[List[int]]] = [[[] for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                c = decompose(self.classes, product(self._orbits[i], self._orbits[j]))
                self.constants[i][j] = c
                self.constants[j][i] = list(c)
        self.marks: List[List[int]] = [
            [len(fixed_points(self._orbits[i], k)) for i in range(n)]
            for k in self.classes
        ]
        logger.debug(f"Burnside ring of {group}: rank {n}")

    @property
    def rank(self) -> int:
        return len(self.classes)

    @property
    def unit(self) -> int:
        return self.rank - 1

    def basis_vector(self, i: int) -> List[int]:
        return [int(k == i) for k in range(self.rank)]

    def multiply_basis(self, i: int, j: int) -> List[int]:
        return list(self.constants[i][j])

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> List[int]:
        out = [0] * self.rank
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in enumerate(self.constants[i][j]):
                    out[k] += a * b * c
        return out

    def mark(self, x: Sequence[int]) -> List[int]:
        """φ_K(x) = |x^K| for each class K."""
        return [sum(row[i] * a for i, a in enumerate(x)) for row in self.marks]

    def label(self, i: int) -> str:
        """Display name "[G/H<i>]" with |H| appended."""
        return f"[G/H{i}]({self.classes[i].order})"

    def check(self) -> Report:
        """Commutativity, associativity, the unit, and multiplicativity of marks."""
        report = Report(title=f"burnside ring of {self.group}")
        n = self.rank
        for i in range(n):
            for j in range(n):
                if self.constants[i][j] != self.constants[j][i]:
                    report.add(f"commutative {i},{j}", False)
                if self.multiply_basis(self.unit, j) != self.basis_vector(j):
                    report.add(f"unit {j}", False)
                for k in range(n):
                    left = self.multiply(self.multiply_basis(i, j), self.basis_vector(k))
                    right = self.multiply(self.basis_vector(i), self.multiply_basis(j, k))
                    if left != right:
                        report.add(f"associative {i},{j},{k}", False, f"{left} != {right}")
                product_marks = self.mark(self.multiply_basis(i, j))
                expected = [a * b for a, b in zip(self.mark(self.basis_vector(i)), self.mark(self.basis_vector(j)))]
                if product_marks != expected:
                    report.add(f"marks multiplicative {i},{j}", False, f"{product_marks} != {expected}")
        if not report.checks:
            report.add("ring axioms and marks", True, f"{n}x{n} table")
        return report

    def table(self) -> Dict[str, Dict[str, List[int]]]:
        """Multiplication table keyed by basis position."""
        return {
            str(i): {str(j): self.constants[i][j] for j in range(self.rank)}
            for i in range(self.rank)
        }


def burnside_ring(g: PermGroup) -> BurnsideRing:
    return BurnsideRing(g)
