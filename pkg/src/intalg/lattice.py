"""
Integer lattices: saturated kernels with coordinates, and incremental
Hermite-normal-form spans.
"""
from typing import Dict, List, Optional, Sequence

from sympy.core.intfunc import igcdex

from src.intalg.matrix import IntMatrix
from src.intalg.snf import smith_normal_form


class KernelBasis:
    """
    A Z-basis of ker(m) together with a coordinate map.

    ``basis`` is an n × k matrix whose columns span the kernel lattice
    (which is saturated in Z^n). ``coordinates`` is a k × n matrix with
    ``coordinates @ v`` the basis coordinates of any kernel vector v.
    """

    def __init__(self, basis: IntMatrix, coordinates: IntMatrix):
        self.basis = basis
        self.coordinates = coordinates

    @property
    def dimension(self) -> int:
        return self.basis.cols

    def vector(self, k: int) -> Dict[int, int]:
        return {i: v for i, v in self.basis.columns().get(k, {}).items()}

    def coordinates_of(self, vector: Dict[int, int]) -> Dict[int, int]:
        return self.coordinates.apply(vector)


def integer_kernel(m: IntMatrix) -> KernelBasis:
    """
    Compute a saturated Z-basis of the kernel of ``m``.

    Args:
        m: Integer matrix (rows × n)

    Returns:
        KernelBasis with n × k basis and k × n coordinates
    """
    n = m.cols
    if m.is_zero():
        return KernelBasis(IntMatrix.identity(n), IntMatrix.identity(n))
    snf = smith_normal_form(m)
    r = len(snf.diag)
    keep = list(range(r, n))
    basis = snf.right.submatrix(list(range(n)), keep)
    coords = snf.right_inverse.submatrix(keep, list(range(n)))
    return KernelBasis(basis, coords)


def stacked_kernel(mats: Sequence[IntMatrix], n: int) -> KernelBasis:
    """Common kernel of several n-column matrices."""
    mats = [m for m in mats if not m.is_zero()]
    if not mats:
        return KernelBasis(IntMatrix.identity(n), IntMatrix.identity(n))
    return integer_kernel(IntMatrix.vstack(mats))


class IntLattice:
    """
    A sublattice of Z^n kept in row-echelon (Hermite) form.

    Rows are stored by pivot column, with positive pivots. Adding a vector
    merges it into the echelon form with extended gcd steps.

    Example:
        >>> lat = IntLattice(1)
        >>> lat.add([4]); lat.add([6])
        True
        True
        >>> [2] in lat, [3] in lat
        (True, False)
    """

    def __init__(self, dimension: int):
        self.dimension = dimension
        self._rows: Dict[int, List[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def basis(self) -> List[List[int]]:
        return [list(self._rows[p]) for p in sorted(self._rows)]

    @staticmethod
    def _lead(v: Sequence[int]) -> Optional[int]:
        for i, x in enumerate(v):
            if x:
                return i
        return None

    def add(self, vec: Sequence[int]) -> bool:
        """
        Add a vector to the lattice.

        Args:
            vec: Integer vector of length ``dimension``

        Returns:
            True if the lattice grew
        """
        if len(vec) != self.dimension:
            raise ValueError(f"Vector length {len(vec)} != lattice dimension {self.dimension}")
        v = [int(x) for x in vec]
        grew = False
        while True:
            p = self._lead(v)
            if p is None:
                return grew
            b = self._rows.get(p)
            if b is None:
                if v[p] < 0:
                    v = [-x for x in v]
                self._rows[p] = v
                return True
            a, c = b[p], v[p]
            if c % a == 0:
                q = c // a
                v = [x - q * y for x, y in zip(v, b)]
                continue
            x, y, g = igcdex(a, c)
            new_b = [x * bi + y * vi for bi, vi in zip(b, v)]
            v = [(c // g) * bi - (a // g) * vi for bi, vi in zip(b, v)]
            if new_b[p] < 0:
                new_b = [-t for t in new_b]
            self._rows[p] = new_b
            grew = True

    def __contains__(self, vec: Sequence[int]) -> bool:
        v = [int(x) for x in vec]
        while True:
            p = self._lead(v)
            if p is None:
                return True
            b = self._rows.get(p)
            if b is None or v[p] % b[p]:
                return False
            q = v[p] // b[p]
            v = [x - q * y for x, y in zip(v, b)]
