"""
Sparse integer matrices with arbitrary-precision entries.

Entries are Python ints, so arithmetic never overflows. Only nonzero entries
are stored, row by row. Matrices are treated as immutable values: every
operation returns a new matrix.
"""
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple


class IntMatrix:
    """
    A rows × cols integer matrix stored as ``{row: {col: value}}``.

    Example:
        >>> m = IntMatrix.from_rows([[1, 2], [0, 3]])
        >>> (m @ IntMatrix.identity(2)) == m
        True
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(
        self,
        rows: int,
        cols: int,
        data: Optional[Mapping[int, Mapping[int, int]]] = None,
    ):
        if rows < 0 or cols < 0:
            raise ValueError(f"Invalid matrix shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        clean: Dict[int, Dict[int, int]] = {}
        if data:
            for i, row in data.items():
                if not 0 <= i < rows:
                    raise ValueError(f"Row index {i} outside 0..{rows - 1}")
                kept = {}
                for j, v in row.items():
                    if not 0 <= j < cols:
                        raise ValueError(f"Column index {j} outside 0..{cols - 1}")
                    if v:
                        kept[j] = int(v)
                if kept:
                    clean[i] = kept
        self._data = clean

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(rows, cols, {i: {i: v} for i, v in enumerate(values) if v})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"Row {i} has length {len(row)}, expected {cols}")
            data[i] = {j: v for j, v in enumerate(row) if v}
        return cls(len(rows), cols, data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Tuple[int, int, int]]) -> "IntMatrix":
        """Build a matrix by summing (row, col, value) contributions."""
        data: Dict[int, Dict[int, int]] = {}
        for i, j, v in entries:
            if not v:
                continue
            row = data.setdefault(i, {})
            row[j] = row.get(j, 0) + v
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, int]]) -> "IntMatrix":
        """Build a matrix from sparse column vectors ``{row: value}``."""
        data: Dict[int, Dict[int, int]] = {}
        for j, column in enumerate(columns):
            for i, v in column.items():
                if v:
                    data.setdefault(i, {})[j] = v
        return cls(rows, len(columns), data)

    @classmethod
    def permutation(cls, images: Sequence[int]) -> "IntMatrix":
        """The matrix sending basis vector j to basis vector images[j]."""
        n = len(images)
        return cls(n, n, {images[j]: {j: 1} for j in range(n)})

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> int:
        return self._data.get(i, {}).get(j, 0)

    def row(self, i: int) -> Dict[int, int]:
        return dict(self._data.get(i, {}))

    def items(self) -> Iterator[Tuple[int, int, int]]:
        for i in sorted(self._data):
            row = self._data[i]
            for j in sorted(row):
                yield i, j, row[j]

    def row_items(self) -> Iterator[Tuple[int, Dict[int, int]]]:
        for i in sorted(self._data):
            yield i, self._data[i]

    def columns(self) -> Dict[int, Dict[int, int]]:
        out: Dict[int, Dict[int, int]] = {}
        for i, row in self._data.items():
            for j, v in row.items():
                out.setdefault(j, {})[i] = v
        return out

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    def to_rows(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, row in self._data.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def apply(self, vector: Mapping[int, int]) -> Dict[int, int]:
        """Multiply by a sparse column vector ``{index: value}``."""
        out: Dict[int, int] = {}
        for i, row in self._data.items():
            acc = 0
            for j, v in row.items():
                x = vector.get(j)
                if x:
                    acc += v * x
            if acc:
                out[i] = acc
        return out

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, self.columns())

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch: {self.shape} @ {other.shape}")
        data: Dict[int, Dict[int, int]] = {}
        other_data = other._data
        for i, row in self._data.items():
            acc: Dict[int, int] = {}
            for k, a in row.items():
                orow = other_data.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                data[i] = acc
        result = IntMatrix(self.rows, other.cols)
        result._data = data
        return result

    def _combine(self, other: "IntMatrix", sign: int) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch: {self.shape} vs {other.shape}")
        data = {i: dict(row) for i, row in self._data.items()}
        for i, row in other._data.items():
            target = data.setdefault(i, {})
            for j, v in row.items():
                target[j] = target.get(j, 0) + sign * v
        return IntMatrix(self.rows, self.cols, data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        if k == 0:
            return IntMatrix(self.rows, self.cols)
        return IntMatrix(
            self.rows,
            self.cols,
            {i: {j: k * v for j, v in row.items()} for i, row in self._data.items()},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_rows()})"
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # ------------------------------------------------------------------
    # Block structure
    # ------------------------------------------------------------------

    def submatrix(self, row_indices: Sequence[int], col_indices: Sequence[int]) -> "IntMatrix":
        col_pos = {j: n for n, j in enumerate(col_indices)}
        data = {}
        for new_i, i in enumerate(row_indices):
            row = self._data.get(i)
            if not row:
                continue
            kept = {col_pos[j]: v for j, v in row.items() if j in col_pos}
            if kept:
                data[new_i] = kept
        return IntMatrix(len(row_indices), len(col_indices), data)

    @staticmethod
    def block(rows: Sequence[int], cols: Sequence[int], blocks: Mapping[Tuple[int, int], "IntMatrix"]) -> "IntMatrix":
        """
        Assemble a block matrix.

        Args:
            rows: Row counts of the block rows
            cols: Column counts of the block columns
            blocks: Nonzero blocks keyed by (block row, block column)

        Returns:
            The assembled matrix
        """
        row_off = [0]
        for r in rows:
            row_off.append(row_off[-1] + r)
        col_off = [0]
        for c in cols:
            col_off.append(col_off[-1] + c)
        data: Dict[int, Dict[int, int]] = {}
        for (bi, bj), m in blocks.items():
            if m.shape != (rows[bi], cols[bj]):
                raise ValueError(
                    f"Block ({bi},{bj}) has shape {m.shape}, expected {(rows[bi], cols[bj])}"
                )
            ro, co = row_off[bi], col_off[bj]
            for i, row in m._data.items():
                target = data.setdefault(ro + i, {})
                for j, v in row.items():
                    target[co + j] = target.get(co + j, 0) + v
        return IntMatrix(row_off[-1], col_off[-1], data)

    @staticmethod
    def block_diagonal(mats: Sequence["IntMatrix"]) -> "IntMatrix":
        return IntMatrix.block(
            [m.rows for m in mats],
            [m.cols for m in mats],
            {(k, k): m for k, m in enumerate(mats)},
        )

    @staticmethod
    def hstack(mats: Sequence["IntMatrix"]) -> "IntMatrix":
        if not mats:
            raise ValueError("hstack needs at least one matrix")
        return IntMatrix.block([mats[0].rows], [m.cols for m in mats], {(0, k): m for k, m in enumerate(mats)})

    @staticmethod
    def vstack(mats: Sequence["IntMatrix"]) -> "IntMatrix":
        if not mats:
            raise ValueError("vstack needs at least one matrix")
        return IntMatrix.block([m.rows for m in mats], [mats[0].cols], {(k, 0): m for k, m in enumerate(mats)})

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product; row (i, k) ↦ i * other.rows + k."""
        data: Dict[int, Dict[int, int]] = {}
        for i, row in self._data.items():
            for k, orow in other._data.items():
                target = data.setdefault(i * other.rows + k, {})
                for j, a in row.items():
                    for l, b in orow.items():
                        target[j * other.cols + l] = a * b
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, data)
