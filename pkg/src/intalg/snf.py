"""
Smith normal form over the integers.

Two entry points:

* ``smith_normal_form`` returns the nonzero invariant factors together with
  unimodular transforms (dense elimination, used on small matrices).
* ``invariant_factors`` returns only the diagonal. It first eliminates unit
  pivots sparsely, which removes almost everything in boundary matrices of
  bar-type complexes, and then runs the dense routine on what is left.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Set

from src.intalg.matrix import IntMatrix

logger = logging.getLogger(__name__)


class SmithForm(NamedTuple):
    """Result of ``smith_normal_form``: ``left @ m @ right`` is diagonal."""

    diag: List[int]
    left: IntMatrix
    right: IntMatrix
    right_inverse: IntMatrix


def _dense_snf(
    a: List[List[int]],
    rows: int,
    cols: int,
    track: bool,
) -> "tuple[List[int], Optional[List[List[int]]], Optional[List[List[int]]], Optional[List[List[int]]]]":
    left = [[int(i == j) for j in range(rows)] for i in range(rows)] if track else None
    right = [[int(i == j) for j in range(cols)] for i in range(cols)] if track else None
    rinv = [[int(i == j) for j in range(cols)] for i in range(cols)] if track else None

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        if track:
            left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in right:
                row[i], row[j] = row[j], row[i]
            rinv[i], rinv[j] = rinv[j], rinv[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for k in range(cols):
            if rs[k]:
                rd[k] += q * rs[k]
        if track:
            ls, ld = left[src], left[dst]
            for k in range(rows):
                if ls[k]:
                    ld[k] += q * ls[k]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in right:
                if row[src]:
                    row[dst] += q * row[src]
            # inverse: row_src -= q * row_dst
            ri_src, ri_dst = rinv[src], rinv[dst]
            for k in range(cols):
                if ri_dst[k]:
                    ri_src[k] -= q * ri_dst[k]

    diag: List[int] = []
    t = 0
    while t < rows and t < cols:
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])

        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    if a[t][j]:
                        dirty = True
            if dirty:
                small = None
                for i in range(t + 1, rows):
                    if a[i][t] and (small is None or abs(a[i][t]) < small[0]):
                        small = (abs(a[i][t]), "row", i)
                for j in range(t + 1, cols):
                    if a[t][j] and (small is None or abs(a[t][j]) < small[0]):
                        small = (abs(a[t][j]), "col", j)
                if small[1] == "row":
                    swap_rows(t, small[2])
                else:
                    swap_cols(t, small[2])
                continue
            bad = None
            for i in range(t + 1, rows):
                row = a[i]
                for j in range(t + 1, cols):
                    if row[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break

        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if track:
                left[t] = [-v for v in left[t]]
        diag.append(a[t][t])
        t += 1
    return diag, left, right, rinv


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """
    Compute the Smith normal form of an integer matrix.

    Args:
        m: Matrix to reduce

    Returns:
        SmithForm with the nonzero invariant factors ``diag`` (a divisibility
        chain of positive integers) and unimodular ``left``, ``right`` such
        that ``left @ m @ right`` has ``diag`` on its leading diagonal and
        zeros elsewhere. ``right_inverse`` is the inverse of ``right``.

    Example:
        >>> smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]])).diag
        [2, 4]
    """
    a = m.to_rows()
    diag, left, right, rinv = _dense_snf(a, m.rows, m.cols, track=True)
    return SmithForm(
        diag=diag,
        left=IntMatrix.from_rows(left, m.rows),
        right=IntMatrix.from_rows(right, m.cols),
        right_inverse=IntMatrix.from_rows(rinv, m.cols),
    )


def _eliminate_unit_pivots(m: IntMatrix) -> "tuple[int, Dict[int, Dict[int, int]]]":
    rows: Dict[int, Dict[int, int]] = {i: dict(r) for i, r in m.row_items()}
    cols: Dict[int, Set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(rows):
            r = rows.get(i)
            if r is None:
                continue
            best = None
            for j, v in r.items():
                if v == 1 or v == -1:
                    count = len(cols[j])
                    if best is None or count < best[0]:
                        best = (count, j, v)
                        if count == 1:
                            break
            if best is None:
                continue
            _, j, v = best
            for k in sorted(cols[j]):
                if k == i:
                    continue
                rk = rows[k]
                f = rk[j] * v
                for jj, vv in r.items():
                    new = rk.get(jj, 0) - f * vv
                    if new:
                        if jj not in rk:
                            cols[jj].add(k)
                        rk[jj] = new
                    elif jj in rk:
                        del rk[jj]
                        cols[jj].discard(k)
                if not rk:
                    del rows[k]
            for jj in r:
                cols[jj].discard(i)
            del rows[i]
            units += 1
            progress = True
    return units, rows


def invariant_factors(m: IntMatrix) -> List[int]:
    """
    Nonzero invariant factors of ``m`` (same as ``smith_normal_form(m).diag``).

    Args:
        m: Matrix to reduce

    Returns:
        Divisibility chain of positive integers; its length is the rank of m
    """
    if m.is_zero():
        return []
    units, rest = _eliminate_unit_pivots(m)
    if not rest:
        return [1] * units
    col_ids = sorted({j for r in rest.values() for j in r})
    col_pos = {j: n for n, j in enumerate(col_ids)}
    dense = []
    for i in sorted(rest):
        row = [0] * len(col_ids)
        for j, v in rest[i].items():
            row[col_pos[j]] = v
        dense.append(row)
    logger.debug(
        f"SNF of {m.rows}x{m.cols}: {units} unit pivots, dense remainder {len(dense)}x{len(col_ids)}"
    )
    diag, _, _, _ = _dense_snf(dense, len(dense), len(col_ids), track=False)
    return [1] * units + diag


def rank(m: IntMatrix) -> int:
    """Rank of ``m`` over Q."""
    return len(invariant_factors(m))
