"""
Exact integer linear algebra on sparse columns.

The kernel is computed with unimodular column operations, so the returned
basis spans the full integer kernel, not just a finite-index sublattice.
Smith invariant factors come from sympy's normal forms over ``ZZ``.
"""

from __future__ import annotations
from typing import Mapping, Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as _invariants

__all__ = ("Column", "xgcd", "integer_kernel", "invariant_factors")

Column = dict[int, int]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return `(g, s, t)` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _combine(x: Column, y: Column, a: int, b: int) -> Column:
    """``a*x + b*y`` without zero entries."""
    out: Column = {}
    for key in x.keys() | y.keys():
        value = a * x.get(key, 0) + b * y.get(key, 0)
        if value:
            out[key] = value
    return out


def integer_kernel(columns: Sequence[Mapping[int, int]], nrows: int
                   ) -> tuple[list[Column], int]:
    """
    Column-reduce a sparse integer matrix.

    * `columns`: one `{row: value}` map per column
    * `nrows`: number of rows

    Returns `(kernel, rank)`.  Each kernel vector is a `{column: value}` map;
    together they form a saturated basis of the integer kernel.
    """
    cols = [dict(c) for c in columns]
    unis: list[Column] = [{j: 1} for j in range(len(cols))]
    pivot = 0
    for row in range(nrows):
        hits = [j for j in range(pivot, len(cols)) if cols[j].get(row)]
        if not hits:
            continue
        first = hits[0]
        cols[pivot], cols[first] = cols[first], cols[pivot]
        unis[pivot], unis[first] = unis[first], unis[pivot]
        # hits[0] is the least nonzero index, so the swap leaves hits[1:]
        for j in hits[1:]:
            a, b = cols[pivot][row], cols[j][row]
            g, s, t = xgcd(a, b)
            # [[s, -b/g], [t, a/g]] has determinant one
            cols[pivot], cols[j] = (_combine(cols[pivot], cols[j], s, t),
                                    _combine(cols[pivot], cols[j],
                                             -b // g, a // g))
            unis[pivot], unis[j] = (_combine(unis[pivot], unis[j], s, t),
                                    _combine(unis[pivot], unis[j],
                                             -b // g, a // g))
        pivot += 1
    for j in range(pivot, len(cols)):
        if cols[j]:
            raise RuntimeError("Column reduction left a nonzero column")
    return unis[pivot:], pivot


def invariant_factors(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """The nonzero Smith invariant factors of a dense integer matrix."""
    if not rows or not ncols:
        return []
    matrix = DomainMatrix([[ZZ(v) for v in row] for row in rows],
                          (len(rows), ncols), ZZ)
    return sorted(int(f) for f in _invariants(matrix) if f)
