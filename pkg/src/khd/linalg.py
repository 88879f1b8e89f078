"""Exact sparse Gaussian elimination over the rationals.

Rows are dicts mapping orderable column labels to coefficients.  Internally
every row is scaled to a primitive integer vector (gcd 1, positive leading
coefficient) and eliminated fraction-free, so all arithmetic stays in the
integers; rational values only reappear when the reduced echelon form is
normalized.  Pivots are chosen leftmost in the column order, which makes the
reduced form - and therefore every kernel basis - deterministic and
independent of row insertion order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Hashable, Iterable, Mapping, Sequence

Row = Mapping[Hashable, Fraction]
IntRow = dict[Hashable, int]


def _primitive(row: Row) -> IntRow:
    """Scale a rational row to a primitive integer row (empty if zero)."""
    nz = {c: Fraction(v) for c, v in row.items() if v}
    if not nz:
        return {}
    mult = 1
    for v in nz.values():
        d = v.denominator
        mult = mult // gcd(mult, d) * d
    ints = {c: int(v * mult) for c, v in nz.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    lead = min(ints)
    if ints[lead] < 0:
        g = -g
    return {c: v // g for c, v in ints.items()}


def _eliminate(row: IntRow, pivot_col: Hashable, pivot_row: IntRow) -> IntRow:
    """row := pivot*row - row[pivot_col]*pivot_row, gcd-reduced."""
    a = pivot_row[pivot_col]
    b = row[pivot_col]
    out: IntRow = {}
    for c, v in row.items():
        out[c] = v * a
    for c, v in pivot_row.items():
        w = out.get(c, 0) - v * b
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    if not out:
        return out
    g = 0
    for v in out.values():
        g = gcd(g, v)
    lead = min(out)
    if out[lead] < 0:
        g = -g
    return {c: v // g for c, v in out.items()}


class RowSpace:
    """Incremental echelon basis of the row space of a stream of rows."""

    def __init__(self) -> None:
        self.pivots: dict[Hashable, IntRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: IntRow) -> IntRow:
        while row:
            col = min(row)
            pivot = self.pivots.get(col)
            if pivot is None:
                return row
            row = _eliminate(row, col, pivot)
        return row

    def add(self, row: Row) -> bool:
        """Insert a row; True if it enlarged the space."""
        reduced = self._reduce(_primitive(row))
        if not reduced:
            return False
        self.pivots[min(reduced)] = reduced
        return True

    def contains(self, row: Row) -> bool:
        return not self._reduce(_primitive(row))

    def echelon_rows(self) -> list[IntRow]:
        """Current basis rows, ordered by pivot column."""
        return [self.pivots[c] for c in sorted(self.pivots)]

    def reduced_rows(self) -> list[dict[Hashable, Fraction]]:
        """Fully reduced echelon rows, each normalized to pivot 1."""
        cols = sorted(self.pivots, reverse=True)
        work = dict(self.pivots)
        for i, col in enumerate(cols):
            row = work[col]
            # clear later pivot columns out of this row
            for later in cols[:i]:
                if later in row:
                    row = _eliminate(row, later, work[later])
            work[col] = row
        out = []
        for col in sorted(work):
            row = work[col]
            lead = Fraction(row[col])
            out.append({c: Fraction(v) / lead for c, v in row.items()})
        return out


def nullspace(rows: Iterable[Row], columns: Sequence[Hashable]) -> list[dict[Hashable, Fraction]]:
    """Kernel basis of the system given by rows over the listed columns.

    One basis vector per free (non-pivot) column, carrying 1 there; this is
    the reduced echelon parameterization of the solution space.  Column
    labels absent from every row are free columns.  Deterministic for a
    fixed column order.
    """
    space = RowSpace()
    ncols = len(columns)
    for row in rows:
        space.add(row)
        if space.rank == ncols:
            return []
    return nullspace_of(space, columns)


def nullspace_of(space: RowSpace, columns: Sequence[Hashable]) -> list[dict[Hashable, Fraction]]:
    col_set = set(columns)
    for c in space.pivots:
        if c not in col_set:
            raise ValueError(f"row uses column {c!r} not in the column list")
    reduced = space.reduced_rows()
    pivot_of = {min(r): r for r in [dict(row) for row in reduced]}
    # min(r) of a reduced row is its pivot column (pivot value 1)
    basis = []
    for free in columns:
        if free in pivot_of:
            continue
        vec: dict[Hashable, Fraction] = {free: Fraction(1)}
        for pcol, row in pivot_of.items():
            v = row.get(free)
            if v:
                vec[pcol] = -v
        basis.append(vec)
    return basis


def independent_basis(vectors: Iterable[Row]) -> list[dict[Hashable, Fraction]]:
    """Reduced echelon basis of the span of the given vectors."""
    space = RowSpace()
    for v in vectors:
        space.add(v)
    return space.reduced_rows()


def rank(vectors: Iterable[Row]) -> int:
    space = RowSpace()
    for v in vectors:
        space.add(v)
    return space.rank
