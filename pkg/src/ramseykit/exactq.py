"""Exact rational arithmetic and desk-scale linear algebra.

Everything runs on `fractions.Fraction` (arbitrary precision, canonical
form with positive denominator), so ranks, solutions and span coefficients
are exact -- there is no floating point anywhere in this package.

Column/row indices in this module are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError

# The rational scalar type used across the toolkit.
Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational literal: {value!r}") from exc
    raise InputError(f"exact rational required, got {type(value).__name__}")


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable row-major matrix of exact rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InputError("matrix needs at least one row and one column")
        if len(self.entries) != self.rows * self.cols:
            raise InputError("entry count does not match rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        grid = [list(r) for r in rows]
        if not grid or not grid[0]:
            raise InputError("matrix needs at least one row and one column")
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise InputError("ragged rows")
        flat = tuple(as_rational(v) for r in grid for v in r)
        return cls(len(grid), width, flat)

    @classmethod
    def from_text(cls, text: str) -> "RationalMatrix":
        """Parse the shared matrix format: "rows cols" then that many rows
        of whitespace-separated integers or num/den rationals."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise InputError("empty matrix text")
        head = lines[0].split()
        if len(head) != 2:
            raise InputError('matrix header must be "rows cols"')
        try:
            nrows, ncols = int(head[0]), int(head[1])
        except ValueError as exc:
            raise InputError("matrix header must hold two integers") from exc
        if len(lines) - 1 != nrows:
            raise InputError(f"expected {nrows} data lines, got {len(lines) - 1}")
        grid = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != ncols:
                raise InputError(f"row {ln!r} does not have {ncols} entries")
            grid.append([as_rational(p) for p in parts])
        return cls.from_rows(grid)

    def to_text(self) -> str:
        out = [f"{self.rows} {self.cols}"]
        for i in range(self.rows):
            out.append(" ".join(str(v) for v in self.row(i)))
        return "\n".join(out) + "\n"

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    def is_integer(self) -> bool:
        return all(v.denominator == 1 for v in self.entries)

    def mul_vector(self, x: Sequence) -> tuple[Fraction, ...]:
        if len(x) != self.cols:
            raise InputError("vector length does not match column count")
        xs = [as_rational(v) for v in x]
        return tuple(
            sum((self.entry(i, j) * xs[j] for j in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )


def _forward_eliminate(grid: list[list[Fraction]], width: int) -> list[int]:
    """Row echelon form in place over the first `width` columns.

    Pivot rule: scan columns left to right, take the first nonzero entry
    from the top among unused rows.  Returns the pivot column list; the
    pivot of row r sits in column pivots[r].
    """
    pivots: list[int] = []
    prow = 0
    nrows = len(grid)
    for col in range(width):
        hit = None
        for r in range(prow, nrows):
            if grid[r][col] != 0:
                hit = r
                break
        if hit is None:
            continue
        if hit != prow:
            grid[prow], grid[hit] = grid[hit], grid[prow]
        pv = grid[prow][col]
        for r in range(prow + 1, nrows):
            factor = grid[r][col]
            if factor == 0:
                continue
            scale = factor / pv
            row = grid[r]
            src = grid[prow]
            for cc in range(col, len(row)):
                row[cc] -= src[cc] * scale
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    return pivots


def rank(matrix: RationalMatrix) -> int:
    """Rank over the rationals."""
    grid = [list(matrix.row(i)) for i in range(matrix.rows)]
    return len(_forward_eliminate(grid, matrix.cols))


def reduced_row_echelon(
    matrix: RationalMatrix,
) -> tuple[list[list[Fraction]], list[int]]:
    """Full RREF (pivots normalized to 1, zeros above and below).

    Returns (rows, pivot_columns).  With free variables set to arbitrary
    values, row r reads: x[pivots[r]] = -sum over free columns c of
    rows[r][c] * x[c].
    """
    grid = [list(matrix.row(i)) for i in range(matrix.rows)]
    pivots = _forward_eliminate(grid, matrix.cols)
    for r in range(len(pivots) - 1, -1, -1):
        col = pivots[r]
        pv = grid[r][col]
        grid[r] = [v / pv for v in grid[r]]
        for rr in range(r):
            factor = grid[rr][col]
            if factor == 0:
                continue
            grid[rr] = [a - factor * b for a, b in zip(grid[rr], grid[r])]
    return grid, pivots


def solve_linear(
    matrix: RationalMatrix, rhs: Sequence
) -> Optional[list[Fraction]]:
    """One exact solution of M x = b, or None when inconsistent.

    Underdetermined systems get the canonical solution with every free
    variable set to zero (fixed pivot order), so outputs are reproducible.
    """
    if len(rhs) != matrix.rows:
        raise InputError("right-hand side length does not match row count")
    b = [as_rational(v) for v in rhs]
    grid = [list(matrix.row(i)) + [b[i]] for i in range(matrix.rows)]
    pivots = _forward_eliminate(grid, matrix.cols)
    for r in range(len(pivots), matrix.rows):
        if grid[r][matrix.cols] != 0:
            return None
    x = [Fraction(0)] * matrix.cols
    for r in range(len(pivots) - 1, -1, -1):
        col = pivots[r]
        acc = grid[r][matrix.cols]
        for cc in range(col + 1, matrix.cols):
            if grid[r][cc] != 0:
                acc -= grid[r][cc] * x[cc]
        x[col] = acc / grid[r][col]
    return x


def in_column_span(
    matrix: RationalMatrix, selected: Sequence[int], target: Sequence
) -> Optional[dict[int, Fraction]]:
    """Express `target` as a rational combination of the selected columns.

    Returns {column index: coefficient} under the zero-free-variable rule,
    or None when target is outside the span.  `selected` is canonicalized
    to ascending order.
    """
    cols = sorted(set(selected))
    if not cols:
        raise InputError("empty column selection")
    if len(cols) != len(list(selected)):
        raise InputError("duplicate column indices in selection")
    if cols[0] < 0 or cols[-1] >= matrix.cols:
        raise InputError("column index out of range")
    sub = RationalMatrix.from_rows(
        [[matrix.entry(i, j) for j in cols] for i in range(matrix.rows)]
    )
    x = solve_linear(sub, target)
    if x is None:
        return None
    return dict(zip(cols, x))
