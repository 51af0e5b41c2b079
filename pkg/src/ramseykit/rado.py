"""Partition regularity of integer linear systems.

Two independent routes to the same question live here.  The columns
condition decides partition regularity of A x = 0 structurally and emits
a checkable certificate: a partition I_1, ..., I_l of the column indices
where the I_1 columns sum to zero and each later block's column sum lies
in the rational span of all earlier columns.  The empirical route brute
forces r-colorings of [1..N] and either proves every coloring contains a
monochromatic solution or exhibits one that does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import BudgetExceededError, DegenerateMatrixError, InputError
from .exactq import RationalMatrix, in_column_span, reduced_row_echelon
from .windows import SetWindow

DEFAULT_COLORING_BUDGET = 20_000_000


@dataclass(frozen=True)
class ColumnsCertificate:
    """Witness of the columns condition.

    Column indices are 1-based, matching the variables x_1..x_q of the
    system.  `coefficients[r-2]` maps each column of I_1 | ... | I_{r-1}
    to the rational coefficient used to express the I_r column sum.
    """

    blocks: tuple[tuple[int, ...], ...]
    coefficients: tuple[dict, ...]

    def __post_init__(self):
        if not self.blocks:
            raise InputError("certificate needs at least one block")
        for block in self.blocks:
            if not block or any((not isinstance(j, int)) or j < 1 for j in block):
                raise InputError("blocks must be nonempty sets of 1-based indices")
            if list(block) != sorted(set(block)):
                raise InputError("blocks must be strictly increasing")
        if len(self.coefficients) != len(self.blocks) - 1:
            raise InputError("need one coefficient map per block after the first")

    def to_json_dict(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "coefficients": [
                {str(j): str(c) for j, c in sorted(m.items())}
                for m in self.coefficients
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ColumnsCertificate":
        try:
            blocks = tuple(tuple(int(j) for j in b) for b in data["blocks"])
            coefficients = tuple(
                {int(j): Fraction(c) for j, c in m.items()}
                for m in data["coefficients"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad certificate payload: {exc}") from exc
        return cls(blocks, coefficients)


@dataclass(frozen=True)
class Coloring:
    """An r-coloring of [1..N]; colors[n-1] is the color of n."""

    horizon: int
    color_count: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.color_count < 1:
            raise InputError("need at least one color")
        if len(self.colors) != self.horizon:
            raise InputError("need one color per element of [1..N]")
        if any((not isinstance(c, int)) or not 0 <= c < self.color_count
               for c in self.colors):
            raise InputError("color indices must lie in 0..r-1")

    def color_of(self, n: int) -> int:
        return self.colors[n - 1]

    def cells(self) -> list[tuple[int, ...]]:
        out = [[] for _ in range(self.color_count)]
        for n, c in enumerate(self.colors, start=1):
            out[c].append(n)
        return [tuple(cell) for cell in out]

    @classmethod
    def from_text(cls, text: str) -> "Coloring":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 2:
            raise InputError('coloring text must be "N r" plus one line of colors')
        try:
            n, r = (int(p) for p in lines[0].split())
            colors = tuple(int(p) for p in lines[1].split())
        except ValueError as exc:
            raise InputError("coloring lines must hold integers") from exc
        return cls(n, r, colors)

    def to_text(self) -> str:
        head = f"{self.horizon} {self.color_count}"
        return head + "\n" + " ".join(str(c) for c in self.colors) + "\n"


@dataclass(frozen=True)
class SolutionVector:
    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values or any((not isinstance(v, int)) or v < 1
                                  for v in self.values):
            raise InputError("solution entries must be positive integers")


@dataclass(frozen=True)
class EmpiricalResult:
    # verdict is "forced" or "witness" for the exhaustive oracle;
    # "inconclusive" is reserved for future sampling backends
    verdict: str
    witness: Optional[Coloring]
    nontrivial: bool


@dataclass(frozen=True)
class ForcingReport:
    colors: int
    nontrivial: bool
    forced_at: Optional[int]
    extremal_witness: Optional[Coloring]


def _column_sum(cols, indices, height) -> tuple[Fraction, ...]:
    acc = [Fraction(0)] * height
    for j in indices:
        col = cols[j]
        for i in range(height):
            acc[i] += col[i]
    return tuple(acc)


def columns_condition(matrix: RationalMatrix) -> Optional[ColumnsCertificate]:
    """Decide partition regularity; return the first certificate found.

    Search order: candidate I_1 runs over column subsets by increasing
    size then lexicographically and must have exact zero column sum; the
    leftover columns are absorbed block by block, each candidate block
    tested for membership of its column sum in the span of everything
    placed earlier.  Dead remainder sets are memoized, so the whole search
    stays polynomial-ish on desk-scale matrices.  Certificates are not
    unique; this fixed order makes the output reproducible.
    """
    if not matrix.is_integer():
        raise InputError("columns condition applies to integer matrices")
    if matrix.is_zero():
        raise DegenerateMatrixError(
            "zero matrix: trivially satisfied by any assignment"
        )
    q = matrix.cols
    cols = [matrix.column(j) for j in range(q)]
    zero = tuple([Fraction(0)] * matrix.rows)
    dead: set[frozenset] = set()

    def absorb(used: tuple[int, ...], remaining: tuple[int, ...]):
        if not remaining:
            return []
        key = frozenset(remaining)
        if key in dead:
            return None
        for size in range(1, len(remaining) + 1):
            for block in combinations(remaining, size):
                target = _column_sum(cols, block, matrix.rows)
                coeff = in_column_span(matrix, used, target)
                if coeff is None:
                    continue
                taken = set(block)
                rest = tuple(j for j in remaining if j not in taken)
                tail = absorb(tuple(sorted(used + block)), rest)
                if tail is not None:
                    return [(block, coeff)] + tail
        dead.add(key)
        return None

    indices = tuple(range(q))
    for size in range(1, q + 1):
        for first in combinations(indices, size):
            if _column_sum(cols, first, matrix.rows) != zero:
                continue
            chosen = set(first)
            rest = tuple(j for j in indices if j not in chosen)
            tail = absorb(first, rest)
            if tail is None:
                continue
            blocks = [tuple(j + 1 for j in first)]
            coefficients = []
            for block, coeff in tail:
                blocks.append(tuple(j + 1 for j in block))
                coefficients.append({j + 1: c for j, c in coeff.items()})
            return ColumnsCertificate(tuple(blocks), tuple(coefficients))
    return None


def verify_certificate(matrix: RationalMatrix, cert: ColumnsCertificate) -> bool:
    """Exact re-check of the certificate relations against the matrix."""
    q = matrix.cols
    seen: set[int] = set()
    for block in cert.blocks:
        for j in block:
            if not 1 <= j <= q:
                raise InputError(f"certificate column {j} out of range 1..{q}")
            if j in seen:
                raise InputError(f"certificate column {j} appears twice")
            seen.add(j)
    if len(seen) != q:
        missing = sorted(set(range(1, q + 1)) - seen)
        raise InputError(f"certificate partition misses columns {missing}")
    cols = [matrix.column(j) for j in range(q)]
    height = matrix.rows
    first = _column_sum(cols, [j - 1 for j in cert.blocks[0]], height)
    if any(v != 0 for v in first):
        return False
    earlier: set[int] = set(cert.blocks[0])
    for r in range(1, len(cert.blocks)):
        coeff = cert.coefficients[r - 1]
        if any(j not in earlier for j in coeff):
            raise InputError("coefficient attached to a column outside earlier blocks")
        target = _column_sum(cols, [j - 1 for j in cert.blocks[r]], height)
        combo = [Fraction(0)] * height
        for j, c in coeff.items():
            col = cols[j - 1]
            for i in range(height):
                combo[i] += Fraction(c) * col[i]
        if tuple(combo) != target:
            return False
        earlier.update(cert.blocks[r])
    return True


def single_equation_pr(coeffs: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Partition regularity of one equation: the smallest (by size, then
    lexicographically) nonempty zero-sum subset of the coefficients,
    returned as 1-based indices, or None."""
    vals = list(coeffs)
    if not vals:
        raise InputError("need at least one coefficient")
    if any((not isinstance(v, int)) or v == 0 for v in vals):
        raise InputError("coefficients must be nonzero integers")
    for size in range(1, len(vals) + 1):
        for combo in combinations(range(len(vals)), size):
            if sum(vals[j] for j in combo) == 0:
                return tuple(j + 1 for j in combo)
    return None


def default_nontrivial(matrix: RationalMatrix) -> bool:
    """Nontriviality defaults to ON exactly when the constant vector
    solves the system (every row sums to zero), since otherwise forcing
    numbers would be meaningless."""
    return all(sum(matrix.row(i)) == 0 for i in range(matrix.rows))


def enumerate_solutions(
    matrix: RationalMatrix,
    horizon: int,
    members: Optional[Sequence[int]] = None,
    nontrivial: bool = False,
    distinct: bool = False,
) -> list[tuple[int, ...]]:
    """All positive solutions of A x = 0 inside the window.

    The rational kernel is parametrized by the free columns of the RREF;
    free coordinates run over the window, pivot coordinates are forced and
    checked for integrality and membership.  Exact throughout.
    """
    if horizon < 1:
        raise InputError("horizon must be >= 1")
    q = matrix.cols
    rref, pivots = reduced_row_echelon(matrix)
    pivot_set = set(pivots)
    frees = [c for c in range(q) if c not in pivot_set]
    if not frees:
        return []  # trivial kernel: no positive solutions
    domain = list(members) if members is not None else list(range(1, horizon + 1))
    allowed = set(domain)
    sols: list[tuple[int, ...]] = []
    assign: dict[int, int] = {}

    def close() -> Optional[tuple[int, ...]]:
        x: list[Optional[int]] = [None] * q
        for f in frees:
            x[f] = assign[f]
        for r, pcol in enumerate(pivots):
            row = rref[r]
            acc = Fraction(0)
            for f in frees:
                if row[f]:
                    acc -= row[f] * assign[f]
            if acc.denominator != 1:
                return None
            v = int(acc)
            if v < 1 or v > horizon or v not in allowed:
                return None
            x[pcol] = v
        return tuple(x)  # type: ignore[arg-type]

    def rec(idx: int):
        if idx == len(frees):
            x = close()
            if x is None:
                return
            if nontrivial and len(set(x)) == 1:
                return
            if distinct and len(set(x)) != q:
                return
            sols.append(x)
            return
        col = frees[idx]
        for v in domain:
            assign[col] = v
            rec(idx + 1)
        del assign[col]

    rec(0)
    return sols


def solve_in_cell(
    matrix: RationalMatrix,
    window: SetWindow,
    nontrivial: Optional[bool] = None,
    distinct: bool = False,
) -> Optional[SolutionVector]:
    """Lexicographically least solution with every coordinate in the
    window, or None when the window contains no solution."""
    if len(window) == 0:
        return None
    if nontrivial is None:
        nontrivial = default_nontrivial(matrix)
    sols = enumerate_solutions(
        matrix,
        window.horizon,
        members=window.members,
        nontrivial=nontrivial,
        distinct=distinct,
    )
    if not sols:
        return None
    best = min(sols)
    # re-verify post hoc: exact solution, fully inside the window
    assert all(v == 0 for v in matrix.mul_vector(best))
    assert all(v in window.member_set for v in best)
    return SolutionVector(best)


def empirical_pr(
    matrix: RationalMatrix,
    colors: int,
    horizon: int,
    nontrivial: Optional[bool] = None,
    distinct: bool = False,
    budget: int = DEFAULT_COLORING_BUDGET,
) -> EmpiricalResult:
    """Exhaustive oracle on [1..N]: "forced" when every r-coloring has a
    monochromatic solution, otherwise the lexicographically least witness
    coloring (the color of 1 is pinned to 0, which costs no generality).
    """
    if colors < 1:
        raise InputError("need at least one color")
    if nontrivial is None:
        nontrivial = default_nontrivial(matrix)
    sols = enumerate_solutions(
        matrix, horizon, nontrivial=nontrivial, distinct=distinct
    )
    by_max: list[list[tuple[int, ...]]] = [[] for _ in range(horizon + 1)]
    for sol in sols:
        by_max[max(sol)].append(sol)
    coloring = [0] * (horizon + 1)
    ticks = 0

    def mono_at(n: int) -> bool:
        for sol in by_max[n]:
            first = coloring[sol[0]]
            if all(coloring[v] == first for v in sol[1:]):
                return True
        return False

    def dfs(n: int) -> bool:
        nonlocal ticks
        if n > horizon:
            return True
        choices = (0,) if n == 1 else range(colors)
        for c in choices:
            ticks += 1
            if ticks > budget:
                raise BudgetExceededError(
                    f"coloring search exceeded {budget} nodes"
                )
            coloring[n] = c
            if not mono_at(n) and dfs(n + 1):
                return True
        return False

    if dfs(1):
        witness = Coloring(horizon, colors, tuple(coloring[1:]))
        return EmpiricalResult("witness", witness, nontrivial)
    return EmpiricalResult("forced", None, nontrivial)


def forcing_number(
    matrix: RationalMatrix,
    colors: int,
    max_horizon: int,
    nontrivial: Optional[bool] = None,
    budget: int = DEFAULT_COLORING_BUDGET,
) -> ForcingReport:
    """Sweep N upward until every r-coloring of [1..N] is forced; also
    keep the witness at the last unforced N."""
    if nontrivial is None:
        nontrivial = default_nontrivial(matrix)
    last: Optional[Coloring] = None
    for n in range(1, max_horizon + 1):
        res = empirical_pr(matrix, colors, n, nontrivial=nontrivial, budget=budget)
        if res.verdict == "forced":
            return ForcingReport(colors, nontrivial, n, last)
        last = res.witness
    return ForcingReport(colors, nontrivial, None, last)


def schur_matrix() -> RationalMatrix:
    return RationalMatrix.from_rows([[1, 1, -1]])


def ap_matrix(length: int) -> RationalMatrix:
    """The system forcing x_1, ..., x_L into arithmetic progression."""
    if length < 3:
        raise InputError("arithmetic progressions need length >= 3")
    rows = []
    for i in range(length - 2):
        row = [0] * length
        row[i], row[i + 1], row[i + 2] = 1, -2, 1
        rows.append(row)
    return RationalMatrix.from_rows(rows)


def schur_number(
    colors: int, max_horizon: int = 50, budget: int = DEFAULT_COLORING_BUDGET
) -> ForcingReport:
    """Forcing sweep for x + y = z; the classical number is forced_at - 1."""
    return forcing_number(schur_matrix(), colors, max_horizon, budget=budget)


def vdw_number(
    colors: int,
    length: int,
    max_horizon: int = 50,
    budget: int = DEFAULT_COLORING_BUDGET,
) -> ForcingReport:
    """Forcing sweep for length-L arithmetic progressions (nontrivial, so
    constant progressions do not count); the classical number is forced_at."""
    return forcing_number(
        ap_matrix(length), colors, max_horizon, nontrivial=True, budget=budget
    )
