"""Return-time sets of concrete dynamical systems, plus finite-window
density and syndeticity reports.

Rotations run on exact rational angles (irrational rotations enter via
explicit convergents, e.g. Fibonacci ratios for the golden mean), shifts
on stored 0/1 sequences, and products of two systems are first class.
Arc membership uses half-open intervals in exact arithmetic; landing
exactly on an endpoint of the (topologically open) target is reported,
never silently classified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InputError
from .exactq import as_rational
from .windows import SetWindow


# ---------------------------------------------------------------------------
# targets

@dataclass(frozen=True)
class Arc:
    """Half-open arc [center - radius, center + radius) on the unit circle."""

    center: Fraction
    radius: Fraction

    def __post_init__(self):
        if self.radius <= 0:
            raise InputError("arc radius must be positive")

    @classmethod
    def from_interval(cls, lo, hi) -> "Arc":
        lo, hi = as_rational(lo), as_rational(hi)
        if hi <= lo:
            raise InputError("arc interval needs hi > lo")
        return cls((lo + hi) / 2, (hi - lo) / 2)

    def classify(self, point: Fraction) -> tuple[bool, bool]:
        """(member, boundary_hit) for a point of [0,1)."""
        span = 2 * self.radius
        if span >= 1:
            return True, False
        offset = (point - (self.center - self.radius)) % 1
        return offset < span, offset == 0 or offset == span


@dataclass(frozen=True)
class Cylinder:
    """All 0/1 sequences starting with the given symbols (clopen)."""

    symbols: str

    def __post_init__(self):
        if not self.symbols or any(ch not in "01" for ch in self.symbols):
            raise InputError("cylinder symbols must be a nonempty 0/1 string")


@dataclass(frozen=True)
class ProductTarget:
    first: object
    second: object


Target = Union[Arc, Cylinder, ProductTarget]


# ---------------------------------------------------------------------------
# systems

@dataclass(frozen=True)
class RotationSystem:
    """Rotation of the circle [0,1) by a fixed exact rational angle."""

    angle: Fraction

    def __post_init__(self):
        object.__setattr__(self, "angle", as_rational(self.angle) % 1)

    def start(self, point) -> Fraction:
        return as_rational(point) % 1

    def advance(self, state: Fraction) -> Fraction:
        return (state + self.angle) % 1

    def classify(self, state: Fraction, target) -> tuple[bool, bool]:
        if not isinstance(target, Arc):
            raise InputError("rotation targets must be arcs")
        return target.classify(state)


@dataclass(frozen=True)
class ShiftSystem:
    """Left shift acting on one stored 0/1 sequence; points are offsets
    into the sequence (0 = the sequence itself)."""

    symbols: str

    def __post_init__(self):
        if not self.symbols or any(ch not in "01" for ch in self.symbols):
            raise InputError("shift sequence must be a nonempty 0/1 string")

    def start(self, point) -> int:
        if not isinstance(point, int) or point < 0:
            raise InputError("shift points are nonnegative offsets")
        return point

    def advance(self, state: int) -> int:
        return state + 1

    def classify(self, state: int, target) -> tuple[bool, bool]:
        if not isinstance(target, Cylinder):
            raise InputError("shift targets must be cylinders")
        end = state + len(target.symbols)
        if end > len(self.symbols):
            raise InputError(
                "stored sequence too short for the requested horizon"
            )
        return self.symbols[state:end] == target.symbols, False


@dataclass(frozen=True)
class ProductSystem:
    first: object
    second: object

    def start(self, point) -> tuple:
        if not isinstance(point, (tuple, list)) or len(point) != 2:
            raise InputError("product points are pairs")
        return (self.first.start(point[0]), self.second.start(point[1]))

    def advance(self, state: tuple) -> tuple:
        return (self.first.advance(state[0]), self.second.advance(state[1]))

    def classify(self, state: tuple, target) -> tuple[bool, bool]:
        if not isinstance(target, ProductTarget):
            raise InputError("product targets must be target pairs")
        m1, b1 = self.first.classify(state[0], target.first)
        m2, b2 = self.second.classify(state[1], target.second)
        # flag whenever either component decision sat on an endpoint
        return m1 and m2, b1 or b2


DynSystem = Union[RotationSystem, ShiftSystem, ProductSystem]


@dataclass(frozen=True)
class OrbitResult:
    window: SetWindow
    boundary_hits: tuple[int, ...]


def orbit_hits(system, point, target, horizon: int) -> OrbitResult:
    """The return-time set {n <= N : T^n(point) in target}, exactly.

    boundary_hits lists the times whose orbit point fell on a target
    endpoint: those n are classified by the half-open convention but the
    open-set reading of the target is ambiguous there.
    """
    if horizon < 1:
        raise InputError("horizon must be >= 1")
    state = system.start(point)
    hits = []
    flagged = []
    for n in range(1, horizon + 1):
        state = system.advance(state)
        member, boundary = system.classify(state, target)
        if member:
            hits.append(n)
        if boundary:
            flagged.append(n)
    return OrbitResult(SetWindow(horizon, tuple(hits)), tuple(flagged))


def product_return_times(
    system_a, system_b, x, y, targets, horizon: int
) -> OrbitResult:
    """Return times of the pair orbit: {n : T^n x in U and T^n y in V}.

    Whether such a set qualifies as a D-set candidate also depends on the
    diagonal point (y, y) being approached by the pair orbit, which no
    finite window can decide; start from points where it holds by
    construction (x = y, or x on the orbit of y).  Likewise the gap and
    density reports below describe recurrence on the window only and never
    classify a point as uniformly or essentially recurrent.
    """
    if not isinstance(targets, (tuple, list)) or len(targets) != 2:
        raise InputError("product target must be a pair (U, V)")
    return orbit_hits(
        ProductSystem(system_a, system_b),
        (x, y),
        ProductTarget(targets[0], targets[1]),
        horizon,
    )


# ---------------------------------------------------------------------------
# density and syndeticity on windows

@dataclass(frozen=True)
class DensityReport:
    window_length: int
    best_start: int
    count: int
    estimate: Fraction


def banach_density_estimate(window: SetWindow, length: int) -> DensityReport:
    """Best density over all length-w subwindows of [1..N] (the finite
    stand-in for upper Banach density), with the leftmost maximizing start."""
    if not 1 <= length <= window.horizon:
        raise InputError("window length must lie in 1..horizon")
    members = window.member_set
    count = sum(1 for v in range(1, length + 1) if v in members)
    best_count, best_start = count, 1
    for start in range(2, window.horizon - length + 2):
        count += (start - 1 + length in members) - (start - 1 in members)
        if count > best_count:
            best_count, best_start = count, start
    return DensityReport(length, best_start, best_count, Fraction(best_count, length))


def syndetic_gap(window: SetWindow) -> int:
    """Largest gap between consecutive members, including the lead-in gap
    from 0 and the tail gap to N+1; the empty window reports N+1."""
    prev = 0
    worst = 0
    for v in window.members:
        worst = max(worst, v - prev)
        prev = v
    return max(worst, window.horizon + 1 - prev)


@dataclass(frozen=True)
class PiecewiseSyndeticReport:
    contains_interval: bool
    witness_start: Optional[int]
    best_length: int
    best_start: Optional[int]


def piecewise_syndetic_window(
    window: SetWindow, shifts: int, length: int
) -> PiecewiseSyndeticReport:
    """Does S u (S-1) u ... u (S-k) cover an interval of the given length
    inside the window?  Reports the leftmost witness start, or the best
    achievable interval when the answer is no."""
    if shifts < 0 or length < 1:
        raise InputError("need shifts >= 0 and length >= 1")
    union = set()
    for i in range(shifts + 1):
        for v in window.members:
            if v - i >= 1:
                union.add(v - i)
    best_len, best_start = 0, None
    witness = None
    run_start = None
    prev = None
    for v in sorted(union):
        if prev is None or v != prev + 1:
            run_start = v
        prev = v
        run_len = v - run_start + 1
        if run_len > best_len:
            best_len, best_start = run_len, run_start
        if witness is None and run_len >= length:
            witness = run_start
    return PiecewiseSyndeticReport(witness is not None, witness, best_len, best_start)


# ---------------------------------------------------------------------------
# the near-full-density set avoiding all shifted multiples

@dataclass(frozen=True)
class StraussResult:
    window: SetWindow
    witnesses: tuple[tuple[int, int], ...]
    density: Fraction


def strauss_set(epsilon, horizon: int) -> StraussResult:
    """Remove one residue class t_j mod n_j per witness, with t_j running
    over 0, 1, -1, 2, -2, ... and n_j = 2^(j+1) * ceil(1/eps), truncated at
    the first modulus beyond the horizon.

    The doubling schedule keeps the removed portion at or below eps, so the
    window density stays >= 1 - eps, while each emitted witness (t, n)
    satisfies S and (t + n*Z) disjoint on [1..N]: no shifted copy of S meets
    every set of multiples.
    """
    eps = as_rational(epsilon)
    if not 0 < eps < 1:
        raise InputError("epsilon must lie strictly between 0 and 1")
    if horizon < 1:
        raise InputError("horizon must be >= 1")
    base = -((-eps.denominator) // eps.numerator)  # ceil(1/eps)
    witnesses = []
    j = 0
    while True:
        modulus = (2 ** (j + 1)) * base
        if modulus > horizon:
            break
        t = (j + 1) // 2 if j % 2 == 1 else -(j // 2)
        witnesses.append((t, modulus))
        j += 1
    removed = bytearray(horizon + 1)
    for t, modulus in witnesses:
        r = t % modulus
        start = r if r >= 1 else modulus
        for x in range(start, horizon + 1, modulus):
            removed[x] = 1
    members = tuple(x for x in range(1, horizon + 1) if not removed[x])
    density = Fraction(len(members), horizon)
    assert density >= 1 - eps, "doubling schedule failed its density bound"
    return StraussResult(SetWindow(horizon, members), tuple(witnesses), density)


def strauss_witnesses_hold(result: StraussResult) -> bool:
    """Re-check that every emitted witness class misses the set entirely."""
    for t, modulus in result.witnesses:
        r = t % modulus
        if any(x % modulus == r for x in result.window.members):
            return False
    return True


# ---------------------------------------------------------------------------
# config-string parsing ("rot:5/8", "shift:0101", "prod:(A;B)", arcs, ...)

def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_system(text: str):
    kind, _, rest = text.strip().partition(":")
    if kind == "rot":
        return RotationSystem(as_rational(rest))
    if kind == "shift":
        if rest.startswith("file="):
            with open(rest[len("file="):], "r", encoding="utf-8") as fh:
                rest = "".join(fh.read().split())
        return ShiftSystem(rest)
    if kind == "prod":
        inner = rest.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise InputError("product systems look like prod:(sysA;sysB)")
        parts = _split_top(inner[1:-1], ";")
        if len(parts) != 2:
            raise InputError("product systems take exactly two components")
        return ProductSystem(parse_system(parts[0]), parse_system(parts[1]))
    raise InputError(f"unknown system kind: {kind!r}")


def parse_point(system, text: str):
    if isinstance(system, RotationSystem):
        return as_rational(text)
    if isinstance(system, ShiftSystem):
        try:
            return int(text)
        except ValueError as exc:
            raise InputError("shift points are integer offsets") from exc
    if isinstance(system, ProductSystem):
        parts = _split_top(text.strip(), ";")
        if len(parts) != 2:
            raise InputError("product points look like x;y")
        return (parse_point(system.first, parts[0]),
                parse_point(system.second, parts[1]))
    raise InputError("unknown system type")


def parse_target(system, text: str):
    if isinstance(system, ProductSystem):
        parts = _split_top(text.strip(), ";")
        if len(parts) != 2:
            raise InputError("product targets look like U;V")
        return ProductTarget(parse_target(system.first, parts[0]),
                             parse_target(system.second, parts[1]))
    kind, _, rest = text.strip().partition(":")
    if kind in ("arc", "carc"):
        if not isinstance(system, RotationSystem):
            raise InputError("arc targets go with rotation systems")
        if kind == "arc":
            lo, hi = rest.split(",")
            return Arc.from_interval(as_rational(lo), as_rational(hi))
        center, radius = rest.split(",")
        return Arc(as_rational(center), as_rational(radius))
    if kind == "cyl":
        if not isinstance(system, ShiftSystem):
            raise InputError("cylinder targets go with shift systems")
        return Cylinder(rest)
    raise InputError(f"unknown target kind: {kind!r}")
