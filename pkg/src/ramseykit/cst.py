"""Finite-scale search for the Central Sets Theorem conclusion.

A depth-k witness against a window S and IP-systems s^1, ..., s^p is a
pair of sequences a_1..a_k and alpha_1 < ... < alpha_k such that for every
nonempty subset {k_1 < ... < k_l} of {1..k} and every system i the sum
(a_{k_1} + s^i_{alpha_{k_1}}) + ... + (a_{k_l} + s^i_{alpha_{k_l}}) stays
in S.

The infinitary construction picks each step inside a combinatorially large
subset; on a window that largeness is replaced by complete backtracking
over candidates ordered smallest-(a, alpha) first.  "No witness" therefore
genuinely means none exists within the window, which the API keeps
distinct from running out of budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .deuber import MpcParams, MpcSystem, generate_mpc, verify_mpc
from .errors import BudgetExceededError, InputError
from .ipcore import (
    FiniteIndexSet,
    IPSystemSpec,
    alpha_less,
    find_divisible_subsequence,
    ip_term,
)
from .windows import SetWindow

DEFAULT_CST_BUDGET = 5_000_000
DEPTH_CAP = 20  # 2^k - 1 subset sums per system


@dataclass(frozen=True)
class CstWitness:
    depth: int
    a_values: tuple[int, ...]
    alphas: tuple[FiniteIndexSet, ...]
    system_count: int

    def __post_init__(self):
        if self.depth < 1 or self.system_count < 1:
            raise InputError("depth and system count must be >= 1")
        if len(self.a_values) != self.depth or len(self.alphas) != self.depth:
            raise InputError("need one (a, alpha) pair per level")
        if any((not isinstance(a, int)) or a < 1 for a in self.a_values):
            raise InputError("a-values must be positive integers")

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "a_values": list(self.a_values),
            "alphas": [list(a.members) for a in self.alphas],
            "system_count": self.system_count,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CstWitness":
        try:
            return cls(
                int(data["depth"]),
                tuple(int(v) for v in data["a_values"]),
                tuple(FiniteIndexSet.from_iterable(a) for a in data["alphas"]),
                int(data["system_count"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad witness payload: {exc}") from exc


def _common_horizon(specs: Sequence[IPSystemSpec]) -> int:
    if not specs:
        raise InputError("need at least one IP-system")
    if any(s.width != 1 for s in specs):
        raise InputError("witness search runs on scalar IP-systems")
    horizons = {s.horizon for s in specs}
    if len(horizons) != 1:
        raise InputError("all IP-systems must share one horizon")
    return horizons.pop()


def _min_subset_sum(spec: IPSystemSpec) -> int:
    negatives = sum(t for t in spec.terms if t < 0)
    return negatives if negatives < 0 else min(spec.terms)


def cst_search(
    window: SetWindow,
    specs: Sequence[IPSystemSpec],
    depth: int,
    budget: int = DEFAULT_CST_BUDGET,
) -> Optional[CstWitness]:
    """Backtracking search for a depth-k witness; None means proven absent
    within the window (budget exhaustion raises instead).

    Candidates are tried smallest-a first, then smallest index set in
    binary-counting order, and each level n+1 restricts its index sets to
    start beyond max(alpha_n), which enforces the chain order structurally.
    The admissible term values for the next level form the set
    B_i = S  intersect  (S - t) over all subset sums t collected so far --
    membership there is exactly what keeps every new subset sum inside S,
    so dead states can be memoized by their sum sets.
    """
    if depth < 1:
        raise InputError("depth must be >= 1")
    if depth > DEPTH_CAP:
        raise BudgetExceededError(f"depth {depth} exceeds the {DEPTH_CAP} cap")
    horizon = _common_horizon(specs)
    members = window.member_set
    p = len(specs)
    a_hi = window.horizon - min(_min_subset_sum(s) for s in specs)
    ticks = 0
    dead: set = set()
    cand_cache: dict[int, list] = {}

    def candidates(low: int) -> list:
        """(index tuple, max index, per-spec sums) for every nonempty
        subset of (low, horizon], in binary-counting order."""
        got = cand_cache.get(low)
        if got is not None:
            return got
        width = horizon - low
        if width > DEPTH_CAP or (1 << width) - 1 > budget:
            raise BudgetExceededError(
                f"2^{width} candidate index sets per level is over budget"
            )
        count = 1 << width
        sums = [[0] * count for _ in range(p)]
        sets: list = [None] * count
        sets[0] = ()
        out = []
        for mask in range(1, count):
            lsb = mask & -mask
            bit = lsb.bit_length() - 1
            rest = mask ^ lsb
            idx = low + bit + 1
            # rest holds the higher bits, so prepend to stay ascending
            sets[mask] = (idx,) + sets[rest]
            for i in range(p):
                sums[i][mask] = sums[i][rest] + specs[i].terms[idx - 1]
            out.append((sets[mask], sets[mask][-1],
                        tuple(sums[i][mask] for i in range(p))))
        cand_cache[low] = out
        return out

    def extend(level, low, sum_sets, admissible, chosen):
        nonlocal ticks
        if any(not b for b in admissible):
            return None
        cands = candidates(low)
        for a in range(1, a_hi + 1):
            for alpha, amax, svec in cands:
                ticks += 1
                if ticks > budget:
                    raise BudgetExceededError(
                        f"witness search exceeded {budget} candidates"
                    )
                us = []
                for i in range(p):
                    u = a + svec[i]
                    if u not in admissible[i]:
                        break
                    us.append(u)
                if len(us) != p:
                    continue
                picked = chosen + [(a, alpha)]
                if level + 1 == depth:
                    return picked
                fresh = [
                    frozenset({us[i]} | {t + us[i] for t in sum_sets[i]})
                    for i in range(p)
                ]
                merged = tuple(sum_sets[i] | fresh[i] for i in range(p))
                key = (depth - level - 1, amax, merged)
                if key in dead:
                    continue
                nxt = tuple(
                    frozenset(
                        v for v in admissible[i]
                        if all((v + t) in members for t in fresh[i])
                    )
                    for i in range(p)
                )
                found = extend(level + 1, amax, merged, nxt, picked)
                if found is not None:
                    return found
                dead.add(key)
        return None

    start_sums = tuple(frozenset() for _ in range(p))
    start_b = tuple(members for _ in range(p))
    found = extend(0, 0, start_sums, start_b, [])
    if found is None:
        return None
    return CstWitness(
        depth,
        tuple(a for a, _ in found),
        tuple(FiniteIndexSet(alpha) for _, alpha in found),
        p,
    )


def verify_cst_witness(
    window: SetWindow, specs: Sequence[IPSystemSpec], witness: CstWitness
) -> bool:
    """Exhaustively re-check all 2^k - 1 subset sums for every system."""
    horizon = _common_horizon(specs)
    if len(specs) != witness.system_count:
        raise InputError("system count does not match the witness")
    if witness.depth > DEPTH_CAP:
        raise BudgetExceededError(f"depth {witness.depth} exceeds the {DEPTH_CAP} cap")
    if any(a.largest() > horizon for a in witness.alphas):
        raise InputError("witness index set beyond the spec horizon")
    for i in range(len(witness.alphas) - 1):
        if not alpha_less(witness.alphas[i], witness.alphas[i + 1]):
            return False
    members = window.member_set
    for spec in specs:
        terms = [
            a + ip_term(spec, alpha)
            for a, alpha in zip(witness.a_values, witness.alphas)
        ]
        # nonempty subset sums; 0 is a legitimate (failing) sum here, so no
        # empty-subset sentinel is used
        sums: set = set()
        for t in terms:
            sums |= {t} | {s + t for s in sums}
        if any(s not in members for s in sums):
            return False
    return True


@dataclass(frozen=True)
class MpcFromCstResult:
    params: MpcParams
    families: tuple[tuple[int, ...], ...]
    system: MpcSystem


def _reindex_and_divide(families, c: int, want: int):
    """Choose a chain of index sets making the top coordinate divisible by
    c, pull every family back through it, and divide the top by c."""
    top_spec = IPSystemSpec.from_terms(families[-1])
    alphas = find_divisible_subsequence(top_spec, c, want)
    reindexed = []
    for fam in families[:-1]:
        spec = IPSystemSpec.from_terms(fam)
        reindexed.append([ip_term(spec, a) for a in alphas])
    top = [ip_term(top_spec, a) for a in alphas]
    assert all(v % c == 0 for v in top)
    reindexed.append([v // c for v in top])
    return reindexed


def mpc_from_cst(
    window: SetWindow,
    m: int,
    p: int,
    c: int,
    budget: int = DEFAULT_CST_BUDGET,
    family_depth: int = 1,
) -> Optional[MpcFromCstResult]:
    """Derive a verified (m, p, c)-tower inside the window by iterating the
    witness search.

    Level 0 runs the search against the all-zero system, which yields a
    finite-sums family inside S.  Level r then feeds the (2p+1)^r
    combination systems i_{r-1} t^{r-1} + ... + i_0 t^0 back into the
    search; the witness's a-values become the next coordinate (with
    leading coefficient 1), and for c > 1 a divisibility chain makes that
    coordinate divisible by c so it can be divided down, restoring the
    leading coefficient c.  Each level keeps just enough family members
    for the levels above it.

    The pipeline takes the first witness at every level and does not
    backtrack across levels, so None refutes this deterministic
    construction on the window, not containment as such; budget exhaustion
    in any inner search propagates as BudgetExceededError.

    Family lengths grow by a factor of c per level below the top: dividing
    a coordinate by c can break residue compatibility (on the even numbers
    with c = 2, halved values turn odd), and the cure is index sets summing
    several family members, which needs spare length.  The schedule is
    therefore multiplicative, and deep towers with c > 1 hit the candidate
    budget guard rather than running forever.
    """
    params = MpcParams(m, p, c)
    if family_depth < 1:
        raise InputError("family depth must be >= 1")
    lengths = [0] * (m + 1)
    depths = [0] * (m + 1)
    lengths[m] = family_depth
    for r in range(m, -1, -1):
        depths[r] = lengths[r] * c if c > 1 else lengths[r]
        if r > 0:
            lengths[r - 1] = depths[r] * c

    trivial = IPSystemSpec.constant(0, depths[0])
    wit = cst_search(window, [trivial], depths[0], budget)
    if wit is None:
        return None
    families = [list(wit.a_values)]
    if c > 1:
        families = _reindex_and_divide(families, c, lengths[0])

    for r in range(1, m + 1):
        width = len(families[0])
        specs = []
        for pattern in product(range(-p, p + 1), repeat=r):
            terms = [
                sum(pattern[j] * families[j][n] for j in range(r))
                for n in range(width)
            ]
            rule = "combo:" + ",".join(str(i) for i in pattern)
            specs.append(IPSystemSpec(rule, tuple(terms), 1))
        wit = cst_search(window, specs, depths[r], budget)
        if wit is None:
            return None
        reindexed = []
        for fam in families:
            spec = IPSystemSpec.from_terms(fam)
            reindexed.append([ip_term(spec, a) for a in wit.alphas])
        reindexed.append(list(wit.a_values))
        families = reindexed
        if c > 1:
            families = _reindex_and_divide(families, c, lengths[r])

    generators = tuple(fam[0] for fam in families)
    system = generate_mpc(params, generators)
    assert verify_mpc(window, params, generators)
    return MpcFromCstResult(params, tuple(tuple(f) for f in families), system)
