"""IP-systems indexed by finite sets: finite sums, ordering, divisibility.

An IP-system assigns to every finite nonempty index set alpha the sum of
the generator terms it selects.  The ordering alpha < beta means
max(alpha) < min(beta); chains in that order are what all constructions
downstream produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .errors import BudgetExceededError, InputError
from .windows import SetWindow

# Index sets are capped so they always fit a 64-bit mask.
INDEX_CAP = 64

# Enumerating all finite sums of a k-prefix costs 2^k - 1 set insertions.
FS_PREFIX_CAP = 20

Term = Union[int, tuple]


@dataclass(frozen=True)
class FiniteIndexSet:
    """A finite nonempty set of positive integers (at most INDEX_CAP)."""

    members: tuple[int, ...]

    def __post_init__(self):
        if not self.members:
            raise InputError("index set must be nonempty")
        prev = 0
        for v in self.members:
            if not isinstance(v, int) or v <= prev:
                raise InputError("index set must be strictly increasing positive integers")
            prev = v
        if self.members[-1] > INDEX_CAP:
            raise InputError(f"index {self.members[-1]} exceeds the cap {INDEX_CAP}")

    @classmethod
    def of(cls, *indices: int) -> "FiniteIndexSet":
        return cls(tuple(sorted(set(indices))))

    @classmethod
    def from_iterable(cls, indices: Iterable[int]) -> "FiniteIndexSet":
        return cls(tuple(sorted(set(indices))))

    def smallest(self) -> int:
        return self.members[0]

    def largest(self) -> int:
        return self.members[-1]

    def union(self, other: "FiniteIndexSet") -> "FiniteIndexSet":
        return FiniteIndexSet.from_iterable(self.members + other.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def alpha_less(a: FiniteIndexSet, b: FiniteIndexSet) -> bool:
    """The block order on finite index sets: every index of a precedes b."""
    return a.largest() < b.smallest()


def _as_term(value, width: int) -> Term:
    if width == 1:
        if isinstance(value, int):
            return value
        raise InputError("scalar IP-system terms must be integers")
    if isinstance(value, (tuple, list)) and len(value) == width and all(
        isinstance(v, int) for v in value
    ):
        return tuple(value)
    raise InputError(f"vector term of width {width} expected, got {value!r}")


@dataclass(frozen=True)
class IPSystemSpec:
    """A generator sequence s_1, s_2, ... with finite horizon.

    Terms are integers (width 1) or integer tuples (width > 1).  The
    `rule` string records how the sequence was described ("const:2",
    "arith:1,3", "geom:1,2", "list:...") for report echoing.
    """

    rule: str
    terms: tuple[Term, ...]
    width: int = 1

    def __post_init__(self):
        if not self.terms:
            raise InputError("IP-system needs at least one generator term")
        if self.width < 1:
            raise InputError("width must be >= 1")
        for t in self.terms:
            _as_term(t, self.width)

    @property
    def horizon(self) -> int:
        return len(self.terms)

    def term(self, n: int) -> Term:
        """1-based generator term s_n."""
        if not 1 <= n <= self.horizon:
            raise InputError(f"index {n} beyond horizon {self.horizon}")
        return self.terms[n - 1]

    @classmethod
    def from_terms(cls, values: Sequence, rule: Optional[str] = None) -> "IPSystemSpec":
        vals = list(values)
        if vals and isinstance(vals[0], (tuple, list)):
            width = len(vals[0])
            terms = tuple(_as_term(v, width) for v in vals)
            return cls(rule or "list:<vector>", terms, width)
        terms = tuple(_as_term(v, 1) for v in vals)
        return cls(rule or ("list:" + ",".join(str(v) for v in vals)), terms, 1)

    @classmethod
    def constant(cls, k: int, horizon: int) -> "IPSystemSpec":
        return cls(f"const:{k}", tuple([k] * horizon), 1)

    @classmethod
    def arithmetic(cls, start: int, step: int, horizon: int) -> "IPSystemSpec":
        return cls(
            f"arith:{start},{step}",
            tuple(start + n * step for n in range(horizon)),
            1,
        )

    @classmethod
    def geometric(cls, start: int, ratio: int, horizon: int) -> "IPSystemSpec":
        if ratio == 0:
            raise InputError("geometric ratio must be nonzero")
        return cls(
            f"geom:{start},{ratio}",
            tuple(start * ratio**n for n in range(horizon)),
            1,
        )

    @classmethod
    def parse(cls, text: str, horizon: Optional[int] = None) -> "IPSystemSpec":
        """Parse rule syntax: const:k, arith:a,d, geom:a,r, list:v1,v2,..."""
        kind, _, rest = text.strip().partition(":")
        try:
            if kind == "list":
                vals = [int(p) for p in rest.split(",")]
                if horizon is not None and horizon > len(vals):
                    raise InputError("requested horizon exceeds list length")
                return cls.from_terms(vals, rule=text.strip())
            if horizon is None:
                raise InputError(f"rule {text!r} needs an explicit horizon")
            if kind == "const":
                return cls.constant(int(rest), horizon)
            if kind == "arith":
                a, d = (int(p) for p in rest.split(","))
                return cls.arithmetic(a, d, horizon)
            if kind == "geom":
                a, r = (int(p) for p in rest.split(","))
                return cls.geometric(a, r, horizon)
        except InputError:
            raise
        except ValueError as exc:
            raise InputError(f"bad IP-system rule: {text!r}") from exc
        raise InputError(f"unknown IP-system rule kind: {kind!r}")


def ip_term(spec: IPSystemSpec, alpha: FiniteIndexSet) -> Term:
    """The finite sum s_alpha of the generator terms selected by alpha."""
    if alpha.largest() > spec.horizon:
        raise InputError(
            f"index {alpha.largest()} beyond spec horizon {spec.horizon}"
        )
    if spec.width == 1:
        return sum(spec.terms[n - 1] for n in alpha)
    acc = [0] * spec.width
    for n in alpha:
        for i, v in enumerate(spec.terms[n - 1]):
            acc[i] += v
    return tuple(acc)


def fs_enumerate(spec: IPSystemSpec, k: int) -> SetWindow:
    """All finite sums over nonempty subsets of the first k generators."""
    if spec.width != 1:
        raise InputError("finite-sum windows are defined for scalar systems only")
    if not 1 <= k <= spec.horizon:
        raise InputError(f"prefix length {k} outside 1..{spec.horizon}")
    if k > FS_PREFIX_CAP:
        raise BudgetExceededError(
            f"prefix length {k} exceeds the {FS_PREFIX_CAP} cap (2^k - 1 sums)"
        )
    sums: set = set()
    for t in spec.terms[:k]:
        sums |= {t} | {s + t for s in sums}
    if min(sums) < 1:
        raise InputError("finite sums leave the positive integers; no window")
    return SetWindow.from_members(max(sums), sums)


def find_divisible_subsequence(
    spec: IPSystemSpec, c: int, n: int
) -> list[FiniteIndexSet]:
    """A chain alpha_1 < ... < alpha_n with every s_{alpha_i} divisible by c.

    Deterministic pigeonhole: the index line is cut into n disjoint blocks
    of c consecutive indices; inside each block, among the c+1 prefix sums
    two agree mod c (or one is 0), giving a consecutive run whose sum is
    divisible by c.
    """
    if spec.width != 1:
        raise InputError("divisibility search needs a scalar system")
    if c < 1 or n < 1:
        raise InputError("modulus and count must be >= 1")
    if spec.horizon < n * c:
        raise InputError(
            f"horizon {spec.horizon} too small: need at least n*c = {n * c} terms"
        )
    out = []
    for b in range(n):
        start = b * c + 1
        seen = {0: start - 1}  # residue of the empty prefix
        acc = 0
        hit = None
        for t in range(start, start + c):
            acc += spec.terms[t - 1]
            r = acc % c
            if r in seen:
                hit = (seen[r] + 1, t)
                break
            seen[r] = t
        assert hit is not None, "pigeonhole cannot fail within c+1 prefixes"
        out.append(FiniteIndexSet(tuple(range(hit[0], hit[1] + 1))))
    return out


def zero_sum_mod(xs: Sequence[int], n: int) -> Optional[tuple[int, ...]]:
    """1-based indices of a nonempty subset whose sum is divisible by n.

    With len(xs) >= n the consecutive block found by the first repeated
    (or zero) prefix sum mod n always exists.  Shorter inputs fall back to
    exhaustive subset search; None means no subset works.
    """
    if n < 1:
        raise InputError("modulus must be >= 1")
    vals = list(xs)
    if not vals or any((not isinstance(v, int)) or v < 1 for v in vals):
        raise InputError("need a nonempty list of positive integers")
    seen = {0: 0}
    acc = 0
    for j, v in enumerate(vals, start=1):
        acc += v
        r = acc % n
        if r in seen:
            return tuple(range(seen[r] + 1, j + 1))
        seen[r] = j
    # only reachable when len(vals) < n: go exhaustive
    for size in range(1, len(vals) + 1):
        for combo in combinations(range(1, len(vals) + 1), size):
            if sum(vals[i - 1] for i in combo) % n == 0:
                return combo
    return None
