"""Deuber tower systems: generation, verification, and window search.

A tower with parameters (m, p, c) and generating tuple (s0, ..., sm)
consists of all values c*s_k + i_{k-1}*s_{k-1} + ... + i_0*s_0 with each
|i_j| <= p.  Containment of every such tower is the combinatorial bridge
between solvability of partition regular systems and set structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence

from .errors import InputError, MpcExpansionError
from .windows import SetWindow


@dataclass(frozen=True)
class MpcParams:
    m: int
    p: int
    c: int

    def __post_init__(self):
        if self.m < 0:
            raise InputError("m must be >= 0")
        if self.p < 1 or self.c < 1:
            raise InputError("p and c must be >= 1")


@dataclass(frozen=True)
class MpcSystem:
    params: MpcParams
    generators: tuple[int, ...]
    values: tuple[int, ...]


def mpc_size(m: int, p: int) -> int:
    """Row count of the expansion: sum of (2p+1)^k for k = 0..m."""
    if m < 0 or p < 1:
        raise InputError("need m >= 0 and p >= 1")
    return ((2 * p + 1) ** (m + 1) - 1) // (2 * p)


def iter_rows(
    params: MpcParams, generators: Sequence[int]
) -> Iterator[tuple[int, tuple[int, ...], int]]:
    """Yield (level k, coefficient pattern (i_0..i_{k-1}), value) in the
    deterministic order: levels ascending, patterns lexicographic."""
    gens = list(generators)
    if len(gens) != params.m + 1:
        raise InputError(f"need {params.m + 1} generators, got {len(gens)}")
    if any((not isinstance(g, int)) or g < 1 for g in gens):
        raise InputError("generators must be positive integers")
    coeffs = range(-params.p, params.p + 1)
    for k in range(params.m + 1):
        lead = params.c * gens[k]
        for pattern in product(coeffs, repeat=k):
            yield k, pattern, lead + sum(i * s for i, s in zip(pattern, gens))


def generate_mpc(params: MpcParams, generators: Sequence[int]) -> MpcSystem:
    """Expand a generating tuple; rejects tuples whose expansion dips below 1."""
    values = set()
    for k, pattern, value in iter_rows(params, generators):
        if value < 1:
            raise MpcExpansionError(k, pattern, value)
        values.add(value)
    return MpcSystem(params, tuple(generators), tuple(sorted(values)))


def verify_mpc(
    window: SetWindow, params: MpcParams, generators: Sequence[int]
) -> bool:
    """True iff every expanded value lies in the window."""
    system = generate_mpc(params, generators)
    return all(v in window.member_set for v in system.values)


def contains_mpc(
    window: SetWindow, params: MpcParams, bound: int
) -> Optional[tuple[int, ...]]:
    """Lexicographically least generating tuple with generators <= bound
    whose whole expansion lies in the window, or None.

    Depth-first over s_0, s_1, ... ascending; level k is pruned as soon as
    one of its rows (which only involve s_0..s_k) leaves the window, and
    tuples whose rows dip below 1 are skipped rather than clipped.
    """
    if bound < 1:
        raise InputError("generator bound must be >= 1")
    members = window.member_set
    coeffs = range(-params.p, params.p + 1)

    def level_ok(gens: list[int], k: int) -> bool:
        lead = params.c * gens[k]
        for pattern in product(coeffs, repeat=k):
            value = lead + sum(i * s for i, s in zip(pattern, gens))
            if value < 1 or value not in members:
                return False
        return True

    def descend(gens: list[int]) -> Optional[tuple[int, ...]]:
        k = len(gens)
        if k == params.m + 1:
            return tuple(gens)
        for s in range(1, bound + 1):
            gens.append(s)
            if level_ok(gens, k):
                found = descend(gens)
                if found is not None:
                    return found
            gens.pop()
        return None

    return descend([])
