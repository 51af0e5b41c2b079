"""Finite set windows S intersected with [1..N].

Every search in the toolkit runs on such a window; infinite statements
only ever get finite-scale shadows here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import InputError


@dataclass(frozen=True)
class SetWindow:
    """A subset of [1..horizon], stored sorted."""

    horizon: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.horizon < 1:
            raise InputError("window horizon must be >= 1")
        prev = 0
        for v in self.members:
            if not isinstance(v, int):
                raise InputError("window members must be integers")
            if v <= prev:
                raise InputError("window members must be strictly increasing")
            prev = v
        if self.members and self.members[-1] > self.horizon:
            raise InputError("window member exceeds horizon")

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, n) -> bool:
        return n in self.member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @classmethod
    def from_members(cls, horizon: int, members: Iterable[int]) -> "SetWindow":
        return cls(horizon, tuple(sorted(set(members))))

    @classmethod
    def full(cls, horizon: int) -> "SetWindow":
        return cls(horizon, tuple(range(1, horizon + 1)))

    @classmethod
    def odds(cls, horizon: int) -> "SetWindow":
        return cls(horizon, tuple(range(1, horizon + 1, 2)))

    @classmethod
    def evens(cls, horizon: int) -> "SetWindow":
        return cls(horizon, tuple(range(2, horizon + 1, 2)))

    @classmethod
    def residue_class(cls, residue: int, modulus: int, horizon: int) -> "SetWindow":
        if modulus < 1:
            raise InputError("modulus must be >= 1")
        r = residue % modulus
        first = r if r >= 1 else modulus
        return cls(horizon, tuple(range(first, horizon + 1, modulus)))

    def restrict(self, horizon: int) -> "SetWindow":
        """The same set cut down to a smaller horizon."""
        if horizon > self.horizon:
            raise InputError("restrict() cannot grow the horizon")
        return SetWindow(horizon, tuple(v for v in self.members if v <= horizon))

    @classmethod
    def from_text(cls, text: str) -> "SetWindow":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise InputError("empty window text")
        try:
            horizon = int(lines[0])
            members = [int(ln) for ln in lines[1:]]
        except ValueError as exc:
            raise InputError("window file lines must be integers") from exc
        return cls.from_members(horizon, members)

    def to_text(self) -> str:
        return "\n".join([str(self.horizon)] + [str(v) for v in self.members]) + "\n"

    @classmethod
    def from_file(cls, path: str) -> "SetWindow":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    @classmethod
    def from_expression(cls, expr: str) -> "SetWindow":
        """Parse set expressions: all:N, odds:N, evens:N, mod:r,m,N,
        fs:rule,k, file:PATH, or a bare file path."""
        expr = expr.strip()
        if ":" not in expr:
            if os.path.exists(expr):
                return cls.from_file(expr)
            raise InputError(f"unknown set expression: {expr!r}")
        kind, _, rest = expr.partition(":")
        try:
            if kind == "all":
                return cls.full(int(rest))
            if kind == "odds":
                return cls.odds(int(rest))
            if kind == "evens":
                return cls.evens(int(rest))
            if kind == "mod":
                r, m, n = (int(p) for p in rest.split(","))
                return cls.residue_class(r, m, n)
            if kind == "file":
                return cls.from_file(rest)
            if kind == "fs":
                # the rule itself may contain commas: split on the last one
                rule, _, ktext = rest.rpartition(",")
                if not rule:
                    raise InputError("fs expression needs a rule and a prefix length")
                k = int(ktext)
                from .ipcore import IPSystemSpec, fs_enumerate

                return fs_enumerate(IPSystemSpec.parse(rule, horizon=k), k)
        except InputError:
            raise
        except ValueError as exc:
            raise InputError(f"bad set expression: {expr!r}") from exc
        raise InputError(f"unknown set expression kind: {kind!r}")
