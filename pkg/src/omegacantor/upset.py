"""Ultimately periodic subsets of the positive integers.

An ``UPSet`` stores the characteristic bits of a set S as a finite prefix
followed by a repeating period, position 1 first.  Instances are always kept
in canonical form: the period has minimal length, and the prefix is as short
as possible given that period.  Canonical form makes structural equality
coincide with set equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TypeVar

from .errors import PreconditionError

T = TypeVar("T")


def canonical_up(prefix: Sequence[T], period: Sequence[T]) -> tuple[tuple[T, ...], tuple[T, ...]]:
    """Canonicalize an eventually periodic sequence given as (prefix, period).

    The period is reduced to its shortest cyclic root, then trailing prefix
    items equal to the period's last item are absorbed by rotating the period
    right (which leaves the infinite sequence unchanged).  Works for any item
    type; the kernel uses bits and the automata layer uses letters.
    """
    pre = list(prefix)
    per = tuple(period)
    if not per:
        raise PreconditionError("period must be nonempty")
    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per[:d] * (n // d) == per:
            per = per[:d]
            break
    while pre and pre[-1] == per[-1]:
        per = (per[-1],) + per[:-1]
        pre.pop()
    return tuple(pre), per


@dataclass(frozen=True)
class UPSet:
    """An ultimately periodic subset of {1, 2, 3, ...}, stored canonically."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        for b in self.prefix + self.period:
            if b not in (0, 1):
                raise PreconditionError(f"bits must be 0 or 1, got {b!r}")
        pre, per = canonical_up(self.prefix, self.period)
        object.__setattr__(self, "prefix", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def from_finite(cls, members: Iterable[int]) -> "UPSet":
        ms = sorted(set(members))
        if ms and ms[0] < 1:
            raise PreconditionError("members must be >= 1")
        top = ms[-1] if ms else 0
        bits = tuple(1 if n in set(ms) else 0 for n in range(1, top + 1))
        return cls(bits, (0,))

    @classmethod
    def empty(cls) -> "UPSet":
        return cls((), (0,))

    @classmethod
    def full(cls) -> "UPSet":
        return cls((), (1,))

    @classmethod
    def tail(cls, a: int) -> "UPSet":
        """The set {n : n > a}."""
        if a < 0:
            raise PreconditionError("tail level must be >= 0")
        return cls((0,) * a, (1,))

    def bit(self, n: int) -> int:
        if n < 0:
            raise PreconditionError("positions start at 0")
        if n == 0:
            return 0  # members start at 1, so position 0 never holds
        k = len(self.prefix)
        if n <= k:
            return self.prefix[n - 1]
        return self.period[(n - k - 1) % len(self.period)]

    @property
    def is_empty(self) -> bool:
        return not any(self.prefix) and not any(self.period)

    @property
    def is_finite(self) -> bool:
        return not any(self.period)

    def members_upto(self, limit: int) -> list[int]:
        return [n for n in range(1, limit + 1) if self.bit(n)]

    def finite_members(self) -> tuple[int, ...]:
        if not self.is_finite:
            raise PreconditionError("set is infinite")
        return tuple(n for n in range(1, len(self.prefix) + 1) if self.prefix[n - 1])

    def min_member(self) -> int | None:
        for n in range(1, len(self.prefix) + len(self.period) + 1):
            if self.bit(n):
                return n
        return None

    def restrict_upto(self, a: int) -> "UPSet":
        """The finite set S intersect [1, a]."""
        if a < 0:
            raise PreconditionError("cut level must be >= 0")
        return UPSet(tuple(self.bit(n) for n in range(1, a + 1)), (0,))

    def tail_level(self) -> int | None:
        """If S = {n : n > a} for some a >= 0, return a, else None."""
        if self.period == (1,) and not any(self.prefix):
            return len(self.prefix)
        return None

    def sort_key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.prefix, self.period)

    def __str__(self) -> str:
        pre = "".join(str(b) for b in self.prefix)
        per = "".join(str(b) for b in self.period)
        return f"up({pre};{per})"
