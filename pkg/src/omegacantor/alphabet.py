"""Track alphabets and letter predicates.

A letter over tracks (t_0, ..., t_{w-1}) is an integer in [0, 2^w): track i
owns bit (w-1-i), so the integer order of letters equals the lexicographic
order by track index used for canonical tie-breaking.  Transitions carry
predicates over letters rather than exploded letters; a predicate is stored
as a mask of relevant bits plus the set of accepted bit patterns under that
mask, reduced so that irrelevant bits never appear in the mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import PreconditionError


@dataclass(frozen=True)
class TrackAlphabet:
    tracks: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.tracks)) != len(self.tracks):
            raise PreconditionError("duplicate track names")

    @property
    def width(self) -> int:
        return len(self.tracks)

    @property
    def n_letters(self) -> int:
        return 1 << self.width

    def letters(self) -> range:
        return range(self.n_letters)

    def bit_of(self, track: str) -> int:
        try:
            i = self.tracks.index(track)
        except ValueError:
            raise PreconditionError(f"unknown track {track!r}") from None
        return self.width - 1 - i

    def track_bit(self, letter: int, track: str) -> int:
        return (letter >> self.bit_of(track)) & 1

    def make_letter(self, bits: dict[str, int]) -> int:
        letter = 0
        for track, b in bits.items():
            if b:
                letter |= 1 << self.bit_of(track)
        return letter

    def without(self, track: str) -> "TrackAlphabet":
        if track not in self.tracks:
            raise PreconditionError(f"unknown track {track!r}")
        return TrackAlphabet(tuple(t for t in self.tracks if t != track))


def _reduce(width: int, mask: int, patterns: frozenset[int]) -> tuple[int, frozenset[int]]:
    """Drop mask bits that never influence membership."""
    changed = True
    while changed:
        changed = False
        for b in range(width):
            bit = 1 << b
            if not (mask & bit):
                continue
            if all((p ^ bit) in patterns for p in patterns):
                mask &= ~bit
                patterns = frozenset(p & ~bit for p in patterns)
                changed = True
    if patterns == frozenset() and mask != 0:
        mask = 0
    return mask, patterns


@dataclass(frozen=True)
class LetterPred:
    """Predicate over letters of a fixed-width alphabet."""

    width: int
    mask: int
    patterns: frozenset[int]

    def __post_init__(self) -> None:
        full = (1 << self.width) - 1
        if self.mask & ~full:
            raise PreconditionError("mask outside alphabet width")
        for p in self.patterns:
            if p & ~self.mask:
                raise PreconditionError("pattern outside mask")
        mask, patterns = _reduce(self.width, self.mask, frozenset(self.patterns))
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "patterns", patterns)

    @classmethod
    def true(cls, width: int) -> "LetterPred":
        return cls(width, 0, frozenset({0}))

    @classmethod
    def false(cls, width: int) -> "LetterPred":
        return cls(width, 0, frozenset())

    @classmethod
    def bit_is(cls, width: int, bit: int, value: int) -> "LetterPred":
        mask = 1 << bit
        return cls(width, mask, frozenset({mask if value else 0}))

    @classmethod
    def of_letters(cls, width: int, letters: Iterable[int]) -> "LetterPred":
        full = (1 << width) - 1
        return cls(width, full, frozenset(letters))

    def satisfies(self, letter: int) -> bool:
        return (letter & self.mask) in self.patterns

    @property
    def is_false(self) -> bool:
        return not self.patterns

    def conj(self, other: "LetterPred") -> "LetterPred":
        if self.width != other.width:
            raise PreconditionError("width mismatch")
        mask = self.mask | other.mask
        shared = self.mask & other.mask
        pats = set()
        for p in self.patterns:
            for q in other.patterns:
                if (p & shared) == (q & shared):
                    pats.add(p | q)
        return LetterPred(self.width, mask, frozenset(pats))

    def disj(self, other: "LetterPred") -> "LetterPred":
        if self.width != other.width:
            raise PreconditionError("width mismatch")
        mask = self.mask | other.mask
        pats = set()
        for p in self.patterns:
            for extra in _expansions(mask & ~self.mask):
                pats.add(p | extra)
        for q in other.patterns:
            for extra in _expansions(mask & ~other.mask):
                pats.add(q | extra)
        return LetterPred(self.width, mask, frozenset(pats))

    def negate(self) -> "LetterPred":
        pats = frozenset(
            p for p in _expansions(self.mask) if p not in self.patterns
        )
        return LetterPred(self.width, self.mask, pats)

    def project_bit(self, bit: int) -> "LetterPred":
        """Existentially collapse one bit, shifting higher bits down."""
        b = 1 << bit
        low = b - 1
        mask = ((self.mask & ~low & ~b) >> 1) | (self.mask & low)
        pats = frozenset(((p & ~low & ~b) >> 1) | (p & low) for p in self.patterns)
        return LetterPred(self.width - 1, mask, pats)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.mask, tuple(sorted(self.patterns)))


def _expansions(bits: int) -> list[int]:
    """All subsets of the set bits of the given mask."""
    out = [0]
    b = 1
    while b <= bits:
        if bits & b:
            out = [p | extra for p in out for extra in (0, b)]
        b <<= 1
    return out
