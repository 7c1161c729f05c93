"""Ultimately periodic words over a track alphabet."""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import TrackAlphabet
from .errors import PreconditionError
from .upset import canonical_up


@dataclass(frozen=True)
class UPWord:
    """The word prefix . period^omega, canonical (minimal period, then
    minimal prefix)."""

    alphabet: TrackAlphabet
    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        for letter in self.prefix + self.period:
            if not (0 <= letter < self.alphabet.n_letters):
                raise PreconditionError(f"letter {letter} outside alphabet")
        pre, per = canonical_up(self.prefix, self.period)
        object.__setattr__(self, "prefix", pre)
        object.__setattr__(self, "period", per)

    def letter_at(self, i: int) -> int:
        if i < 0:
            raise PreconditionError("positions start at 0")
        k = len(self.prefix)
        if i < k:
            return self.prefix[i]
        return self.period[(i - k) % len(self.period)]

    def track_bits(self, track: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The 0-based bit stream of one track as canonical (prefix, period)."""
        pre = tuple(self.alphabet.track_bit(l, track) for l in self.prefix)
        per = tuple(self.alphabet.track_bit(l, track) for l in self.period)
        return canonical_up(pre, per)


def word_from_tracks(
    alphabet: TrackAlphabet,
    tracks: dict[str, tuple[tuple[int, ...], tuple[int, ...]]],
) -> UPWord:
    """Assemble a word from per-track (prefix, period) bit streams."""
    import math

    if set(tracks) != set(alphabet.tracks):
        raise PreconditionError("track set mismatch")
    max_pre = max((len(p) for p, _ in tracks.values()), default=0)
    lcm = math.lcm(*(len(q) for _, q in tracks.values())) if tracks else 1

    def bit(track: str, i: int) -> int:
        pre, per = tracks[track]
        if i < len(pre):
            return pre[i]
        return per[(i - len(pre)) % len(per)]

    prefix = tuple(
        alphabet.make_letter({t: bit(t, i) for t in alphabet.tracks})
        for i in range(max_pre)
    )
    period = tuple(
        alphabet.make_letter({t: bit(t, max_pre + j) for t in alphabet.tracks})
        for j in range(lcm)
    )
    return UPWord(alphabet, prefix, period)
