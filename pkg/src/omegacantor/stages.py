"""Brute-force stage constructions over a geometric profile.

The set is the intersection of stages K_0 = [0,1] kept under the rule that a
stage-i interval [l, l + q_i^{-1}] keeps its two ends of length q_{i+1}^{-1}
and vacates the middle.  Everything here manipulates the stage intervals as
exact rational pairs; these functions are deliberately independent of the
digit-stream kernel so the two routes can check each other.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CapacityExceeded, PreconditionError
from .profiles import SequenceProfile

INTERVAL_CAP = 2**16


def _require_geometric(profile: SequenceProfile) -> None:
    if not profile.is_geometric:
        raise PreconditionError("stage constructions need a geometric profile")


def stage_intervals(n: int, profile: SequenceProfile) -> list[tuple[Fraction, Fraction]]:
    """The 2^n closed intervals of stage n, left to right."""
    _require_geometric(profile)
    if n < 0:
        raise PreconditionError("stage must be >= 0")
    profile.check_depth(n)
    if 2**n > INTERVAL_CAP:
        raise CapacityExceeded(f"stage {n} has {2**n} intervals (cap {INTERVAL_CAP})")
    intervals = [(Fraction(0), Fraction(1))]
    for i in range(n):
        q_next = profile.q_inv(i + 1)
        refined: list[tuple[Fraction, Fraction]] = []
        for lo, hi in intervals:
            refined.append((lo, lo + q_next))
            refined.append((hi - q_next, hi))
        intervals = refined
    return intervals


def enumerate_kn(n: int, profile: SequenceProfile) -> list[Fraction]:
    """Sorted endpoints of the stage-n intervals."""
    out: list[Fraction] = []
    for lo, hi in stage_intervals(n, profile):
        out.append(lo)
        out.append(hi)
    return sorted(out)


def stage_gaps(n: int, profile: SequenceProfile) -> list[tuple[Fraction, Fraction]]:
    """Open gaps vacated by stages 1..n, left to right."""
    _require_geometric(profile)
    gaps: list[tuple[Fraction, Fraction]] = []
    intervals = [(Fraction(0), Fraction(1))]
    for i in range(n):
        q_next = profile.q_inv(i + 1)
        refined: list[tuple[Fraction, Fraction]] = []
        for lo, hi in intervals:
            refined.append((lo, lo + q_next))
            refined.append((hi - q_next, hi))
            gaps.append((lo + q_next, hi - q_next))
        intervals = refined
    return sorted(gaps)


def nu_brute(x: Fraction, n: int, profile: SequenceProfile) -> Fraction:
    """The largest stage-n interval endpoint at or below x, for x in [0, 1].

    As n grows these values increase to the value of the largest point of
    the set at or below x; a point of the set that is itself an endpoint is
    hit exactly from its stage on.
    """
    x = Fraction(x)
    if not (0 <= x <= 1):
        raise PreconditionError("input must lie in [0, 1]")
    best = None
    for e in enumerate_kn(n, profile):
        if e <= x:
            best = e
        else:
            break
    assert best is not None, "0 is always an endpoint"
    return best


def brute_vw(n: int, profile: SequenceProfile) -> list[tuple[Fraction, Fraction, Fraction]]:
    """For each gap of stages 1..n: (right end r, gap length v, jump w).

    w is the left end of the nearest gap strictly right of r whose length is
    at least v, or 1 when no such gap exists.  Sorted by r.
    """
    gaps = stage_gaps(n, profile)
    out: list[tuple[Fraction, Fraction, Fraction]] = []
    for lo, hi in gaps:
        v = hi - lo
        w = Fraction(1)
        for lo2, hi2 in gaps:
            if lo2 > hi and hi2 - lo2 >= v:
                w = lo2
                break
        out.append((hi, v, w))
    return sorted(out)
