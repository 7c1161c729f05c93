"""Left-neighbor map, scale locator, and complementary gaps.

``nu`` sends a combo x with 0 < x < 1 to the largest point of the set that
is <= x.  For a point it is the identity; otherwise the digit stream of x
has a first position m whose digit u is outside {0, 1}, and the image is
assembled from the truncation below m by case analysis on u.  Each case also
yields the enclosing complementary gap (v, w), which certifies the answer:
in a geometric profile the certificate is checked exactly and a failure
raises GrowthInsufficient; in the formal profile it is a theorem of the
digit rules and checked as an internal assertion.
"""

from __future__ import annotations

from .errors import GrowthInsufficient, PreconditionError
from .kernel import ComboLike, as_point, digit, sign, stream_horizon
from .points import FormalCombo, as_combo, tail_point
from .profiles import SequenceProfile
from .upset import UPSet

ONE = FormalCombo.of(UPSet.full())


def _require_unit_interval(x: FormalCombo, profile: SequenceProfile) -> None:
    if sign(x, profile) != 1:
        raise PreconditionError("input must be positive")
    if sign(x - ONE, profile) != -1:
        raise PreconditionError("input must be below 1")


def _first_bad_position(x: FormalCombo) -> tuple[int, list[int]]:
    """The least position whose digit is outside {0,1}, plus the 0/1 digits
    strictly before it."""
    bits: list[int] = []
    for n in range(1, stream_horizon(x) + 1):
        d = digit(x, n)
        if d == 0 or d == 1:
            bits.append(int(d))
            continue
        return n, bits
    raise PreconditionError("digit stream is {0,1}-valued; no corner to resolve")


def nu(x: ComboLike, profile: SequenceProfile) -> FormalCombo:
    """The largest point of the set at or below x, for 0 < x < 1.

    Points map to themselves.  Otherwise, with m the first position whose
    digit u leaves {0,1} and bits the digits below m (a = m - 1):

    * 0 < u < 1: the gap is the one vacated at level m inside the piece of
      the truncation, so nu = trunc(a) + tail(a+1).
    * u > 1: x overshoots the right end of its level-a piece; with b the
      deepest zero bit at or below a, the gap runs up to trunc(b-1) + {b},
      and nu = trunc(a) + tail(a).
    * u < 0: x undershoots; with b the deepest one bit at or below a, the
      gap ends at trunc(a) itself and nu = trunc(b-1) + tail(b).

    The enclosing gap (v, w) with v = nu(x) is certified: exactly in a
    geometric profile (value(v) <= value(x) < value(w), else
    GrowthInsufficient), by the digit rule in the formal profile.
    """
    combo = as_combo(x)
    _require_unit_interval(combo, profile)
    direct = as_point(combo)
    if direct is not None:
        return FormalCombo.of(direct)

    m, bits = _first_bad_position(combo)
    a = m - 1
    u = digit(combo, m)

    if 0 < u < 1:
        v = UPSet(tuple(bits[:a]) + (0,), (1,))
        w = UPSet(tuple(bits[:a]) + (1,), (0,))
    elif u > 1:
        b = max((t for t in range(1, a + 1) if bits[t - 1] == 0), default=None)
        assert b is not None, "no zero bit below an overshoot contradicts x < 1"
        v = UPSet(tuple(bits[:a]), (1,))
        w = UPSet(tuple(bits[: b - 1]) + (1,), (0,))
    else:
        b = max((t for t in range(1, a + 1) if bits[t - 1] == 1), default=None)
        assert b is not None, "no one bit above an undershoot contradicts x > 0"
        v = UPSet(tuple(bits[: b - 1]) + (0,), (1,))
        w = UPSet(tuple(bits[:a]), (0,))

    if profile.is_geometric:
        xv = combo.value(profile)
        if not (FormalCombo.of(v).value(profile) <= xv < FormalCombo.of(w).value(profile)):
            raise GrowthInsufficient(
                "gap certificate failed: the scales are too slow for the "
                f"digit-rule answer {v} to bound the exact value {xv}"
            )
    else:
        assert sign(combo - FormalCombo.of(v), profile) >= 0
        assert sign(FormalCombo.of(w) - combo, profile) == 1
    return FormalCombo.of(v)


def lambda_inv(x: ComboLike, profile: SequenceProfile) -> int:
    """The largest level a with x <= q_a^{-1}, for 0 < x <= 1.

    In a geometric profile the comparison is the exact order; in the formal
    profile it is the digit rule against the tail point of each level (the
    scan stops by level mu(x), where the difference turns positive).
    """
    combo = as_combo(x)
    if sign(combo, profile) != 1:
        raise PreconditionError("input must be positive")
    if profile.is_geometric:
        v = combo.value(profile)
        if v > 1:
            raise PreconditionError("input must be at most 1")
        a = 0
        while v <= profile.q_inv(a + 1):
            a += 1
        return a
    if sign(combo - ONE, profile) > 0:
        raise PreconditionError("input must be at most 1")
    a = 0
    while sign(combo - FormalCombo.of(tail_point(a + 1)), profile) <= 0:
        a += 1
    return a


def comp_interval(c: UPSet, a: int, kind: str) -> tuple[FormalCombo, FormalCombo]:
    """The maximal complementary gap of the given kind at level a of point c.

    * ``inner``: the gap vacated at level a inside the level-(a-1) piece
      around c; endpoints trunc(a-1) + tail(a) and trunc(a-1) + {a}.
    * ``right``: the gap just right of the level-a piece; needs a zero bit
      at or below a (deepest such level b), endpoints trunc(a) + tail(a)
      and trunc(b-1) + {b}.
    * ``left``: the gap just left of trunc(a); needs a one bit at or below
      a (deepest such level b), endpoints trunc(b-1) + tail(b) and trunc(a).

    Both endpoints are points of the set; the open interval between them
    misses the set entirely, and no larger open interval around it does.
    """
    if a < 1:
        raise PreconditionError("gap level must be >= 1")
    bits = [c.bit(n) for n in range(1, a + 1)]
    if kind == "inner":
        left = UPSet(tuple(bits[: a - 1]) + (0,), (1,))
        right = UPSet(tuple(bits[: a - 1]) + (1,), (0,))
    elif kind == "right":
        b = max((t for t in range(1, a + 1) if bits[t - 1] == 0), default=None)
        if b is None:
            raise PreconditionError("no zero bit at or below the level; no right gap")
        left = UPSet(tuple(bits[:a]), (1,))
        right = UPSet(tuple(bits[: b - 1]) + (1,), (0,))
    elif kind == "left":
        b = max((t for t in range(1, a + 1) if bits[t - 1] == 1), default=None)
        if b is None:
            raise PreconditionError("no one bit at or below the level; no left gap")
        left = UPSet(tuple(bits[: b - 1]) + (0,), (1,))
        right = UPSet(tuple(bits[:a]), (0,))
    else:
        raise PreconditionError(f"unknown gap kind {kind!r}")
    return FormalCombo.of(left), FormalCombo.of(right)
