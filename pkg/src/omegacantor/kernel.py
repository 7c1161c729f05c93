"""Digit-stream kernel: truncation, first difference, sign, point recovery.

A combo x = sum_j r_j [S_j] induces the digit stream d_n = sum_j r_j 1{n in
S_j} (n >= 1), which is ultimately periodic with period lcm of the charset
periods.  All operations here are driven by that stream; the geometric
profile additionally checks them against exact rational values.

The lexicographic sign rule (sign of x = sign of the first nonzero digit) is
definitional in the formal profile.  In a geometric profile it can disagree
with the exact order of values, so ``sign`` accepts it only when a dominance
certificate holds or the exact evaluation agrees, and raises
GrowthInsufficient otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import GrowthInsufficient, PreconditionError
from .points import FormalCombo, as_combo
from .profiles import SequenceProfile
from .upset import UPSet

ComboLike = Union[FormalCombo, UPSet]


def stream_horizon(x: ComboLike) -> int:
    """A position H such that the digit stream of x is periodic beyond the
    longest prefix with period dividing H minus that prefix."""
    combo = as_combo(x)
    if combo.is_zero:
        return 1
    max_prefix = max(len(p.prefix) for p in combo.points())
    period = math.lcm(*(len(p.period) for p in combo.points()))
    return max_prefix + period


def digit(x: ComboLike, n: int) -> Fraction:
    """The digit sum d_n of the combo at position n; d_0 is always 0."""
    if n < 0:
        raise PreconditionError("positions start at 0")
    combo = as_combo(x)
    return sum((c * p.bit(n) for p, c in combo.terms), Fraction(0))


def digits_upto(x: ComboLike, upto: int) -> list[Fraction]:
    """Digits d_0 .. d_upto inclusive, so the list index is the position."""
    combo = as_combo(x)
    return [digit(combo, n) for n in range(0, upto + 1)]


def mu(x: ComboLike) -> int | None:
    """The least position with a nonzero digit, or None for the zero stream."""
    combo = as_combo(x)
    for n in range(1, stream_horizon(combo) + 1):
        if digit(combo, n) != 0:
            return n
    return None


def e_trunc(a: int, c: UPSet) -> UPSet:
    """The truncated point with charset S(c) cut at level a."""
    if a < 0:
        raise PreconditionError("truncation level must be >= 0")
    return c.restrict_upto(a)


def as_point(x: ComboLike) -> UPSet | None:
    """The point whose charset matches the digit stream of x, if the stream
    is {0,1}-valued; None otherwise.

    This is representational: in slow-growth profiles distinct streams can
    share a value, and a combo whose stream is not {0,1}-valued is never
    identified with a point even if their values collide.
    """
    combo = as_combo(x)
    if combo.is_zero:
        return UPSet.empty()
    max_prefix = max(len(p.prefix) for p in combo.points())
    period = math.lcm(*(len(p.period) for p in combo.points()))
    bits: list[int] = []
    for n in range(1, max_prefix + period + 1):
        d = digit(combo, n)
        if d == 0:
            bits.append(0)
        elif d == 1:
            bits.append(1)
        else:
            return None
    return UPSet(tuple(bits[:max_prefix]), tuple(bits[max_prefix:]))


def sign(x: ComboLike, profile: SequenceProfile) -> int:
    """Order sign of x against zero.

    Formal profile: the sign of the first nonzero digit (0 for the zero
    stream).  Geometric profile: the same rule, accepted only when a
    dominance certificate holds (|d_mu| (M-1) exceeds the total coefficient
    weight, which bounds every deeper digit) or the exact rational value
    agrees; if the exact order contradicts the digit rule, the scales grow
    too slowly for the comparison and GrowthInsufficient is raised.
    """
    combo = as_combo(x)
    m = mu(combo)
    lex = 0
    if m is not None:
        d = digit(combo, m)
        lex = 1 if d > 0 else -1
    if not profile.is_geometric:
        return lex
    exact = combo.value(profile)
    if m is None:
        return 0
    assert profile.modulus is not None
    d = digit(combo, m)
    if abs(d) * (profile.modulus - 1) > combo.total_weight():
        return lex
    exact_sign = 0 if exact == 0 else (1 if exact > 0 else -1)
    if exact_sign == lex:
        return lex
    raise GrowthInsufficient(
        f"digit rule gives sign {lex} at position {m} but exact value is {exact}"
    )


def value_approx(
    x: ComboLike, profile: SequenceProfile, depth: int
) -> tuple[Fraction, Fraction]:
    """Exact enclosure [lo, hi] of the value from the depth-level truncation.

    Truncating every charset at the given depth drops, per point, a tail
    between 0 and q_depth^{-1}; signed coefficients turn that into the
    two-sided bound below, of width (sum |r_j|) q_depth^{-1}.
    """
    if depth < 0:
        raise PreconditionError("depth must be >= 0")
    if not profile.is_geometric:
        raise PreconditionError("approximation bounds need a geometric profile")
    profile.check_depth(depth)
    combo = as_combo(x)
    truncated = FormalCombo.build(
        [(e_trunc(depth, p), c) for p, c in combo.terms]
    )
    base = truncated.value(profile)
    q = profile.q_inv(depth)
    lo = base + sum((c * q for _, c in combo.terms if c < 0), Fraction(0))
    hi = base + sum((c * q for _, c in combo.terms if c > 0), Fraction(0))
    return lo, hi


def _height(r: Fraction) -> int:
    return max(abs(r.numerator), r.denominator)


def xi_threshold(coeffs: tuple[Fraction, ...] | list[Fraction]) -> int:
    """Level threshold for the small-tail axiom of a coefficient tuple.

    Collects every ratio (s . r) / (2 (t . r) + 1) over sign vectors s, t in
    {-1, 0, 1}^k (skipping the degenerate zero denominator) and returns one
    more than the largest numerator/denominator height among them.  Beyond
    this level, combos over these coefficients that certify dominance have
    their leading digit within the window the axiom demands.
    """
    rs = [Fraction(c) for c in coeffs]
    if not rs:
        return 1
    best = 0
    k = len(rs)
    signs = [-1, 0, 1]

    def vectors(length: int):
        if length == 0:
            yield ()
            return
        for rest in vectors(length - 1):
            for s in signs:
                yield (s,) + rest

    dots = {}
    for vec in vectors(k):
        dots[vec] = sum(s * r for s, r in zip(vec, rs))
    for svec, sdot in dots.items():
        for tvec, tdot in dots.items():
            den = 2 * tdot + 1
            if den == 0:
                continue
            best = max(best, _height(Fraction(sdot, den)))
    return best + 1
