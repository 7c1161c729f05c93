"""Points of the self-similar set and formal rational combinations of them.

A point is identified with its charset, an :class:`~omegacantor.upset.UPSet`:
the point's value is h(S) = sum over n in S of (q_{n-1}^{-1} - q_n^{-1}).
A :class:`FormalCombo` is a finite formal sum of points with rational
coefficients; all kernel operations act on combos (a bare point is the combo
with a single coefficient 1).

In a geometric profile the value of any combo is an exact rational, computed
by geometric series.  The formal profile assigns no numeric values; there the
combo is the object itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import ParseError, PreconditionError
from .profiles import SequenceProfile
from .upset import UPSet

Rational = Union[int, Fraction]


def point_value(s: UPSet, profile: SequenceProfile) -> Fraction:
    """Exact value h(S) in a geometric profile.

    Position n carries weight (M - 1) M^{-n}; the periodic part sums by
    geometric series, so the result is exact for every ultimately periodic
    charset.
    """
    if not profile.is_geometric:
        raise PreconditionError("exact values need a geometric profile")
    m = profile.modulus
    assert m is not None
    total = Fraction(0)
    k = len(s.prefix)
    for n in range(1, k + 1):
        if s.prefix[n - 1]:
            total += Fraction(m - 1, m**n)
    p = len(s.period)
    cycle = Fraction(m**p, m**p - 1)
    for o in range(1, p + 1):
        if s.period[o - 1]:
            total += Fraction(m - 1, m ** (k + o)) * cycle
    return total


@dataclass(frozen=True)
class FormalCombo:
    """A formal sum  r_1 * [S_1] + ... + r_k * [S_k]  with nonzero rational
    coefficients and pairwise distinct points, stored sorted by charset."""

    terms: tuple[tuple[UPSet, Fraction], ...]

    def __post_init__(self) -> None:
        seen = set()
        for point, coeff in self.terms:
            if coeff == 0:
                raise PreconditionError("zero coefficient in combo")
            if point in seen:
                raise PreconditionError("duplicate point in combo")
            seen.add(point)
        ordered = tuple(sorted(self.terms, key=lambda t: t[0].sort_key()))
        object.__setattr__(self, "terms", ordered)

    @classmethod
    def build(cls, pairs: Iterable[tuple[UPSet, Rational]]) -> "FormalCombo":
        acc: dict[UPSet, Fraction] = {}
        for point, coeff in pairs:
            acc[point] = acc.get(point, Fraction(0)) + Fraction(coeff)
        return cls(tuple((p, c) for p, c in acc.items() if c != 0))

    @classmethod
    def zero(cls) -> "FormalCombo":
        return cls(())

    @classmethod
    def of(cls, point: UPSet, coeff: Rational = 1) -> "FormalCombo":
        return cls.build([(point, coeff)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def points(self) -> tuple[UPSet, ...]:
        return tuple(p for p, _ in self.terms)

    def coeff_of(self, point: UPSet) -> Fraction:
        for p, c in self.terms:
            if p == point:
                return c
        return Fraction(0)

    def total_weight(self) -> Fraction:
        """Sum of |coefficients|, the R in every tail estimate."""
        return sum((abs(c) for _, c in self.terms), Fraction(0))

    def __add__(self, other: "FormalCombo") -> "FormalCombo":
        return FormalCombo.build(list(self.terms) + list(other.terms))

    def __sub__(self, other: "FormalCombo") -> "FormalCombo":
        return self + (-1) * other

    def __rmul__(self, scalar: Rational) -> "FormalCombo":
        s = Fraction(scalar)
        if s == 0:
            return FormalCombo.zero()
        return FormalCombo(tuple((p, s * c) for p, c in self.terms))

    def __neg__(self) -> "FormalCombo":
        return (-1) * self

    def value(self, profile: SequenceProfile) -> Fraction:
        """Exact rational value in a geometric profile."""
        total = Fraction(0)
        for point, coeff in self.terms:
            total += coeff * point_value(point, profile)
        return total

    def __str__(self) -> str:
        return render_combo(self)


ONE_POINT = UPSet.full()


def tail_point(a: int) -> UPSet:
    """The point with charset {n : n > a}, of value q_a^{-1}."""
    return UPSet.tail(a)


def as_combo(x: Union[FormalCombo, UPSet]) -> FormalCombo:
    if isinstance(x, UPSet):
        return FormalCombo.of(x)
    return x


# --- textual combo syntax -------------------------------------------------
#
#   combo  := ["-"] term (("+" | "-") term)*
#   term   := rational ["*" atom] | atom
#   atom   := "pt(" bits ";" bits ")" | "inv(" nat ")"
#   rational := int ["/" int]
#
# pt positions are 1-based charset bits (prefix;period); inv(a) is the tail
# point {n : n > a}; a bare rational r abbreviates r * inv(0) (value r).


class _ComboLexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, ch: str) -> None:
        self.skip_ws()
        if not self.text.startswith(ch, self.pos):
            raise ParseError(f"expected {ch!r} at offset {self.pos} in combo")
        self.pos += len(ch)

    def at_word(self, word: str) -> bool:
        self.skip_ws()
        return self.text.startswith(word, self.pos)

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(f"expected a number at offset {start} in combo")
        return int(self.text[start:self.pos])

    def read_bits(self) -> tuple[int, ...]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "01":
            self.pos += 1
        return tuple(int(b) for b in self.text[start:self.pos])


def _parse_atom(lx: _ComboLexer) -> UPSet:
    if lx.at_word("pt"):
        lx.eat("pt")
        lx.eat("(")
        prefix = lx.read_bits()
        lx.eat(";")
        period = lx.read_bits()
        lx.eat(")")
        if not period:
            raise ParseError("pt needs a nonempty period")
        return UPSet(prefix, period)
    if lx.at_word("inv"):
        lx.eat("inv")
        lx.eat("(")
        a = lx.read_int()
        lx.eat(")")
        return tail_point(a)
    raise ParseError(f"expected pt(...) or inv(...) at offset {lx.pos} in combo")


def _parse_rational(lx: _ComboLexer) -> Fraction:
    num = lx.read_int()
    if lx.peek() == "/":
        lx.eat("/")
        den = lx.read_int()
        if den == 0:
            raise ParseError("zero denominator in combo")
        return Fraction(num, den)
    return Fraction(num)


def _parse_term(lx: _ComboLexer) -> tuple[UPSet, Fraction]:
    if lx.peek().isdigit():
        coeff = _parse_rational(lx)
        if lx.peek() == "*":
            lx.eat("*")
            return _parse_atom(lx), coeff
        return ONE_POINT, coeff
    return _parse_atom(lx), Fraction(1)


def parse_combo(text: str) -> FormalCombo:
    lx = _ComboLexer(text)
    sign = Fraction(1)
    if lx.peek() == "-":
        lx.eat("-")
        sign = Fraction(-1)
    point, coeff = _parse_term(lx)
    pairs = [(point, sign * coeff)]
    while True:
        ch = lx.peek()
        if ch == "+":
            lx.eat("+")
            sign = Fraction(1)
        elif ch == "-":
            lx.eat("-")
            sign = Fraction(-1)
        elif ch == "":
            break
        else:
            raise ParseError(f"unexpected {ch!r} at offset {lx.pos} in combo")
        point, coeff = _parse_term(lx)
        pairs.append((point, sign * coeff))
    return FormalCombo.build(pairs)


def render_point(point: UPSet) -> str:
    level = point.tail_level()
    if level is not None:
        return f"inv({level})"
    pre = "".join(str(b) for b in point.prefix)
    per = "".join(str(b) for b in point.period)
    return f"pt({pre};{per})"


def _render_coeff(coeff: Fraction) -> str:
    return str(coeff) if coeff.denominator != 1 else str(coeff.numerator)


def render_combo(x: FormalCombo) -> str:
    if x.is_zero:
        return "0"
    parts: list[str] = []
    for i, (point, coeff) in enumerate(x.terms):
        mag = abs(coeff)
        body = render_point(point) if mag == 1 else f"{_render_coeff(mag)}*{render_point(point)}"
        if i == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)
