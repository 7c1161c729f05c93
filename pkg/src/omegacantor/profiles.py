"""Scale-sequence profiles.

All kernel arithmetic is relative to a profile describing the scale sequence
q_0 = 1 < q_1 < q_2 < ... used to weight positions.  Two profiles exist:

* ``formal``: no numeric scales at all; comparisons follow the lexicographic
  digit rule, which is sound whenever the scales grow fast enough (each
  q_{k+1} more than 3 q_k, plus the congruence conditions the construction
  assumes).  This is the definitional semantics.
* ``geometric:M`` with M >= 4: q_k = M^k.  Every value is an exact rational,
  so this profile doubles as an arbiter for the formal rules on inputs where
  both apply.

M < 4 is rejected: with q_k = M^k the growth requirement q_{k+1} > 3 q_k
forces M > 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DepthExceeded, GrowthInsufficient, ParseError, PreconditionError

DEFAULT_MAX_DEPTH = 4096


@dataclass(frozen=True)
class SequenceProfile:
    kind: str
    modulus: int | None = None
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self) -> None:
        if self.kind not in ("formal", "geometric"):
            raise PreconditionError(f"unknown profile kind {self.kind!r}")
        if self.kind == "geometric":
            if self.modulus is None:
                raise PreconditionError("geometric profile needs a modulus")
            if self.modulus < 4:
                raise GrowthInsufficient(
                    f"geometric modulus must be >= 4, got {self.modulus}"
                )
        elif self.modulus is not None:
            raise PreconditionError("formal profile takes no modulus")
        if self.max_depth < 0:
            raise PreconditionError("max_depth must be >= 0")

    @property
    def is_geometric(self) -> bool:
        return self.kind == "geometric"

    def q_inv(self, n: int) -> Fraction:
        """The weight q_n^{-1} as an exact rational (geometric only)."""
        if not self.is_geometric:
            raise PreconditionError("formal profile has no numeric scales")
        if n < 0:
            raise PreconditionError("scale index must be >= 0")
        assert self.modulus is not None
        return Fraction(1, self.modulus**n)

    def check_depth(self, n: int) -> None:
        if n > self.max_depth:
            raise DepthExceeded(f"depth {n} exceeds max_depth {self.max_depth}")

    @classmethod
    def parse(cls, text: str, max_depth: int = DEFAULT_MAX_DEPTH) -> "SequenceProfile":
        text = text.strip()
        if text == "formal":
            return cls("formal", None, max_depth)
        if text.startswith("geometric:"):
            raw = text[len("geometric:"):]
            try:
                m = int(raw)
            except ValueError:
                raise ParseError(f"bad geometric modulus {raw!r}") from None
            return cls("geometric", m, max_depth)
        raise ParseError(f"unknown profile {text!r} (want formal or geometric:M)")

    def __str__(self) -> str:
        if self.is_geometric:
            return f"geometric:{self.modulus}"
        return "formal"


FORMAL = SequenceProfile("formal")
