"""Formula templates tying digit-sum streams to the Cantor kernel.

For a rational tuple q and set variables X1..Xk, the digit-sum stream at
position n is sum_i q_i * [n in X_i].  The templates express, in order: the
stream vanishes at y; is positive at y; vanishes strictly below y; first
fails at y; vanishes everywhere; and is realized exactly by the
characteristic stream of some set.  Substituting ultimately periodic
constants makes each template decidable, and the kernel's mu / zero-test /
point-recognition must agree with the decided truth; that cross-check is the
point of having both routes.

Logic positions are 0-based while kernel indices start at 1, so a kernel set
becomes a logic constant by prepending one 0 bit; position 0 then carries
digit 0 for every stream and never disturbs the templates.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .formulas import (
    And, DigitSum, Forall1, Exists2, Formula, Implies, LogicSet, Lt, Not,
    SetVar,
)
from .upset import UPSet

TEMPLATE_KINDS = ("chi1", "chi2", "phi", "psi", "theta", "omega")

POSITION_VAR = "y"
_INNER_VAR = "z"
_STREAM_VAR = "Y"


def set_vars(k: int) -> tuple[str, ...]:
    return tuple(f"X{i+1}" for i in range(k))


def logic_set_of_kernel(s: UPSet) -> LogicSet:
    """Kernel index n (1-based) becomes logic position n (0-based words)."""
    return LogicSet((0,) + s.prefix, s.period)


def _coeffs(q) -> tuple[Fraction, ...]:
    out = tuple(Fraction(c) for c in q)
    if not out:
        raise PreconditionError("empty coefficient tuple")
    return out


def _dsum_zero_at(q: tuple[Fraction, ...], at: str) -> Formula:
    args = tuple(SetVar(v) for v in set_vars(len(q)))
    return DigitSum(q, args, "=", Fraction(0), at)


def template(kind: str, q) -> Formula:
    """The formula of the given kind over X1..Xk (and free position y where
    applicable)."""
    coeffs = _coeffs(q)
    if kind == "chi1":
        return _dsum_zero_at(coeffs, POSITION_VAR)
    if kind == "chi2":
        args = tuple(SetVar(v) for v in set_vars(len(coeffs)))
        return DigitSum(coeffs, args, ">", Fraction(0), POSITION_VAR)
    if kind == "phi":
        return Forall1(
            _INNER_VAR,
            Implies(Lt(_INNER_VAR, POSITION_VAR), _dsum_zero_at(coeffs, _INNER_VAR)),
        )
    if kind == "psi":
        return And(Not(template("chi1", coeffs)), template("phi", coeffs))
    if kind == "theta":
        return Forall1(POSITION_VAR, _dsum_zero_at(coeffs, POSITION_VAR))
    if kind == "omega":
        ext = coeffs + (Fraction(-1),)
        args = tuple(SetVar(v) for v in set_vars(len(coeffs))) + (SetVar(_STREAM_VAR),)
        body = DigitSum(ext, args, "=", Fraction(0), POSITION_VAR)
        return Exists2(_STREAM_VAR, Forall1(POSITION_VAR, body))
    raise PreconditionError(f"unknown template kind {kind!r}")
