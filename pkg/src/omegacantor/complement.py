"""Büchi complementation and language comparison.

Two routes with unrelated structure: through determinization to parity and
back, or through tight level rankings.  Keeping both honest against each
other is part of the test story; callers pick by name.
"""

from __future__ import annotations

from .determinize import DEFAULT_MAX_STATES, determinize
from .dpa import dpa_complement, dpa_to_nba
from .errors import PreconditionError
from .nba import NBA, nba_is_empty, product
from .rank import nba_complement_rank

METHODS = ("via_determinization", "rank_based")


def nba_complement(
    a: NBA, method: str = "via_determinization", max_states: int = DEFAULT_MAX_STATES
) -> NBA:
    if method == "via_determinization":
        return dpa_to_nba(dpa_complement(determinize(a, max_states)))
    if method == "rank_based":
        return nba_complement_rank(a, max_states)
    raise PreconditionError(f"unknown complementation method: {method!r}")


def language_subset(a: NBA, b: NBA, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """L(a) included in L(b)."""
    return nba_is_empty(product(a, nba_complement(b, max_states=max_states)))


def language_equivalent(a: NBA, b: NBA, max_states: int = DEFAULT_MAX_STATES) -> bool:
    return language_subset(a, b, max_states) and language_subset(b, a, max_states)


def nba_is_universal(a: NBA, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Universality through one determinization and a polynomial parity
    emptiness check on the complement, avoiding a second exponential."""
    from .dpa import dpa_is_empty

    return dpa_is_empty(dpa_complement(determinize(a, max_states)))
