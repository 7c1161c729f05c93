"""Rank-based Büchi complementation.

The complement automaton tracks the subset of reachable states, then at a
guessed point switches to level rankings: every state carries a rank that
may never increase along transitions, accepting states carry even ranks,
and a breakpoint set witnesses that every even-ranked lineage eventually
falls to an odd rank.  Only tight rankings are used after the switch: the
maximum rank is odd, stays fixed, and every odd value up to it is taken by
some state.  A word is accepted exactly when the tracked runs of the input
automaton all get trapped in odd ranks, i.e. when the input rejects.

This is the package's second, structurally unrelated complementation route;
it exists to cross-check the determinization route and is tuned for small
automata, with a hard capacity cap rather than cleverness.
"""

from __future__ import annotations

from itertools import product as iproduct

from .alphabet import LetterPred
from .errors import CapacityExceeded
from .nba import NBA

DEFAULT_MAX_STATES = 4096

# state encodings:
#   ("sub", S)            subset phase, S a frozenset
#   ("rank", f, O, m)     ranked phase, f a tuple of (state, rank) pairs
#                         sorted by state, O a frozenset, m the fixed max


def tight_rankings(
    states: frozenset[int], accepting: frozenset[int], m: int, bounds: dict[int, int] | None = None
) -> list[tuple[tuple[int, int], ...]]:
    """All rankings of `states` with maximum exactly m, every odd value up
    to m taken, accepting states on even ranks, and optional per-state upper
    bounds."""
    qs = sorted(states)
    choices = []
    for q in qs:
        hi = m if bounds is None else min(m, bounds.get(q, m))
        if hi < 0:
            return []
        ranks = [r for r in range(hi + 1) if not (q in accepting and r % 2 == 1)]
        if not ranks:
            return []
        choices.append(ranks)
    odds = set(range(1, m + 1, 2))
    out = []
    for combo in iproduct(*choices):
        taken = set(combo)
        if max(combo) != m or not odds <= taken:
            continue
        out.append(tuple(zip(qs, combo)))
    return out


def _evens(f: tuple[tuple[int, int], ...]) -> frozenset[int]:
    return frozenset(q for q, r in f if r % 2 == 0)


def nba_complement_rank(a: NBA, max_states: int = DEFAULT_MAX_STATES) -> NBA:
    """Complement via tight level rankings.

    Raises CapacityExceeded when the construction grows past max_states.
    Intended for small inputs; the determinization route scales better.
    """
    letters = list(a.alphabet.letters())
    width = a.alphabet.width

    start = ("sub", frozenset(a.initial))
    index: dict[tuple, int] = {start: 0}
    order: list[tuple] = [start]
    transitions: list[tuple[int, LetterPred, int]] = []

    def intern(state: tuple) -> int:
        if state not in index:
            if len(order) >= max_states:
                raise CapacityExceeded(f"rank construction exceeded {max_states} states")
            index[state] = len(order)
            order.append(state)
        return index[state]

    i = 0
    while i < len(order):
        state = order[i]
        for letter in letters:
            pred = LetterPred.of_letters(width, [letter])
            adj = a.letter_adjacency(letter)
            if state[0] == "sub":
                s = state[1]
                s2 = frozenset(q for q0 in s for q in adj[q0])
                transitions.append((i, pred, intern(("sub", s2))))
                if s2:
                    for m in range(1, 2 * len(s2), 2):
                        for f in tight_rankings(s2, a.accepting, m):
                            transitions.append(
                                (i, pred, intern(("rank", f, frozenset(), m)))
                            )
            else:
                _, f, owing, m = state
                fmap = dict(f)
                s2 = frozenset(q for q0 in fmap for q in adj[q0])
                if not s2:
                    transitions.append((i, pred, intern(("sub", frozenset()))))
                    continue
                bounds: dict[int, int] = {}
                for q0, r in f:
                    for q in adj[q0]:
                        bounds[q] = min(bounds.get(q, r), r)
                owing_next = frozenset(q for q0 in owing for q in adj[q0])
                for f2 in tight_rankings(s2, a.accepting, m, bounds):
                    ev = _evens(f2)
                    o2 = ev if not owing else owing_next & ev
                    transitions.append((i, pred, intern(("rank", f2, o2, m))))
        i += 1

    accepting = frozenset(
        idx
        for st, idx in index.items()
        if (st[0] == "sub" and not st[1]) or (st[0] == "rank" and not st[2])
    )
    return NBA(
        a.alphabet,
        len(order),
        tuple(transitions),
        frozenset({0}),
        accepting,
    )
