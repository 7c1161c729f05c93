"""Deterministic parity automata, min-even acceptance.

A word is accepted when the least priority visited infinitely often is even.
Complementation is a priority shift; conversion back to a Büchi automaton
guesses the eventual least priority.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import LetterPred, TrackAlphabet
from .errors import PreconditionError
from .nba import NBA, _sccs
from .words import UPWord


@dataclass(frozen=True)
class DPA:
    alphabet: TrackAlphabet
    n_states: int
    delta: tuple[tuple[int, ...], ...]
    priority: tuple[int, ...]
    initial: int

    def __post_init__(self) -> None:
        if len(self.delta) != self.n_states or len(self.priority) != self.n_states:
            raise PreconditionError("table size mismatch")
        n_letters = self.alphabet.n_letters
        for row in self.delta:
            if len(row) != n_letters:
                raise PreconditionError("transition table not total")
            for dst in row:
                if not (0 <= dst < self.n_states):
                    raise PreconditionError("transition target out of range")
        for p in self.priority:
            if p < 0:
                raise PreconditionError("negative priority")
        if not (0 <= self.initial < self.n_states):
            raise PreconditionError("initial state out of range")

    def step(self, state: int, letter: int) -> int:
        return self.delta[state][letter]


def dpa_complement(d: DPA) -> DPA:
    """Shift every priority up by one, swapping the parity classes."""
    return DPA(d.alphabet, d.n_states, d.delta, tuple(p + 1 for p in d.priority), d.initial)


def dpa_member_up(d: DPA, word: UPWord) -> bool:
    """Direct simulation of an ultimately periodic word.

    After the prefix, the state at successive period boundaries must repeat
    within n_states + 1 rounds; the verdict is the parity of the least
    priority on the repeating cycle.
    """
    if word.alphabet.width != d.alphabet.width:
        raise PreconditionError("width mismatch")
    q = d.initial
    for letter in word.prefix:
        q = d.step(q, letter)
    seen: dict[int, int] = {}
    history: list[tuple[int, int]] = []  # (state at round start, min priority in round)
    while q not in seen:
        seen[q] = len(history)
        lo = d.priority[q]
        start = q
        for letter in word.period:
            q = d.step(q, letter)
            lo = min(lo, d.priority[q])
        history.append((start, lo))
    first = seen[q]
    cycle_min = min(lo for _, lo in history[first:])
    return cycle_min % 2 == 0


def dpa_compress_priorities(d: DPA) -> DPA:
    """Minimal equivalent priorities on the unchanged transition structure.

    Per strongly connected component: every priority below the least
    opposite-parity one collapses to the current base, then the residual
    subgraph is peeled again one level up.  Cycle minima keep their parity,
    so acceptance of every run is untouched.
    """
    adj = tuple(frozenset(row) for row in d.delta)
    newpri = [0] * d.n_states
    work: list[tuple[frozenset[int], int]] = [(frozenset(range(d.n_states)), 0)]
    while work:
        nodes, floor = work.pop()
        sub = [sorted(adj[q] & nodes) if q in nodes else [] for q in range(d.n_states)]
        for comp in _sccs(d.n_states, sub):
            cset = frozenset(comp) & nodes
            if not cset:
                continue
            has_cycle = len(cset) > 1 or any(q in adj[q] for q in cset)
            if not has_cycle:
                for q in cset:
                    newpri[q] = floor
                continue
            m = min(d.priority[q] for q in cset)
            base = floor if floor % 2 == m % 2 else floor + 1
            opp = [d.priority[q] for q in cset if d.priority[q] % 2 != m % 2]
            if not opp:
                for q in cset:
                    newpri[q] = base
                continue
            cut = min(opp)
            peel = frozenset(q for q in cset if d.priority[q] < cut)
            for q in peel:
                newpri[q] = base
            work.append((cset - peel, base + 1))
    return DPA(d.alphabet, d.n_states, d.delta, tuple(newpri), d.initial)


def dpa_quotient(d: DPA) -> DPA:
    """Reachable part modulo priority-respecting bisimulation.

    States with equal priority and, letter by letter, bisimilar successors
    collapse to one; the language and the verdicts of loop-based tests are
    unchanged, but blowup inherited from determinization usually is not.
    """
    order = []
    seen = {d.initial}
    frontier = [d.initial]
    while frontier:
        q = frontier.pop(0)
        order.append(q)
        for r in d.delta[q]:
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    cls = {q: d.priority[q] for q in order}
    while True:
        sig = {q: (cls[q], tuple(cls[r] for r in d.delta[q])) for q in order}
        renum: dict[tuple, int] = {}
        new_cls = {}
        for q in order:
            if sig[q] not in renum:
                renum[sig[q]] = len(renum)
            new_cls[q] = renum[sig[q]]
        if len(set(new_cls.values())) == len(set(cls.values())):
            cls = new_cls
            break
        cls = new_cls
    k = len(set(cls.values()))
    rep: dict[int, int] = {}
    for q in order:
        rep.setdefault(cls[q], q)
    delta = tuple(
        tuple(cls[d.delta[rep[c]][letter]] for letter in range(d.alphabet.n_letters))
        for c in range(k)
    )
    priority = tuple(d.priority[rep[c]] for c in range(k))
    return DPA(d.alphabet, k, delta, priority, cls[d.initial])


def dpa_reduce(d: DPA) -> DPA:
    """Compress priorities, then quotient; iterate while anything shrinks."""
    while True:
        r = dpa_quotient(dpa_compress_priorities(d))
        if r.n_states == d.n_states and max(r.priority) >= max(p for p in d.priority):
            return r
        d = r


def dpa_is_empty(d: DPA) -> bool:
    """Polynomial emptiness: look for a reachable cycle whose least priority
    is some even p, via SCCs of the priority >= p subgraph."""
    n_letters = d.alphabet.n_letters
    reach = {d.initial}
    stack = [d.initial]
    while stack:
        q = stack.pop()
        for letter in range(n_letters):
            r = d.delta[q][letter]
            if r not in reach:
                reach.add(r)
                stack.append(r)
    for p in sorted(set(pr for pr in d.priority if pr % 2 == 0)):
        allowed = [q for q in range(d.n_states) if d.priority[q] >= p]
        allowed_set = set(allowed)
        adj: list[list[int]] = [[] for _ in range(d.n_states)]
        for q in allowed:
            targets = {d.delta[q][letter] for letter in range(n_letters)}
            adj[q] = sorted(t for t in targets if t in allowed_set)
        for comp in _sccs(d.n_states, adj):
            inside = [q for q in comp if q in allowed_set]
            if not inside or not any(q in reach for q in inside):
                continue
            has_cycle = len(inside) > 1 or any(q in adj[q] for q in inside)
            if has_cycle and any(d.priority[q] == p for q in inside):
                return False
    return True


def dpa_to_nba(d: DPA) -> NBA:
    """Büchi automaton for the same language.

    A base copy runs the word; at any point the run may jump into a mode
    committed to an even priority p, where only states of priority >= p may
    be visited and visits at exactly p are accepting.
    """
    evens = sorted(set(p for p in d.priority if p % 2 == 0))
    n_letters = d.alphabet.n_letters
    width = d.alphabet.width

    def base(q: int) -> int:
        return q

    def mode(q: int, pi: int) -> int:
        return d.n_states * (1 + pi) + q

    transitions: list[tuple[int, LetterPred, int]] = []
    for q in range(d.n_states):
        for letter in range(n_letters):
            r = d.delta[q][letter]
            pred = LetterPred.of_letters(width, [letter])
            transitions.append((base(q), pred, base(r)))
            for pi, p in enumerate(evens):
                if d.priority[r] >= p:
                    transitions.append((base(q), pred, mode(r, pi)))
                    transitions.append((mode(q, pi), pred, mode(r, pi)))
    accepting = frozenset(
        mode(q, pi)
        for pi, p in enumerate(evens)
        for q in range(d.n_states)
        if d.priority[q] == p
    )
    return NBA(
        d.alphabet,
        d.n_states * (1 + len(evens)),
        tuple(transitions),
        frozenset({base(d.initial)}),
        accepting,
    )
