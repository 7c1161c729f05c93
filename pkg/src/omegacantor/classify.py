"""Topological classification of parity-recognizable sets of words.

A deterministic parity automaton is placed in the low Borel hierarchy by two
ingredients: Landweber-style loop tests decide the G-delta and F-sigma
levels, and a residual-liveness safety comparison decides closedness (then
openness by duality).  A loop here is a nonempty set of states that some run
can visit ad infinitum while touching nothing else, i.e. a set whose induced
transition subgraph is strongly connected with at least one edge.

Loop families can be exponential in the largest strongly connected
component, so enumeration is capped; past the cap classification refuses
rather than degrades.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dpa import DPA, dpa_complement, dpa_is_empty, dpa_reduce
from .errors import CapacityExceeded, PreconditionError

LOOP_CAP = 1 << 16

_LABELS = (
    "clopen",
    "open_proper",
    "closed_proper",
    "delta2_proper",
    "gdelta_proper",
    "fsigma_proper",
    "bc_pi2_proper",
)


def _adjacency(d: DPA) -> tuple[frozenset[int], ...]:
    return tuple(frozenset(row) for row in d.delta)


def _reachable(d: DPA) -> frozenset[int]:
    adj = _adjacency(d)
    seen = {d.initial}
    frontier = [d.initial]
    while frontier:
        q = frontier.pop()
        for r in adj[q]:
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return frozenset(seen)


def _sccs_of(nodes: frozenset[int], adj: tuple[frozenset[int], ...]) -> list[frozenset[int]]:
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on: set[int] = set()
    stack: list[int] = []
    out: list[frozenset[int]] = []
    counter = 0
    for root in sorted(nodes):
        if root in index:
            continue
        work = [(root, iter(sorted(a for a in adj[root] if a in nodes)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on.add(w)
                    work.append((w, iter(sorted(a for a in adj[w] if a in nodes))))
                    advanced = True
                    break
                if w in on:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                out.append(frozenset(comp))
    return out


def _is_loop(states: frozenset[int], adj: tuple[frozenset[int], ...]) -> bool:
    if not states:
        return False
    if len(states) == 1:
        (q,) = states
        return q in adj[q]
    start = next(iter(states))
    for fwd in (True, False):
        seen = {start}
        frontier = [start]
        while frontier:
            q = frontier.pop()
            for r in states:
                hit = (r in adj[q]) if fwd else (q in adj[r])
                if hit and r not in seen:
                    seen.add(r)
                    frontier.append(r)
        if seen != states:
            return False
    return True


@dataclass(frozen=True)
class LoopStructure:
    """Every reachable loop of a parity automaton, tagged by the least
    priority seen inside it (even means runs settling on the loop accept)."""

    reachable: frozenset[int]
    loops: tuple[tuple[frozenset[int], int], ...]

    def accepting(self) -> tuple[frozenset[int], ...]:
        return tuple(s for s, p in self.loops if p % 2 == 0)

    def rejecting(self) -> tuple[frozenset[int], ...]:
        return tuple(s for s, p in self.loops if p % 2 == 1)


def loop_structure(d: DPA, cap: int = LOOP_CAP) -> LoopStructure:
    adj = _adjacency(d)
    reach = _reachable(d)
    loops: list[tuple[frozenset[int], int]] = []
    for comp in _sccs_of(reach, adj):
        members = sorted(comp)
        if len(members) > 60 or (1 << len(members)) > cap:
            raise CapacityExceeded(
                f"loop enumeration over a {len(members)}-state component "
                f"exceeds the cap of {cap}"
            )
        for mask in range(1, 1 << len(members)):
            states = frozenset(members[i] for i in range(len(members)) if mask >> i & 1)
            if _is_loop(states, adj):
                if len(loops) >= cap:
                    raise CapacityExceeded(f"more than {cap} loops")
                loops.append((states, min(d.priority[q] for q in states)))
    loops.sort(key=lambda item: (len(item[0]), sorted(item[0])))
    return LoopStructure(reach, tuple(loops))


def landweber_gdelta(d: DPA, cap: int = LOOP_CAP) -> bool:
    """No accepting loop may sit inside a rejecting superloop."""
    ls = loop_structure(d, cap)
    rejecting = ls.rejecting()
    for acc in ls.accepting():
        for rej in rejecting:
            if acc < rej:
                return False
    return True


def landweber_fsigma(d: DPA, cap: int = LOOP_CAP) -> bool:
    """No rejecting loop may sit inside an accepting superloop; kept as its
    own subset test rather than delegating to the G-delta check of the
    complement, so the two can confirm each other."""
    ls = loop_structure(d, cap)
    accepting = ls.accepting()
    for rej in ls.rejecting():
        for acc in accepting:
            if rej < acc:
                return False
    return True


def _live_states(d: DPA) -> frozenset[int]:
    """States whose residual language is nonempty."""
    adj = _adjacency(d)
    everything = frozenset(range(d.n_states))
    cores: set[int] = set()
    top = max(d.priority)
    for p in range(0, top + 1, 2):
        allowed = frozenset(q for q in everything if d.priority[q] >= p)
        sub = tuple(adj[q] & allowed if q in allowed else frozenset() for q in range(d.n_states))
        for comp in _sccs_of(allowed, sub):
            has_cycle = len(comp) > 1 or any(q in sub[q] for q in comp)
            if has_cycle and any(d.priority[q] == p for q in comp):
                cores |= comp
    rev: list[set[int]] = [set() for _ in range(d.n_states)]
    for q in range(d.n_states):
        for r in adj[q]:
            rev[r].add(q)
    live = set(cores)
    frontier = list(cores)
    while frontier:
        q = frontier.pop()
        for r in rev[q]:
            if r not in live:
                live.add(r)
                frontier.append(r)
    return frozenset(live)


def _live_safety_minus(d: DPA) -> DPA:
    """Parity automaton for (words never leaving live states) minus L(d).

    L(d) is always contained in the safety language, so emptiness of the
    difference says the two are equal, which is exactly closedness.
    """
    comp = dpa_complement(d)
    live = _live_states(d)
    n = d.n_states
    # Entering a non-live state means the safety side already failed, so
    # everything there reroutes to one rejecting sink.
    sink = n
    fixed = []
    for q in range(n):
        if q in live:
            fixed.append(
                tuple(dst if dst in live else sink for dst in d.delta[q])
            )
        else:
            fixed.append(tuple(sink for _ in range(d.alphabet.n_letters)))
    fixed.append(tuple(sink for _ in range(d.alphabet.n_letters)))
    priority = [comp.priority[q] for q in range(n)] + [1]
    initial = d.initial if d.initial in live else sink
    return DPA(
        alphabet=d.alphabet,
        n_states=n + 1,
        delta=tuple(fixed),
        priority=tuple(priority),
        initial=initial,
    )


def is_closed(d: DPA) -> bool:
    return dpa_is_empty(_live_safety_minus(d))


def prefix_closed_equal(d: DPA) -> bool:
    """Does the language equal its topological closure?

    The closure is the safety language over states with nonempty residual;
    equality holds exactly when closure minus language is empty.
    """
    return is_closed(d)


def is_open(d: DPA) -> bool:
    return is_closed(dpa_complement(d))


@dataclass(frozen=True)
class BorelReport:
    is_open: bool
    is_closed: bool
    is_gdelta: bool
    is_fsigma: bool
    label: str

    def __post_init__(self) -> None:
        if self.is_open and not (self.is_gdelta and self.is_fsigma):
            raise PreconditionError("an open language is both G-delta and F-sigma")
        if self.is_closed and not (self.is_gdelta and self.is_fsigma):
            raise PreconditionError("a closed language is both G-delta and F-sigma")
        if self.label != _derive_label(
            self.is_open, self.is_closed, self.is_gdelta, self.is_fsigma
        ):
            raise PreconditionError("label does not match the flags")

    def to_json(self) -> str:
        return json.dumps(
            {
                "is_open": self.is_open,
                "is_closed": self.is_closed,
                "is_gdelta": self.is_gdelta,
                "is_fsigma": self.is_fsigma,
                "label": self.label,
            }
        )


def _derive_label(op: bool, cl: bool, gd: bool, fs: bool) -> str:
    if op and cl:
        return "clopen"
    if op:
        return "open_proper"
    if cl:
        return "closed_proper"
    if gd and fs:
        return "delta2_proper"
    if gd:
        return "gdelta_proper"
    if fs:
        return "fsigma_proper"
    return "bc_pi2_proper"


def classify(d: DPA, cap: int = LOOP_CAP) -> BorelReport:
    d = dpa_reduce(d)
    gd = landweber_gdelta(d, cap)
    fs = landweber_fsigma(d, cap)
    cl = is_closed(d)
    op = is_open(d)
    return BorelReport(op, cl, gd, fs, _derive_label(op, cl, gd, fs))
