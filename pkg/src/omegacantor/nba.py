"""Nondeterministic Büchi automata over track alphabets.

Transitions carry letter predicates.  Operations that need concrete letters
(emptiness witnesses, determinization) explode the alphabet, which is fine at
the track counts formulas produce; the predicate representation is what keeps
the automata themselves small.

Emptiness returns a canonical accepting lasso: shortest stem, then shortest
loop, then lexicographically least letter sequence (letters ordered as
integers, which matches track order), then least state ids.  Canonical
witnesses make downstream output reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import LetterPred, TrackAlphabet
from .errors import PreconditionError
from .words import UPWord


@dataclass(frozen=True)
class NBA:
    alphabet: TrackAlphabet
    n_states: int
    transitions: tuple[tuple[int, LetterPred, int], ...]
    initial: frozenset[int]
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        for src, pred, dst in self.transitions:
            if not (0 <= src < self.n_states and 0 <= dst < self.n_states):
                raise PreconditionError("transition endpoint out of range")
            if pred.width != self.alphabet.width:
                raise PreconditionError("predicate width mismatch")
        for q in self.initial | self.accepting:
            if not (0 <= q < self.n_states):
                raise PreconditionError("state out of range")

    # successor structure, letter-agnostic
    def adjacency(self) -> list[list[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n_states)]
        for src, pred, dst in self.transitions:
            if not pred.is_false:
                adj[src].add(dst)
        return [sorted(s) for s in adj]

    def letter_adjacency(self, letter: int) -> list[list[int]]:
        cache = self.__dict__.get("_ladj_cache")
        if cache is None:
            cache = {}
            object.__setattr__(self, "_ladj_cache", cache)
        hit = cache.get(letter)
        if hit is not None:
            return hit
        adj: list[set[int]] = [set() for _ in range(self.n_states)]
        for src, pred, dst in self.transitions:
            if pred.satisfies(letter):
                adj[src].add(dst)
        out = [sorted(s) for s in adj]
        cache[letter] = out
        return out

    def successors(self, states: frozenset[int], letter: int) -> frozenset[int]:
        out = set()
        for src, pred, dst in self.transitions:
            if src in states and pred.satisfies(letter):
                out.add(dst)
        return frozenset(out)

    def reachable(self) -> set[int]:
        adj = self.adjacency()
        seen = set(self.initial)
        stack = list(self.initial)
        while stack:
            q = stack.pop()
            for r in adj[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return seen


@dataclass(frozen=True)
class Lasso:
    """An accepting run skeleton: stem then loop, letters and states."""

    alphabet: TrackAlphabet
    stem_letters: tuple[int, ...]
    loop_letters: tuple[int, ...]
    stem_states: tuple[int, ...]
    loop_states: tuple[int, ...]

    def word(self) -> UPWord:
        return UPWord(self.alphabet, self.stem_letters, self.loop_letters)


def validate_lasso(a: NBA, lasso: Lasso) -> bool:
    """Re-simulate the lasso and check the acceptance condition."""
    if not lasso.loop_letters:
        return False
    if len(lasso.stem_states) != len(lasso.stem_letters) + 1:
        return False
    if len(lasso.loop_states) != len(lasso.loop_letters) + 1:
        return False
    if lasso.stem_states[0] not in a.initial:
        return False
    if lasso.stem_states[-1] != lasso.loop_states[0]:
        return False
    if lasso.loop_states[0] != lasso.loop_states[-1]:
        return False
    edges = {}
    for src, pred, dst in a.transitions:
        edges.setdefault(src, []).append((pred, dst))

    def step_ok(src: int, letter: int, dst: int) -> bool:
        return any(
            pred.satisfies(letter) and d == dst for pred, d in edges.get(src, [])
        )

    for i, letter in enumerate(lasso.stem_letters):
        if not step_ok(lasso.stem_states[i], letter, lasso.stem_states[i + 1]):
            return False
    for i, letter in enumerate(lasso.loop_letters):
        if not step_ok(lasso.loop_states[i], letter, lasso.loop_states[i + 1]):
            return False
    return any(q in a.accepting for q in lasso.loop_states)


def _sccs(n: int, adj: list[list[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative."""
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = [1]
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                visited[v] = True
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if not visited[w]:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out


def nba_is_empty(a: NBA) -> bool:
    """Emptiness without witness construction: no reachable accepting state
    lies on a cycle."""
    reach = a.reachable()
    adj = a.adjacency()
    comp_of: dict[int, int] = {}
    comps = _sccs(a.n_states, adj)
    for i, comp in enumerate(comps):
        for q in comp:
            comp_of[q] = i
    for comp in comps:
        members = [q for q in comp if q in reach]
        if not members:
            continue
        has_cycle = len(comp) > 1 or any(
            q in adj[q] for q in comp
        )
        if has_cycle and any(q in a.accepting for q in members):
            return False
    return True


def _lex_least_path(
    a: NBA,
    length: int,
    start: set[int],
    layers: list[set[int]],
) -> tuple[tuple[int, ...], set[int]]:
    """Greedy lex-least letter sequence of the given length from start,
    constrained so step i ends inside layers[length - i - 1].  Returns the
    letters and the final state set."""
    letters: list[int] = []
    cur = set(q for q in start if q in layers[length])
    for i in range(length):
        target = layers[length - i - 1]
        for letter in a.alphabet.letters():
            adj = a.letter_adjacency(letter)
            nxt = set()
            for q in cur:
                nxt.update(adj[q])
            nxt &= target
            if nxt:
                letters.append(letter)
                cur = nxt
                break
        else:
            raise AssertionError("layered search lost all states")
    return tuple(letters), cur


def _backward_layers(
    a: NBA, targets: set[int], length: int
) -> list[set[int]]:
    """layers[k] = states that reach targets in exactly k steps."""
    radj: list[set[int]] = [set() for _ in range(a.n_states)]
    for src, pred, dst in a.transitions:
        if not pred.is_false:
            radj[dst].add(src)
    layers = [set(targets)]
    for _ in range(length):
        prev = layers[-1]
        cur = set()
        for q in prev:
            cur.update(radj[q])
        layers.append(cur)
    return layers


def _state_path_for_letters(
    a: NBA,
    start_states: set[int],
    letters: tuple[int, ...],
    end_states: set[int],
) -> tuple[int, ...]:
    """Least state path realizing the letter sequence from start to end."""
    layers = [set(end_states)]
    for letter in reversed(letters):
        adj = a.letter_adjacency(letter)
        prev = layers[0]
        cur = {q for q in range(a.n_states) if any(r in prev for r in adj[q])}
        layers.insert(0, cur)
    path = [min(q for q in start_states if q in layers[0])]
    for i, letter in enumerate(letters):
        adj = a.letter_adjacency(letter)
        nxt = [r for r in adj[path[-1]] if r in layers[i + 1]]
        path.append(min(nxt))
    return tuple(path)


class _DoubledView:
    """View of an NBA where states are (state, seen-accepting) pairs, used
    to find shortest loops that visit an accepting state."""

    def __init__(self, a: NBA):
        self.a = a
        self.n_states = 2 * a.n_states
        self.alphabet = a.alphabet
        self._ladj: dict[int, list[list[int]]] = {}

    def encode(self, q: int, flag: bool) -> int:
        return q * 2 + (1 if flag else 0)

    @property
    def transitions(self):
        out = []
        for src, pred, dst in self.a.transitions:
            for flag in (False, True):
                nflag = flag or (dst in self.a.accepting)
                out.append((self.encode(src, flag), pred, self.encode(dst, nflag)))
        return tuple(out)

    def letter_adjacency(self, letter: int) -> list[list[int]]:
        hit = self._ladj.get(letter)
        if hit is not None:
            return hit
        base = self.a.letter_adjacency(letter)
        adj: list[list[int]] = [[] for _ in range(self.n_states)]
        for q in range(self.a.n_states):
            for r in base[q]:
                for flag in (False, True):
                    nflag = flag or (r in self.a.accepting)
                    adj[self.encode(q, flag)].append(self.encode(r, nflag))
        out = [sorted(set(s)) for s in adj]
        self._ladj[letter] = out
        return out

    def letters(self):
        return self.alphabet.letters()


def emptiness(a: NBA) -> Lasso | None:
    """The canonical accepting lasso, or None when the language is empty."""
    if nba_is_empty(a):
        return None

    # shortest stem distance to every state
    dist = {q: 0 for q in a.initial}
    frontier = list(a.initial)
    adj = a.adjacency()
    while frontier:
        nxt = []
        for q in frontier:
            for r in adj[q]:
                if r not in dist:
                    dist[r] = dist[q] + 1
                    nxt.append(r)
        frontier = nxt

    # shortest accepting loop length anchored at each state
    doubled = _DoubledView(a)
    dadj: list[set[int]] = [set() for _ in range(doubled.n_states)]
    for src, pred, dst in doubled.transitions:
        if not pred.is_false:
            dadj[src].add(dst)

    def loop_len(v: int) -> int | None:
        start = doubled.encode(v, v in a.accepting)
        goal = doubled.encode(v, True)
        seen = {start: 0}
        frontier = [start]
        # first return to goal with >= 1 step
        steps = 0
        while frontier:
            steps += 1
            nxt = []
            for q in frontier:
                for r in dadj[q]:
                    if r == goal:
                        return steps
                    if r not in seen:
                        seen[r] = steps
                        nxt.append(r)
            frontier = nxt
        return None

    best: tuple[int, int] | None = None
    loops: dict[int, int] = {}
    for v in sorted(dist):
        ll = loop_len(v)
        if ll is None:
            continue
        loops[v] = ll
        key = (dist[v], ll)
        if best is None or key < best:
            best = key
    assert best is not None, "nonempty automaton must have an anchored loop"
    stem_len, loop_len_best = best
    anchors = {v for v, ll in loops.items() if dist[v] == stem_len and ll == loop_len_best}

    stem_layers = _backward_layers(a, anchors, stem_len)
    stem_letters, final = _lex_least_path(a, stem_len, set(a.initial), stem_layers)
    reachable_anchors = sorted(final & anchors)

    best_loop: tuple[int, ...] | None = None
    best_anchor: int | None = None
    for v in reachable_anchors:
        start = doubled.encode(v, v in a.accepting)
        goal = doubled.encode(v, True)
        layers = [ {goal} ]
        for _ in range(loop_len_best):
            prev = layers[-1]
            layers.append({q for q in range(doubled.n_states) if dadj[q] & prev})
        # greedy letters in the doubled view
        letters: list[int] = []
        cur = {start} if start in layers[loop_len_best] else set()
        if not cur:
            continue
        ok = True
        for i in range(loop_len_best):
            target = layers[loop_len_best - i - 1]
            found = False
            for letter in a.alphabet.letters():
                ladj = doubled.letter_adjacency(letter)
                nxt = set()
                for q in cur:
                    nxt.update(ladj[q])
                nxt &= target if i < loop_len_best - 1 else {goal}
                if nxt:
                    letters.append(letter)
                    cur = nxt
                    found = True
                    break
            if not found:
                ok = False
                break
        if not ok:
            continue
        cand = tuple(letters)
        if best_loop is None or cand < best_loop or (cand == best_loop and v < best_anchor):
            best_loop = cand
            best_anchor = v
    assert best_loop is not None and best_anchor is not None

    stem_states = _state_path_for_letters(a, set(a.initial), stem_letters, {best_anchor})

    # loop state path in the doubled view, then strip flags
    start = doubled.encode(best_anchor, best_anchor in a.accepting)
    goal = doubled.encode(best_anchor, True)
    dlayers = [ {goal} ]
    for letter in reversed(best_loop):
        ladj = doubled.letter_adjacency(letter)
        prev = dlayers[0]
        dlayers.insert(0, {q for q in range(doubled.n_states) if set(ladj[q]) & prev})
    dpath = [start]
    for i, letter in enumerate(best_loop):
        ladj = doubled.letter_adjacency(letter)
        targets = dlayers[i + 1] if i < len(best_loop) - 1 else {goal}
        nxt = [r for r in ladj[dpath[-1]] if r in targets]
        dpath.append(min(nxt))
    loop_states = tuple(q // 2 for q in dpath)

    lasso = Lasso(a.alphabet, stem_letters, best_loop, stem_states, loop_states)
    assert validate_lasso(a, lasso), "constructed lasso failed re-validation"
    return lasso


def prune(a: NBA) -> NBA:
    """Restrict to states that are reachable and can still reach an accepting
    cycle.  Language-preserving; keeps compiled automata from dragging dead
    product junk through later complementations."""
    reach = a.reachable()
    adj = a.adjacency()
    comps = _sccs(a.n_states, adj)
    core: set[int] = set()
    for comp in comps:
        has_cycle = len(comp) > 1 or any(q in adj[q] for q in comp)
        if has_cycle and any(q in a.accepting for q in comp):
            core.update(comp)
    # backward closure from core
    radj: list[set[int]] = [set() for _ in range(a.n_states)]
    for src, pred, dst in a.transitions:
        if not pred.is_false:
            radj[dst].add(src)
    live = set(core)
    stack = list(core)
    while stack:
        q = stack.pop()
        for r in radj[q]:
            if r not in live:
                live.add(r)
                stack.append(r)
    keep = sorted(reach & live)
    if not keep:
        return NBA(a.alphabet, 1, (), frozenset(), frozenset())
    index = {q: i for i, q in enumerate(keep)}
    transitions = tuple(
        (index[src], pred, index[dst])
        for src, pred, dst in a.transitions
        if src in index and dst in index and not pred.is_false
    )
    return NBA(
        a.alphabet,
        len(keep),
        transitions,
        frozenset(index[q] for q in a.initial if q in index),
        frozenset(index[q] for q in a.accepting if q in index),
    )


def bisim_quotient(a: NBA) -> NBA:
    """Quotient by forward bisimulation: states are merged when they agree on
    acceptance and, per letter, on the classes of their successor sets.
    Language-preserving for Büchi acceptance."""
    letters = list(a.alphabet.letters())
    ladj = {letter: a.letter_adjacency(letter) for letter in letters}
    cls = [1 if q in a.accepting else 0 for q in range(a.n_states)]
    while True:
        sig = {}
        new_cls = []
        for q in range(a.n_states):
            key = (
                cls[q],
                tuple(
                    frozenset(cls[r] for r in ladj[letter][q]) for letter in letters
                ),
            )
            if key not in sig:
                sig[key] = len(sig)
            new_cls.append(sig[key])
        # refinement only ever splits classes, so equal counts mean stable
        if len(sig) == len(set(cls)):
            cls = new_cls
            break
        cls = new_cls
    n = len(set(cls))
    edges: dict[tuple[int, int], set[int]] = {}
    for letter in letters:
        for q in range(a.n_states):
            for r in ladj[letter][q]:
                edges.setdefault((cls[q], cls[r]), set()).add(letter)
    transitions = tuple(
        (src, LetterPred.of_letters(a.alphabet.width, sorted(ls)), dst)
        for (src, dst), ls in sorted(edges.items())
    )
    return NBA(
        a.alphabet,
        n,
        transitions,
        frozenset(cls[q] for q in a.initial),
        frozenset(cls[q] for q in a.accepting),
    )


def product(a: NBA, b: NBA) -> NBA:
    """Intersection, standard two-phase construction."""
    if a.alphabet != b.alphabet:
        raise PreconditionError("alphabet mismatch")

    def sid(qa: int, qb: int, phase: int) -> int:
        return (qa * b.n_states + qb) * 2 + phase

    transitions = []
    for sa, pa, da in a.transitions:
        for sb, pb, db in b.transitions:
            pred = pa.conj(pb)
            if pred.is_false:
                continue
            # phase 0 owes an a-accept, phase 1 owes a b-accept
            t0 = 1 if sa in a.accepting else 0
            transitions.append((sid(sa, sb, 0), pred, sid(da, db, t0)))
            t1 = 0 if sb in b.accepting else 1
            transitions.append((sid(sa, sb, 1), pred, sid(da, db, t1)))
    initial = frozenset(sid(qa, qb, 0) for qa in a.initial for qb in b.initial)
    accepting = frozenset(
        sid(qa, qb, 0) for qa in a.accepting for qb in range(b.n_states)
    )
    return NBA(a.alphabet, 2 * a.n_states * b.n_states, tuple(transitions), initial, accepting)


def union(a: NBA, b: NBA) -> NBA:
    """Disjoint union."""
    if a.alphabet != b.alphabet:
        raise PreconditionError("alphabet mismatch")
    off = a.n_states
    transitions = list(a.transitions) + [
        (src + off, pred, dst + off) for src, pred, dst in b.transitions
    ]
    return NBA(
        a.alphabet,
        a.n_states + b.n_states,
        tuple(transitions),
        a.initial | frozenset(q + off for q in b.initial),
        a.accepting | frozenset(q + off for q in b.accepting),
    )


def project(a: NBA, track: str) -> NBA:
    """Existential projection: drop one track, collapsing its bit."""
    bit = a.alphabet.bit_of(track)
    alphabet = a.alphabet.without(track)
    transitions = tuple(
        (src, pred.project_bit(bit), dst) for src, pred, dst in a.transitions
    )
    return NBA(alphabet, a.n_states, transitions, a.initial, a.accepting)


def word_automaton(alphabet: TrackAlphabet, word: UPWord) -> NBA:
    """Deterministic automaton accepting exactly the given word."""
    if word.alphabet.width != alphabet.width:
        raise PreconditionError("width mismatch")
    k, p = len(word.prefix), len(word.period)
    n = k + p
    transitions = []
    for i in range(n):
        letter = word.prefix[i] if i < k else word.period[i - k]
        nxt = i + 1 if i + 1 < n else k
        transitions.append((i, LetterPred.of_letters(alphabet.width, [letter]), nxt))
    return NBA(alphabet, n, tuple(transitions), frozenset({0}), frozenset(range(n)))


def member_up(a: NBA, word: UPWord) -> bool:
    """Membership of an ultimately periodic word, by product with the word
    automaton followed by emptiness."""
    if word.alphabet.width != a.alphabet.width:
        raise PreconditionError("width mismatch")
    w = word_automaton(a.alphabet, word)
    return not nba_is_empty(product(a, w))
