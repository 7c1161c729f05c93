"""Compilation of formulas to Büchi automata, plus decision procedures.

Assignments ride on a track alphabet: one track per variable, first-order
variables encoded as singleton sets.  The compiler is the textbook structural
recursion: atoms map to fixed small automata, connectives to the automaton
operations, quantifiers to projection, with universal quantification routed
through complementation.  A singleton constraint is conjoined when a
first-order track is introduced; intermediate automata are allowed to be
sloppy on invalid encodings of OTHER tracks, because every public entry
point conjoins the constraints for the tracks that remain free.  Set
constants become an existentially projected track pinned to the constant's
bit stream.

Between steps automata are pruned to useful states and quotiented by
bisimulation, which is what keeps the nested complementations of
quantifier-heavy sentences tractable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import LetterPred, TrackAlphabet
from .complement import nba_complement
from .determinize import DEFAULT_MAX_STATES
from .errors import PreconditionError
from .formulas import (
    And, DigitSum, EqPos, EqSet, Exists1, Exists2, First, Forall1, Forall2,
    Formula, Iff, Implies, InSet, LogicSet, Lt, Not, Or, SetConst, SetTerm,
    SetVar, Subset, Succ, free_vars, is_quantifier_free, subst_sets,
)
from .nba import NBA, bisim_quotient, emptiness, member_up, nba_is_empty, product, project, prune, union
from .words import UPWord


@dataclass(frozen=True)
class VarEnv:
    """Ordered variable environment; order 1 for positions, 2 for sets."""

    items: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.items]
        if len(set(names)) != len(names):
            raise PreconditionError("duplicate variable in environment")
        for _, order in self.items:
            if order not in (1, 2):
                raise PreconditionError("variable order must be 1 or 2")

    @staticmethod
    def of(items) -> "VarEnv":
        """Accepts (name, order) pairs or bare names; a bare name gets its
        order from the case convention (uppercase initial means a set)."""
        out = []
        for item in items:
            if isinstance(item, str):
                out.append((item, 2 if item[:1].isupper() else 1))
            else:
                name, order = item
                out.append((str(name), int(order)))
        return VarEnv(tuple(out))

    @staticmethod
    def for_formula(f: Formula) -> "VarEnv":
        return VarEnv(tuple(free_vars(f)))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.items)

    def order_of(self, name: str) -> int:
        for n, o in self.items:
            if n == name:
                return o
        raise PreconditionError(f"variable {name!r} not in environment")


def _tidy(a: NBA) -> NBA:
    return bisim_quotient(prune(a))


def _all_accepting_loop(alphabet: TrackAlphabet, pred: LetterPred) -> NBA:
    return NBA(alphabet, 1, ((0, pred, 0),), frozenset({0}), frozenset({0}))


def _bit(alphabet: TrackAlphabet, track: str, value: bool) -> LetterPred:
    return LetterPred.bit_is(alphabet.width, alphabet.bit_of(track), value)


def singleton_automaton(alphabet: TrackAlphabet, track: str) -> NBA:
    """Exactly one position where the track holds 1."""
    off = _bit(alphabet, track, False)
    on = _bit(alphabet, track, True)
    return NBA(
        alphabet,
        2,
        ((0, off, 0), (0, on, 1), (1, off, 1)),
        frozenset({0}),
        frozenset({1}),
    )


def _eq_const_automaton(alphabet: TrackAlphabet, track: str, value: LogicSet) -> NBA:
    bits = value.prefix + value.period
    k = len(value.prefix)
    n = len(bits)
    transitions = []
    for i in range(n):
        pred = _bit(alphabet, track, bool(bits[i]))
        nxt = i + 1 if i + 1 < n else k
        transitions.append((i, pred, nxt))
    return NBA(alphabet, n, tuple(transitions), frozenset({0}), frozenset(range(n)))


def _eqpos_automaton(alphabet: TrackAlphabet, tx: str, ty: str) -> NBA:
    same = _bit(alphabet, tx, True).conj(_bit(alphabet, ty, True)).disj(
        _bit(alphabet, tx, False).conj(_bit(alphabet, ty, False))
    )
    return _all_accepting_loop(alphabet, same)


def _lt_automaton(alphabet: TrackAlphabet, tx: str, ty: str) -> NBA:
    x0 = _bit(alphabet, tx, False)
    x1 = _bit(alphabet, tx, True)
    y0 = _bit(alphabet, ty, False)
    y1 = _bit(alphabet, ty, True)
    return NBA(
        alphabet,
        3,
        (
            (0, x0.conj(y0), 0),
            (0, x1.conj(y0), 1),
            (1, x0.conj(y0), 1),
            (1, x0.conj(y1), 2),
            (2, x0.conj(y0), 2),
        ),
        frozenset({0}),
        frozenset({2}),
    )


def _succ_automaton(alphabet: TrackAlphabet, tx: str, ty: str) -> NBA:
    x0 = _bit(alphabet, tx, False)
    x1 = _bit(alphabet, tx, True)
    y0 = _bit(alphabet, ty, False)
    y1 = _bit(alphabet, ty, True)
    return NBA(
        alphabet,
        3,
        (
            (0, x0.conj(y0), 0),
            (0, x1.conj(y0), 1),
            (1, x0.conj(y1), 2),
            (2, x0.conj(y0), 2),
        ),
        frozenset({0}),
        frozenset({2}),
    )


def _inset_automaton(alphabet: TrackAlphabet, tx: str, tset: str) -> NBA:
    x0 = _bit(alphabet, tx, False)
    hit = _bit(alphabet, tx, True).conj(_bit(alphabet, tset, True))
    return NBA(
        alphabet,
        2,
        ((0, x0, 0), (0, hit, 1), (1, x0, 1)),
        frozenset({0}),
        frozenset({1}),
    )


def _subset_automaton(alphabet: TrackAlphabet, ts: str, tt: str) -> NBA:
    ok = _bit(alphabet, ts, False).disj(_bit(alphabet, tt, True))
    return _all_accepting_loop(alphabet, ok)


def _eqset_automaton(alphabet: TrackAlphabet, ts: str, tt: str) -> NBA:
    same = _bit(alphabet, ts, True).conj(_bit(alphabet, tt, True)).disj(
        _bit(alphabet, ts, False).conj(_bit(alphabet, tt, False))
    )
    return _all_accepting_loop(alphabet, same)


def _digitsum_pred(alphabet: TrackAlphabet, g: DigitSum, tracks: list[str]) -> LetterPred:
    sats = []
    for letter in alphabet.letters():
        total = sum(
            (c for c, t in zip(g.coeffs, tracks) if alphabet.track_bit(letter, t)),
            start=0,
        )
        ok = (
            total == g.rhs
            if g.rel == "="
            else total < g.rhs if g.rel == "<" else total > g.rhs
        )
        if ok:
            sats.append(letter)
    return LetterPred.of_letters(alphabet.width, sats)


def _digitsum_automaton(
    alphabet: TrackAlphabet, g: DigitSum, tracks: list[str], at_track: str | None
) -> NBA:
    sat = _digitsum_pred(alphabet, g, tracks)
    if at_track is None:
        return _all_accepting_loop(alphabet, sat)
    y0 = _bit(alphabet, at_track, False)
    y1 = _bit(alphabet, at_track, True)
    return NBA(
        alphabet,
        2,
        ((0, y0, 0), (0, y1.conj(sat), 1), (1, y0, 1)),
        frozenset({0}),
        frozenset({1}),
    )


def lt_formula_via_sets(x: str, y: str) -> Formula:
    """x < y as pure set quantification: some successor-closed set contains
    y but not x.  Kept alongside the primitive automaton as a dual route."""
    if {x, y} & {"Zlt", "wlt", "vlt"}:
        raise PreconditionError("variable name collides with the encoding")
    return Exists2(
        "Zlt",
        And(
            And(
                Forall1(
                    "wlt",
                    Implies(
                        InSet("wlt", SetVar("Zlt")),
                        Exists1("vlt", And(Succ("wlt", "vlt"), InSet("vlt", SetVar("Zlt")))),
                    ),
                ),
                InSet(y, SetVar("Zlt")),
            ),
            Not(InSet(x, SetVar("Zlt"))),
        ),
    )


class _Compiler:
    def __init__(self, max_states: int):
        self.max_states = max_states
        self.counter = 0

    def fresh_track(self, base: str, alphabet: TrackAlphabet) -> str:
        name = base
        while name in alphabet.tracks:
            self.counter += 1
            name = f"{base}#{self.counter}"
        return name

    def negate(self, a: NBA) -> NBA:
        return _tidy(nba_complement(a, max_states=self.max_states))

    def compile(self, f: Formula, scope: dict[str, str], alphabet: TrackAlphabet) -> NBA:
        if isinstance(f, Not):
            return self.negate(self.compile(f.body, scope, alphabet))
        if isinstance(f, And):
            return _tidy(
                product(
                    self.compile(f.left, scope, alphabet),
                    self.compile(f.right, scope, alphabet),
                )
            )
        if isinstance(f, Or):
            return _tidy(
                union(
                    self.compile(f.left, scope, alphabet),
                    self.compile(f.right, scope, alphabet),
                )
            )
        if isinstance(f, Implies):
            return self.compile(Or(Not(f.left), f.right), scope, alphabet)
        if isinstance(f, Iff):
            return self.compile(
                And(Implies(f.left, f.right), Implies(f.right, f.left)), scope, alphabet
            )
        if isinstance(f, (Exists1, Forall1, Exists2, Forall2)):
            if isinstance(f, (Forall1, Forall2)):
                flip = Exists1 if isinstance(f, Forall1) else Exists2
                return self.negate(
                    self.compile(flip(f.var, Not(f.body)), scope, alphabet)
                )
            track = self.fresh_track(f.var, alphabet)
            inner_alphabet = TrackAlphabet(alphabet.tracks + (track,))
            body = self.compile(
                f.body, {**scope, f.var: track}, inner_alphabet
            )
            if isinstance(f, Exists1):
                body = _tidy(product(body, singleton_automaton(inner_alphabet, track)))
            return _tidy(project(body, track))
        if isinstance(f, First):
            # first(x) == no position precedes x
            w = "wfirst" if f.x != "wfirst" else "wfirst0"
            return self.compile(Not(Exists1(w, Succ(w, f.x))), scope, alphabet)
        return self._atom(f, scope, alphabet)

    def _atom(self, f: Formula, scope: dict[str, str], alphabet: TrackAlphabet) -> NBA:
        # set constants become an existentially projected pinned track
        consts: list[LogicSet] = []

        def term_track(t: SetTerm, const_tracks: dict[int, str]) -> str:
            if isinstance(t, SetVar):
                return scope[t.name]
            return const_tracks[id(t)]

        if isinstance(f, (InSet, Subset, EqSet, DigitSum)):
            terms: list[SetTerm] = []
            if isinstance(f, InSet):
                terms = [f.arg]
            elif isinstance(f, (Subset, EqSet)):
                terms = [f.left, f.right]
            else:
                terms = list(f.args)
            const_terms = [t for t in terms if isinstance(t, SetConst)]
            if const_terms:
                tracks = list(alphabet.tracks)
                const_tracks: dict[int, str] = {}
                for t in const_terms:
                    base = self.fresh_track("c", TrackAlphabet(tuple(tracks)))
                    const_tracks[id(t)] = base
                    tracks.append(base)
                    consts.append(t.value)
                inner = TrackAlphabet(tuple(tracks))
                aut = self._atom_direct(f, lambda t: term_track(t, const_tracks), scope, inner)
                for t in const_terms:
                    aut = _tidy(
                        product(
                            aut,
                            _eq_const_automaton(inner, const_tracks[id(t)], t.value),
                        )
                    )
                for t in const_terms:
                    aut = project(aut, const_tracks[id(t)])
                return _tidy(aut)
            return self._atom_direct(f, lambda t: term_track(t, {}), scope, alphabet)
        return self._atom_direct(f, None, scope, alphabet)

    def _atom_direct(self, f, term_track, scope: dict[str, str], alphabet: TrackAlphabet) -> NBA:
        if isinstance(f, EqPos):
            return _eqpos_automaton(alphabet, scope[f.x], scope[f.y])
        if isinstance(f, Lt):
            return _lt_automaton(alphabet, scope[f.x], scope[f.y])
        if isinstance(f, Succ):
            return _succ_automaton(alphabet, scope[f.x], scope[f.y])
        if isinstance(f, InSet):
            return _inset_automaton(alphabet, scope[f.x], term_track(f.arg))
        if isinstance(f, Subset):
            return _subset_automaton(alphabet, term_track(f.left), term_track(f.right))
        if isinstance(f, EqSet):
            return _eqset_automaton(alphabet, term_track(f.left), term_track(f.right))
        if isinstance(f, DigitSum):
            tracks = [term_track(t) for t in f.args]
            at_track = scope[f.at] if f.at is not None else None
            return _digitsum_automaton(alphabet, f, tracks, at_track)
        raise AssertionError(f"not an atom: {type(f)}")


def compile_formula(
    f: Formula, env: VarEnv, max_states: int = DEFAULT_MAX_STATES
) -> NBA:
    """Automaton over one track per environment variable whose language is
    exactly the set of encoded satisfying assignments."""
    fv = dict(free_vars(f))
    for name, order in fv.items():
        if name not in env.names:
            raise PreconditionError(f"free variable {name!r} not in environment")
        if env.order_of(name) != order:
            raise PreconditionError(f"variable {name!r} used at the wrong order")
    alphabet = TrackAlphabet(env.names)
    comp = _Compiler(max_states)
    scope = {name: name for name, _ in env.items}
    aut = comp.compile(f, scope, alphabet)
    for name, order in env.items:
        if order == 1:
            aut = _tidy(product(aut, singleton_automaton(alphabet, name)))
    return aut


def decide(f: Formula, max_states: int = DEFAULT_MAX_STATES) -> bool:
    """Truth of a sentence, by emptiness of its width-0 automaton."""
    if free_vars(f):
        names = ", ".join(name for name, _ in free_vars(f))
        raise PreconditionError(f"sentence required; free: {names}")
    aut = compile_formula(f, VarEnv.of([]), max_states)
    return not nba_is_empty(aut)


def witness(
    f: Formula, max_states: int = DEFAULT_MAX_STATES
) -> dict[str, int | LogicSet] | None:
    """A satisfying assignment for the free variables, read off the canonical
    accepting lasso; None when unsatisfiable."""
    env = VarEnv.for_formula(f)
    aut = compile_formula(f, env, max_states)
    lasso = emptiness(aut)
    if lasso is None:
        return None
    word = lasso.word()
    out: dict[str, int | LogicSet] = {}
    for name, order in env.items:
        prefix, period = word.track_bits(name)
        if order == 1:
            ones = [i for i, b in enumerate(prefix) if b]
            assert any(period) is False and len(ones) == 1, "bad singleton track"
            out[name] = ones[0]
        else:
            out[name] = LogicSet(prefix, period)
    return out


def witness_word(assignment: dict[str, int | LogicSet], env: VarEnv) -> UPWord:
    """Encode an assignment as the word the compiled automaton would read."""
    alphabet = TrackAlphabet(env.names)
    tracks = {}
    for name, order in env.items:
        value = assignment[name]
        if order == 1:
            if not isinstance(value, int):
                raise PreconditionError(f"{name!r} needs a position")
            tracks[name] = ((0,) * value + (1,), (0,))
        else:
            if not isinstance(value, LogicSet):
                raise PreconditionError(f"{name!r} needs a set")
            tracks[name] = (value.prefix, value.period)
    from .words import word_from_tracks

    return word_from_tracks(alphabet, tracks)


def model_check(
    f: Formula,
    assignment: dict[str, int | LogicSet],
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """Truth under an assignment: substitute sets, pin positions, decide."""
    sets = {k: v for k, v in assignment.items() if isinstance(v, LogicSet)}
    g = subst_sets(f, sets)
    for name, order in free_vars(f):
        if order == 1:
            value = assignment.get(name)
            if not isinstance(value, int) or value < 0:
                raise PreconditionError(f"{name!r} needs a position")
            g = Exists1(name, And(InSet(name, SetConst(LogicSet.singleton(value))), g))
    return decide(g, max_states)


def model_check_qf(f: Formula, assignment: dict[str, int | LogicSet]) -> bool:
    """Quantifier-free truth by direct scanning: periodic streams agree
    everywhere as soon as they agree on the joint prefix plus one least
    common period, so a finite horizon decides every atom."""
    if not is_quantifier_free(f):
        raise PreconditionError("quantifier-free formula required")

    import math

    def setval(t: SetTerm) -> LogicSet:
        if isinstance(t, SetConst):
            return t.value
        value = assignment.get(t.name)
        if not isinstance(value, LogicSet):
            raise PreconditionError(f"{t.name!r} needs a set")
        return value

    def posval(name: str) -> int:
        value = assignment.get(name)
        if not isinstance(value, int) or value < 0:
            raise PreconditionError(f"{name!r} needs a position")
        return value

    sets: list[LogicSet] = []
    positions: list[int] = []

    def collect(g: Formula) -> None:
        if isinstance(g, InSet):
            positions.append(posval(g.x))
            sets.append(setval(g.arg))
        elif isinstance(g, (Subset, EqSet)):
            sets.append(setval(g.left))
            sets.append(setval(g.right))
        elif isinstance(g, DigitSum):
            for t in g.args:
                sets.append(setval(t))
            if g.at is not None:
                positions.append(posval(g.at))
        elif isinstance(g, (EqPos, Lt, Succ)):
            positions.append(posval(g.x))
            positions.append(posval(g.y))
        elif isinstance(g, First):
            positions.append(posval(g.x))
        elif isinstance(g, Not):
            collect(g.body)
        elif isinstance(g, (And, Or, Implies, Iff)):
            collect(g.left)
            collect(g.right)

    collect(f)
    horizon = max([len(s.prefix) for s in sets] + [p + 1 for p in positions] + [1])
    if sets:
        horizon += math.lcm(*[len(s.period) for s in sets])

    def ev(g: Formula) -> bool:
        if isinstance(g, EqPos):
            return posval(g.x) == posval(g.y)
        if isinstance(g, Lt):
            return posval(g.x) < posval(g.y)
        if isinstance(g, Succ):
            return posval(g.x) + 1 == posval(g.y)
        if isinstance(g, First):
            return posval(g.x) == 0
        if isinstance(g, InSet):
            return setval(g.arg).bit(posval(g.x)) == 1
        if isinstance(g, Subset):
            s, t = setval(g.left), setval(g.right)
            return all(s.bit(i) <= t.bit(i) for i in range(horizon))
        if isinstance(g, EqSet):
            s, t = setval(g.left), setval(g.right)
            return all(s.bit(i) == t.bit(i) for i in range(horizon))
        if isinstance(g, DigitSum):
            vals = [setval(t) for t in g.args]

            def at(i: int) -> bool:
                total = sum(c * v.bit(i) for c, v in zip(g.coeffs, vals))
                if g.rel == "=":
                    return total == g.rhs
                return total < g.rhs if g.rel == "<" else total > g.rhs

            if g.at is not None:
                return at(posval(g.at))
            return all(at(i) for i in range(horizon))
        if isinstance(g, Not):
            return not ev(g.body)
        if isinstance(g, And):
            return ev(g.left) and ev(g.right)
        if isinstance(g, Or):
            return ev(g.left) or ev(g.right)
        if isinstance(g, Implies):
            return not ev(g.left) or ev(g.right)
        if isinstance(g, Iff):
            return ev(g.left) == ev(g.right)
        raise AssertionError(type(g))

    return ev(f)


def check_witness(f: Formula, assignment: dict[str, int | LogicSet]) -> bool:
    """Membership of the encoded assignment in the compiled automaton."""
    env = VarEnv.for_formula(f)
    aut = compile_formula(f, env)
    return member_up(aut, witness_word(assignment, env))
