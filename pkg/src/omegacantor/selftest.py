"""Seeded self-test suites, one per module family.

Each suite prints one ``ok <name> (<k> checks)`` line; failures print a FAIL
line and the run keeps going so one broken suite does not hide another.  All
randomness flows through per-suite generators seeded from the run seed and
the suite name, so a fixed seed reproduces the log byte for byte.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, TextIO

from .alphabet import LetterPred, TrackAlphabet
from .classify import classify, landweber_fsigma, landweber_gdelta
from .compile import (
    VarEnv, check_witness, compile_formula, decide, model_check, witness,
)
from .complement import language_equivalent, nba_complement, nba_is_universal
from .determinize import determinize
from .dpa import DPA, dpa_complement, dpa_member_up, dpa_reduce
from .errors import GrowthInsufficient
from .formulas import parse_formula, subst_sets
from .hoa import emit_hoa, parse_hoa
from .kernel import as_point, e_trunc, mu, sign, value_approx
from .nba import NBA, nba_is_empty
from .nba import product as nba_product
from .nba import union as nba_union
from .nu import nu
from .points import FormalCombo
from .profiles import FORMAL, SequenceProfile
from .stages import brute_vw, enumerate_kn, nu_brute
from .templates import logic_set_of_kernel, set_vars, template
from .upset import UPSet
from .words import UPWord

G4 = SequenceProfile("geometric", 4)

_COEFFS = tuple(
    Fraction(n, d) for n in (-3, -2, -1, 1, 2, 3) for d in (1, 2, 3)
)


def _random_upset(rng: random.Random, max_prefix: int = 3, max_period: int = 2) -> UPSet:
    prefix = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, max_prefix)))
    period = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, max_period)))
    return UPSet(prefix, period)


def _random_combo(rng: random.Random, max_terms: int = 2) -> FormalCombo:
    terms = [
        (_random_upset(rng), rng.choice(_COEFFS))
        for _ in range(rng.randint(1, max_terms))
    ]
    return FormalCombo.build(terms)


def _random_nba(rng: random.Random, alphabet: TrackAlphabet, max_states: int = 3) -> NBA:
    n = rng.randint(1, max_states)
    transitions = []
    for src in range(n):
        for letter in alphabet.letters():
            for dst in range(n):
                if rng.random() < 0.5:
                    transitions.append(
                        (src, LetterPred.of_letters(alphabet.width, [letter]), dst)
                    )
    accepting = frozenset(q for q in range(n) if rng.random() < 0.5)
    return NBA(
        alphabet=alphabet,
        n_states=n,
        transitions=tuple(transitions),
        initial=frozenset({0}),
        accepting=accepting,
    )


def _suite_kernel_axioms(rng: random.Random) -> int:
    checks = 0
    for _ in range(15):
        c = _random_upset(rng)
        a = rng.randint(1, 4)
        ca = FormalCombo.of(c) - FormalCombo.of(e_trunc(a, c))

        # truncation error lies in [0, q_a^{-1}], exactly and by digit sign
        lo, hi = value_approx(ca, G4, a + 4)
        assert Fraction(0) <= hi and lo <= G4.q_inv(a), (c, a)
        assert sign(ca, FORMAL) >= 0
        checks += 1

        # the remainder's charset is the original's beyond the cutoff
        rest = as_point(ca)
        assert rest is not None
        assert all(rest.bit(n) == 0 for n in range(1, a + 1))
        horizon = a + 2 * len(c.period) + len(c.prefix) + 2
        assert all(rest.bit(n) == c.bit(n) for n in range(a + 1, horizon))
        checks += 1

        # chained truncation: dropping up to a then up to b equals up to b
        b = a + rng.randint(1, 3)
        lhs = ca - FormalCombo.of(e_trunc(b, rest))
        rhs = FormalCombo.of(c) - FormalCombo.of(e_trunc(b, c))
        assert sign(lhs - rhs, FORMAL) == 0
        checks += 1
    return checks


def _suite_nu_coherence(rng: random.Random) -> int:
    checks = 0
    done = 0
    while done < 20:
        x = _random_combo(rng)
        v = x.value(G4)
        if not (0 < v < 1):
            continue
        try:
            y = nu(x, G4)
            assert sign(x - y, G4) >= 0
            assert nu(y, G4) == y
        except GrowthInsufficient:
            continue
        p = as_point(y)
        assert p is not None
        yv = y.value(G4)
        assert nu_brute(v, 3, G4) == nu_brute(yv, 3, G4)
        if p.period in ((0,), (1,)):
            assert nu_brute(v, max(len(p.prefix), 3), G4) == yv
        done += 1
        checks += 1
    return checks


def _suite_stage_constructions(_rng: random.Random) -> int:
    endpoints = enumerate_kn(2, G4)
    expected = [
        Fraction(0), Fraction(1, 16), Fraction(3, 16), Fraction(1, 4),
        Fraction(3, 4), Fraction(13, 16), Fraction(15, 16), Fraction(1),
    ]
    assert endpoints == expected, endpoints

    gap_shifts = {w - r for r, _v, w in brute_vw(2, G4)}
    assert gap_shifts == {Fraction(1, 4), Fraction(1, 16)}, gap_shifts

    two = FormalCombo.of(UPSet((1, 1), (0,)))
    assert two.value(G4) == Fraction(15, 16)

    tail1 = FormalCombo.of(UPSet((0,), (1,)))
    assert tail1.value(G4) == Fraction(1, 4)
    return 4


def _suite_automata_complement(rng: random.Random) -> int:
    alphabet = TrackAlphabet(("a",))
    checks = 0
    for _ in range(8):
        a = _random_nba(rng, alphabet)
        c_det = nba_complement(a, "via_determinization")
        c_rank = nba_complement(a, "rank_based")
        assert language_equivalent(c_det, c_rank)
        assert nba_is_empty(nba_product(a, c_det))
        assert nba_is_universal(nba_union(a, c_det))
        checks += 1
    return checks


_DECIDE_SUITE = (
    ("ex1 x. s(x) = x", False),
    ("all1 x. ex1 y. s(x) = y", True),
    ("ex2 X. all1 x. (x in X <-> not s(x) in X)", True),
    ("all2 X. (ex1 x. x in X -> ex1 x. (x in X and all1 y. (y in X -> not y < x)))", True),
    ("all2 X. ((first_in(X) and all1 x. (x in X -> s_in(X at s(x)))) -> all1 x. x in X)", True),
)


def _suite_mso_decide(rng: random.Random) -> int:
    checks = 0
    for text, expected in _DECIDE_SUITE:
        assert decide(parse_formula(text)) is expected, text
        checks += 1
    for text in ("ex1 y. (x < y and y in X)", "dsum(1, -1; X, Y) = 0"):
        f = parse_formula(text)
        w = witness(f)
        assert w is not None, text
        assert check_witness(f, w), text
        checks += 1
    return checks


_LABEL_SUITE = (
    ("all1 x. ex1 y. (x < y and y in X)", ("X",), "gdelta_proper"),
    ("not all1 x. ex1 y. (x < y and y in X)", ("X",), "fsigma_proper"),
    ("ex1 x. x in X", ("X",), "open_proper"),
    ("all1 x. x in X", ("X",), "closed_proper"),
)


def _suite_borel_labels(rng: random.Random) -> int:
    checks = 0
    for text, names, label in _LABEL_SUITE:
        d = determinize(compile_formula(parse_formula(text), VarEnv.of(names)))
        rep = classify(d)
        assert rep.label == label, (text, rep)
        rep_c = classify(dpa_complement(d))
        assert (rep.is_open, rep.is_closed) == (rep_c.is_closed, rep_c.is_open)
        assert (rep.is_gdelta, rep.is_fsigma) == (rep_c.is_fsigma, rep_c.is_gdelta)
        r = dpa_reduce(d)
        assert landweber_fsigma(r) == landweber_gdelta(dpa_complement(r))
        checks += 1
    return checks


def _suite_logic_kernel(rng: random.Random) -> int:
    checks = 0
    done = 0
    while done < 8:
        x = _random_combo(rng)
        q = tuple(c for _, c in x.terms)
        points = tuple(p for p, _c in x.terms)
        if not q:
            continue
        names = set_vars(len(q))
        sub = {n: logic_set_of_kernel(p) for n, p in zip(names, points)}
        assert decide(subst_sets(template("theta", q), sub)) is (mu(x) is None)
        m = mu(x)
        if m is not None:
            assert model_check(template("psi", q), {"y": m, **sub})
        assert decide(subst_sets(template("omega", q), sub)) is (as_point(x) is not None)
        done += 1
        checks += 1
    return checks


def _suite_hoa_roundtrip(rng: random.Random) -> int:
    alphabet = TrackAlphabet(("a",))
    checks = 0
    for _ in range(6):
        a = _random_nba(rng, alphabet)
        text = emit_hoa(a)
        back = parse_hoa(text)
        assert isinstance(back, NBA)
        assert emit_hoa(back) == text
        assert language_equivalent(a, back)
        checks += 1
    for _ in range(3):
        d = determinize(_random_nba(rng, alphabet))
        text = emit_hoa(d)
        back = parse_hoa(text)
        assert isinstance(back, DPA)
        assert emit_hoa(back) == text
        w = _random_word(rng, alphabet)
        assert dpa_member_up(d, w) == dpa_member_up(back, w)
        checks += 1
    return checks


def _random_word(rng: random.Random, alphabet: TrackAlphabet) -> UPWord:
    stem = tuple(rng.randrange(alphabet.n_letters) for _ in range(rng.randint(0, 3)))
    loop = tuple(rng.randrange(alphabet.n_letters) for _ in range(rng.randint(1, 3)))
    return UPWord(alphabet, stem, loop)


SUITES: tuple[tuple[str, Callable[[random.Random], int]], ...] = (
    ("kernel-axioms", _suite_kernel_axioms),
    ("nu-coherence", _suite_nu_coherence),
    ("stage-constructions", _suite_stage_constructions),
    ("automata-complement", _suite_automata_complement),
    ("mso-decide", _suite_mso_decide),
    ("borel-labels", _suite_borel_labels),
    ("logic-kernel", _suite_logic_kernel),
    ("hoa-roundtrip", _suite_hoa_roundtrip),
)


def run_selftest(seed: int, out: TextIO) -> bool:
    passed = True
    for name, fn in SUITES:
        rng = random.Random(f"{seed}:{name}")
        try:
            k = fn(rng)
        except Exception as exc:  # noqa: BLE001 - report and continue
            print(f"FAIL {name}: {type(exc).__name__}: {exc}", file=out)
            passed = False
            continue
        print(f"ok {name} ({k} checks)", file=out)
    print("selftest passed" if passed else "selftest FAILED", file=out)
    return passed
