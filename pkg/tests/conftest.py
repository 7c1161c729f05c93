"""Shared deterministic generators for the test suite.

Everything random is seeded per test, so failures replay exactly.
"""

from __future__ import annotations

import random

import pytest

from omegacantor import DPA, NBA, LetterPred, TrackAlphabet, UPWord


@pytest.fixture
def alpha1() -> TrackAlphabet:
    return TrackAlphabet(("X",))


@pytest.fixture
def alpha2() -> TrackAlphabet:
    return TrackAlphabet(("X", "Y"))


def random_nba(
    rng: random.Random, alphabet: TrackAlphabet, max_states: int = 3
) -> NBA:
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
    return NBA(alphabet, n, tuple(transitions), frozenset({0}), accepting)


def random_dpa(
    rng: random.Random,
    alphabet: TrackAlphabet,
    max_states: int = 5,
    max_priority: int = 4,
) -> DPA:
    n = rng.randint(1, max_states)
    delta = tuple(
        tuple(rng.randrange(n) for _ in alphabet.letters()) for _ in range(n)
    )
    priority = tuple(rng.randint(0, max_priority) for _ in range(n))
    return DPA(alphabet, n, delta, priority, 0)


def random_upword(
    rng: random.Random,
    alphabet: TrackAlphabet,
    max_prefix: int = 3,
    max_period: int = 3,
) -> UPWord:
    prefix = tuple(
        rng.randrange(alphabet.n_letters) for _ in range(rng.randint(0, max_prefix))
    )
    period = tuple(
        rng.randrange(alphabet.n_letters) for _ in range(rng.randint(1, max_period))
    )
    return UPWord(alphabet, prefix, period)
