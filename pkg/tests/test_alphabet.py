"""Track alphabets and letter predicates."""

import random

import pytest

from omegacantor import LetterPred, PreconditionError, TrackAlphabet


def test_track_layout():
    a = TrackAlphabet(("X", "Y"))
    assert a.width == 2
    assert a.n_letters == 4
    letter = a.make_letter({"X": 1, "Y": 0})
    assert a.track_bit(letter, "X") == 1
    assert a.track_bit(letter, "Y") == 0


def test_make_letter_round_trips_all_patterns():
    a = TrackAlphabet(("X", "Y", "Z"))
    for letter in a.letters():
        bits = {t: a.track_bit(letter, t) for t in a.tracks}
        assert a.make_letter(bits) == letter


def test_duplicate_tracks_rejected():
    with pytest.raises(PreconditionError):
        TrackAlphabet(("X", "X"))


def test_without_drops_one_track():
    a = TrackAlphabet(("X", "Y"))
    assert a.without("X").tracks == ("Y",)
    with pytest.raises(PreconditionError):
        a.without("Q")


def test_pred_true_false():
    t = LetterPred.true(2)
    f = LetterPred.false(2)
    assert all(t.satisfies(l) for l in range(4))
    assert not any(f.satisfies(l) for l in range(4))
    assert f.is_false and not t.is_false


def test_bit_is():
    p = LetterPred.bit_is(2, 1, 1)
    assert [p.satisfies(l) for l in range(4)] == [False, False, True, True]


def random_pred(rng: random.Random, width: int) -> LetterPred:
    letters = [l for l in range(1 << width) if rng.random() < 0.5]
    return LetterPred.of_letters(width, letters)


def test_boolean_algebra_matches_truth_tables():
    rng = random.Random(60)
    width = 3
    for _ in range(200):
        p = random_pred(rng, width)
        q = random_pred(rng, width)
        for l in range(1 << width):
            assert p.conj(q).satisfies(l) == (p.satisfies(l) and q.satisfies(l))
            assert p.disj(q).satisfies(l) == (p.satisfies(l) or q.satisfies(l))
            assert p.negate().satisfies(l) == (not p.satisfies(l))


def test_project_bit_is_existential():
    rng = random.Random(61)
    width = 3
    for _ in range(200):
        p = random_pred(rng, width)
        bit = rng.randrange(width)
        proj = p.project_bit(bit)
        assert proj.width == width - 1
        for l in range(1 << (width - 1)):
            low = l & ((1 << bit) - 1)
            high = (l >> bit) << (bit + 1)
            expanded = [high | (v << bit) | low for v in (0, 1)]
            assert proj.satisfies(l) == any(p.satisfies(e) for e in expanded)


def test_reduction_canonicalizes_dont_care_bits():
    # listing all letters explicitly collapses to the trivial mask
    full = LetterPred.of_letters(2, range(4))
    assert full == LetterPred.true(2)
    # a pattern pair that covers both values of one bit drops that bit
    p = LetterPred.of_letters(2, [0, 1])
    assert p.mask == 0b10 and p.patterns == frozenset({0})


def test_mismatched_widths_rejected():
    with pytest.raises(PreconditionError):
        LetterPred.true(2).conj(LetterPred.true(3))
