"""Canonical ultimately periodic sets."""

import random

import pytest

from omegacantor import PreconditionError, UPSet
from omegacantor.upset import canonical_up


def test_period_is_minimized():
    assert UPSet((0, 1), (1, 0, 1, 0)) == UPSet((0, 1), (1, 0))


def test_prefix_is_minimized():
    # prefix bits that already agree with the period fold into it
    assert UPSet((0, 1, 0, 1), (0, 1)) == UPSet((), (0, 1))


def test_rotation_absorbed_via_prefix():
    a = UPSet((1,), (0, 1))
    b = UPSet((1, 0), (1, 0))
    assert a == b
    # the stream 1,0,1,0,... is purely periodic, so the prefix empties out
    assert a.prefix == () and a.period == (1, 0)


def test_empty_and_full():
    assert UPSet.empty().is_empty
    assert UPSet((), (0, 0, 0)) == UPSet.empty()
    assert UPSet.full() == UPSet((1,), (1, 1))


def test_bit_positions():
    s = UPSet((1, 0), (0, 1))
    assert [s.bit(n) for n in range(1, 7)] == [1, 0, 0, 1, 0, 1]
    assert s.bit(0) == 0  # members start at 1
    with pytest.raises(PreconditionError):
        s.bit(-1)


def test_bit_rejects_nonbinary():
    with pytest.raises(PreconditionError):
        UPSet((2,), (0,))


def test_from_finite_round_trip():
    s = UPSet.from_finite([3, 1])
    assert s.finite_members() == (1, 3)
    assert s.is_finite
    assert s.members_upto(5) == [1, 3]


def test_tail_level_round_trip():
    for a in range(5):
        assert UPSet.tail(a).tail_level() == a
    assert UPSet((1,), (0, 1)).tail_level() is None
    assert UPSet.full().tail_level() == 0


def test_restrict_upto():
    s = UPSet((0, 1), (1, 0))
    assert s.restrict_upto(4) == UPSet.from_finite([2, 3])
    assert s.restrict_upto(0) == UPSet.empty()


def test_min_member():
    assert UPSet.empty().min_member() is None
    assert UPSet((0, 0), (0, 1)).min_member() == 4


def test_canonical_form_is_representation_independent():
    # unrolling the period or shifting letters into the prefix never changes
    # the canonical pair
    rng = random.Random(11)
    for _ in range(300):
        pre = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4)))
        per = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 4)))
        base = canonical_up(pre, per)
        unroll = canonical_up(pre, per * rng.randint(2, 3))
        assert unroll == base
        k = rng.randint(1, len(per))
        shifted = canonical_up(pre + per[:k], per[k:] + per[:k])
        assert shifted == base


def test_membership_stream_survives_canonicalization():
    rng = random.Random(12)
    for _ in range(200):
        pre = tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 4)))
        per = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 4)))
        s = UPSet(pre, per)

        def raw(n: int) -> int:
            if n <= len(pre):
                return pre[n - 1]
            return per[(n - len(pre) - 1) % len(per)]

        for n in range(1, 20):
            assert s.bit(n) == raw(n)
