"""Rounding into the Cantor set, and the brute-force stage constructions."""

import random
from fractions import Fraction

import pytest

from omegacantor import (
    FormalCombo,
    GrowthInsufficient,
    PreconditionError,
    SequenceProfile,
    UPSet,
    as_point,
    brute_vw,
    comp_interval,
    e_trunc,
    enumerate_kn,
    lambda_inv,
    nu,
    nu_brute,
    point_value,
    sign,
    stage_gaps,
    stage_intervals,
)

G4 = SequenceProfile("geometric", 4)


def random_point(rng: random.Random) -> UPSet:
    return UPSet(
        tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 3))),
        tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 2))),
    )


# --- stage constructions ----------------------------------------------------


def test_enumerate_kn_small():
    assert enumerate_kn(0, G4) == [0, 1]
    assert enumerate_kn(1, G4) == [0, Fraction(1, 4), Fraction(3, 4), 1]
    assert enumerate_kn(2, G4) == [
        0,
        Fraction(1, 16),
        Fraction(3, 16),
        Fraction(1, 4),
        Fraction(3, 4),
        Fraction(13, 16),
        Fraction(15, 16),
        1,
    ]


def test_stage_endpoints_refine():
    for n in range(4):
        coarse = set(enumerate_kn(n, G4))
        fine = set(enumerate_kn(n + 1, G4))
        assert coarse <= fine


def test_stage_intervals_partition():
    for n in range(4):
        ivs = stage_intervals(n, G4)
        assert len(ivs) == 2 ** n
        for (lo1, hi1), (lo2, hi2) in zip(ivs, ivs[1:]):
            assert lo1 < hi1 < lo2 < hi2
        # each interval has the stage width
        assert all(hi - lo == G4.q_inv(n) for lo, hi in ivs)


def test_stage_gaps_are_complementary():
    gaps = stage_gaps(2, G4)
    assert gaps == [
        (Fraction(1, 16), Fraction(3, 16)),
        (Fraction(1, 4), Fraction(3, 4)),
        (Fraction(13, 16), Fraction(15, 16)),
    ]


def test_brute_vw_stage2():
    rows = brute_vw(2, G4)
    assert {w - r for r, v, w in rows} == {Fraction(1, 4), Fraction(1, 16)}
    assert (Fraction(3, 16), Fraction(1, 8), Fraction(1, 4)) in rows


def test_point_values_land_in_every_stage():
    rng = random.Random(40)
    for _ in range(50):
        c = random_point(rng)
        v = point_value(c, G4)
        for n in range(4):
            assert any(lo <= v <= hi for lo, hi in stage_intervals(n, G4))


# --- nu_brute ---------------------------------------------------------------


def test_nu_brute_examples():
    assert nu_brute(Fraction(3, 8), 1, G4) == Fraction(1, 4)
    assert nu_brute(Fraction(15, 16) + Fraction(1, 1000), 2, G4) == Fraction(15, 16)
    assert nu_brute(Fraction(1), 3, G4) == 1
    assert nu_brute(Fraction(0), 3, G4) == 0


def test_nu_brute_fixes_stage_endpoints():
    rng = random.Random(41)
    for _ in range(100):
        c = random_point(rng)
        horizon = len(c.prefix) + 2 * len(c.period)
        for n in range(4):
            got = nu_brute(point_value(c, G4), n, G4)
            if all(c.bit(k) for k in range(n + 1, n + horizon + 2)):
                # all-ones tail: c is a stage-n right endpoint, so it is kept
                assert got == point_value(c, G4)
            else:
                assert got == point_value(e_trunc(n, c), G4)


def test_nu_brute_monotone_in_x():
    rng = random.Random(42)
    for _ in range(100):
        x = Fraction(rng.randint(0, 64), 64)
        y = Fraction(rng.randint(0, 64), 64)
        if x > y:
            x, y = y, x
        assert nu_brute(x, 3, G4) <= nu_brute(y, 3, G4)


# --- nu ---------------------------------------------------------------------


def test_nu_fixes_points():
    rng = random.Random(43)
    for _ in range(50):
        c = random_point(rng)
        if point_value(c, G4) in (0, 1):
            continue
        out = nu(FormalCombo.of(c), G4)
        assert as_point(out) == c


def test_nu_halved_endpoint():
    x = FormalCombo.of(UPSet.from_finite([1]), Fraction(1, 2))
    out = nu(x, G4)
    assert as_point(out) == UPSet.tail(1)
    assert out.value(G4) == Fraction(1, 4)
    # 3/8 sits inside the stage-1 gap (1/4, 3/4)
    assert nu_brute(Fraction(3, 8), 1, G4) == Fraction(1, 4)


def test_nu_doubled_point():
    x = FormalCombo.of(UPSet.from_finite([2]), 2)
    out = nu(x, G4)
    assert out.value(G4) == Fraction(1, 4)


def test_nu_output_is_point_below_input():
    rng = random.Random(44)
    kept = 0
    while kept < 100:
        pairs = [
            (random_point(rng), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
            for _ in range(2)
        ]
        x = FormalCombo.build(pairs)
        v = x.value(G4)
        if not (0 < v < 1):
            continue
        try:
            out = nu(x, G4)
        except GrowthInsufficient:
            continue
        kept += 1
        d = as_point(out)
        assert d is not None
        assert point_value(d, G4) <= v


def test_nu_agrees_with_brute_truncation():
    # the two routes to nu describe the same point: no stage-3 endpoint fits
    # between them
    rng = random.Random(45)
    kept = 0
    while kept < 100:
        pairs = [
            (random_point(rng), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
            for _ in range(2)
        ]
        x = FormalCombo.build(pairs)
        v = x.value(G4)
        if not (0 < v < 1):
            continue
        try:
            out = nu(x, G4)
        except GrowthInsufficient:
            continue
        kept += 1
        assert nu_brute(v, 3, G4) == nu_brute(out.value(G4), 3, G4)


def test_nu_rejects_out_of_range():
    with pytest.raises(PreconditionError):
        nu(FormalCombo.of(UPSet.from_finite([1]), 3), G4)
    with pytest.raises(PreconditionError):
        nu(FormalCombo.of(UPSet.from_finite([1]), -1), G4)


# --- lambda_inv -------------------------------------------------------------


def test_lambda_inv_examples():
    eighth = FormalCombo.of(UPSet.tail(1), Fraction(1, 2))
    assert lambda_inv(eighth, G4) == 1
    for n in range(5):
        assert lambda_inv(FormalCombo.of(UPSet.tail(n)), G4) == n
    assert lambda_inv(FormalCombo.of(UPSet.full()), G4) == 0


def test_lambda_inv_brackets_value():
    rng = random.Random(46)
    kept = 0
    while kept < 80:
        pairs = [
            (random_point(rng), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
            for _ in range(2)
        ]
        x = FormalCombo.build(pairs)
        v = x.value(G4)
        if not (0 < v <= 1):
            continue
        try:
            a = lambda_inv(x, G4)
        except GrowthInsufficient:
            continue
        kept += 1
        assert G4.q_inv(a + 1) < v <= G4.q_inv(a)


# --- comp_interval ----------------------------------------------------------


def test_comp_interval_inner_stage1():
    lo, hi = comp_interval(UPSet.empty(), 1, "inner")
    assert lo.value(G4) == Fraction(1, 4)
    assert hi.value(G4) == Fraction(3, 4)
    assert as_point(lo) is not None and as_point(hi) is not None


def test_comp_interval_left_matches_inner():
    lo, hi = comp_interval(UPSet.from_finite([1]), 1, "left")
    assert (lo.value(G4), hi.value(G4)) == (Fraction(1, 4), Fraction(3, 4))


def test_comp_interval_inner_width():
    # the level-a vacated gap spans the middle of a level-(a-1) piece
    rng = random.Random(47)
    for _ in range(50):
        c = random_point(rng)
        a = rng.randint(1, 4)
        lo, hi = comp_interval(c, a, "inner")
        assert hi.value(G4) - lo.value(G4) == G4.q_inv(a - 1) - 2 * G4.q_inv(a)


def test_comp_interval_is_a_gap():
    # no stage endpoint falls strictly inside any produced interval
    rng = random.Random(48)
    endpoints = enumerate_kn(4, G4)
    for _ in range(60):
        c = random_point(rng)
        a = rng.randint(1, 3)
        for kind in ("inner", "right", "left"):
            if kind == "right" and all(c.bit(b) for b in range(1, a + 1)):
                continue
            if kind == "left" and not any(c.bit(b) for b in range(1, a + 1)):
                continue
            lo, hi = comp_interval(c, a, kind)
            vlo, vhi = lo.value(G4), hi.value(G4)
            assert vlo < vhi
            assert not any(vlo < e < vhi for e in endpoints)


def test_comp_interval_preconditions():
    with pytest.raises(PreconditionError):
        comp_interval(UPSet.empty(), 0, "inner")
    with pytest.raises(PreconditionError):
        comp_interval(UPSet.empty(), 1, "left")
    with pytest.raises(PreconditionError):
        comp_interval(UPSet.full(), 1, "right")
    with pytest.raises(PreconditionError):
        comp_interval(UPSet.empty(), 1, "sideways")
