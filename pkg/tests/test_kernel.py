"""Digit streams, truncation, zero tests and signs."""

import random
from fractions import Fraction

import pytest

from omegacantor import (
    FORMAL,
    FormalCombo,
    GrowthInsufficient,
    SequenceProfile,
    UPSet,
    as_point,
    digit,
    digits_upto,
    e_trunc,
    mu,
    point_value,
    sign,
    value_approx,
    xi_threshold,
)

G4 = SequenceProfile("geometric", 4)


def random_point(rng: random.Random) -> UPSet:
    return UPSet(
        tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 3))),
        tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 2))),
    )


def random_combo(rng: random.Random, n_terms: int = 2) -> FormalCombo:
    pairs = [
        (random_point(rng), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        for _ in range(n_terms)
    ]
    return FormalCombo.build(pairs)


# --- digit ------------------------------------------------------------------


def test_digit_matches_membership():
    c = UPSet.from_finite([1, 2])
    assert digit(FormalCombo.of(c), 1) == 1
    assert digit(FormalCombo.of(UPSet.from_finite([1])), 2) == 0
    assert digit(FormalCombo.of(c), 0) == 0


def test_digit_is_linear_in_coefficients():
    rng = random.Random(21)
    for _ in range(100):
        x = random_combo(rng)
        for n in range(8):
            direct = sum(c * p.bit(n) for p, c in x.terms) if n >= 1 else Fraction(0)
            assert digit(x, n) == direct


def test_digits_upto_is_eventually_periodic():
    x = FormalCombo.of(UPSet((1,), (0, 1)))
    ds = digits_upto(x, 12)
    assert ds[0] == 0
    # after the prefix the stream repeats with the charset period
    assert ds[2:8] == ds[4:10]


# --- mu ---------------------------------------------------------------------


def test_mu_cancellation_is_none():
    c = random_point(random.Random(5))
    x = FormalCombo.build([(c, Fraction(1)), (c, Fraction(-1))])
    assert mu(x) is None


def test_mu_first_membership():
    assert mu(FormalCombo.of(UPSet.from_finite([3]))) == 3


def test_mu_spec_pair():
    x = FormalCombo.build(
        [(UPSet.from_finite([1]), Fraction(1)), (UPSet.from_finite([1, 2]), Fraction(-1))]
    )
    assert mu(x) == 2


def test_mu_agrees_with_scan():
    rng = random.Random(22)
    for _ in range(200):
        x = random_combo(rng)
        got = mu(x)
        scan = next((n for n in range(1, 40) if digit(x, n) != 0), None)
        if scan is None:
            assert got is None
        else:
            assert got == scan


def test_mu_none_iff_zero_value():
    # the zero test agrees with exact evaluation in a geometric profile
    rng = random.Random(23)
    for _ in range(200):
        x = random_combo(rng)
        assert (mu(x) is None) == (x.value(G4) == 0)


# --- e_trunc ----------------------------------------------------------------


def test_e_trunc_examples():
    assert e_trunc(2, UPSet.from_finite([1, 3])) == UPSet.from_finite([1])
    assert e_trunc(0, UPSet((1,), (0, 1))) == UPSet.empty()


def test_e_trunc_is_charset_restriction():
    rng = random.Random(24)
    for _ in range(100):
        c = random_point(rng)
        a = rng.randint(0, 6)
        t = e_trunc(a, c)
        assert t.is_finite
        for n in range(1, 10):
            assert t.bit(n) == (c.bit(n) if n <= a else 0)


def test_e_trunc_t7_bounds():
    # 0 <= c - e(a,c) <= q_a^{-1}, exactly, for every point and level
    rng = random.Random(25)
    for _ in range(100):
        c = random_point(rng)
        a = rng.randint(0, 6)
        gap = point_value(c, G4) - point_value(e_trunc(a, c), G4)
        assert 0 <= gap <= G4.q_inv(a)


def test_e_trunc_numeric_example():
    c = UPSet.from_finite([1, 2])
    assert point_value(c, G4) - point_value(e_trunc(1, c), G4) == Fraction(3, 16)


# --- as_point ---------------------------------------------------------------


def test_as_point_halves_recombine():
    c = random_point(random.Random(6))
    x = FormalCombo.build([(c, Fraction(1, 2)), (c, Fraction(1, 2))])
    assert as_point(x) == c


def test_as_point_rejects_fractional_digit():
    x = FormalCombo.of(UPSet.from_finite([1]), Fraction(1, 2))
    assert as_point(x) is None


def test_as_point_disjoint_sum():
    x = FormalCombo.build(
        [(UPSet.from_finite([1]), Fraction(1)), (UPSet.from_finite([2]), Fraction(1))]
    )
    d = as_point(x)
    assert d == UPSet.from_finite([1, 2])
    assert point_value(d, G4) == Fraction(15, 16)


def test_as_point_agrees_with_digit_stream():
    rng = random.Random(26)
    for _ in range(200):
        x = random_combo(rng)
        d = as_point(x)
        ds = digits_upto(x, 20)
        if d is None:
            assert any(v not in (0, 1) for v in ds[1:])
        else:
            assert all(v in (0, 1) for v in ds[1:])
            for n in range(1, 20):
                assert d.bit(n) == ds[n]


# --- sign -------------------------------------------------------------------


def test_sign_spec_examples():
    h1 = FormalCombo.of(UPSet.from_finite([1]))
    h2 = FormalCombo.of(UPSet.from_finite([2]))
    diff = FormalCombo.build([(UPSet.from_finite([1]), Fraction(1)),
                              (UPSet.from_finite([2]), Fraction(-1))])
    assert sign(diff, G4) == 1
    assert sign(FormalCombo.zero(), G4) == 0
    down = FormalCombo.build([(UPSet.tail(1), Fraction(1)), (UPSet.full(), Fraction(-1))])
    assert sign(down, FORMAL) == -1
    assert sign(down, G4) == -1
    assert h1.value(G4) > h2.value(G4)


def test_sign_matches_exact_value_when_certified():
    rng = random.Random(27)
    checked = 0
    for _ in range(400):
        x = random_combo(rng)
        try:
            s = sign(x, G4)
        except GrowthInsufficient:
            continue
        v = x.value(G4)
        assert s == (v > 0) - (v < 0)
        checked += 1
    assert checked >= 200


def test_sign_formal_is_first_nonzero_digit():
    rng = random.Random(28)
    for _ in range(200):
        x = random_combo(rng)
        m = mu(x)
        s = sign(x, FORMAL)
        if m is None:
            assert s == 0
        else:
            d = digit(x, m)
            assert s == (1 if d > 0 else -1)


# --- value_approx -----------------------------------------------------------


def test_value_approx_contains_exact_value():
    rng = random.Random(29)
    for _ in range(200):
        x = random_combo(rng)
        n = rng.randint(0, 5)
        lo, hi = value_approx(x, G4, n)
        v = x.value(G4)
        assert lo <= v <= hi
        assert hi - lo <= x.total_weight() * G4.q_inv(n)


def test_value_approx_spec_example():
    x = FormalCombo.of(UPSet.from_finite([1]))
    lo, hi = value_approx(x, G4, 3)
    assert lo <= Fraction(3, 4) <= hi
    assert hi - lo <= Fraction(1, 64)


def test_value_approx_zero_and_one():
    assert value_approx(FormalCombo.zero(), G4, 2) == (0, 0)
    lo, hi = value_approx(FormalCombo.of(UPSet.full()), G4, 4)
    assert lo <= 1 <= hi


def test_value_approx_depth_guard():
    tight = SequenceProfile("geometric", 4, max_depth=2)
    with pytest.raises(Exception):
        value_approx(FormalCombo.of(UPSet.full()), tight, 3)


# --- xi_threshold -----------------------------------------------------------


def test_xi_threshold_grows_with_height():
    small = xi_threshold((Fraction(1), Fraction(-1)))
    big = xi_threshold((Fraction(3), Fraction(-2), Fraction(1, 3)))
    assert small >= 1
    assert big >= small


def test_xi_threshold_gates_small_values():
    # whenever 0 < |value| < q_a^{-1} with a at or beyond the threshold,
    # the first nonzero digit cannot appear before a
    rng = random.Random(30)
    for _ in range(300):
        x = random_combo(rng)
        m = mu(x)
        if m is None:
            continue
        v = x.value(G4)
        if v == 0:
            continue
        xi = xi_threshold(tuple(c for _, c in x.terms))
        for a in range(xi, xi + 4):
            if abs(v) < G4.q_inv(a):
                assert m >= a
