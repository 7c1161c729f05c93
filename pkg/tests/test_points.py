"""Point values and formal rational combinations."""

import random
from fractions import Fraction

import pytest

from omegacantor import (
    FORMAL,
    FormalCombo,
    ParseError,
    SequenceProfile,
    UPSet,
    parse_combo,
    point_value,
    render_combo,
    render_point,
)

G4 = SequenceProfile("geometric", 4)


def test_point_values_geometric4():
    assert point_value(UPSet.from_finite([1]), G4) == Fraction(3, 4)
    assert point_value(UPSet.from_finite([2]), G4) == Fraction(3, 16)
    assert point_value(UPSet.from_finite([1, 2]), G4) == Fraction(15, 16)
    assert point_value(UPSet.empty(), G4) == 0
    assert point_value(UPSet.full(), G4) == 1


def test_tail_point_value_is_q_inverse():
    for a in range(6):
        assert point_value(UPSet.tail(a), G4) == G4.q_inv(a)


def test_point_value_needs_geometric():
    with pytest.raises(Exception):
        point_value(UPSet.full(), FORMAL)


def test_build_merges_and_drops():
    c = UPSet.from_finite([1])
    x = FormalCombo.build([(c, Fraction(1, 2)), (c, Fraction(1, 2)), (UPSet.empty(), 7)])
    assert x.coeff_of(c) == 1
    # zero coefficients vanish
    y = FormalCombo.build([(c, 1), (c, -1)])
    assert y.is_zero
    assert y == FormalCombo.zero()


def test_combo_value_is_linear():
    rng = random.Random(3)
    for _ in range(100):
        points = [
            UPSet(
                tuple(rng.randint(0, 1) for _ in range(rng.randint(0, 3))),
                tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 2))),
            )
            for _ in range(2)
        ]
        coeffs = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)]
        x = FormalCombo.build(list(zip(points, coeffs)))
        direct = sum(
            (c * point_value(p, G4) for p, c in zip(points, coeffs)), Fraction(0)
        )
        assert x.value(G4) == direct


def test_total_weight():
    x = parse_combo("2*pt(01;0) - 1/2*inv(1)")
    assert x.total_weight() == Fraction(5, 2)


def test_render_point_prefers_inv():
    assert render_point(UPSet.tail(2)) == "inv(2)"
    assert render_point(UPSet.from_finite([2])) == "pt(01;0)"


def test_parse_render_round_trip():
    for text in [
        "0",
        "inv(0)",
        "pt(01;0)",
        "2*pt(01;0) - inv(1)",
        "1/2*pt(;10) + 3*inv(2) - pt(1;0)",
    ]:
        x = parse_combo(text)
        assert parse_combo(render_combo(x)) == x


def test_parse_bare_rational_means_multiple_of_one():
    # a bare number is a coefficient on the full point, whose value is 1
    assert parse_combo("1").value(G4) == 1
    assert parse_combo("3/4").value(G4) == Fraction(3, 4)
    assert parse_combo("2*pt(01;0) - 1").value(G4) == Fraction(3, 8) - 1


def test_parse_rejects_junk():
    for text in ["", "pt(01)", "pt(;)", "inv()", "1/0", "pt(01;0) &"]:
        with pytest.raises(ParseError):
            parse_combo(text)


def test_render_is_canonical_under_reordering():
    a = parse_combo("pt(1;0) + 2*inv(3)")
    b = parse_combo("2*inv(3) + pt(1;0)")
    assert a == b
    assert render_combo(a) == render_combo(b)
