"""Topological classification of parity-automaton languages."""

import json
import random

import pytest

from omegacantor import (
    BorelReport,
    CapacityExceeded,
    DPA,
    PreconditionError,
    TrackAlphabet,
    classify,
    compile_formula,
    determinize,
    dpa_complement,
    is_closed,
    is_open,
    landweber_fsigma,
    landweber_gdelta,
    loop_structure,
    parse_formula,
    prefix_closed_equal,
)
from omegacantor.compile import VarEnv
from omegacantor.dpa import dpa_reduce

from conftest import random_dpa
from oracles import borel_flags_direct, borel_label_direct

A1 = TrackAlphabet(("X",))


def dpa_of(text: str, names: list[str]) -> DPA:
    f = parse_formula(text)
    return determinize(compile_formula(f, VarEnv.of(names)))


LABELLED = [
    ("ex1 x. x in X", ["X"], "open_proper"),
    ("all1 x. x in X", ["X"], "closed_proper"),
    ("all1 x. ex1 y. (x < y and y in X)", ["X"], "gdelta_proper"),
    ("not all1 x. ex1 y. (x < y and y in X)", ["X"], "fsigma_proper"),
    ("ex1 x. x = x", ["X"], "clopen"),
    ("ex1 x. (x in X and all1 y. (y in X -> x = y))", ["X"], "delta2_proper"),
    (
        "(first_in(X) and all1 x. ex1 y. (x < y and y in X))"
        " or (not first_in(X) and ex1 x. all1 y. (x < y -> not y in Y))",
        ["X", "Y"],
        "bc_pi2_proper",
    ),
]


def test_every_label_is_reachable():
    for text, names, want in LABELLED:
        rep = classify(dpa_of(text, names))
        assert rep.label == want, text


def test_reports_respect_duality():
    for text, names, _ in LABELLED:
        d = dpa_of(text, names)
        r = classify(d)
        rc = classify(dpa_complement(d))
        assert (r.is_open, r.is_closed) == (rc.is_closed, rc.is_open), text
        assert (r.is_gdelta, r.is_fsigma) == (rc.is_fsigma, rc.is_gdelta), text


def test_classify_agrees_with_peeling_oracle():
    rng = random.Random(130)
    for _ in range(300):
        d = random_dpa(rng, A1)
        rep = classify(d)
        flags = borel_flags_direct(d)
        assert rep.is_open == flags["is_open"]
        assert rep.is_closed == flags["is_closed"]
        assert rep.is_gdelta == flags["is_gdelta"]
        assert rep.is_fsigma == flags["is_fsigma"]
        assert rep.label == borel_label_direct(d)


def test_landweber_tests_are_dual():
    rng = random.Random(131)
    for _ in range(100):
        d = dpa_reduce(random_dpa(rng, A1))
        assert landweber_fsigma(d) == landweber_gdelta(dpa_complement(d))


def test_open_closed_are_dual():
    rng = random.Random(132)
    for _ in range(100):
        d = random_dpa(rng, A1)
        assert is_open(d) == is_closed(dpa_complement(d))


def test_prefix_closed_equal_examples():
    # empty and universal languages are closed
    empty = DPA(A1, 1, ((0, 0),), (1,), 0)
    full = DPA(A1, 1, ((0, 0),), (0,), 0)
    assert prefix_closed_equal(empty)
    assert prefix_closed_equal(full)
    # "infinitely many 1s" has universal closure but is not everything
    inf1 = dpa_of("all1 x. ex1 y. (x < y and y in X)", ["X"])
    assert not prefix_closed_equal(inf1)
    assert prefix_closed_equal(dpa_of("all1 x. x in X", ["X"]))


def test_loop_structure_contents():
    # one accepting self-loop, one rejecting self-loop, both reachable
    d = DPA(A1, 2, ((0, 1), (1, 1)), (0, 1), 0)
    ls = loop_structure(d)
    assert ls.reachable == frozenset({0, 1})
    assert frozenset({0}) in ls.accepting()
    assert frozenset({1}) in ls.rejecting()


def test_loop_structure_cap():
    # a single SCC with too many states for subset enumeration
    n = 24
    delta = tuple(((q + 1) % n, (q + 2) % n) for q in range(n))
    d = DPA(A1, n, delta, tuple(q % 2 for q in range(n)), 0)
    with pytest.raises(CapacityExceeded):
        loop_structure(d, cap=1 << 10)


def test_classify_reduces_before_enumerating():
    # raw loop enumeration on this one would blow the default cap, but the
    # quotient collapses it far below
    text, names, want = LABELLED[-1]
    d = dpa_of(text, names)
    rep = classify(d)
    assert rep.label == want


def test_borel_report_validates_flags():
    with pytest.raises(PreconditionError):
        BorelReport(True, False, False, True, "open_proper")
    with pytest.raises(PreconditionError):
        BorelReport(False, False, True, True, "clopen")


def test_report_json_shape():
    rep = classify(dpa_of("ex1 x. x in X", ["X"]))
    decoded = json.loads(rep.to_json())
    assert list(decoded) == [
        "is_open",
        "is_closed",
        "is_gdelta",
        "is_fsigma",
        "label",
    ]
    assert decoded["label"] == "open_proper"


def test_language_equivalent_automata_get_identical_reports():
    # two independent constructions of "X is nonempty"
    a = dpa_of("ex1 x. x in X", ["X"])
    b = dpa_of("not all1 x. not x in X", ["X"])
    assert classify(a) == classify(b)
