import numpy as np
import pytest

from src.errors import InputError, VerificationError
from src.posets import BOTTOM, TOP, BoundedPoset


def test_boolean_lattice_basics(boolean_lattice):
    P = boolean_lattice
    P.check_partial_order()
    assert P.minimum() == "0"
    assert P.maximum() == "ab"
    assert sorted(P.atoms()) == ["a", "b"]
    assert P.covers("a") == ["ab"]
    assert sorted(P.lower_covers("ab")) == ["a", "b"]
    assert P.is_bounded() and P.is_graded()
    assert P.length() == 2
    assert len(P.maximal_chains()) == 2


def test_dual_swaps_extrema(boolean_lattice):
    D = boolean_lattice.dualize()
    assert D.minimum() == "ab"
    assert D.maximum() == "0"
    assert D.dual


def test_interval_and_up_set(boolean_lattice):
    I = boolean_lattice.interval("a", "ab")
    assert set(I.elements) == {"a", "ab"}
    assert set(boolean_lattice.up_set("b")) == {"b", "ab"}


def test_bounded_closure_adds_missing_extrema(bowtie):
    assert not bowtie.is_bounded()
    B = bowtie.bounded_closure()
    assert B.minimum() == BOTTOM
    assert B.maximum() == TOP
    assert len(B) == len(bowtie) + 2


def test_adjoin_top_keeps_order(boolean_lattice):
    P = boolean_lattice.adjoin_top()
    assert P.leq("ab", TOP)
    assert P.leq("0", "a")
    assert P.maximum() == TOP


def test_ungraded_poset_is_detected():
    # 0 < a < b < 1 and 0 < c < 1
    P = BoundedPoset.from_covers(["0", "a", "b", "c", "1"],
                                 [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
    assert P.is_bounded()
    assert not P.is_graded()


def test_check_partial_order_rejects_cycles():
    order = np.array([[True, True], [True, True]])
    with pytest.raises(VerificationError):
        BoundedPoset(["x", "y"], order).check_partial_order()


def test_order_shape_must_match():
    with pytest.raises(InputError):
        BoundedPoset(["x"], np.ones((2, 2), dtype=bool))


def test_from_relation_divisibility():
    P = BoundedPoset.from_relation([1, 2, 3, 6], lambda a, b: b % a == 0)
    P.check_partial_order()
    assert P.minimum() == 1
    assert P.maximum() == 6
    assert sorted(P.atoms()) == [2, 3]
