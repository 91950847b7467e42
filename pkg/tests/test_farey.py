"""Farey tree addressing and the three question mark function routes.

The independent oracle here is a from-scratch mediant bisection that never
touches turn words or continued fractions: it narrows a Farey interval
around the target while halving a dyadic interval in lockstep.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovfrac import (
    DyadicRational,
    farey_mediant,
    farey_node_at,
    farey_path_to,
    question_mark_farey,
    question_mark_of_word,
    question_mark_salem,
)

words = st.text(alphabet="LR", min_size=0, max_size=12)


def _qmark_bisect(x: F) -> F:
    """Oracle: ?(x) by simultaneous Farey/dyadic interval bisection."""
    lo, hi = F(0), F(1)
    ylo, yhi = F(0), F(1)
    while True:
        mid = F(lo.numerator + hi.numerator, lo.denominator + hi.denominator)
        y = (ylo + yhi) / 2
        if mid == x:
            return y
        if x < mid:
            hi, yhi = mid, y
        else:
            lo, ylo = mid, y


def _reduced_in_unit_interval(max_den: int) -> list[F]:
    out = [F(0), F(1)]
    for q in range(2, max_den + 1):
        out.extend(F(p, q) for p in range(1, q) if F(p, q).denominator == q)
    return sorted(out)


# -- tree addressing ------------------------------------------------------


def test_farey_node_examples():
    root = farey_node_at("")
    assert (root.value, root.left_parent, root.right_parent) == (F(1, 2), F(0), F(1))
    left = farey_node_at("L")
    assert (left.value, left.left_parent, left.right_parent) == (F(1, 3), F(0), F(1, 2))
    rl = farey_node_at("RL")
    assert (rl.value, rl.left_parent, rl.right_parent) == (F(3, 5), F(1, 2), F(2, 3))


def test_farey_path_examples():
    assert farey_path_to(F(1, 2)) == ""
    assert farey_path_to(F(1, 3)) == "L"
    assert farey_path_to(F(2, 5)) == "LR"


def test_farey_path_rejects_outside_open_interval():
    for bad in (F(0), F(1), F(3, 2), F(-1, 2)):
        with pytest.raises(ValueError):
            farey_path_to(bad)


def test_farey_node_rejects_bad_letters():
    with pytest.raises(ValueError):
        farey_node_at("LXR")


@given(words)
def test_farey_roundtrip(word):
    node = farey_node_at(word)
    assert farey_path_to(node.value) == word


@given(words)
def test_farey_node_invariants(word):
    node = farey_node_at(word)
    lp, rp = node.left_parent, node.right_parent
    assert node.value == farey_mediant(lp, rp)
    assert lp < node.value < rp
    det = rp.numerator * lp.denominator - lp.numerator * rp.denominator
    assert det == 1


# -- question mark: spot values -------------------------------------------


def test_question_mark_farey_examples():
    assert question_mark_farey(F(1, 2)) == DyadicRational(1, 1)
    assert question_mark_farey(F(1, 3)) == DyadicRational(1, 2)
    assert question_mark_farey(F(2, 5)) == DyadicRational(3, 3)
    assert question_mark_farey(F(0)) == DyadicRational(0, 0)
    assert question_mark_farey(F(1)) == DyadicRational(1, 0)


def test_question_mark_salem_examples():
    assert question_mark_salem(F(1, 3)) == DyadicRational(1, 2)  # one term: 1/4
    assert question_mark_salem(F(2, 5)) == DyadicRational(3, 3)  # 1/2 - 1/8
    assert question_mark_salem(F(1)) == DyadicRational(1, 0)
    assert question_mark_salem(F(0)) == DyadicRational(0, 0)


def test_question_mark_of_word_examples():
    assert question_mark_of_word("LR") == DyadicRational(3, 3)  # 0.011b at 2/5
    assert question_mark_of_word("") == DyadicRational(1, 1)  # 0.1b at the root
    assert question_mark_of_word("L") == DyadicRational(1, 2)  # 0.01b at 1/3


def test_question_mark_rejects_outside_unit_interval():
    with pytest.raises(ValueError):
        question_mark_farey(F(5, 4))
    with pytest.raises(ValueError):
        question_mark_salem(F(-1, 7))


# -- question mark: route agreement and oracle ----------------------------


def test_question_mark_farey_matches_bisection_oracle():
    for q in range(1, 41):
        for p in range(0, q + 1):
            x = F(p, q)
            if x.denominator != q or not 0 < x < 1:
                continue
            assert question_mark_farey(x).value == _qmark_bisect(x)


def test_question_mark_routes_agree_up_to_denominator_50():
    for x in _reduced_in_unit_interval(50):
        assert question_mark_farey(x) == question_mark_salem(x)


@given(words)
def test_question_mark_of_word_matches_farey_route(word):
    value = farey_node_at(word).value
    assert question_mark_of_word(word) == question_mark_farey(value)


def test_question_mark_strictly_monotone_up_to_denominator_30():
    xs = _reduced_in_unit_interval(30)
    images = [question_mark_farey(x).value for x in xs]
    assert all(a < b for a, b in zip(images, images[1:]))


def test_question_mark_symmetry_up_to_denominator_30():
    for x in _reduced_in_unit_interval(30):
        assert question_mark_farey(1 - x).value == 1 - question_mark_farey(x).value


@settings(max_examples=80)
@given(st.fractions(min_value=0, max_value=1, max_denominator=400))
def test_question_mark_salem_equals_bisection(x):
    if 0 < x < 1:
        assert question_mark_salem(x).value == _qmark_bisect(x)
