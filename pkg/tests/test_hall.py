import itertools
import random

import pytest

from uawlie.freealg import FreeElement, theta
from uawlie.hall import (EmptyWord, LieSeries, NotInLie, expand, format_tree, hall_coords_by_solve,
                         hall_element, hall_generate, hall_index, hall_rewrite, is_hall,
                         left_normed, lie_compare, parse_tree, witt_count)
from uawlie.linalg import Echelon

T = parse_tree
W = FreeElement.word


def lyndon_count(n, k=3):
    """Brute-force oracle: words that are strictly smaller than all their rotations."""
    count = 0
    for w in itertools.product(range(k), repeat=n):
        if all(w < w[i:] + w[:i] for i in range(1, n)):
            count += 1
    return count


def test_counts_per_length():
    # [DERIVED] oracle: brute-force Lyndon word count
    elems = hall_generate(5)
    per_len = [sum(1 for h in elems if h.length == n) for n in range(1, 6)]
    assert per_len == [lyndon_count(n) for n in range(1, 6)] == [3, 3, 8, 18, 48]
    assert [witt_count(n) for n in range(1, 7)] == [lyndon_count(n) for n in range(1, 7)]
    assert len(hall_generate(4)) == 32 and len(elems) == 80


def test_first_six_and_pinned_indices():
    # [PAPER] positions pinned by the identities that use them
    assert [format_tree(h.tree) for h in hall_generate(2)] == ["A", "B", "C", "[B,A]", "[C,A]", "[C,B]"]
    assert format_tree(hall_element(12)) == "[[B,A],C]"
    assert format_tree(hall_element(18)) == "[[[C,A],A],B]"
    assert format_tree(hall_element(31)) == "[[C,B],[B,A]]"
    assert format_tree(hall_element(57)) == "[[[B,A],A],[B,A]]"
    assert format_tree(hall_element(72)) == "[[[C,B],C],[C,A]]"


def test_indexing_is_stable():
    first = [(h.index, h.tree) for h in hall_generate(5)]
    assert first == [(h.index, h.tree) for h in hall_generate(5)]
    assert all(hall_index(t) == i for i, t in first)


def test_order_and_membership():
    # [PAPER]
    assert lie_compare(T("[B,A]"), T("[C,A]")) == "LT"
    assert lie_compare(T("C"), T("[B,A]")) == "LT"
    assert lie_compare(T("[C,A]"), T("[C,A]")) == "EQ"
    assert is_hall(T("[[B,A],C]"))
    assert not is_hall(T("[A,B]"))
    assert is_hall(T("[[C,B],[B,A]]"))


def test_left_normed_and_expand():
    # [TRIVIAL]
    assert left_normed("BAC") == T("[[B,A],C]")
    assert left_normed("A") == "A"
    assert left_normed("CAAB") == T("[[[C,A],A],B]")
    with pytest.raises(EmptyWord):
        left_normed("")
    assert expand(T("[B,A]")) == W("BA") - W("AB")
    assert expand(T("[[B,A],C]")) == W("BAC") - W("ABC") - W("CBA") + W("CAB")


def test_rewrite_examples():
    # [TRIVIAL]
    assert hall_rewrite(T("[A,B]")).by_index() == {4: -1}
    assert hall_rewrite(T("[[B,A],[C,A]]")).by_index() == {30: -1}


def test_hall_elements_are_independent_per_length():
    # [DERIVED] oracle: exact elimination of the expansions
    for n in range(1, 6):
        ech = Echelon()
        elems = [h for h in hall_generate(5) if h.length == n]
        assert all(ech.add(expand(h.tree).terms) for h in elems)


def test_theta_negates_hall_elements():
    # [PAPER]
    for h in hall_generate(5):
        f = expand(h.tree)
        assert theta(f) == -f


def _random_tree(rng, n):
    if n == 1:
        return rng.choice("ABC")
    k = rng.randint(1, n - 1)
    return (_random_tree(rng, k), _random_tree(rng, n - k))


def test_rewrite_agrees_with_linear_solve():
    # [DERIVED] oracle: Hall coordinates by an exact solve against the expansions
    rng = random.Random(17)
    for _ in range(100):
        t = _random_tree(rng, rng.randint(2, 6))
        series = hall_rewrite(t)
        assert series.is_hall()
        assert series.to_free() == expand(t)
        f = expand(t)
        if f:
            assert hall_coords_by_solve(f) == series


def test_non_lie_elements():
    # [DERIVED] theta fixes AB + BA, so it is not in the Lie algebra
    assert hall_coords_by_solve(W("AB") - W("BA")).by_index() == {4: -1}
    with pytest.raises(NotInLie):
        hall_coords_by_solve(W("AB") + W("BA"))


def test_series_bracket_matches_expansion():
    x = LieSeries.of(hall_element(4)) + LieSeries.of("C").scale(3)
    y = LieSeries.of(hall_element(7))
    assert x.bracket(y).to_free() == x.to_free() * y.to_free() - y.to_free() * x.to_free()
