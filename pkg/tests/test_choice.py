from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from scindex.choice import (
    SetFamily,
    argmax_points,
    bargraph_mviia_check,
    count_choice_functions,
    exhaustive_implication_check,
    maximizer_choice,
    satisfies_mviia,
    satisfies_mviia_star,
    satisfies_warp,
    selector_mviia_pair,
    triangle_contact_selector,
    validate_choice,
)
from scindex.records import make_record


def test_counts():
    assert count_choice_functions(SetFamily.all_nonempty(range(2))) == 3
    assert count_choice_functions(SetFamily.all_nonempty(range(3))) == 189
    assert count_choice_functions(SetFamily.all_nonempty(range(4))) == 26_254_935


@pytest.mark.parametrize("n, passing", [(1, 1), (2, 3), (3, 13)])
def test_exhaustive_implications(n, passing):
    rep = exhaustive_implication_check(n)
    assert rep.ok
    assert rep.mviia == passing
    assert rep.warp_not_mviia == 0


def test_converse_of_star_implication_fails():
    assert exhaustive_implication_check(3).star_not_mviia == 86


def test_budget_refuses_large_universe():
    with pytest.raises(ValueError, match="budget"):
        exhaustive_implication_check(4)


def test_non_closed_family_refused():
    fam = SetFamily(frozenset({0, 1, 2}), (frozenset({0}), frozenset({1})))
    with pytest.raises(ValueError, match="unions"):
        exhaustive_implication_check(family=fam)


@given(st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_maximizers_satisfy_every_predicate(vals):
    fam = SetFamily.all_nonempty(range(4))
    c = maximizer_choice(fam, lambda i: vals[i])
    validate_choice(fam, c)
    assert satisfies_mviia(fam, c) and satisfies_warp(fam, c) and satisfies_mviia_star(fam, c)


def test_mviia_violation_has_witness():
    fam = SetFamily.all_nonempty(range(3))
    c = maximizer_choice(fam, lambda i: -i)  # always prefers the smallest item
    c[frozenset({0, 1})] = frozenset({1})
    res = satisfies_mviia(fam, c)
    assert not res.holds
    assert res.witness["G"] == frozenset({0, 1})
    assert not satisfies_warp(fam, c)


def test_validate_choice_rejects_empty_pick():
    fam = SetFamily.all_nonempty(range(2))
    bad = {m: frozenset() for m in fam.members}
    with pytest.raises(ValueError):
        validate_choice(fam, bad)


def test_bargraph_selector_on_small_box():
    rep = bargraph_mviia_check(5, 5)
    assert rep.ok
    assert rep.pairs == 19_152


def test_argmax_points():
    assert argmax_points(make_record((11, 7, 6, 6, 6, 4, 4, 4, 3, 3, 2, 2, 1, 1, 1))) == {(8, 4)}
    assert argmax_points(make_record((4, 2))) == {(1, 4), (2, 2)}


def test_triangle_selector_breaks_mviia():
    res = selector_mviia_pair(triangle_contact_selector, make_record((4, 4)), make_record((4, 4, 2, 2)))
    assert not res.holds
