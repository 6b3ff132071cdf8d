from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from scindex.indices import (
    INDICES,
    circle,
    circle_sq,
    cprime,
    cprime_fourth,
    cprime_solution,
    egghe,
    egghe_real,
    eprime,
    finite_to_one_bounds,
    get_index,
    hirsch,
    hirsch_power,
    hprime,
    hprime_sq,
    hprime_witnesses,
    max_rectangle_area,
    woeginger,
    wprime,
    wprime_sq,
    wprime_solution,
)
from scindex.records import cumulatively_dominates, dominates, dual, enumerate_records, hstretch, make_record, vscale
from scindex.values import IndexValue
from strategies import nonempty_records, records

EX2 = make_record((11, 7, 6, 6, 6, 4, 4, 4, 3, 3, 2, 2, 1, 1, 1))


class TestWorkedRecord:
    def test_fixed_scale_indices(self):
        assert hirsch(EX2) == 5
        assert woeginger(EX2) == 8
        assert circle_sq(EX2) == 40 and circle(EX2) == IndexValue(40, 2)
        assert egghe(EX2) == 6
        assert egghe_real(EX2) == IndexValue(40, 2)

    def test_rectangle(self):
        assert hprime_sq(EX2) == 32
        assert [(w.k, w.height) for w in hprime_witnesses(EX2)] == [(8, 4)]
        assert hprime(EX2).decimal() == IndexValue(32, 2).decimal()

    def test_triangle_and_ellipse_match_oracles(self):
        # values computed by tests/oracles.py (pair enumeration) and frozen here
        assert wprime_sq(EX2) == Fraction(1849, 21)
        sol = wprime_solution(EX2)
        assert (sol.c, sol.d) == (Fraction(43, 3), Fraction(43, 7))
        assert sol.contacts == ((5, 4), (12, 1))
        assert cprime_fourth(EX2) == Fraction(638401, 273)
        assert cprime_solution(EX2).contacts == ((25, 16), (64, 9))
        assert str(wprime(EX2).decimal()) == "9.38336928"
        assert str(cprime(EX2).decimal()) == "6.95396864"

    def test_numeric_cross_check(self):
        assert math.isclose(oracles.numeric_best_product(oracles.corners(EX2.entries)),
                            float(wprime_sq(EX2)), rel_tol=1e-4)
        assert math.isclose(oracles.numeric_best_product(oracles.corners(EX2.entries, 2)),
                            float(cprime_fourth(EX2)), rel_tol=1e-4)

    def test_eprime_is_sqrt_total(self):
        assert eprime(EX2) == IndexValue(61, 2)


@pytest.mark.parametrize("x, g, expected", [
    ((3, 3), cprime, IndexValue(6, 2)),
    ((4, 4), wprime, IndexValue(8, 2)),
    ((2, 2, 2, 2), wprime, IndexValue(8, 2)),
    ((4, 4, 2, 2), wprime, IndexValue(4)),
    ((1,), wprime, IndexValue(1)),
    ((1,), cprime, IndexValue(1)),
    # prefix sum 16 >= 4^2 once a fourth (uncited) slot is allowed
    ((8, 6, 2), egghe, IndexValue(4)),
    ((3, 3, 2, 2, 2, 2, 1, 1), egghe, IndexValue(2)),
    ((8, 6, 2), egghe_real, IndexValue(4)),
    ((), hprime, IndexValue(0)),
    ((), wprime, IndexValue(0)),
])
def test_small_values(x, g, expected):
    assert g(x) == expected


@given(records(max_len=10, max_val=15))
def test_wprime_matches_pair_enumeration(x):
    assert wprime_sq(x) == oracles.wprime_sq(x.entries)


@given(records(max_len=8, max_val=12))
def test_cprime_matches_pair_enumeration(x):
    assert cprime_fourth(x) == oracles.cprime_fourth(x.entries)


@given(nonempty_records(max_len=8, max_val=12))
def test_wprime_matches_numeric_scan(x):
    approx = oracles.numeric_best_product(oracles.corners(x.entries), grid=20_000)
    exact = float(wprime_sq(x))
    assert approx <= exact * (1 + 1e-9)
    assert approx >= exact * (1 - 2e-3)


@given(records())
def test_h_and_hprime_match_oracles(x):
    assert hirsch(x) == oracles.hirsch(x.entries)
    assert hprime_sq(x) == oracles.hprime_sq(x.entries)


@given(records())
def test_scale_invariant_versions_dominate_fixed_scale(x):
    assert hirsch(x) <= hprime(x)
    assert woeginger(x) <= wprime(x)
    assert circle(x) <= cprime(x)
    # the rectangle fits in the triangle with doubled legs
    assert hprime(x) <= wprime(x) or not x


def test_egghe_not_symmetric():
    x = make_record((8, 6, 2))
    assert egghe(x) != egghe(dual(x))
    assert egghe(x) > len(x)


@given(records(max_len=8, max_val=12))
def test_symmetric_under_duality(x):
    for g in (hirsch, woeginger, circle, hprime, wprime, cprime):
        assert g(dual(x)) == g(x)


@given(records(max_len=7, max_val=10), st.integers(1, 4), st.integers(1, 4))
def test_scaling_laws(x, k, m):
    assert hprime_sq(vscale(x, k)) == k * hprime_sq(x)
    assert hprime_sq(hstretch(x, m)) == m * hprime_sq(x)
    assert wprime_sq(vscale(x, k)) == k * wprime_sq(x)
    assert wprime_sq(hstretch(x, m)) == m * wprime_sq(x)
    assert cprime_fourth(vscale(x, k)) == k * k * cprime_fourth(x)
    assert cprime_fourth(hstretch(x, m)) == m * m * cprime_fourth(x)


@given(records(max_len=7, max_val=10), records(max_len=7, max_val=10))
def test_monotone_under_dominance(x, y):
    if dominates(x, y):
        for name in ("h", "w", "c", "hprime", "wprime", "cprime", "e", "sum", "count"):
            assert INDICES[name](x) <= INDICES[name](y)


def test_egghe_equals_best_hirsch_over_cumulatively_dominated():
    small = [r for r in enumerate_records(4, 6)]
    for x in small:
        best = max(hirsch(y) for y in small if cumulatively_dominates(x, y))
        assert egghe(x) == best


def test_proportion_knob():
    x = make_record((10, 1))
    assert max_rectangle_area(x) == 10
    assert max_rectangle_area(x, max_ratio=2) == 2
    assert max_rectangle_area(x, min_ratio=Fraction(1, 2)) == 10
    assert max_rectangle_area(x, min_ratio=20) == 0
    assert hirsch_power(x, 1) == IndexValue(10)


def test_finite_to_one_bounds():
    lo, hi, approx = finite_to_one_bounds(12)
    assert (lo, hi) == (144, 746)
    assert round(approx) == 860 and abs(approx - 859) <= 1
    with pytest.raises(ValueError):
        finite_to_one_bounds(0)


def test_get_index_lists_valid_names():
    with pytest.raises(KeyError) as err:
        get_index("nope")
    assert "hprime" in str(err.value)
    assert get_index("hirsch") is INDICES["h"]
