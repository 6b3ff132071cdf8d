from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scindex.growth import (
    STRIP_INDICES,
    DeterministicParams,
    deterministic_record,
    fit_strip,
    monthly_deterministic_record,
    strip_check,
    strip_slope,
    trajectory,
)
from scindex.indices import hirsch, hprime_sq, woeginger, wprime_sq
from scindex.values import IndexValue


def test_annual_record_integer_rates():
    # two papers a year, three citations a year each
    x = deterministic_record(DeterministicParams(2, 3), 3)
    assert x.entries == (9, 9, 6, 6, 3, 3)


def test_fractional_rates_floor():
    params = DeterministicParams(Fraction(1, 2), Fraction(3, 2))
    assert deterministic_record(params, 1).entries == ()
    assert deterministic_record(params, 2).entries == (1,)
    assert deterministic_record(params, 4).entries == (4, 1)


def test_float_rates_read_as_decimals():
    assert DeterministicParams(0.2, 0.1).p == Fraction(1, 5)


def test_monthly_model_cites_from_next_month():
    params = DeterministicParams(1, 1, "month")
    assert monthly_deterministic_record(params, 1).entries == ()
    assert monthly_deterministic_record(params, 3).entries == (2, 1)


@pytest.mark.parametrize("bad", [dict(p=0, c=1), dict(p=1, c=-1), dict(p=1, c=1, period="week")])
def test_params_validated(bad):
    with pytest.raises(ValueError):
        DeterministicParams(**bad)


@pytest.mark.parametrize("name", STRIP_INDICES)
def test_strips_hold_for_small_integer_rates(name):
    for p in range(1, 5):
        for c in range(1, 5):
            rep = strip_check(name, p, c, 40)
            assert rep.holds, (name, p, c, rep.first_violation)


def test_triangle_indices_lie_on_their_lines():
    for p in range(1, 5):
        for c in range(1, 5):
            params = DeterministicParams(p, c)
            for n in range(1, 41):
                x = deterministic_record(params, n)
                assert woeginger(x) == min(p, c) * n
                assert wprime_sq(x) == p * c * n * n
            assert strip_check("w", p, c).exact_line and strip_check("wprime", p, c).exact_line


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 40))
def test_h_and_hprime_within_strip(p, c, n):
    x = deterministic_record(DeterministicParams(p, c), n)
    s, d = strip_slope("h", p, c)
    assert float(s) * n <= hirsch(x) <= float(s) * n + float(d) + 1e-12
    assert p * c * n * n <= 4 * hprime_sq(x) <= p * c * (n + 1) ** 2


def test_strip_slope_forms():
    assert strip_slope("hprime", 2, 2) == (IndexValue(1), IndexValue(1))
    assert strip_slope("wprime", 2, 3)[0] == IndexValue(6, 2)
    with pytest.raises(KeyError):
        strip_slope("c", 1, 1)


def test_fit_strip_recovers_line_and_width():
    vals = [2.0 * t + (0.5 if t % 2 else 0.0) for t in range(1, 30)]
    fit = fit_strip(vals)
    assert math.isclose(fit.slope, 2.0, abs_tol=1e-7)
    assert math.isclose(fit.width, 0.5, abs_tol=1e-7)


def test_trajectory_series():
    traj = trajectory(DeterministicParams(1, 1), 5, ["h", "wprime"])
    assert traj.times == [1, 2, 3, 4, 5]
    assert traj.series("wprime")[-1] == IndexValue(5)
    assert len(traj.floats("h")) == 5
