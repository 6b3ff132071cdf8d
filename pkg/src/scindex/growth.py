"""Deterministic career model and linear-growth strips.

A researcher publishes ``p`` papers per period and every paper gathers ``c``
citations per period.  Fractional rates accrue silently: the ``j``-th paper
exists once ``floor(p * t) >= j`` and its citation count is the floor of
``c`` times its age.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .indices import get_index, hprime_sq, wprime_sq
from .records import CitationRecord, make_record
from .values import IndexValue


def _rational(v) -> Fraction:
    # str() first so that 0.2 means 1/5 rather than the nearest binary float
    if isinstance(v, float):
        return Fraction(str(v))
    return Fraction(v)


@dataclass(frozen=True)
class DeterministicParams:
    p: Fraction
    c: Fraction
    period: str = "year"

    def __post_init__(self):
        object.__setattr__(self, "p", _rational(self.p))
        object.__setattr__(self, "c", _rational(self.c))
        if self.p <= 0 or self.c <= 0:
            raise ValueError(f"p and c must be positive, got p={self.p}, c={self.c}")
        if self.period not in ("year", "month"):
            raise ValueError(f"period must be 'year' or 'month', got {self.period!r}")

    def scaled(self, factor) -> "DeterministicParams":
        f = _rational(factor)
        return DeterministicParams(self.p * f, self.c * f, self.period)


def _birth(j: int, p: Fraction) -> int:
    """First period ``t`` with ``floor(p * t) >= j``."""
    return math.ceil(j / p)


def deterministic_record(params: DeterministicParams, n: int) -> CitationRecord:
    """Annual model after ``n`` years: papers of year ``y`` hold ``floor((n - y + 1) c)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    p, c = params.p, params.c
    count = math.floor(n * p)
    return make_record(math.floor((n - _birth(j, p) + 1) * c) for j in range(1, count + 1))


def monthly_deterministic_record(params: DeterministicParams, t: int) -> CitationRecord:
    """Monthly model after ``t`` months; citations start the month after publication."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    p, c = params.p, params.c
    count = math.floor(t * p)
    return make_record(math.floor((t - _birth(j, p)) * c) for j in range(1, count + 1))


@dataclass
class CareerTrajectory:
    """Snapshots ``x(t)`` and per-index value series along one career."""

    provenance: dict
    times: list[int] = field(default_factory=list)
    snapshots: list[CitationRecord] = field(default_factory=list)
    values: dict[str, list[IndexValue]] = field(default_factory=dict)

    def series(self, name: str) -> list[IndexValue]:
        return self.values[name]

    def floats(self, name: str) -> list[float]:
        return [float(v) for v in self.values[name]]


def trajectory(params: DeterministicParams, horizon: int, indices: Sequence[str]) -> CareerTrajectory:
    make = monthly_deterministic_record if params.period == "month" else deterministic_record
    traj = CareerTrajectory({"p": str(params.p), "c": str(params.c), "period": params.period})
    descs = [get_index(n) for n in indices]
    for d in descs:
        traj.values[d.name] = []
    for t in range(1, horizon + 1):
        x = make(params, t)
        traj.times.append(t)
        traj.snapshots.append(x)
        for d in descs:
            traj.values[d.name].append(d(x))
    return traj


# -- strips -------------------------------------------------------------------

STRIP_INDICES = ("h", "hprime", "w", "wprime")


@dataclass
class StripReport:
    index: str
    p: int
    c: int
    horizon: int
    slope: str
    width: str
    holds: bool
    first_violation: int | None = None
    exact_line: bool = False


def strip_slope(name: str, p: int, c: int) -> tuple[IndexValue, IndexValue]:
    """``(s_g, d_g)`` for the four indices with closed-form growth strips."""
    if name == "h":
        s = IndexValue(Fraction(p * c, p + c))
        return s, s
    if name == "hprime":
        s = IndexValue(Fraction(p * c, 4), 2)
        return s, s
    if name == "w":
        return IndexValue(min(p, c)), IndexValue(0)
    if name == "wprime":
        return IndexValue(p * c, 2), IndexValue(0)
    raise KeyError(f"no closed-form strip for {name!r}; choose from {STRIP_INDICES}")


def _in_strip(name: str, x: CitationRecord, n: int, p: int, c: int) -> bool:
    # all comparisons on integers or squares, never on floats
    if name == "h":
        v = get_index("h")(x).as_fraction()
        return p * c * n <= (p + c) * v <= p * c * (n + 1)
    if name == "hprime":
        big = hprime_sq(x)
        return p * c * n * n <= 4 * big <= p * c * (n + 1) ** 2
    if name == "w":
        return get_index("w")(x).as_fraction() == min(p, c) * n
    if name == "wprime":
        return wprime_sq(x) == p * c * n * n
    raise KeyError(name)


def strip_check(name: str, p: int, c: int, horizon: int = 40) -> StripReport:
    """Check ``s*n <= g(x(n)) <= s*n + d`` along the annual integer-rate career."""
    if not (isinstance(p, int) and isinstance(c, int)) or p < 1 or c < 1:
        raise ValueError("strip checks need integer p, c >= 1")
    s, d = strip_slope(name, p, c)
    params = DeterministicParams(p, c)
    first = None
    for n in range(1, horizon + 1):
        if not _in_strip(name, deterministic_record(params, n), n, p, c):
            first = n
            break
    return StripReport(name, p, c, horizon, s.exact_str(), d.exact_str(), first is None, first,
                       exact_line=(d == 0))


@dataclass
class StripFit:
    slope: float
    intercept: float
    width: float


def fit_strip(values: Sequence[float], times: Sequence[float] | None = None) -> StripFit:
    """Narrowest pair of parallel lines enclosing the points ``(t, v)``.

    Linear program in ``(slope, intercept, width)``.
    """
    from scipy.optimize import linprog

    n = len(values)
    ts = list(range(1, n + 1)) if times is None else list(times)
    # a + s t <= v  and  v <= a + s t + W
    a_ub, b_ub = [], []
    for t, v in zip(ts, values):
        a_ub.append([t, 1.0, 0.0])
        b_ub.append(v)
        a_ub.append([-t, -1.0, -1.0])
        b_ub.append(-v)
    res = linprog([0, 0, 1], A_ub=a_ub, b_ub=b_ub,
                  bounds=[(None, None), (None, None), (0, None)], method="highs")
    if not res.success:
        raise RuntimeError(f"strip fit failed: {res.message}")
    s, a, w = res.x
    return StripFit(float(s), float(a), float(w))
