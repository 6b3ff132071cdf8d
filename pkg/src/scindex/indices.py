"""Citation indices, evaluated exactly.

Every index returns an :class:`~scindex.values.IndexValue`; the empty record
maps to 0.  Index names used throughout the package (CLI, axiom suite,
simulations) are the keys of :data:`INDICES`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .records import CitationRecord, _as_record
from .values import ONE, ZERO, IndexValue


@dataclass(frozen=True)
class RectangleWitness:
    """Origin-anchored rectangle ``k`` papers wide and ``height`` citations tall."""

    k: int
    height: int

    @property
    def area(self) -> int:
        return self.k * self.height


@dataclass(frozen=True)
class IndexDescriptor:
    name: str
    evaluate: Callable[[CitationRecord], IndexValue]
    kind: str = "builtin"  # builtin | counterexample | composed
    description: str = ""

    def __call__(self, x) -> IndexValue:
        return self.evaluate(_as_record(x))


# -- classical indices --------------------------------------------------------

def hirsch(x) -> IndexValue:
    """Largest ``k`` with ``x_k >= k``."""
    x = _as_record(x)
    h = 0
    for k, v in enumerate(x, start=1):
        if v < k:
            break
        h = k
    return IndexValue(h)


def woeginger(x) -> IndexValue:
    """Largest ``k`` with ``x_m >= k - m + 1`` for every ``m <= k``."""
    x = _as_record(x)
    w = 0
    run = None
    for k, v in enumerate(x, start=1):
        a = v + k - 1
        run = a if run is None else min(run, a)
        if run < k:
            break
        w = k
    return IndexValue(w)


def circle_sq(x) -> int:
    """Squared distance from the origin to the nearest outer staircase corner."""
    x = _as_record(x)
    if not x:
        return 0
    best = (len(x)) ** 2  # corner (l, 0)
    for i, v in enumerate(x):
        best = min(best, i * i + v * v)
    return best


def circle(x) -> IndexValue:
    return IndexValue.sqrt(circle_sq(x))


def egghe(x) -> IndexValue:
    """Largest integer ``k`` whose top-``min(k, l)`` citations sum to at least ``k^2``."""
    x = _as_record(x)
    if not x:
        return ZERO
    best = 0
    s = 0
    for k, v in enumerate(x, start=1):
        s += v
        if s >= k * k:
            best = k
    tail = math.isqrt(s)
    if tail > len(x):
        best = tail
    return IndexValue(best)


def egghe_real(x) -> IndexValue:
    """Real-valued Egghe variant: the prefix sum is taken up to ``floor(k)``.

    On ``[j, j+1)`` with ``j < l`` the admissible ``k`` run up to
    ``min(sqrt(S_j), j+1)``; past ``l`` the bound is ``sqrt(S_l)``.
    """
    x = _as_record(x)
    if not x:
        return ZERO
    sums = x.prefix_sums()
    n = len(x)
    best = ZERO
    for j in range(1, n):
        s = sums[j - 1]
        if s >= j * j:
            cand = min(IndexValue.sqrt(s), IndexValue(j + 1))
            best = max(best, cand)
    total = sums[-1]
    if total >= n * n:
        best = max(best, IndexValue.sqrt(total))
    return best


# -- scale-invariant indices --------------------------------------------------

def _proportion_ok(height, k, min_ratio, max_ratio) -> bool:
    r = Fraction(height) / k
    if min_ratio is not None and r < Fraction(min_ratio):
        return False
    if max_ratio is not None and r > Fraction(max_ratio):
        return False
    return True


def max_rectangle_area(x, min_ratio=None, max_ratio=None) -> Fraction:
    """Largest area ``k * y`` with ``y <= x_k``; optionally ``min_ratio <= y/k <= max_ratio``.

    Without ratio bounds this is the integer ``max_k k * x_k``.  With an upper
    ratio the best height for width ``k`` is ``min(x_k, max_ratio * k)``, so the
    area may be a non-integer rational.
    """
    x = _as_record(x)
    best = Fraction(0)
    for k, v in enumerate(x, start=1):
        y = Fraction(v)
        if max_ratio is not None:
            y = min(y, Fraction(max_ratio) * k)
        if not _proportion_ok(y, k, min_ratio, None):
            continue
        best = max(best, k * y)
    return best


def hprime_sq(x) -> int:
    """``max_k k * x_k``: the largest origin-anchored rectangle in the bar graph."""
    x = _as_record(x)
    return max((k * v for k, v in enumerate(x, start=1)), default=0)


def hprime_witnesses(x) -> list[RectangleWitness]:
    """All rectangles attaining ``max_k k * x_k``, by increasing width."""
    x = _as_record(x)
    top = hprime_sq(x)
    if top == 0:
        return []
    return [RectangleWitness(k, v) for k, v in enumerate(x, start=1) if k * v == top]


def hirsch_power(x, a=Fraction(1, 2), min_ratio=None, max_ratio=None) -> IndexValue:
    """``(max_k k * x_k) ** a`` for rational ``a > 0``."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError(f"exponent must be positive, got {a}")
    if min_ratio is None and max_ratio is None:
        area = Fraction(hprime_sq(x))
    else:
        area = max_rectangle_area(x, min_ratio, max_ratio)
    return IndexValue(area) ** a


def hprime(x, min_ratio=None, max_ratio=None) -> IndexValue:
    return hirsch_power(x, Fraction(1, 2), min_ratio, max_ratio)


@dataclass(frozen=True)
class HullSolution:
    """Best line ``u/c + v/d = 1`` lying under a finite decreasing point set.

    ``product`` is ``c * d`` (exact); ``contacts`` are the points on the line.
    """

    product: Fraction
    c: Fraction
    d: Fraction
    contacts: tuple[tuple[int, int], ...]


def _lower_hull(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for p in points:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def best_intercept_line(points: Sequence[tuple[int, int]]) -> HullSolution | None:
    """Maximize ``c * d`` over lines with intercepts ``c, d > 0`` below every point.

    ``points`` must have strictly increasing abscissae starting at 0, non-increasing
    ordinates, and end on the horizontal axis.  The product, viewed along the
    slopes supporting one hull vertex, is convex in the slope, so the optimum is
    always the line through an edge of the lower convex hull.  That makes the
    search linear in the number of points.
    """
    if len(points) < 2:
        return None
    hull = _lower_hull(points)
    best = None
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        big = y1 * x2 - y2 * x1
        prod = Fraction(big * big, (x2 - x1) * (y1 - y2))
        if best is None or prod > best[0]:
            best = (prod, Fraction(big, y1 - y2), Fraction(big, x2 - x1))
    prod, c, d = best
    contacts = tuple((u, v) for u, v in points if v * c == d * (c - u))
    return HullSolution(prod, c, d, contacts)


def wprime_solution(x) -> HullSolution | None:
    """Largest right triangle with legs on the axes under the staircase.

    Corners are ``(k, x_{k+1})`` for ``k = 0..l`` with ``x_{l+1} = 0``.
    """
    x = _as_record(x)
    if not x:
        return None
    pts = [(k, v) for k, v in enumerate(x)] + [(len(x), 0)]
    return best_intercept_line(pts)


def wprime_sq(x) -> Fraction:
    sol = wprime_solution(x)
    return Fraction(0) if sol is None else sol.product


def wprime(x) -> IndexValue:
    return IndexValue(wprime_sq(x), 2)


def cprime_solution(x) -> HullSolution | None:
    """Largest axis-aligned quarter-ellipse under the staircase, in squared coordinates.

    The ellipse constraint at station ``k`` reads ``v <= d^2 - (d^2/c^2) u`` with
    ``u = k^2``, ``v = x_{k+1}^2``: a line with intercepts ``c^2`` and ``d^2``.
    The returned ``product`` is therefore ``c^2 d^2`` and ``c``, ``d`` are the
    squared semi-axes.
    """
    x = _as_record(x)
    if not x:
        return None
    pts = [(k * k, v * v) for k, v in enumerate(x)] + [(len(x) ** 2, 0)]
    return best_intercept_line(pts)


def cprime_fourth(x) -> Fraction:
    sol = cprime_solution(x)
    return Fraction(0) if sol is None else sol.product


def cprime(x) -> IndexValue:
    return IndexValue(cprime_fourth(x), 4)


def eprime(x) -> IndexValue:
    """Square root of total citations: what a scale-invariant Egghe variant collapses to."""
    return IndexValue.sqrt(_as_record(x).total)


def sum_index(x) -> IndexValue:
    return IndexValue(_as_record(x).total)


def count_index(x) -> IndexValue:
    return IndexValue(len(_as_record(x)))


def finite_to_one_bounds(v: int) -> tuple[int, int, float]:
    """Total-citation range of records with ``h' = v``.

    Returns ``(v^2, sum_{i <= v^2} floor(v^2 / i), v^2 (1 + 2 ln v))``.
    """
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ValueError(f"v must be a positive integer, got {v!r}")
    n = v * v
    upper = sum(n // i for i in range(1, n + 1))
    return n, upper, n * (1 + 2 * math.log(v))


# -- registry -----------------------------------------------------------------

INDICES: dict[str, IndexDescriptor] = {
    d.name: d
    for d in (
        IndexDescriptor("h", hirsch, description="Hirsch index"),
        IndexDescriptor("w", woeginger, description="Woeginger index"),
        IndexDescriptor("c", circle, description="largest quarter circle"),
        IndexDescriptor("e", egghe, description="Egghe index"),
        IndexDescriptor("ebar", egghe_real, description="real-valued Egghe variant"),
        IndexDescriptor("hprime", hprime, description="scale-invariant Hirsch index"),
        IndexDescriptor("wprime", wprime, description="scale-invariant Woeginger index"),
        IndexDescriptor("cprime", cprime, description="scale-invariant c-index"),
        IndexDescriptor("eprime", eprime, description="square root of total citations"),
        IndexDescriptor("sum", sum_index, description="total citations"),
        IndexDescriptor("count", count_index, description="number of cited papers"),
    )
}

ALIASES = {"hirsch": "h", "woeginger": "w", "circle": "c", "egghe": "e"}


def get_index(name: str) -> IndexDescriptor:
    key = ALIASES.get(name, name)
    try:
        return INDICES[key]
    except KeyError:
        raise KeyError(f"unknown index {name!r}; valid names: {', '.join(INDICES)}") from None


def hirsch_power_descriptor(a) -> IndexDescriptor:
    a = Fraction(a)
    return IndexDescriptor(f"h_{a}", lambda x: hirsch_power(x, a), kind="composed",
                           description=f"(max k*x_k)^{a}")


__all__ = [
    "ONE",
    "ZERO",
    "INDICES",
    "HullSolution",
    "IndexDescriptor",
    "RectangleWitness",
    "best_intercept_line",
    "circle",
    "circle_sq",
    "count_index",
    "cprime",
    "cprime_fourth",
    "cprime_solution",
    "egghe",
    "egghe_real",
    "eprime",
    "finite_to_one_bounds",
    "get_index",
    "hirsch",
    "hirsch_power",
    "hirsch_power_descriptor",
    "hprime",
    "hprime_sq",
    "hprime_witnesses",
    "max_rectangle_area",
    "sum_index",
    "woeginger",
    "wprime",
    "wprime_solution",
    "wprime_sq",
]
