"""Array kernels for the simulation hot loop.

Every kernel takes a citation array sorted non-increasing (``int64``; trailing
zeros allowed and ignored) and returns integers only, so results stay exact:

* ``h``, ``w``: the index itself;
* ``hprime_sq``: ``max k * x_k``;
* ``wprime_sq``: ``(num, den)`` in lowest terms with ``w'^2 = num / den``.

Two implementations are kept side by side: explicit loops compiled with numba,
and vectorized numpy.  :data:`BACKEND` picks one at import time
(``SCINDEX_DISABLE_NUMBA=1`` forces numpy).  Both consume the random
generator in the same order, so careers are bit-identical across backends.

int64 is exact here while ``l(x) * x_1`` stays below about 10**6, which is
far beyond desk-scale careers; the exact Python-int versions live in
:mod:`scindex.indices`.
"""

from __future__ import annotations

import numpy as np

from ._jit import HAS_NUMBA, njit

BACKEND = "numba" if HAS_NUMBA else "numpy"


@njit(cache=True)
def _positive_length(x):
    n = x.shape[0]
    while n > 0 and x[n - 1] <= 0:
        n -= 1
    return n


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def hirsch_loop(x):
    n = _positive_length(x)
    h = 0
    for k in range(1, n + 1):
        if x[k - 1] >= k:
            h = k
        else:
            break
    return h


@njit(cache=True)
def hprime_sq_loop(x):
    n = _positive_length(x)
    best = 0
    for k in range(1, n + 1):
        v = k * x[k - 1]
        if v > best:
            best = v
    return best


@njit(cache=True)
def woeginger_loop(x):
    n = _positive_length(x)
    w = 0
    run = np.int64(1) << 62
    for k in range(1, n + 1):
        a = x[k - 1] + k - 1
        if a < run:
            run = a
        if run >= k:
            w = k
        else:
            break
    return w


@njit(cache=True)
def wprime_sq_loop(x):
    """Largest ``c*d`` over hypotenuses lying under the staircase corners.

    The optimum sits on an edge of the lower convex hull of the corner points
    ``(k, x_{k+1})``, ``k = 0..l`` (with ``x_{l+1} = 0``).
    """
    n = _positive_length(x)
    if n == 0:
        return 0, 1
    hx = np.empty(n + 1, np.int64)
    hy = np.empty(n + 1, np.int64)
    m = 0
    for k in range(n + 1):
        yk = x[k] if k < n else 0
        while m >= 2:
            cross = (hx[m - 1] - hx[m - 2]) * (yk - hy[m - 2]) - (hy[m - 1] - hy[m - 2]) * (k - hx[m - 2])
            if cross <= 0:
                m -= 1
            else:
                break
        hx[m] = k
        hy[m] = yk
        m += 1
    best_num = 0
    best_den = 1
    for i in range(m - 1):
        x1, y1, x2, y2 = hx[i], hy[i], hx[i + 1], hy[i + 1]
        big = y1 * x2 - y2 * x1
        num = big * big
        den = (x2 - x1) * (y1 - y2)
        if num * best_den > best_num * den:
            best_num, best_den = num, den
    g = _gcd(best_num, best_den)
    return best_num // g, best_den // g


def hirsch_numpy(x):
    x = np.asarray(x, dtype=np.int64)
    return int(np.count_nonzero(x >= np.arange(1, x.shape[0] + 1)))


def hprime_sq_numpy(x):
    x = np.asarray(x, dtype=np.int64)
    if x.shape[0] == 0:
        return 0
    return int((x * np.arange(1, x.shape[0] + 1)).max())


def woeginger_numpy(x):
    x = np.asarray(x, dtype=np.int64)
    x = x[x > 0]
    if x.shape[0] == 0:
        return 0
    k = np.arange(1, x.shape[0] + 1)
    run = np.minimum.accumulate(x + k - 1)
    return int(np.count_nonzero(run >= k))


def wprime_sq_numpy(x):
    x = np.asarray(x, dtype=np.int64)
    x = x[x > 0]
    n = x.shape[0]
    if n == 0:
        return 0, 1
    ys = np.append(x, 0)
    hull: list[tuple[int, int]] = []
    for k in range(n + 1):
        yk = int(ys[k])
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (yk - oy) - (ay - oy) * (k - ox) <= 0:
                hull.pop()
            else:
                break
        hull.append((k, yk))
    h = np.asarray(hull, dtype=np.int64)
    x1, y1, x2, y2 = h[:-1, 0], h[:-1, 1], h[1:, 0], h[1:, 1]
    big = y1 * x2 - y2 * x1
    num = big * big
    den = (x2 - x1) * (y1 - y2)
    best = 0
    for i in range(1, num.shape[0]):
        if num[i] * den[best] > num[best] * den[i]:
            best = i
    g = int(np.gcd(num[best], den[best]))
    return int(num[best]) // g, int(den[best]) // g


# career simulation ----------------------------------------------------------

N_SERIES = 5  # h, hprime_sq, w, wprime_num, wprime_den


@njit(cache=True)
def simulate_career_loop(rng, p, c, months, cite_same_month):
    """One Poisson career, month by month.

    Returns ``(series, n_papers, cite_draws, total_cites)`` where ``series``
    has shape ``(months, 5)``: ``h, h'^2, w, w'^2 numerator, w'^2 denominator``
    after each month.
    """
    cap = 64
    cites = np.zeros(cap, np.int64)
    n = 0
    draws = 0
    out = np.zeros((months, N_SERIES), np.int64)
    for t in range(months):
        new = rng.poisson(p)
        if cite_same_month and new > 0:
            if n + new > cap:
                while n + new > cap:
                    cap *= 2
                grown = np.zeros(cap, np.int64)
                grown[:n] = cites[:n]
                cites = grown
            n += new
            new = 0
        for i in range(n):
            cites[i] += rng.poisson(c)
        draws += n
        if new > 0:
            if n + new > cap:
                while n + new > cap:
                    cap *= 2
                grown = np.zeros(cap, np.int64)
                grown[:n] = cites[:n]
                cites = grown
            n += new
        rec = np.sort(cites[:n])[::-1]
        out[t, 0] = hirsch_loop(rec)
        out[t, 1] = hprime_sq_loop(rec)
        out[t, 2] = woeginger_loop(rec)
        num, den = wprime_sq_loop(rec)
        out[t, 3] = num
        out[t, 4] = den
    total = 0
    for i in range(n):
        total += cites[i]
    return out, n, draws, total


def simulate_career_numpy(rng, p, c, months, cite_same_month):
    """Vectorized twin of :func:`simulate_career_loop`; same draws, same output."""
    cites = np.zeros(0, dtype=np.int64)
    draws = 0
    out = np.zeros((months, N_SERIES), dtype=np.int64)
    for t in range(months):
        new = int(rng.poisson(p))
        if cite_same_month and new:
            cites = np.concatenate([cites, np.zeros(new, dtype=np.int64)])
            new = 0
        if cites.shape[0]:
            cites += rng.poisson(c, size=cites.shape[0])
        draws += cites.shape[0]
        if new:
            cites = np.concatenate([cites, np.zeros(new, dtype=np.int64)])
        rec = np.sort(cites)[::-1]
        out[t, 0] = hirsch_numpy(rec)
        out[t, 1] = hprime_sq_numpy(rec)
        out[t, 2] = woeginger_numpy(rec)
        out[t, 3], out[t, 4] = wprime_sq_numpy(rec)
    return out, int(cites.shape[0]), int(draws), int(cites.sum())


if HAS_NUMBA:
    hirsch_array = hirsch_loop
    hprime_sq_array = hprime_sq_loop
    woeginger_array = woeginger_loop
    wprime_sq_array = wprime_sq_loop
    simulate_career = simulate_career_loop
else:
    hirsch_array = hirsch_numpy
    hprime_sq_array = hprime_sq_numpy
    woeginger_array = woeginger_numpy
    wprime_sq_array = wprime_sq_numpy
    simulate_career = simulate_career_numpy
