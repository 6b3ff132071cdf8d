"""Time the numba loop kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py --careers 50 --months 360

Both routes get identical random streams, and the script checks that they
agree before printing any timings.  With ``SCINDEX_DISABLE_NUMBA=1`` the loop
kernels run as plain Python, which shows what the fallback costs.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from scindex import kernels
from scindex.montecarlo import stream


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_careers(careers, months, p, c, repeat):
    def run(kernel):
        out = []
        for i in range(careers):
            out.append(kernel(stream(7, i), p, c, months, False)[0])
        return out

    a = run(kernels.simulate_career_loop)  # also triggers compilation
    b = run(kernels.simulate_career_numpy)
    same = all(np.array_equal(x, y) for x, y in zip(a, b))
    t_loop = _time(lambda: run(kernels.simulate_career_loop), repeat)
    t_np = _time(lambda: run(kernels.simulate_career_numpy), repeat)
    return same, t_loop, t_np


def bench_indices(n, size, repeat, seed=0):
    rng = np.random.default_rng(seed)
    recs = [np.sort(rng.poisson(20.0, size).astype(np.int64))[::-1].copy() for _ in range(n)]
    pairs = (
        ("h", kernels.hirsch_loop, kernels.hirsch_numpy),
        ("hprime_sq", kernels.hprime_sq_loop, kernels.hprime_sq_numpy),
        ("w", kernels.woeginger_loop, kernels.woeginger_numpy),
        ("wprime_sq", kernels.wprime_sq_loop, kernels.wprime_sq_numpy),
    )
    rows = []
    for name, loop, vec in pairs:
        same = all(tuple(np.atleast_1d(loop(r))) == tuple(np.atleast_1d(vec(r))) for r in recs)
        t_loop = _time(lambda: [loop(r) for r in recs], repeat)
        t_np = _time(lambda: [vec(r) for r in recs], repeat)
        rows.append((name, same, t_loop, t_np))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--careers", type=int, default=50)
    ap.add_argument("--months", type=int, default=360)
    ap.add_argument("--p", type=float, default=0.2)
    ap.add_argument("--c", type=float, default=0.2)
    ap.add_argument("--records", type=int, default=2000)
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    print(f"backend: {kernels.BACKEND}")
    same, t_loop, t_np = bench_careers(args.careers, args.months, args.p, args.c, args.repeat)
    print(f"{'kernel':12s} {'agree':>5s} {'loop s':>9s} {'numpy s':>9s} {'speedup':>8s}")
    print(f"{'career':12s} {str(same):>5s} {t_loop:9.4f} {t_np:9.4f} {t_np / t_loop:8.1f}")
    for name, ok, tl, tn in bench_indices(args.records, args.size, args.repeat):
        print(f"{name:12s} {str(ok):>5s} {tl:9.4f} {tn:9.4f} {tn / tl:8.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
