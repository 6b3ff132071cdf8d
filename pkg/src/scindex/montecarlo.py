"""Careers with Poisson noise: campaigns, paired comparisons, table statistics.

Each month a researcher publishes ``Poisson(p)`` new papers and every paper
from an earlier month collects ``Poisson(c)`` citations.  The four tracked
indices (``h``, ``hprime``, ``w``, ``wprime``) are recomputed every month by
the kernels in :mod:`scindex.kernels` as exact integers, so ties and
reversals are decided without rounding.

Random streams: career ``i`` of researcher A draws from stream ``2i``, its
partner B from ``2i + 1`` (or also from ``2i`` with ``common_streams``).  A
stream is a Philox generator keyed by ``SeedSequence(seed, spawn_key=(id,))``,
so any career can be regenerated on its own and the campaign result does not
depend on how careers are split across workers.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .growth import CareerTrajectory, DeterministicParams, monthly_deterministic_record
from .indices import hirsch, hprime_sq, woeginger, wprime_sq
from .values import IndexValue

TRACKED = ("h", "hprime", "w", "wprime")

# (p, c) triples for the campaigns, from citation heavy to publication heavy
TRIPLES = ((0.125, 0.32), (0.2, 0.2), (0.32, 0.125))


@dataclass(frozen=True)
class SimulationConfig:
    p: float
    c: float
    months: int = 360
    careers: int = 500
    seed: int = 42
    pair_uplift: float = 0.10
    indices: tuple[str, ...] = TRACKED
    cite_same_month: bool = False
    paired: bool = False
    common_streams: bool = False
    workers: int = 1

    def __post_init__(self):
        if not (self.p > 0 and self.c > 0):
            raise ValueError(f"p and c must be positive, got p={self.p}, c={self.c}")
        if self.months < 1 or self.careers < 1:
            raise ValueError("months and careers must be at least 1")
        if self.pair_uplift < 0:
            raise ValueError("pair_uplift must be non-negative")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        object.__setattr__(self, "indices", tuple(self.indices))
        bad = [n for n in self.indices if n not in TRACKED]
        if bad:
            raise ValueError(f"simulations track {', '.join(TRACKED)}; unsupported: {', '.join(bad)}")

    def partner(self) -> tuple[float, float]:
        f = 1.0 + self.pair_uplift
        return self.p * f, self.c * f


def stream(seed: int, stream_id: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream_id,))))


def _raw_career(seed, stream_id, p, c, months, cite_same_month):
    return kernels.simulate_career(stream(seed, stream_id), float(p), float(c), int(months),
                                   bool(cite_same_month))


def _value(name: str, row) -> IndexValue:
    if name == "h":
        return IndexValue(int(row[0]))
    if name == "hprime":
        return IndexValue(int(row[1]), 2)
    if name == "w":
        return IndexValue(int(row[2]))
    return IndexValue(Fraction(int(row[3]), int(row[4])), 2)


def simulate_career(config: SimulationConfig, stream_id: int, partner: bool = False) -> CareerTrajectory:
    """One career month by month, with exact values for every tracked index.

    ``partner`` selects the uplifted rates of researcher B.
    """
    p, c = config.partner() if partner else (config.p, config.c)
    series, n_papers, draws, total = _raw_career(config.seed, stream_id, p, c, config.months,
                                                 config.cite_same_month)
    traj = CareerTrajectory({"seed": config.seed, "stream": stream_id, "p": p, "c": c,
                             "papers": n_papers, "citation_draws": draws, "citations": total,
                             "backend": kernels.BACKEND})
    traj.times = list(range(1, config.months + 1))
    for name in config.indices:
        traj.values[name] = [_value(name, row) for row in series]
    return traj


# -- per-index array views ----------------------------------------------------

def _floats(name: str, series: np.ndarray) -> np.ndarray:
    if name == "h":
        return series[..., 0].astype(float)
    if name == "hprime":
        return np.sqrt(series[..., 1].astype(float))
    if name == "w":
        return series[..., 2].astype(float)
    return np.sqrt(series[..., 3] / series[..., 4])


def _compare(name: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact sign of ``a - b`` for rows of raw kernel output."""
    if name == "h":
        return np.sign(a[..., 0] - b[..., 0])
    if name == "hprime":
        return np.sign(a[..., 1] - b[..., 1])
    if name == "w":
        return np.sign(a[..., 2] - b[..., 2])
    # w'^2 = num/den, cross-multiplied; magnitudes stay far below 2**63 at desk scale
    return np.sign(a[..., 3] * b[..., 4] - b[..., 3] * a[..., 4])


def increment_stats(values, mean_career: float | None = None, changed=None) -> tuple[float, float]:
    """SD of month-to-month increments (normalized) and fraction of non-zero increments.

    ``values`` is one trajectory or a 2-D array of trajectories (careers x
    months); the value before month 1 is 0.  Increments are pooled over all
    careers.  The SD is divided by ``mean_career / 100``, which defaults to the
    mean final value.  ``changed`` optionally supplies the exact
    "value moved" mask; otherwise float inequality is used.
    """
    v = np.atleast_2d(np.asarray([float(t) for t in values] if not isinstance(values, np.ndarray)
                                 else values, dtype=float))
    if v.shape[1] < 2:
        raise ValueError("need at least two snapshots")
    prev = np.concatenate([np.zeros((v.shape[0], 1)), v[:, :-1]], axis=1)
    inc = (v - prev).ravel()
    mean = float(np.mean(v[:, -1])) if mean_career is None else float(mean_career)
    sd = float(np.std(inc, ddof=1)) if inc.size > 1 else 0.0
    if sd == 0.0:
        norm = 0.0
    else:
        norm = sd / (mean / 100.0) if mean else math.nan
    mask = (inc != 0) if changed is None else np.asarray(changed).ravel()
    return norm, float(np.mean(mask))


def _changed(name: str, series: np.ndarray) -> np.ndarray:
    zero = np.zeros_like(series[:, :1, :])
    zero[..., 4] = 1
    prev = np.concatenate([zero, series[:, :-1, :]], axis=1)
    return _compare(name, series, prev) != 0


@dataclass
class IndexStats:
    mean_career: float
    career_sd: float
    increment_sd: float
    nonzero_increments: float
    ties: float | None = None
    reversals: float | None = None
    ties_or_reversals: float | None = None


@dataclass
class SimulationReport:
    config: dict
    backend: str
    stats: dict[str, IndexStats]
    finals: dict[str, list[float]] = field(default_factory=dict)
    partner_finals: dict[str, list[float]] = field(default_factory=dict)
    calibration: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "backend": self.backend,
            "stats": {k: asdict(v) for k, v in self.stats.items()},
            "finals": self.finals,
            "partner_finals": self.partner_finals,
            "calibration": self.calibration,
        }


def _run_block(args):
    seed, ids, p, c, months, same = args
    out = np.empty((len(ids), months, kernels.N_SERIES), dtype=np.int64)
    papers = draws = cites = 0
    for r, sid in enumerate(ids):
        s, n, d, t = _raw_career(seed, sid, p, c, months, same)
        out[r] = s
        papers += n
        draws += d
        cites += t
    return out, papers, draws, cites


def _run_many(seed, ids, p, c, months, same, workers):
    if workers <= 1 or len(ids) < 2 * workers:
        return _run_block((seed, ids, p, c, months, same))
    chunks = [ids[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_run_block, [(seed, ch, p, c, months, same) for ch in chunks]))
    out = np.empty((len(ids), months, kernels.N_SERIES), dtype=np.int64)
    for i, part in enumerate(parts):
        out[i::workers] = part[0]
    return (out, sum(pt[1] for pt in parts), sum(pt[2] for pt in parts), sum(pt[3] for pt in parts))


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SCINDEX_THREADS", "1")))
    except ValueError:
        return 1


def run_campaign(config: SimulationConfig) -> SimulationReport:
    """All careers of a campaign and the per-index table statistics."""
    n = config.careers
    a_ids = [2 * i for i in range(n)]
    series, papers, draws, cites = _run_many(config.seed, a_ids, config.p, config.c, config.months,
                                             config.cite_same_month, config.workers)
    stats: dict[str, IndexStats] = {}
    finals: dict[str, list[float]] = {}
    partner_finals: dict[str, list[float]] = {}
    b_series = None
    calib = {
        "papers_mean": papers / n,
        "papers_expected": config.p * config.months,
        "papers_se": math.sqrt(config.p * config.months / n),
        "citation_draws": draws,
        "citation_draw_mean": (cites / draws) if draws else 0.0,
        "citation_draw_se": math.sqrt(config.c / draws) if draws else 0.0,
    }
    if config.paired:
        bp, bc = config.partner()
        b_ids = a_ids if config.common_streams else [2 * i + 1 for i in range(n)]
        b_series = _run_many(config.seed, b_ids, bp, bc, config.months, config.cite_same_month,
                             config.workers)[0]
    for name in config.indices:
        vals = _floats(name, series)
        fin = vals[:, -1]
        mean = float(fin.mean())
        career_sd = float(np.std(fin / mean * 100.0, ddof=1)) if mean and n > 1 else 0.0
        inc_sd, nz = increment_stats(vals, mean, _changed(name, series))
        st = IndexStats(mean, career_sd, inc_sd, nz)
        finals[name] = [float(v) for v in fin]
        if b_series is not None:
            sign = _compare(name, series[:, -1, :], b_series[:, -1, :])
            st.ties = float(np.mean(sign == 0))
            st.reversals = float(np.mean(sign > 0))
            st.ties_or_reversals = st.ties + st.reversals
            partner_finals[name] = [float(v) for v in _floats(name, b_series)[:, -1]]
        stats[name] = st
    cfg = asdict(config)
    cfg["indices"] = list(config.indices)
    cfg.pop("workers")
    return SimulationReport(cfg, kernels.BACKEND, stats, finals, partner_finals, calib)


# -- no-noise comparison ------------------------------------------------------

_EXACT = {
    "h": hirsch,
    "hprime": lambda x: IndexValue(hprime_sq(x), 2),
    "w": woeginger,
    "wprime": lambda x: IndexValue(wprime_sq(x), 2),
}


@dataclass
class NoNoiseRow:
    index: str
    final_a: str
    final_b: str
    decimal_a: float
    decimal_b: float
    b_higher: bool
    increment_sd: float
    nonzero_increments: float


def no_noise(config: SimulationConfig) -> list[NoNoiseRow]:
    """Deterministic monthly careers for A and B (rates uplifted), compared exactly."""
    pa = DeterministicParams(config.p, config.c, "month")
    pb = pa.scaled(Fraction(str(1.0 + config.pair_uplift)))
    rows = []
    traj_a = {name: [] for name in config.indices}
    last_b = {}
    for t in range(1, config.months + 1):
        xa = monthly_deterministic_record(pa, t)
        for name in config.indices:
            traj_a[name].append(_EXACT[name](xa))
    xb = monthly_deterministic_record(pb, config.months)
    for name in config.indices:
        last_b[name] = _EXACT[name](xb)
    for name in config.indices:
        vals = traj_a[name]
        fa, fb = vals[-1], last_b[name]
        moved = [vals[0] != 0] + [u != v for u, v in zip(vals[1:], vals[:-1])]
        sd, nz = increment_stats(np.array([[float(v) for v in vals]]), changed=np.array(moved))
        rows.append(NoNoiseRow(name, fa.exact_str(), fb.exact_str(), float(fa), float(fb),
                               fb > fa, sd, nz))
    return rows


# -- table export -------------------------------------------------------------

TABLE_COLUMNS = (
    "(0) mean career value",
    "(1) career SD",
    "(2) monthly increment SD",
    "(3) non-zero increments",
    "(4) reversals",
    "(5) ties",
    "(6) ties or reversals",
)


def _fmt(v) -> str:
    if v is None:
        return ""
    from decimal import ROUND_HALF_EVEN, Decimal

    return format(Decimal(repr(float(v))).quantize(Decimal("1e-8"), rounding=ROUND_HALF_EVEN), "f")


def table_csv(reports: list[SimulationReport]) -> str:
    """One row per (parameters, index) with the summary columns (0) to (6)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "c", "index", *TABLE_COLUMNS])
    for rep in reports:
        for name, st in rep.stats.items():
            w.writerow([rep.config["p"], rep.config["c"], name, _fmt(st.mean_career), _fmt(st.career_sd),
                        _fmt(st.increment_sd), _fmt(st.nonzero_increments), _fmt(st.reversals),
                        _fmt(st.ties), _fmt(st.ties_or_reversals)])
    return buf.getvalue()


