"""Axioms as executable checks over bounded record domains.

A check either finds a witness, which is re-verified against the literal
predicate before it is reported, or declares the axiom to hold *on the domain*.
It is a falsification harness and proves nothing beyond the records it saw.

Reductions used to keep the 6 x 6 box fast:

* Mon only needs covering pairs (one extra citation or one extra singly-cited
  paper), because any dominated pair inside the box is joined by a chain of
  covers that stays inside the box.
* SSInv, for fixed ``(k, m)``, is equivalent to the ratio
  ``g(k x^m) / g(x)`` being the same for every nonempty ``x``.
* SInv is comonotonicity of ``x -> g(x)`` and ``x -> g(k x^m)``.
* MaxB is checked on all pairs through integer ranks and a vectorized
  componentwise-maximum table (the box is closed under ``cmax``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import growth
from .indices import INDICES, IndexDescriptor, get_index, hirsch_power, hprime_sq
from .records import (
    CitationRecord,
    _as_record,
    cmax,
    covers,
    dominates,
    dual,
    enumerate_records,
    scale,
)
from .values import ONE, ZERO, IndexValue

AXIOMS = ("Mon", "Sym", "SInv", "SSInv", "MaxB", "WResp", "SqrtResp", "SResp")
MATRIX_AXIOMS = ("Mon", "Sym", "SSInv", "MaxB", "WResp", "SqrtResp")

# records that the worked arguments rely on; always checked before the enumeration
NAMED_RECORDS = (
    (8, 6, 2),
    (1,),
    (2,),
    (3,),
    (4,),
    (4, 4),
    (2, 2, 2, 2),
    (10, 8, 8, 6, 6, 6, 4, 2),
    (24, 22, 20, 11, 2),
)

# (x, y, k, m): the canonical witness pairs, tried in both orders first
NAMED_PAIRS = (
    ((3,), (4,), 1, 1),
    ((4, 4), (2, 2, 2, 2), 1, 1),
    ((24, 22, 20, 11, 2), (10, 8, 8, 6, 6, 6, 4, 2), 1, 3),
    ((1,), (2,), 2, 1),
)


@dataclass(frozen=True)
class Domain:
    L: int = 6
    M: int = 6
    ks: tuple[int, ...] = (1, 2, 3)
    ms: tuple[int, ...] = (1, 2, 3)
    named: bool = True

    def records(self) -> list[CitationRecord]:
        return enumerate_records(self.L, self.M)

    def named_records(self) -> list[CitationRecord]:
        return [CitationRecord(r) for r in NAMED_RECORDS] if self.named else []

    def named_pairs(self, scaled: bool = False):
        """Canonical pairs as witness dicts (with ``k``, ``m`` when ``scaled``)."""
        if not self.named:
            return []
        out = []
        for a, b, k, m in NAMED_PAIRS:
            if scaled and (k not in self.ks or m not in self.ms):
                continue
            for x, y in ((a, b), (b, a)):
                w = {"x": CitationRecord(x), "y": CitationRecord(y)}
                if scaled:
                    w.update(k=k, m=m)
                out.append(w)
        return out

    def as_dict(self) -> dict:
        return {"L": self.L, "M": self.M, "K": list(self.ks), "Mx": list(self.ms), "named": self.named}


@dataclass
class AxiomReport:
    axiom: str
    index: str
    domain: dict
    verdict: str  # "holds-on-domain" | "violated"
    witness: dict | None = None
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict == "holds-on-domain"

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = {k: (list(v.entries) if isinstance(v, CitationRecord) else v) for k, v in self.witness.items()}
        return {"axiom": self.axiom, "index": self.index, "verdict": self.verdict,
                "witness": w, "detail": self.detail}


# -- literal predicates (used to re-verify every witness) ---------------------

def violates(axiom: str, g: IndexDescriptor, witness: dict) -> bool:
    """True when ``witness`` violates ``axiom`` for ``g``, evaluated from scratch."""
    w = witness
    if axiom == "Mon":
        x, y = w["x"], w["y"]
        return dominates(x, y) and g(x) > g(y)
    if axiom == "Sym":
        x = w["x"]
        return g(x) != g(dual(x))
    if axiom == "SSInv":
        x, y, k, m = w["x"], w["y"], w["k"], w["m"]
        return g(x) * g(scale(y, k, m)) != g(y) * g(scale(x, k, m))
    if axiom == "SInv":
        x, y, k, m = w["x"], w["y"], w["k"], w["m"]
        return g(x) <= g(y) and g(scale(x, k, m)) > g(scale(y, k, m))
    if axiom == "MaxB":
        x, y = w["x"], w["y"]
        return g(cmax(x, y)) > max(g(x), g(y))
    if axiom == "WResp":
        return not g(CitationRecord((2, 2))) > g(CitationRecord((1,)))
    if axiom == "SqrtResp":
        return g(CitationRecord((2,))) != IndexValue(2, 2)
    if axiom == "SResp":
        return not g(CitationRecord((2,))) > g(CitationRecord((1,)))
    raise KeyError(f"unknown axiom {axiom!r}")


def _report(axiom, g, domain, witness, detail="") -> AxiomReport:
    if witness is None:
        return AxiomReport(axiom, g.name, domain.as_dict(), "holds-on-domain", None, detail)
    if not violates(axiom, g, witness):
        raise AssertionError(f"{axiom} witness for {g.name} does not reproduce: {witness}")
    return AxiomReport(axiom, g.name, domain.as_dict(), "violated", witness, detail)


class _Cache:
    """Memoized evaluation of one index (records are hashable)."""

    def __init__(self, g: IndexDescriptor):
        self.g = g
        self.memo: dict[CitationRecord, IndexValue] = {}

    def __call__(self, x: CitationRecord) -> IndexValue:
        v = self.memo.get(x)
        if v is None:
            v = self.memo[x] = self.g(x)
        return v


def _resolve(g) -> IndexDescriptor:
    if isinstance(g, IndexDescriptor):
        return g
    name = str(g)
    extra = {d.name: d for d in counterexample_indices()}
    if name in extra:
        return extra[name]
    return get_index(name)


# -- checks -------------------------------------------------------------------

def check_mon(g, domain: Domain = Domain()) -> AxiomReport:
    g = _resolve(g)
    ev = _Cache(g)
    for w in domain.named_pairs():
        if violates("Mon", g, w):
            return _report("Mon", g, domain, w)
    named = domain.named_records()
    for x in named:
        for y in named:
            if dominates(x, y) and ev(x) > ev(y):
                return _report("Mon", g, domain, {"x": x, "y": y})
    for x in domain.records():
        for y in covers(x):
            if len(y) > domain.L or y[0] > domain.M:
                continue
            if ev(x) > ev(y):
                return _report("Mon", g, domain, {"x": x, "y": y}, "covering pair")
    return _report("Mon", g, domain, None)


def check_sym(g, domain: Domain = Domain()) -> AxiomReport:
    g = _resolve(g)
    ev = _Cache(g)
    for x in domain.named_records() + domain.records():
        if ev(x) != ev(dual(x)):
            return _report("Sym", g, domain, {"x": x})
    return _report("Sym", g, domain, None)


def check_ssinv(g, domain: Domain = Domain()) -> AxiomReport:
    g = _resolve(g)
    ev = _Cache(g)
    for w in domain.named_pairs(scaled=True):
        if violates("SSInv", g, w):
            return _report("SSInv", g, domain, w)
    recs = [x for x in domain.named_records() + domain.records() if x]
    for m in domain.ms:
        for k in domain.ks:
            base = recs[0]
            if ev(base) == 0:
                # the ratio form needs g > 0; fall back to the literal pair test
                for y in recs[1:]:
                    w = {"x": base, "y": y, "k": k, "m": m}
                    if violates("SSInv", g, w):
                        return _report("SSInv", g, domain, w)
                continue
            ratio = ev(scale(base, k, m)) / ev(base)
            for y in recs[1:]:
                gy = ev(y)
                if gy == 0 or ev(scale(y, k, m)) / gy != ratio:
                    return _report("SSInv", g, domain, {"x": base, "y": y, "k": k, "m": m})
    return _report("SSInv", g, domain, None)


def _sinv_scan(ev, recs, k, m):
    # group by g(x); within a group the images must coincide, and the image
    # must be non-decreasing as g(x) grows
    groups: dict[IndexValue, list[CitationRecord]] = {}
    for x in recs:
        groups.setdefault(ev(x), []).append(x)
    prev = None  # (image value, record)
    for val in sorted(groups):
        members = groups[val]
        imgs = [(ev(scale(x, k, m)), x) for x in members]
        hi = max(imgs, key=lambda t: t[0])
        lo = min(imgs, key=lambda t: t[0])
        if hi[0] != lo[0]:
            return {"x": hi[1], "y": lo[1], "k": k, "m": m}
        if prev is not None and prev[0] > lo[0]:
            return {"x": prev[1], "y": lo[1], "k": k, "m": m}
        if prev is None or hi[0] > prev[0]:
            prev = hi
    return None


def check_sinv(g, domain: Domain = Domain()) -> AxiomReport:
    g = _resolve(g)
    ev = _Cache(g)
    for w in domain.named_pairs(scaled=True):
        if violates("SInv", g, w):
            return _report("SInv", g, domain, w)
    named = domain.named_records()
    for recs in (named, domain.records()):
        if not recs:
            continue
        for m in domain.ms:
            for k in domain.ks:
                w = _sinv_scan(ev, recs, k, m)
                if w is not None:
                    return _report("SInv", g, domain, w)
    return _report("SInv", g, domain, None)


def _encode(recs: Sequence[CitationRecord], L: int, M: int) -> np.ndarray:
    arr = np.zeros((len(recs), L), dtype=np.int64)
    for i, x in enumerate(recs):
        arr[i, : len(x)] = x.entries
    return arr


def check_maxb(g, domain: Domain = Domain()) -> AxiomReport:
    g = _resolve(g)
    ev = _Cache(g)
    for w in domain.named_pairs():
        if violates("MaxB", g, w):
            return _report("MaxB", g, domain, w)
    named = domain.named_records()
    for i, x in enumerate(named):
        for y in named[i + 1:]:
            if ev(cmax(x, y)) > max(ev(x), ev(y)):
                return _report("MaxB", g, domain, {"x": x, "y": y})
    recs = domain.records()
    vals = [ev(x) for x in recs]
    distinct = sorted(set(vals))
    rank_of = {v: r for r, v in enumerate(distinct)}
    rank = np.array([rank_of[v] for v in vals], dtype=np.int64)
    arr = _encode(recs, domain.L, domain.M)
    base = domain.M + 1
    weights = base ** np.arange(domain.L - 1, -1, -1, dtype=np.int64)
    codes = arr @ weights
    lookup = {int(cd): i for i, cd in enumerate(codes)}
    keys = np.array(sorted(lookup))
    pos = np.array([lookup[int(k)] for k in keys])
    n = len(recs)
    for i in range(n):
        z = np.maximum(arr[i], arr[i:])  # pairs (i, j) with j >= i
        zc = z @ weights
        zi = pos[np.searchsorted(keys, zc)]
        bad = rank[zi] > np.maximum(rank[i], rank[i:])
        if bad.any():
            j = i + int(np.argmax(bad))
            return _report("MaxB", g, domain, {"x": recs[i], "y": recs[j]})
    return _report("MaxB", g, domain, None)


def check_responsiveness(g, flavor: str = "WResp") -> AxiomReport:
    g = _resolve(g)
    dom = {"records": "fixed"}
    if flavor not in ("WResp", "SqrtResp", "SResp"):
        raise KeyError(f"unknown responsiveness flavor {flavor!r}")
    bad = violates(flavor, g, {})
    values = {
        "g(1)": g(CitationRecord((1,))).exact_str(),
        "g(2)": g(CitationRecord((2,))).exact_str(),
        "g(2,2)": g(CitationRecord((2, 2))).exact_str(),
    }
    rep = AxiomReport(flavor, g.name, dom, "violated" if bad else "holds-on-domain",
                      values if bad else None, ", ".join(f"{k}={v}" for k, v in values.items()))
    return rep


def check_lgr(g, p: int = 1, c: int = 1, horizon: int = 40, escape_ratio: float = 2.0) -> AxiomReport:
    """Linear growth along the annual deterministic career.

    The four indices with closed-form strips are checked exactly.  Anything
    else gets the narrowest enclosing strip on ``[1, horizon]`` and on the first
    half; a width that at least doubles when the horizon doubles means the
    trajectory is leaving every strip.
    """
    g = _resolve(g)
    dom = {"p": p, "c": c, "horizon": horizon}
    if g.name in growth.STRIP_INDICES:
        rep = growth.strip_check(g.name, p, c, horizon)
        detail = f"slope={rep.slope} width={rep.width}"
        if rep.holds:
            return AxiomReport("LGr", g.name, dom, "holds-on-domain", None, detail)
        return AxiomReport("LGr", g.name, dom, "violated", {"n": rep.first_violation}, detail)
    params = growth.DeterministicParams(p, c)
    vals = [float(g(growth.deterministic_record(params, n))) for n in range(1, horizon + 1)]
    full = growth.fit_strip(vals)
    half = growth.fit_strip(vals[: horizon // 2])
    ratio = full.width / half.width if half.width > 1e-12 else (math.inf if full.width > 1e-12 else 1.0)
    detail = f"slope={full.slope:.6g} width={full.width:.6g} half-width={half.width:.6g}"
    if ratio >= escape_ratio:
        return AxiomReport("LGr", g.name, dom, "violated", {"width_ratio": ratio}, detail)
    return AxiomReport("LGr", g.name, dom, "holds-on-domain", None, detail)


CHECKS: dict[str, Callable[..., AxiomReport]] = {
    "Mon": check_mon,
    "Sym": check_sym,
    "SInv": check_sinv,
    "SSInv": check_ssinv,
    "MaxB": check_maxb,
}


def check(axiom: str, g, domain: Domain = Domain()) -> AxiomReport:
    if axiom in CHECKS:
        return CHECKS[axiom](g, domain)
    return check_responsiveness(g, axiom)


# -- counterexample indices ---------------------------------------------------

def _swap_threes(n: int) -> int:
    """``n`` with every factor 3 replaced by a factor 5."""
    e = 0
    while n % 3 == 0:
        n //= 3
        e += 1
    return n * 5 ** e


def t_half(x) -> IndexValue:
    """Square root of the largest rectangle area, after trading every factor 3 for a 5.

    Seeded as ``sqrt(n)`` with threes swapped on single papers; constant records
    follow from symmetry and strong scale invariance, and since the swap is
    multiplicative that gives ``sqrt(swap(m * n))`` on an ``m``-by-``n`` block.
    Extending through the largest-area rectangle keeps every value equal to the
    value of one of its blocks.
    """
    big = hprime_sq(_as_record(x))
    if big == 0:
        return ZERO
    return IndexValue(_swap_threes(big), 2)


def t_half_blockwise(x) -> IndexValue:
    """The alternative extension ``max_i t(x_i-by-i block)``; breaks symmetry, kept for comparison."""
    x = _as_record(x)
    if not x:
        return ZERO
    return max(IndexValue(_swap_threes(i * v), 2) for i, v in enumerate(x, start=1))


def d_index(x, b=Fraction(1)) -> IndexValue:
    """``max_i sqrt(x_i) * i^b``: single papers score ``sqrt(n)``, rows of ones ``m^b``."""
    b = Fraction(b)
    if b <= 0:
        raise ValueError("b must be positive")
    x = _as_record(x)
    if not x:
        return ZERO
    p, q = b.numerator, b.denominator
    return max(IndexValue(v ** q * i ** (2 * p), 2 * q) for i, v in enumerate(x, start=1))


_SQRT2 = IndexValue(2, 2)


def f_index(x) -> IndexValue:
    x = _as_record(x)
    if not x:
        return ZERO
    return ONE if x.entries == (1,) else _SQRT2


def const_one(x) -> IndexValue:
    return ONE if _as_record(x) else ZERO


def counterexample_indices(b=Fraction(1), a=Fraction(1)) -> list[IndexDescriptor]:
    a = Fraction(a)
    return [
        IndexDescriptor("hirsch_power", lambda x: hirsch_power(x, a), "counterexample",
                        f"(max k*x_k)^{a}"),
        IndexDescriptor("t_half", t_half, "counterexample", "largest rectangle with 3 -> 5"),
        IndexDescriptor("d_index", lambda x: d_index(x, b), "counterexample",
                        f"max_i sqrt(x_i) * i^{b}"),
        IndexDescriptor("f_index", f_index, "counterexample", "1 on (1), sqrt(2) elsewhere"),
        IndexDescriptor("const_one", const_one, "counterexample", "1 on every nonempty record"),
    ]


MATRIX_ROWS = ("hprime", "hirsch_power", "t_half", "d_index", "wprime", "f_index",
               "const_one", "h", "w", "e")


def independence_matrix(domain: Domain = Domain(), rows: Iterable[str] = MATRIX_ROWS,
                        columns: Iterable[str] = MATRIX_AXIOMS) -> dict[str, dict[str, AxiomReport]]:
    extra = {d.name: d for d in counterexample_indices()}
    out: dict[str, dict[str, AxiomReport]] = {}
    for name in rows:
        g = extra.get(name) or get_index(name)
        out[name] = {ax: check(ax, g, domain) for ax in columns}
    return out


def descriptor(name: str) -> IndexDescriptor:
    """Built-in index or counterexample by name."""
    return _resolve(name)


def all_index_names() -> list[str]:
    return list(INDICES) + [d.name for d in counterexample_indices()]


__all__ = [
    "AXIOMS",
    "AxiomReport",
    "Domain",
    "MATRIX_AXIOMS",
    "MATRIX_ROWS",
    "NAMED_PAIRS",
    "NAMED_RECORDS",
    "all_index_names",
    "check",
    "check_lgr",
    "check_maxb",
    "check_mon",
    "check_responsiveness",
    "check_sinv",
    "check_ssinv",
    "check_sym",
    "const_one",
    "counterexample_indices",
    "d_index",
    "descriptor",
    "f_index",
    "independence_matrix",
    "t_half",
    "t_half_blockwise",
    "violates",
]
