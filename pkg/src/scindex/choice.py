"""Finite choice functions and the MVIIA / WARP / MVIIA-star predicates.

Also the bar-graph selector that picks the corners of largest ``x * y``, whose
MVIIA property is what makes the largest-rectangle index Max-Bounded, and a
triangle-contact selector for which the same construction breaks down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from .indices import RectangleWitness, hprime, hprime_witnesses, wprime_solution
from .records import _as_record, cmax, dominates, enumerate_records, in_bargraph


@dataclass(frozen=True)
class SetFamily:
    universe: frozenset
    members: tuple[frozenset, ...]

    def __post_init__(self):
        members = tuple(frozenset(m) for m in self.members)
        if any(not m for m in members):
            raise ValueError("family members must be nonempty")
        if any(not m <= self.universe for m in members):
            raise ValueError("family members must be subsets of the universe")
        object.__setattr__(self, "members", members)

    @property
    def union_closed(self) -> bool:
        s = set(self.members)
        return all(a | b in s for a in self.members for b in self.members)

    @property
    def intersection_closed(self) -> bool:
        """Closed under every intersection that is nonempty."""
        s = set(self.members)
        return all((a & b) in s for a in self.members for b in self.members if a & b)

    @classmethod
    def all_nonempty(cls, universe: Iterable[Hashable]) -> "SetFamily":
        u = tuple(sorted(universe))
        members = [frozenset(c) for r in range(1, len(u) + 1) for c in combinations(u, r)]
        return cls(frozenset(u), tuple(members))


ChoiceFunction = Mapping[frozenset, frozenset]


def validate_choice(family: SetFamily, c: ChoiceFunction) -> None:
    for f in family.members:
        sel = c.get(f)
        if sel is None or not sel or not sel <= f:
            raise ValueError(f"c({set(f)}) must be a nonempty subset, got {sel}")


@dataclass
class PredicateResult:
    holds: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.holds


def satisfies_mviia(family: SetFamily, c: ChoiceFunction) -> PredicateResult:
    """``c(G) = c(F) & G`` whenever ``G <= F`` and ``G`` meets ``c(F)``."""
    for f in family.members:
        cf = c[f]
        for g in family.members:
            if g <= f and g & cf and c[g] != cf & g:
                return PredicateResult(False, {"F": f, "G": g, "c(F)": cf, "c(G)": c[g]})
    return PredicateResult(True)


def revealed_relations(family: SetFamily, c: ChoiceFunction):
    """``(weak, strict)`` revealed relations as sets of ordered pairs, with a witness set each."""
    weak: dict[tuple, frozenset] = {}
    strict: dict[tuple, frozenset] = {}
    for b in family.members:
        cb = c[b]
        for x in cb:
            for y in b:
                weak.setdefault((x, y), b)
                if y not in cb:
                    strict.setdefault((x, y), b)
    return weak, strict


def satisfies_warp(family: SetFamily, c: ChoiceFunction) -> PredicateResult:
    """If ``x`` is ever chosen with ``y`` available, ``y`` is never chosen over ``x``."""
    weak, strict = revealed_relations(family, c)
    for (x, y), b in weak.items():
        if (y, x) in strict:
            return PredicateResult(False, {"x": x, "y": y, "chosen_with": b, "rejected_in": strict[(y, x)]})
    return PredicateResult(True)


def satisfies_mviia_star(family: SetFamily, c: ChoiceFunction) -> PredicateResult:
    """``c(F & G) = c(F) & c(G)`` whenever ``c(F)`` and ``c(G)`` meet."""
    members = set(family.members)
    for f in family.members:
        for g in family.members:
            common = c[f] & c[g]
            if not common:
                continue
            h = f & g
            if h not in members:
                return PredicateResult(False, {"F": f, "G": g, "reason": "F & G not in family"})
            if c[h] != common:
                return PredicateResult(False, {"F": f, "G": g, "c(F&G)": c[h], "c(F)&c(G)": common})
    return PredicateResult(True)


def maximizer_choice(family: SetFamily, value: Callable[[Hashable], object]) -> dict:
    """Select the elements of largest ``value`` from every member."""
    out = {}
    for f in family.members:
        best = max(value(x) for x in f)
        out[f] = frozenset(x for x in f if value(x) == best)
    return out


def _nonempty_subsets(s: frozenset) -> list[frozenset]:
    items = sorted(s)
    return [frozenset(cmb) for r in range(1, len(items) + 1) for cmb in combinations(items, r)]


def count_choice_functions(family: SetFamily) -> int:
    return math.prod(2 ** len(f) - 1 for f in family.members)


def all_choice_functions(family: SetFamily, budget: int = 1_000_000) -> Iterator[dict]:
    n = count_choice_functions(family)
    if n > budget:
        raise ValueError(f"{n} choice functions exceed the budget of {budget}")
    options = [_nonempty_subsets(f) for f in family.members]
    for pick in product(*options):
        yield dict(zip(family.members, pick))


@dataclass
class ImplicationReport:
    universe_size: int
    choice_functions: int
    mviia: int
    warp_failures: list = field(default_factory=list)
    star_failures: list = field(default_factory=list)
    warp_not_mviia: int = 0
    star_not_mviia: int = 0

    @property
    def ok(self) -> bool:
        return not self.warp_failures and not self.star_failures

    def to_json(self) -> dict:
        def fmt(c):
            return {",".join(map(str, sorted(k))): sorted(v) for k, v in c.items()}

        return {
            "universe_size": self.universe_size,
            "choice_functions": self.choice_functions,
            "mviia_passing": self.mviia,
            "mviia_implies_warp_failures": [fmt(c) for c in self.warp_failures],
            "mviia_implies_star_failures": [fmt(c) for c in self.star_failures],
            "converse_probe": {
                "warp_but_not_mviia": self.warp_not_mviia,
                "star_but_not_mviia": self.star_not_mviia,
            },
        }


def exhaustive_implication_check(n: int = 3, family: SetFamily | None = None,
                                 budget: int = 1_000_000) -> ImplicationReport:
    """Every choice function on ``family`` (default: all nonempty subsets of ``n`` items).

    Counts failures of MVIIA => WARP and MVIIA => MVIIA-star, plus how many
    functions pass WARP or MVIIA-star without passing MVIIA (informational).
    Refuses families lacking the closure each implication needs.
    """
    fam = family or SetFamily.all_nonempty(range(n))
    if not fam.union_closed:
        raise ValueError("family is not closed under unions")
    if not fam.intersection_closed:
        raise ValueError("family is not closed under (nonempty) intersections")
    rep = ImplicationReport(len(fam.universe), count_choice_functions(fam), 0)
    for c in all_choice_functions(fam, budget):
        m = satisfies_mviia(fam, c).holds
        w = satisfies_warp(fam, c).holds
        s = satisfies_mviia_star(fam, c).holds
        if m:
            rep.mviia += 1
            if not w:
                rep.warp_failures.append(c)
            if not s:
                rep.star_failures.append(c)
        else:
            rep.warp_not_mviia += w
            rep.star_not_mviia += s
    return rep


# -- bar-graph selectors ------------------------------------------------------

def bargraph_argmax_selector(x) -> set[RectangleWitness]:
    """Corners ``(k, x_k)`` of the bar graph maximizing ``k * x_k``."""
    x = _as_record(x)
    if not x:
        raise ValueError("the selector needs a nonempty record")
    return set(hprime_witnesses(x))


def _points(ws: Iterable[RectangleWitness]) -> frozenset:
    return frozenset((w.k, w.height) for w in ws)


def triangle_contact_selector(x) -> frozenset:
    """Staircase corners touched by the hypotenuse of the largest axis triangle."""
    sol = wprime_solution(_as_record(x))
    if sol is None:
        raise ValueError("the selector needs a nonempty record")
    return frozenset(sol.contacts)


def selector_mviia_pair(selector: Callable, small, big) -> PredicateResult:
    """MVIIA for ``G = B(small) <= F = B(big)`` with point sets from ``selector``."""
    small, big = _as_record(small), _as_record(big)
    if not dominates(small, big):
        raise ValueError("need small dominated by big")
    pf = selector(big)
    pg = selector(small)
    kept = frozenset(p for p in pf if in_bargraph(small, p))
    if kept and kept != pg:
        return PredicateResult(False, {"F": big, "G": small, "phi(F)": sorted(pf), "phi(G)": sorted(pg)})
    return PredicateResult(True)


def argmax_points(x) -> frozenset:
    return _points(bargraph_argmax_selector(x))


@dataclass
class BargraphReport:
    L: int
    M: int
    pairs: int
    mviia_failures: list
    maxb_failures: list

    @property
    def ok(self) -> bool:
        return not self.mviia_failures and not self.maxb_failures


def bargraph_mviia_check(max_length: int = 5, max_entry: int = 5) -> BargraphReport:
    """Selector MVIIA on all comparable pairs, and ``h'(cmax(x, y))`` hitting ``h'(x)`` or ``h'(y)`` on all pairs."""
    recs = [r for r in enumerate_records(max_length, max_entry) if r]
    pts = {r: argmax_points(r) for r in recs}
    val = {r: hprime(r) for r in recs}
    mviia_fail, maxb_fail = [], []
    pairs = 0
    for x in recs:
        for y in recs:
            if dominates(x, y):
                pairs += 1
                kept = frozenset(p for p in pts[y] if in_bargraph(x, p))
                if kept and kept != pts[x]:
                    mviia_fail.append((x, y))
    for i, x in enumerate(recs):
        for y in recs[i:]:
            z = cmax(x, y)
            vz = val.get(z)
            if vz is None:
                vz = hprime(z)
            if vz != val[x] and vz != val[y]:
                maxb_fail.append((x, y))
    return BargraphReport(max_length, max_entry, pairs, mviia_fail, maxb_fail)


__all__ = [
    "BargraphReport",
    "ImplicationReport",
    "PredicateResult",
    "SetFamily",
    "all_choice_functions",
    "argmax_points",
    "bargraph_argmax_selector",
    "bargraph_mviia_check",
    "count_choice_functions",
    "exhaustive_implication_check",
    "maximizer_choice",
    "revealed_relations",
    "satisfies_mviia",
    "satisfies_mviia_star",
    "satisfies_warp",
    "selector_mviia_pair",
    "triangle_contact_selector",
    "validate_choice",
]
