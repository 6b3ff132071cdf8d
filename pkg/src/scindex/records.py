"""Citation records and the record-level operations the indices consume.

A record is the non-increasing vector of per-paper citation counts of one
researcher.  Entries are stored 0-based in Python, but the docstrings below
use the usual 1-based ``x_1 >= x_2 >= ... >= x_l`` notation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

import numpy as np


@dataclass(frozen=True)
class CitationRecord:
    """Immutable, validated citation record.

    Use :func:`make_record` to build one from raw counts (unsorted, with zeros).
    The constructor itself only accepts an already-canonical vector.
    """

    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(self.entries)
        for v in entries:
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise TypeError(f"citation counts must be integers, got {v!r}")
            if v < 1:
                raise ValueError(f"citation counts must be positive, got {v}")
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise ValueError(f"entries must be non-increasing: {entries}")
        object.__setattr__(self, "entries", tuple(int(v) for v in entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __repr__(self) -> str:
        return f"CitationRecord{self.entries!r}"

    @property
    def length(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def prefix_sums(self) -> list[int]:
        return list(accumulate(self.entries))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64)


EMPTY = CitationRecord(())


def make_record(counts: Iterable[int]) -> CitationRecord:
    """Normalize raw counts: drop zeros, sort non-increasing.

    >>> make_record([7, 11, 6, 0, 6])
    CitationRecord(11, 7, 6, 6)
    """
    values = []
    for v in counts:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise TypeError(f"citation counts must be integers, got {v!r}")
        if v < 0:
            raise ValueError(f"citation counts must be non-negative, got {v}")
        if v:
            values.append(int(v))
    values.sort(reverse=True)
    return CitationRecord(tuple(values))


def _as_record(x) -> CitationRecord:
    return x if isinstance(x, CitationRecord) else make_record(x)


def dual(x: CitationRecord) -> CitationRecord:
    """Conjugate partition: the bar graph reflected about ``y = x``."""
    x = _as_record(x)
    if not x:
        return EMPTY
    # entry i of the dual counts the papers with at least i citations
    out = []
    j = len(x)
    for i in range(1, x[0] + 1):
        while j > 0 and x[j - 1] < i:
            j -= 1
        out.append(j)
    return CitationRecord(tuple(out))


def vscale(x: CitationRecord, k: int) -> CitationRecord:
    """Multiply every citation count by ``k``."""
    if k < 1:
        raise ValueError(f"scale factor must be a positive integer, got {k}")
    x = _as_record(x)
    return CitationRecord(tuple(k * v for v in x))


def hstretch(x: CitationRecord, m: int) -> CitationRecord:
    """Repeat every paper ``m`` times (length becomes ``m * l(x)``)."""
    if m < 1:
        raise ValueError(f"stretch factor must be a positive integer, got {m}")
    x = _as_record(x)
    return CitationRecord(tuple(v for v in x for _ in range(m)))


def scale(x: CitationRecord, k: int = 1, m: int = 1) -> CitationRecord:
    """``k * x`` stretched by ``m``; the joint transform used by the scale axioms."""
    return vscale(hstretch(x, m), k)


def cmax(x: CitationRecord, y: CitationRecord) -> CitationRecord:
    """Componentwise maximum; its bar graph is the union of the two."""
    x, y = _as_record(x), _as_record(y)
    if len(x) < len(y):
        x, y = y, x
    head = tuple(max(a, b) for a, b in zip(x, y))
    return CitationRecord(head + x.entries[len(y):])


def cmin(x: CitationRecord, y: CitationRecord) -> CitationRecord:
    """Componentwise minimum truncated to the shorter length; the bar-graph intersection."""
    x, y = _as_record(x), _as_record(y)
    return CitationRecord(tuple(min(a, b) for a, b in zip(x, y)))


def dominates(x: CitationRecord, y: CitationRecord) -> bool:
    """True when ``x`` is dominated by ``y`` (``x ⪯ y``).

    That is ``l(x) <= l(y)`` and ``x_k <= y_k`` for every ``k <= l(x)``;
    equivalently the bar graph of ``x`` is contained in that of ``y``.
    """
    x, y = _as_record(x), _as_record(y)
    return len(x) <= len(y) and all(a <= b for a, b in zip(x, y))


def strictly_dominates(x: CitationRecord, y: CitationRecord) -> bool:
    """``x ≺ y``: dominated and different."""
    x, y = _as_record(x), _as_record(y)
    return x != y and dominates(x, y)


def cumulatively_dominates(x: CitationRecord, y: CitationRecord) -> bool:
    """True when ``x`` cumulatively dominates ``y``.

    Requires ``l(x) <= l(y)`` and, for every ``j``, the top-``j`` citation
    sum of ``x`` is at least that of ``y`` (sums saturate past each length).
    """
    x, y = _as_record(x), _as_record(y)
    if len(x) > len(y):
        return False
    sx = x.prefix_sums()
    sy = y.prefix_sums()
    total_x = sx[-1] if sx else 0
    for j, b in enumerate(sy):
        a = sx[j] if j < len(sx) else total_x
        if a < b:
            return False
    return True


RELATIONS = ("strictly-dominates", "dominates", "cumulatively-dominates", "incomparable")


@dataclass(frozen=True)
class DominancePair:
    """Outcome of comparing ``left`` with ``right``.

    ``relation`` names the strongest predicate that holds for
    ``(left, right)``: ``strictly_dominates``, ``dominates``,
    ``cumulatively_dominates``, else ``"incomparable"``.
    """

    left: CitationRecord
    right: CitationRecord
    relation: str


def relation(x: CitationRecord, y: CitationRecord) -> DominancePair:
    x, y = _as_record(x), _as_record(y)
    if strictly_dominates(x, y):
        rel = "strictly-dominates"
    elif dominates(x, y):
        rel = "dominates"
    elif cumulatively_dominates(x, y):
        rel = "cumulatively-dominates"
    else:
        rel = "incomparable"
    return DominancePair(x, y, rel)


def bar_height(x: CitationRecord, t) -> int:
    """Value of the step function ``s_x`` at abscissa ``t`` in ``[0, l(x)]``.

    ``s_x(0) = x_1`` and ``s_x(t) = x_i`` for ``t`` in ``(i-1, i]``.
    """
    x = _as_record(x)
    if t < 0 or t > len(x):
        raise ValueError(f"t={t} outside [0, {len(x)}]")
    if not x:
        return 0
    if t == 0:
        return x[0]
    i = math.ceil(t)
    return x[i - 1]


def in_bargraph(x: CitationRecord, point: Sequence) -> bool:
    """Membership of ``(a, b)`` in the closed bar-graph region of ``x``."""
    a, b = point
    x = _as_record(x)
    if a < 0 or b < 0 or a > len(x):
        return False
    return b <= bar_height(x, a)


def enumerate_records(max_length: int = 6, max_entry: int = 6) -> list[CitationRecord]:
    """All records with ``l <= max_length`` and ``x_1 <= max_entry``, empty included.

    Ordered by length, then lexicographically ascending.  There are
    ``C(max_length + max_entry, max_length)`` of them (924 for the 6 x 6 box).
    """
    out = [EMPTY]
    level = [()]
    for _ in range(max_length):
        nxt = []
        for r in level:
            top = r[-1] if r else max_entry
            for v in range(1, top + 1):
                nxt.append(r + (v,))
        nxt.sort()
        out.extend(CitationRecord(r) for r in nxt)
        level = nxt
    return out


def covers(x: CitationRecord) -> list[CitationRecord]:
    """Records obtained from ``x`` by adding one citation or one singly-cited paper.

    These are the covering relations of ``⪯``; any dominated pair is joined by
    a chain of them.
    """
    x = _as_record(x)
    e = x.entries
    out = []
    for i in range(len(e)):
        if i == 0 or e[i - 1] > e[i]:
            out.append(CitationRecord(e[:i] + (e[i] + 1,) + e[i + 1:]))
    out.append(CitationRecord(e + (1,)))
    return out
