"""Citation indices with exact values, axiom checks, growth models and career simulations."""

from __future__ import annotations

__version__ = "0.1.0"

from ._jit import HAS_NUMBA, backend
from .records import EMPTY, CitationRecord, cmax, cmin, dominates, dual, make_record, scale
from .values import IndexValue
from .indices import (
    INDICES,
    circle,
    cprime,
    egghe,
    eprime,
    get_index,
    hirsch,
    hprime,
    hprime_sq,
    woeginger,
    wprime,
)

__all__ = [
    "EMPTY",
    "HAS_NUMBA",
    "INDICES",
    "CitationRecord",
    "IndexValue",
    "__version__",
    "backend",
    "circle",
    "cmax",
    "cmin",
    "cprime",
    "dominates",
    "dual",
    "egghe",
    "eprime",
    "get_index",
    "hirsch",
    "hprime",
    "hprime_sq",
    "make_record",
    "scale",
    "woeginger",
    "wprime",
]
