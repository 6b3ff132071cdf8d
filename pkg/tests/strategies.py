from __future__ import annotations

from hypothesis import strategies as st

from scindex.records import make_record


def records(max_len=12, max_val=30, min_len=0):
    return st.lists(st.integers(0, max_val), min_size=min_len, max_size=max_len).map(make_record)


def nonempty_records(max_len=12, max_val=30):
    return st.lists(st.integers(1, max_val), min_size=1, max_size=max_len).map(make_record)
