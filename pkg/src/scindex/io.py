"""Reading researcher records (JSON lines or CSV) and writing outputs atomically."""

from __future__ import annotations

import csv
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable

from .records import CitationRecord, make_record


class RecordError(ValueError):
    """Malformed input; carries the 1-based line number."""

    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


def _counts(values, path, lineno) -> CitationRecord:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise RecordError(path, lineno, f"citation counts must be integers, got {v!r}")
        if v < 0:
            raise RecordError(path, lineno, f"citation counts must be non-negative, got {v}")
        out.append(v)
    return make_record(out)


def read_jsonl(path) -> list[tuple[str, CitationRecord]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise RecordError(path, lineno, f"invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict) or "citations" not in obj:
                raise RecordError(path, lineno, 'expected an object with "id" and "citations"')
            cites = obj["citations"]
            if not isinstance(cites, list):
                raise RecordError(path, lineno, '"citations" must be a list')
            rid = obj.get("id", f"row{lineno}")
            rows.append((str(rid), _counts(cites, path, lineno)))
    return rows


def read_csv(path) -> list[tuple[str, CitationRecord]]:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if lineno == 1 and row[0].strip().lower() == "id":
                continue  # header
            vals = []
            for cell in row[1:]:
                cell = cell.strip()
                if not cell:
                    continue
                try:
                    vals.append(int(cell))
                except ValueError:
                    raise RecordError(path, lineno, f"citation counts must be integers, got {cell!r}") from None
            rows.append((row[0].strip(), _counts(vals, path, lineno)))
    return rows


def read_records(path, fmt: str | None = None) -> list[tuple[str, CitationRecord]]:
    """Records from ``path``; the format follows the extension unless ``fmt`` is given."""
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such input file: {p}")
    fmt = fmt or ("csv" if p.suffix.lower() in (".csv", ".tsv") else "jsonl")
    if fmt == "csv":
        return read_csv(p)
    if fmt in ("jsonl", "json"):
        return read_jsonl(p)
    raise ValueError(f"unknown input format {fmt!r}")


def records_jsonl(rows: Iterable[tuple[str, CitationRecord]]) -> str:
    return "".join(json.dumps({"id": rid, "citations": list(x.entries)}) + "\n" for rid, x in rows)


def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file in the same directory and a rename."""
    p = Path(path)
    parent = p.parent if str(p.parent) else Path(".")
    parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{p.name}.", suffix=".tmp", dir=parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, p)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
