"""Append-only scan record store.

One record per line, UTF-8, tab-separated:

    D<TAB>h<TAB>d1,d2,...<TAB>p<TAB>rank<TAB>iso-timestamp

Lines starting with '#' are comments.  Corrupted lines are reported with
their line number and skipped; they never abort a read.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone


@dataclass(frozen=True)
class ScanRecord:
    discriminant: int
    class_number: int
    invariant_factors: tuple
    prime: int
    rank: int
    timestamp: str

    def key(self):
        return (self.discriminant, self.prime)

    def payload(self):
        """Everything but the timestamp, for recomputation comparison."""
        return (self.discriminant, self.class_number, self.invariant_factors,
                self.prime, self.rank)


def now_timestamp():
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def format_record(rec: ScanRecord) -> str:
    invs = ",".join(map(str, rec.invariant_factors)) or "1"
    return "\t".join([str(rec.discriminant), str(rec.class_number), invs,
                      str(rec.prime), str(rec.rank), rec.timestamp])


def parse_record(line: str) -> ScanRecord:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 6:
        raise ValueError("expected 6 tab-separated fields, got %d" % len(parts))
    d, h, invs_s, p, rank, ts = parts
    invs = () if invs_s == "1" else tuple(int(x) for x in invs_s.split(","))
    rec = ScanRecord(int(d), int(h), invs, int(p), int(rank), ts)
    if rec.discriminant >= 0 or rec.class_number < 1 or rec.prime < 2 \
            or rec.rank < 0:
        raise ValueError("field values out of range")
    prod = 1
    for x in invs:
        prod *= x
    if prod != rec.class_number:
        raise ValueError("invariant factors inconsistent with class number")
    return rec


def read_store(path):
    """(records, problems): problems are (line number, message) pairs."""
    records, problems = [], []
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError:
        return records, problems
    with fh:
        for lineno, line in enumerate(fh, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            try:
                records.append(parse_record(stripped))
            except ValueError as exc:
                problems.append((lineno, str(exc)))
    return records, problems


def append_records(path, records):
    with open(path, "a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(format_record(rec) + "\n")
