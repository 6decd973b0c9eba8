"""Corpus construction, deterministic splitting, and JSONL persistence.

A record stores the canonical (loop-desugared) code, its lowered graph,
and all three encodings. Graph and encodings are always regenerable from
the code; regeneration must reproduce the stored bytes exactly.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field, replace

from . import flowgraph
from .code2flow import lower
from .encode import SEP, EncodingVariant, encode
from .flowgraph import FlowGraph
from .pymini import PyMiniError, desugar_loops, parse, print_canonical

SPLITS = ("train", "test", "val", "unassigned")


class JsonlParseError(Exception):
    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        super().__init__(f"{path}:{line_number}: {reason}")


class AlreadySplit(Exception):
    pass


@dataclass(frozen=True)
class Provenance:
    source: str
    parent_id: str | None = None
    aug_mode: str | None = None


@dataclass(frozen=True)
class DatasetRecord:
    id: str
    code: str
    graph: FlowGraph
    enc_tuple: str
    enc_string: str
    enc_modified: str
    split: str = "unassigned"
    provenance: Provenance = field(default_factory=lambda: Provenance("unknown"))


@dataclass(frozen=True)
class SplitRatio:
    train: int
    test: int
    val: int

    def __post_init__(self) -> None:
        parts = (self.train, self.test, self.val)
        if any(p < 0 for p in parts) or sum(parts) != 100:
            raise ValueError(f"split ratio must be non-negative and sum to 100: {parts}")

    @classmethod
    def parse(cls, text: str) -> "SplitRatio":
        try:
            train, test, val = (int(p) for p in text.split(":"))
        except ValueError as exc:
            raise ValueError(f"ratio must look like 85:10:5, got {text!r}") from exc
        return cls(train, test, val)


@dataclass(frozen=True)
class SkipEntry:
    index: int
    source: str
    reason: str


def content_id(code: str) -> str:
    return hashlib.sha256(code.encode("utf-8")).hexdigest()[:16]


def record_from_code(
    code: str,
    provenance: Provenance,
    split: str = "unassigned",
) -> DatasetRecord:
    """Build a record from canonical code; raises PyMiniError when the code
    is outside the subset and ValueError when a block label would collide
    with the encoding separator."""
    program = desugar_loops(parse(code))
    canonical = print_canonical(program)
    graph = lower(program)
    for node in graph.nodes:
        if f" {SEP} " in node.text:
            raise ValueError(f"block text contains the separator token: {node.text!r}")
    return DatasetRecord(
        id=content_id(canonical),
        code=canonical,
        graph=graph,
        enc_tuple=encode(graph, EncodingVariant.TUPLE),
        enc_string=encode(graph, EncodingVariant.STRING),
        enc_modified=encode(graph, EncodingVariant.MODIFIED_STRING),
        split=split,
        provenance=provenance,
    )


def build(sources: list[tuple[str, str]] | list[str]) -> tuple[list[DatasetRecord], list[SkipEntry]]:
    """Build records from (name, source_text) pairs (bare texts allowed).

    Out-of-subset sources are skipped with a reason; duplicate canonical
    codes are deduplicated with a skip entry.
    """
    records: list[DatasetRecord] = []
    skips: list[SkipEntry] = []
    seen: set[str] = set()
    for index, item in enumerate(sources):
        name, text = item if isinstance(item, tuple) else (f"source[{index}]", item)
        try:
            record = record_from_code(text, Provenance(source=name))
        except PyMiniError as exc:
            skips.append(SkipEntry(index, name, f"{type(exc).__name__}: {exc}"))
            continue
        except ValueError as exc:
            skips.append(SkipEntry(index, name, str(exc)))
            continue
        if record.id in seen:
            skips.append(SkipEntry(index, name, f"duplicate of record {record.id}"))
            continue
        seen.add(record.id)
        records.append(record)
    return records, skips


def split(records: list[DatasetRecord], ratio: SplitRatio, seed: int) -> list[DatasetRecord]:
    """Assign splits by seeded permutation with largest-remainder counts.

    Rounding leftovers go to train, then test, then val, which uniquely
    reproduces the published (10102, 1188, 594) partition of 11884 records
    at 85:10:5.
    """
    if any(r.split != "unassigned" for r in records):
        raise AlreadySplit("refusing to re-split records that already carry a split tag")
    n = len(records)
    counts = _largest_remainder(n, ratio)
    order = list(range(n))
    random.Random(seed).shuffle(order)
    assignment = {}
    cursor = 0
    for name, count in zip(("train", "test", "val"), counts):
        for i in order[cursor : cursor + count]:
            assignment[i] = name
        cursor += count
    return [replace(rec, split=assignment[i]) for i, rec in enumerate(records)]


def _largest_remainder(n: int, ratio: SplitRatio) -> tuple[int, int, int]:
    shares = [n * ratio.train, n * ratio.test, n * ratio.val]
    base = [s // 100 for s in shares]
    remainders = [s % 100 for s in shares]
    leftover = n - sum(base)
    # stable sort: ties resolved by position, i.e. train > test > val
    order = sorted(range(3), key=lambda i: (-remainders[i], i))
    for i in order[:leftover]:
        base[i] += 1
    return base[0], base[1], base[2]


def split_sizes(n: int, ratio: SplitRatio) -> tuple[int, int, int]:
    return _largest_remainder(n, ratio)


# --- JSONL persistence ----------------------------------------------------


def record_to_dict(record: DatasetRecord) -> dict:
    return {
        "id": record.id,
        "code": record.code,
        "graph": flowgraph.to_json_dict(record.graph),
        "enc_tuple": record.enc_tuple,
        "enc_string": record.enc_string,
        "enc_modified": record.enc_modified,
        "split": record.split,
        "provenance": {
            "source": record.provenance.source,
            "parent_id": record.provenance.parent_id,
            "aug_mode": record.provenance.aug_mode,
        },
    }


def record_from_dict(data: dict) -> DatasetRecord:
    prov = data["provenance"]
    return DatasetRecord(
        id=data["id"],
        code=data["code"],
        graph=flowgraph.from_json_dict(data["graph"]),
        enc_tuple=data["enc_tuple"],
        enc_string=data["enc_string"],
        enc_modified=data["enc_modified"],
        split=data["split"],
        provenance=Provenance(prov["source"], prov.get("parent_id"), prov.get("aug_mode")),
    )


def write_jsonl(path: str, records: list[DatasetRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record_to_dict(record), ensure_ascii=False) + "\n")


def read_jsonl(path: str) -> list[DatasetRecord]:
    records: list[DatasetRecord] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                records.append(record_from_dict(data))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise JsonlParseError(path, lineno, str(exc)) from exc
    return records


def regeneration_ok(record: DatasetRecord) -> bool:
    """Re-derive graph and encodings from the stored code and compare bytes."""
    fresh = record_from_code(record.code, record.provenance, record.split)
    return (
        fresh.code == record.code
        and flowgraph.to_json_dict(fresh.graph) == flowgraph.to_json_dict(record.graph)
        and fresh.enc_tuple == record.enc_tuple
        and fresh.enc_string == record.enc_string
        and fresh.enc_modified == record.enc_modified
    )
