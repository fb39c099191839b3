"""Corpus ingestion, deterministic splitting, prepared-example files, and
token-length statistics."""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import DuplicateId, EmptyCorpus, IoError, MalformedRecord, MissingColumn
from .tokenization import Tokenizer

HISTOGRAM_BUCKET_WIDTH = 100


@dataclass(frozen=True)
class DischargeNote:
    hadm_id: str
    note_id: str
    text: str


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: Fraction = Fraction(4, 5)
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.train_fraction, Fraction):
            object.__setattr__(self, "train_fraction", Fraction(self.train_fraction))
        if not 0 < self.train_fraction < 1:
            raise ValueError(f"train_fraction out of (0, 1): {self.train_fraction}")


@dataclass(frozen=True)
class LengthStats:
    min: int
    max: int
    mean: float
    histogram: tuple[tuple[int, int], ...]  # (bucket lower bound, count)


@dataclass(frozen=True)
class PreparedExample:
    hadm_id: str
    target: str  # "bhc" | "di"
    input_text: str
    target_text: str


_REQUIRED_FIELDS = ("hadm_id", "note_id", "text")


def load_notes(path: str | Path, format: str | None = None) -> list[DischargeNote]:
    """Load notes from CSV (header row) or JSONL; format inferred from the
    suffix when not given. Order is preserved; duplicate hadm_id rejected."""
    path = Path(path)
    if not path.exists():
        raise IoError(f"no such file: {path}")
    if format is None:
        format = "jsonl" if path.suffix in (".jsonl", ".ndjson") else "csv"
    if format == "csv":
        records = _read_csv(path)
    elif format == "jsonl":
        records = _read_jsonl(path)
    else:
        raise ValueError(f"unknown format: {format!r}")

    notes = []
    seen: set[str] = set()
    for i, rec in enumerate(records):
        for key in _REQUIRED_FIELDS:
            if rec.get(key) is None:
                raise MalformedRecord(i, f"missing field {key!r}")
        hadm_id, note_id, text = (str(rec[k]) for k in _REQUIRED_FIELDS)
        if not text:
            raise MalformedRecord(i, "empty text")
        if hadm_id in seen:
            raise DuplicateId(hadm_id, i)
        seen.add(hadm_id)
        notes.append(DischargeNote(hadm_id, note_id, text))
    return notes


def _read_csv(path: Path) -> list[dict]:
    with path.open(newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None:
            return []
        for col in _REQUIRED_FIELDS:
            if col not in reader.fieldnames:
                raise MissingColumn(col)
        return list(reader)


def _read_jsonl(path: Path) -> list[dict]:
    records = []
    with path.open(encoding="utf-8") as f:
        for i, line in enumerate(f):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise MalformedRecord(i, f"invalid JSON: {e}") from e
            if not isinstance(rec, dict):
                raise MalformedRecord(i, "record is not an object")
            for key in _REQUIRED_FIELDS:
                if key not in rec:
                    raise MissingColumn(key)
            records.append(rec)
    return records


def split_dataset(
    notes: list[DischargeNote], spec: SplitSpec
) -> tuple[list[DischargeNote], list[DischargeNote]]:
    """Deterministic 4:1-style split by shuffled hadm_id.

    The admission ids are sorted, shuffled by the Mersenne Twister seeded
    with spec.seed (random.Random(seed).shuffle), and the first
    round(train_fraction * N) ids become the training set. The result is a
    pure function of the id set and the seed, independent of input order;
    within each half the input order is preserved.
    """
    if not notes:
        raise EmptyCorpus("cannot split an empty corpus")
    ids = sorted(n.hadm_id for n in notes)
    rng = random.Random(spec.seed)
    rng.shuffle(ids)
    n_train = int(spec.train_fraction * len(ids) + Fraction(1, 2))
    train_ids = set(ids[:n_train])
    train = [n for n in notes if n.hadm_id in train_ids]
    validation = [n for n in notes if n.hadm_id not in train_ids]
    return train, validation


def corpus_stats(texts: list[str], tokenizer: Tokenizer) -> LengthStats:
    """Min/max/mean token counts plus a fixed-width histogram."""
    if not texts:
        raise EmptyCorpus("no texts to summarize")
    counts = [tokenizer.count(t) for t in texts]
    buckets: dict[int, int] = {}
    for c in counts:
        lo = (c // HISTOGRAM_BUCKET_WIDTH) * HISTOGRAM_BUCKET_WIDTH
        buckets[lo] = buckets.get(lo, 0) + 1
    return LengthStats(
        min=min(counts),
        max=max(counts),
        mean=sum(counts) / len(counts),
        histogram=tuple(sorted(buckets.items())),
    )


def write_prepared(examples: list[PreparedExample], path: str | Path) -> None:
    """JSONL, one example per line, keys hadm_id/target/input_text/target_text."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as f:
        for ex in examples:
            f.write(
                json.dumps(
                    {
                        "hadm_id": ex.hadm_id,
                        "target": ex.target,
                        "input_text": ex.input_text,
                        "target_text": ex.target_text,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_prepared(path: str | Path) -> list[PreparedExample]:
    path = Path(path)
    if not path.exists():
        raise IoError(f"no such file: {path}")
    examples = []
    with path.open(encoding="utf-8") as f:
        for i, line in enumerate(f):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise MalformedRecord(i, f"invalid JSON: {e}") from e
            try:
                examples.append(
                    PreparedExample(
                        hadm_id=rec["hadm_id"],
                        target=rec["target"],
                        input_text=rec["input_text"],
                        target_text=rec["target_text"],
                    )
                )
            except (KeyError, TypeError) as e:
                raise MalformedRecord(i, f"bad record: {e}") from e
    return examples
