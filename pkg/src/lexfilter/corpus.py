"""Corpus ingestion, binary label collapsing, statistics, and stratified splitting.

Reads the three-way labeled tweet CSV (class column: 0=hate, 1=offensive,
2=neither), collapses hate and offensive into a single positive class, and
produces deterministic stratified train/test splits that are stable across
runs and platforms.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError

logger = logging.getLogger(__name__)

RAW_HATE = 0
RAW_OFFENSIVE = 1
RAW_NEITHER = 2
RAW_CLASSES = (RAW_HATE, RAW_OFFENSIVE, RAW_NEITHER)

LABEL_NEITHER = 0
LABEL_HATEFUL_OR_OFFENSIVE = 1


@dataclass(frozen=True)
class RawRecord:
    """One CSV row: original three-way class plus tweet text."""

    row_id: int
    raw_class: int
    text: str

    def __post_init__(self):
        if self.raw_class not in RAW_CLASSES:
            raise ValueError(f"raw_class must be one of {RAW_CLASSES}, got {self.raw_class}")
        if not self.text.strip():
            raise ValueError("text must be non-empty after whitespace trim")


@dataclass(frozen=True)
class Document:
    """A labeled document with the collapsed binary label.

    label 1 = hateful or offensive, label 0 = neither. doc_id is assigned
    at ingest in file order and is the stable identity used everywhere
    downstream.
    """

    doc_id: int
    text: str
    label: int

    def __post_init__(self):
        if self.label not in (LABEL_NEITHER, LABEL_HATEFUL_OR_OFFENSIVE):
            raise ValueError(f"label must be 0 or 1, got {self.label}")


@dataclass(frozen=True)
class SplitSpec:
    """Parameters of a deterministic train/test split."""

    test_fraction: float = 0.2
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError(f"test_fraction must be in (0,1), got {self.test_fraction}")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


@dataclass
class CorpusStats:
    """Exact counts and class fractions of a corpus.

    per_raw_class_fraction is None when computed from already-collapsed
    Documents (the raw three-way classes are no longer known).
    """

    total: int
    per_raw_class_fraction: tuple[float, float, float] | None
    per_binary_class_fraction: tuple[float, float]
    skipped: int = 0

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "raw_fractions": list(self.per_raw_class_fraction) if self.per_raw_class_fraction else None,
            "binary_fractions": list(self.per_binary_class_fraction),
            "skipped": self.skipped,
        }


@dataclass
class IngestResult:
    records: list[RawRecord] = field(default_factory=list)
    skipped: int = 0


def load_csv(path: str | Path, class_column: str = "class", text_column: str = "tweet") -> IngestResult:
    """Load raw records from a labeled CSV.

    Standard double-quote escaping; embedded newlines inside quoted fields
    are allowed. Rows with a missing/empty text field or an unrecognized
    class value are skipped and counted rather than failing the run.
    row_id is the zero-based position among valid rows, in file order.

    Raises DataError for a missing file, a missing required column, or a
    file with zero valid rows.
    """
    path = Path(path)
    if not path.exists():
        raise DataError("input CSV not found", file=str(path))

    result = IngestResult()
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None:
            raise DataError("input CSV has no header row", file=str(path))
        for col in (class_column, text_column):
            if col not in reader.fieldnames:
                raise DataError(
                    f"required column {col!r} missing from header {reader.fieldnames}",
                    file=str(path),
                )
        for row_number, row in enumerate(reader, start=2):  # header is line 1
            raw_class = row.get(class_column)
            text = row.get(text_column)
            if text is None or not text.strip():
                result.skipped += 1
                continue
            try:
                class_value = int(raw_class)
            except (TypeError, ValueError):
                result.skipped += 1
                continue
            if class_value not in RAW_CLASSES:
                result.skipped += 1
                continue
            result.records.append(RawRecord(row_id=len(result.records), raw_class=class_value, text=text))

    if not result.records:
        raise DataError("zero valid rows", file=str(path))
    if result.skipped:
        logger.warning(
            "skipped %d malformed rows (empty text or unknown class) in %s",
            result.skipped, path,
        )
    return result


def to_binary(records: list[RawRecord]) -> list[Document]:
    """Collapse three-way classes to the binary label.

    hate (0) and offensive (1) map to label 1; neither (2) maps to label 0.
    doc_ids are assigned 0..n-1 in input order.
    """
    docs = []
    for i, rec in enumerate(records):
        label = LABEL_HATEFUL_OR_OFFENSIVE if rec.raw_class in (RAW_HATE, RAW_OFFENSIVE) else LABEL_NEITHER
        docs.append(Document(doc_id=i, text=rec.text, label=label))
    return docs


def corpus_stats(items: list[RawRecord] | list[Document], skipped: int = 0) -> CorpusStats:
    """Compute exact counts and class fractions.

    Accepts either RawRecords (both raw and binary fractions are computed)
    or Documents (binary fractions only).
    """
    if not items:
        raise DataError("cannot compute statistics of an empty corpus")

    total = len(items)
    if isinstance(items[0], RawRecord):
        raw_counts = [0, 0, 0]
        binary_counts = [0, 0]
        for rec in items:
            raw_counts[rec.raw_class] += 1
            if rec.raw_class in (RAW_HATE, RAW_OFFENSIVE):
                binary_counts[LABEL_HATEFUL_OR_OFFENSIVE] += 1
            else:
                binary_counts[LABEL_NEITHER] += 1
        raw_fractions = tuple(c / total for c in raw_counts)
    else:
        raw_fractions = None
        binary_counts = [0, 0]
        for doc in items:
            binary_counts[doc.label] += 1

    return CorpusStats(
        total=total,
        per_raw_class_fraction=raw_fractions,
        per_binary_class_fraction=tuple(c / total for c in binary_counts),
        skipped=skipped,
    )


def _class_rng(seed: int, label) -> random.Random:
    """Deterministic, platform-stable RNG derived from (seed, class).

    A SHA-256 digest of the seed/class pair feeds the Mersenne Twister, so
    identical inputs shuffle identically on every platform and run.
    """
    digest = hashlib.sha256(f"lexfilter-split:{seed}:{label}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def stratified_split(docs: list[Document], spec: SplitSpec) -> tuple[list[Document], list[Document]]:
    """Partition documents into train and test sets.

    Per class, the test set takes max(1, floor(test_fraction * n_class))
    documents chosen by a seeded pseudo-random permutation of the class's
    doc_ids. Membership depends only on (doc_ids, labels, spec): the
    within-class order is canonicalized by doc_id before shuffling, so
    reordering the input does not change the split. Both returned lists
    preserve the input document order.

    Raises DataError if any binary class has fewer than 2 documents.
    """
    if not docs:
        raise DataError("cannot split an empty corpus")

    by_label: dict[int, list[int]] = {}
    for doc in docs:
        by_label.setdefault(doc.label, []).append(doc.doc_id)

    if spec.stratified:
        for label, ids in sorted(by_label.items()):
            if len(ids) < 2:
                raise DataError(f"class {label} has fewer than 2 documents ({len(ids)})")
        test_ids: set[int] = set()
        for label, ids in sorted(by_label.items()):
            ordered = sorted(ids)
            _class_rng(spec.seed, label).shuffle(ordered)
            n_test = max(1, int(spec.test_fraction * len(ordered)))
            test_ids.update(ordered[:n_test])
    else:
        ordered = sorted(d.doc_id for d in docs)
        _class_rng(spec.seed, "all").shuffle(ordered)
        n_test = max(1, int(spec.test_fraction * len(ordered)))
        test_ids = set(ordered[:n_test])

    train = [d for d in docs if d.doc_id not in test_ids]
    test = [d for d in docs if d.doc_id in test_ids]
    return train, test


# ---------------------------------------------------------------------------
# File formats: document store (doc_id,label,text), split manifests
# (doc_id,label), and the stats JSON report.
# ---------------------------------------------------------------------------

def write_documents_csv(docs: list[Document], path: str | Path) -> None:
    """Write the quoted doc_id,label,text CSV consumed by every later stage."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, quoting=csv.QUOTE_ALL, lineterminator="\n")
        writer.writerow(["doc_id", "label", "text"])
        for doc in docs:
            writer.writerow([doc.doc_id, doc.label, doc.text])


def read_documents_csv(path: str | Path) -> list[Document]:
    path = Path(path)
    if not path.exists():
        raise DataError("documents CSV not found", file=str(path))
    docs = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        for col in ("doc_id", "label", "text"):
            if reader.fieldnames is None or col not in reader.fieldnames:
                raise DataError(f"required column {col!r} missing", file=str(path))
        for i, row in enumerate(reader, start=2):
            try:
                docs.append(Document(doc_id=int(row["doc_id"]), text=row["text"], label=int(row["label"])))
            except (ValueError, TypeError) as exc:
                raise DataError(f"malformed document row: {exc}", file=str(path), row=i)
    if not docs:
        raise DataError("documents CSV has zero rows", file=str(path))
    return docs


def write_split_manifest(docs: list[Document], path: str | Path) -> None:
    """Write a two-column doc_id,label manifest."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["doc_id", "label"])
        for doc in docs:
            writer.writerow([doc.doc_id, doc.label])


def read_split_manifest(path: str | Path) -> list[int]:
    """Read the doc_ids of a split manifest, in manifest order."""
    path = Path(path)
    if not path.exists():
        raise DataError("split manifest not found", file=str(path))
    ids = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or "doc_id" not in reader.fieldnames:
            raise DataError("required column 'doc_id' missing", file=str(path))
        for i, row in enumerate(reader, start=2):
            try:
                ids.append(int(row["doc_id"]))
            except (ValueError, TypeError) as exc:
                raise DataError(f"malformed manifest row: {exc}", file=str(path), row=i)
    return ids


def write_stats_json(stats: CorpusStats, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(stats.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")
