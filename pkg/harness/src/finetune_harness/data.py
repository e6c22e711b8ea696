"""Reading the upstream pipeline's file exports.

The training/evaluation CSVs use the quoted doc_id,label,text schema; the
optional config snapshot JSON carries SHA-256 digests of the exporter's
outputs, which lets this harness verify it was handed the exact file the
upstream stage produced.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

REQUIRED_COLUMNS = ("doc_id", "label", "text")


class SchemaError(ValueError):
    """Input file does not match the expected export schema."""


@dataclass(frozen=True)
class Example:
    doc_id: int
    label: int
    text: str


def read_export_csv(path: str | Path) -> list[Example]:
    """Read a doc_id,label,text export; labels must be binary."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"export CSV not found: {path}")
    examples = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        missing = [c for c in REQUIRED_COLUMNS if reader.fieldnames is None or c not in reader.fieldnames]
        if missing:
            raise SchemaError(f"{path}: missing required columns {missing} (header {reader.fieldnames})")
        for i, row in enumerate(reader, start=2):
            try:
                label = int(row["label"])
                doc_id = int(row["doc_id"])
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{path}: malformed row {i}: {exc}")
            if label not in (0, 1):
                raise SchemaError(f"{path}: row {i}: label must be 0 or 1, got {label}")
            examples.append(Example(doc_id=doc_id, label=label, text=row["text"]))
    if not examples:
        raise SchemaError(f"{path}: no data rows")
    return examples


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def verify_against_snapshot(csv_path: str | Path, snapshot_path: str | Path) -> None:
    """Check that csv_path's digest appears among the snapshot's recorded
    outputs (keyed by basename). Raises SchemaError on mismatch."""
    snapshot_path = Path(snapshot_path)
    if not snapshot_path.exists():
        raise FileNotFoundError(f"config snapshot not found: {snapshot_path}")
    snapshot = json.loads(snapshot_path.read_text(encoding="utf-8"))
    outputs = snapshot.get("outputs", {})
    name = Path(csv_path).name
    if name not in outputs:
        raise SchemaError(
            f"{csv_path}: basename {name!r} not among snapshot outputs {sorted(outputs)}"
        )
    actual = sha256_file(csv_path)
    if outputs[name] != actual:
        raise SchemaError(
            f"{csv_path}: digest {actual[:12]}... does not match snapshot "
            f"record {outputs[name][:12]}... (file changed since export?)"
        )
