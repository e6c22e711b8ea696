"""Fine-tune a pretrained uncased BERT for binary classification on the
upstream pipeline's exported training CSV and evaluate on the untouched
test CSV.

The harness reads only files: training/evaluation CSVs in the
doc_id,label,text export schema, an optional augmented vocabulary file
(applied append-only to the tokenizer and input embeddings), and an
optional config-snapshot JSON used to verify the training CSV is the exact
file the exporter produced. Outputs are the metrics report in the shared
JSON schema plus a run-metadata JSON recording hardware, seed, and wall
clock.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import torch
from transformers import BertForSequenceClassification, BertTokenizer

from .config import FinetuneConfig
from .data import SchemaError, read_export_csv, sha256_file, verify_against_snapshot
from .extend import extend_model
from .metrics import report_dict


def _batches(n: int, batch_size: int, generator: torch.Generator):
    order = torch.randperm(n, generator=generator).tolist()
    for start in range(0, n, batch_size):
        yield order[start : start + batch_size]


def _encode(tokenizer, texts, max_length, device):
    encoded = tokenizer(
        texts,
        truncation=True,
        max_length=max_length,
        padding=True,
        return_tensors="pt",
    )
    return {key: value.to(device) for key, value in encoded.items()}


def load_model_and_tokenizer(config: FinetuneConfig):
    tokenizer = BertTokenizer.from_pretrained(config.model)
    model = BertForSequenceClassification.from_pretrained(config.model, num_labels=2)
    added = 0
    if config.vocab_file:
        added = extend_model(config.vocab_file, model, tokenizer, seed=config.seed)
    return model, tokenizer, added


def finetune_and_evaluate(
    train_csv: str | Path,
    test_csv: str | Path,
    config: FinetuneConfig,
    snapshot: str | Path | None = None,
) -> tuple[dict, float, dict]:
    """Returns (metrics report dict, training wall-clock seconds, run metadata)."""
    train_examples = read_export_csv(train_csv)
    test_examples = read_export_csv(test_csv)
    if len({e.label for e in train_examples}) < 2:
        raise SchemaError(f"{train_csv}: training file contains a single class")
    if snapshot is not None:
        verify_against_snapshot(train_csv, snapshot)

    torch.manual_seed(config.seed)
    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    model, tokenizer, added_tokens = load_model_and_tokenizer(config)
    model.to(device)

    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)
    generator = torch.Generator().manual_seed(config.seed)
    texts = [e.text for e in train_examples]
    labels = [e.label for e in train_examples]

    start = time.perf_counter()
    model.train()
    for _ in range(config.epochs):
        for batch in _batches(len(texts), config.batch_size, generator):
            encoded = _encode(tokenizer, [texts[i] for i in batch], config.max_sequence_length, device)
            target = torch.tensor([labels[i] for i in batch], device=device)
            output = model(**encoded, labels=target)
            output.loss.backward()
            optimizer.step()
            optimizer.zero_grad()
    train_seconds = time.perf_counter() - start

    model.eval()
    predictions = []
    with torch.no_grad():
        for start_idx in range(0, len(test_examples), config.batch_size):
            chunk = test_examples[start_idx : start_idx + config.batch_size]
            encoded = _encode(tokenizer, [e.text for e in chunk], config.max_sequence_length, device)
            logits = model(**encoded).logits
            predictions.extend(int(p) for p in logits.argmax(dim=-1).tolist())

    report = report_dict(predictions, [e.label for e in test_examples])
    metadata = {
        "config": config.to_dict(),
        "device": device.type,
        "device_name": torch.cuda.get_device_name(0) if device.type == "cuda" else "cpu",
        "added_tokens": added_tokens,
        "train_rows": len(train_examples),
        "test_rows": len(test_examples),
        "train_csv_sha256": sha256_file(train_csv),
        "test_csv_sha256": sha256_file(test_csv),
        "wall_clock_seconds": round(train_seconds, 3),
    }
    return report, train_seconds, metadata


def write_outputs(report: dict, metadata: dict, output_dir: str | Path) -> tuple[Path, Path]:
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    report_path = output_dir / "report.json"
    metadata_path = output_dir / "run_metadata.json"
    with open(report_path, "w", encoding="utf-8") as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write("\n")
    with open(metadata_path, "w", encoding="utf-8") as f:
        json.dump(metadata, f, indent=2, sort_keys=True)
        f.write("\n")
    return report_path, metadata_path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finetune-harness", description=__doc__)
    parser.add_argument("--train-csv", required=True, help="filtered training export (doc_id,label,text)")
    parser.add_argument("--test-csv", required=True, help="test export (doc_id,label,text)")
    parser.add_argument("--output-dir", required=True)
    parser.add_argument("--model", default="bert-base-uncased", help="model identifier or local path")
    parser.add_argument("--vocab", help="augmented vocabulary file; omit to fine-tune unaugmented")
    parser.add_argument("--snapshot", help="exporter config snapshot JSON for provenance verification")
    parser.add_argument("--epochs", type=int, default=3)
    parser.add_argument("--batch-size", type=int, default=8)
    parser.add_argument("--max-sequence-length", type=int, default=128)
    parser.add_argument("--learning-rate", type=float, default=2e-5)
    parser.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = FinetuneConfig(
        epochs=args.epochs,
        batch_size=args.batch_size,
        max_sequence_length=args.max_sequence_length,
        learning_rate=args.learning_rate,
        seed=args.seed,
        model=args.model,
        vocab_file=args.vocab,
    )
    try:
        report, seconds, metadata = finetune_and_evaluate(
            args.train_csv, args.test_csv, config, snapshot=args.snapshot
        )
    except (SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report_path, metadata_path = write_outputs(report, metadata, args.output_dir)
    print(json.dumps({
        "accuracy": report["accuracy"],
        "weighted_f1": report["weighted_f1"],
        "wall_clock_seconds": metadata["wall_clock_seconds"],
        "report": str(report_path),
        "run_metadata": str(metadata_path),
    }, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
