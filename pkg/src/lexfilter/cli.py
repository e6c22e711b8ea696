"""Command-line pipeline: composable subcommands staged through files.

Every subcommand reads declared input files, writes declared output files
plus a deterministic config-snapshot JSON (parameters and SHA-256 digests
of inputs and outputs), and prints a one-line JSON summary to stdout.
Stages share no in-memory state, so pipelines can be resumed from any
point and the filtered CSV / augmented vocab / snapshot trio is a clean
boundary for downstream consumers.

Exit codes: 0 success, 1 usage error, 2 data error, 3 invariant violation.
Every flag has an environment-variable equivalent prefixed LEXFILT_
(e.g. --test-fraction -> LEXFILT_TEST_FRACTION).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from pathlib import Path

from . import baseline, corpus, metrics, tfidf, wordpiece
from .errors import DataError, InvariantError

DEFAULT_LADDER = (0.80, 0.75, 0.70, 0.65, 0.60, 0.50)

SUBCOMMANDS = (
    "ingest",
    "split",
    "fit-idf",
    "score",
    "filter",
    "audit",
    "augment",
    "train-baseline",
    "evaluate",
    "ladder",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse reports usage problems with exit code 2; we need 1."""

    def error(self, message):
        raise UsageError(message)


def _env_key(flag: str) -> str:
    return "LEXFILT_" + flag.lstrip("-").upper().replace("-", "_")


def _add(parser, flag: str, *, cast=str, default=None, required=False, help="", action=None):
    """Add an option whose default can come from a LEXFILT_* variable."""
    env = os.environ.get(_env_key(flag))
    if action == "store_true":
        if env is not None:
            default = env.strip().lower() in ("1", "true", "yes", "on")
        parser.add_argument(flag, action="store_true", default=bool(default), help=help)
        return
    if env is not None:
        try:
            default = cast(env)
        except ValueError:
            raise UsageError(f"environment variable {_env_key(flag)}={env!r} is not a valid value")
        required = False
    parser.add_argument(flag, type=cast, default=default, required=required, help=help)


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_snapshot(command: str, params: dict, inputs: list[Path], outputs: list[Path], path: Path) -> None:
    # outputs are recorded by basename: they sit beside the snapshot, and
    # identical runs into different directories must produce identical bytes
    snapshot = {
        "command": command,
        "params": {k: v for k, v in sorted(params.items())},
        "inputs": {str(p): _sha256(Path(p)) for p in inputs},
        "outputs": {Path(p).name: _sha256(Path(p)) for p in outputs},
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(snapshot, f, indent=2, sort_keys=True)
        f.write("\n")


def _summary(**kwargs) -> None:
    print(json.dumps(kwargs, sort_keys=True))


def _preprocess_flags(parser) -> None:
    _add(parser, "--no-lowercase", action="store_true", help="keep original casing")
    _add(parser, "--keep-urls", action="store_true", help="do not strip http/https runs")
    _add(parser, "--keep-mentions", action="store_true", help="do not strip @-mentions")
    _add(parser, "--stopwords", help="optional stopword file, one term per line")


def _preprocess_config(args) -> tfidf.PreprocessConfig:
    stopwords = frozenset()
    if getattr(args, "stopwords", None):
        path = Path(args.stopwords)
        if not path.exists():
            raise DataError("stopword file not found", file=str(path))
        stopwords = frozenset(
            line.strip().lower() for line in path.read_text(encoding="utf-8").splitlines() if line.strip()
        )
    return tfidf.PreprocessConfig(
        lowercase=not args.no_lowercase,
        strip_urls=not args.keep_urls,
        strip_mentions=not args.keep_mentions,
        stopwords=stopwords,
    )


def _train_flags(parser) -> None:
    _add(parser, "--epochs", cast=int, default=3)
    _add(parser, "--batch-size", cast=int, default=8)
    _add(parser, "--learning-rate", cast=float, default=0.1)
    _add(parser, "--l2", cast=float, default=1e-4)
    _add(parser, "--seed", cast=int, default=0)


class _flag_values:
    """Re-raise ValueError from config construction as a usage error:
    these come from flag values, not data."""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is ValueError:
            raise UsageError(str(exc)) from exc
        return False


def _train_config(args) -> baseline.TrainConfig:
    with _flag_values():
        return baseline.TrainConfig(
            epochs=args.epochs,
            batch_size=args.batch_size,
            learning_rate=args.learning_rate,
            l2_penalty=args.l2,
            seed=args.seed,
        )


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------

def cmd_ingest(args) -> None:
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = corpus.load_csv(args.input, class_column=args.class_column, text_column=args.text_column)
    docs = corpus.to_binary(result.records)
    stats = corpus.corpus_stats(result.records, skipped=result.skipped)

    docs_path = out_dir / "documents.csv"
    stats_path = out_dir / "stats.json"
    corpus.write_documents_csv(docs, docs_path)
    corpus.write_stats_json(stats, stats_path)
    _write_snapshot(
        "ingest",
        {"input": args.input, "class_column": args.class_column, "text_column": args.text_column},
        [Path(args.input)],
        [docs_path, stats_path],
        out_dir / "ingest.snapshot.json",
    )
    _summary(command="ingest", records=len(docs), skipped=result.skipped,
             documents_csv=str(docs_path), stats_json=str(stats_path))


def cmd_split(args) -> None:
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    docs = corpus.read_documents_csv(args.docs)
    with _flag_values():
        spec = corpus.SplitSpec(
            test_fraction=args.test_fraction, seed=args.seed, stratified=not args.no_stratify
        )
    train, test = corpus.stratified_split(docs, spec)

    outputs = {
        "train_manifest": out_dir / "train_manifest.csv",
        "test_manifest": out_dir / "test_manifest.csv",
        "train_csv": out_dir / "train.csv",
        "test_csv": out_dir / "test.csv",
    }
    corpus.write_split_manifest(train, outputs["train_manifest"])
    corpus.write_split_manifest(test, outputs["test_manifest"])
    corpus.write_documents_csv(train, outputs["train_csv"])
    corpus.write_documents_csv(test, outputs["test_csv"])
    _write_snapshot(
        "split",
        {"docs": args.docs, "test_fraction": args.test_fraction, "seed": args.seed,
         "stratified": not args.no_stratify},
        [Path(args.docs)],
        list(outputs.values()),
        out_dir / "split.snapshot.json",
    )
    _summary(command="split", train_size=len(train), test_size=len(test),
             **{k: str(v) for k, v in outputs.items()})


def _docs_to_term_counts(docs, config) -> list[tfidf.TermCounts]:
    return [
        tfidf.TermCounts.from_terms(d.doc_id, tfidf.preprocess(d.text, config))
        for d in docs
    ]


def _select_manifest_docs(docs, manifest_path) -> list:
    ids = set(corpus.read_split_manifest(manifest_path))
    selected = [d for d in docs if d.doc_id in ids]
    if not selected:
        raise DataError("manifest selects zero documents", file=str(manifest_path))
    return selected


def cmd_fit_idf(args) -> None:
    docs = corpus.read_documents_csv(args.docs)
    inputs = [Path(args.docs)]
    if args.fit_on_full:
        pool = docs
    else:
        if not args.manifest:
            raise UsageError("--manifest is required unless --fit-on-full is given")
        pool = _select_manifest_docs(docs, args.manifest)
        inputs.append(Path(args.manifest))

    config = _preprocess_config(args)
    table = tfidf.fit_idf(_docs_to_term_counts(pool, config), config=config)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    table.save(out)
    _write_snapshot(
        "fit-idf",
        {"docs": args.docs, "manifest": args.manifest, "fit_on_full": args.fit_on_full,
         "config": config.to_dict()},
        inputs,
        [out],
        Path(str(out) + ".snapshot.json"),
    )
    _summary(command="fit-idf", n_docs=table.n_docs, n_terms=len(table.df), idf_json=str(out))


def cmd_score(args) -> None:
    docs = corpus.read_documents_csv(args.docs)
    table = tfidf.IdfTable.load(args.idf)
    inputs = [Path(args.docs), Path(args.idf)]
    if args.manifest:
        docs = _select_manifest_docs(docs, args.manifest)
        inputs.append(Path(args.manifest))

    scores = [
        tfidf.doc_score(tc, table, normalize_by_length=args.normalize_by_length)
        for tc in _docs_to_term_counts(docs, table.config)
    ]
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    tfidf.write_scores_csv(scores, out)
    _write_snapshot(
        "score",
        {"docs": args.docs, "idf": args.idf, "manifest": args.manifest,
         "normalize_by_length": args.normalize_by_length},
        inputs,
        [out],
        Path(str(out) + ".snapshot.json"),
    )
    _summary(command="score", n_scored=len(scores), scores_csv=str(out))


def cmd_filter(args) -> None:
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    scores = tfidf.read_scores_csv(args.scores)
    with _flag_values():
        spec = tfidf.FilterSpec(retain_fraction=args.retain)
    retained = tfidf.rank_and_filter(scores, spec)
    by_id = {s.doc_id: s.score for s in scores}

    manifest_path = out_dir / "filtered_manifest.csv"
    tfidf.write_filter_manifest(retained, by_id, manifest_path)
    outputs = [manifest_path]
    inputs = [Path(args.scores)]

    filtered_csv = None
    if args.docs:
        docs = corpus.read_documents_csv(args.docs)
        docs_by_id = {d.doc_id: d for d in docs}
        missing = [i for i in retained if i not in docs_by_id]
        if missing:
            raise DataError(f"{len(missing)} retained doc_ids missing from documents CSV", file=str(args.docs))
        filtered_csv = out_dir / "filtered.csv"
        corpus.write_documents_csv([docs_by_id[i] for i in retained], filtered_csv)
        outputs.append(filtered_csv)
        inputs.append(Path(args.docs))

    _write_snapshot(
        "filter",
        {"scores": args.scores, "retain": args.retain, "docs": args.docs},
        inputs,
        outputs,
        out_dir / "filter.snapshot.json",
    )
    _summary(command="filter", retained=len(retained), total=len(scores),
             retain_fraction=args.retain, filtered_manifest=str(manifest_path),
             filtered_csv=str(filtered_csv) if filtered_csv else None)


def cmd_audit(args) -> None:
    docs = corpus.read_documents_csv(args.docs)
    inputs = [Path(args.docs), Path(args.vocab)]
    if args.manifest:
        docs = _select_manifest_docs(docs, args.manifest)
        inputs.append(Path(args.manifest))
    vocab = wordpiece.load_vocab(args.vocab)
    lexicon = None
    if args.lexicon:
        lexicon = wordpiece.read_lexicon(args.lexicon)
        inputs.append(Path(args.lexicon))

    if args.min_fragments < 2:
        raise UsageError(f"--min-fragments must be >= 2, got {args.min_fragments}")
    report = wordpiece.fragmentation_audit(
        docs, vocab, lexicon=lexicon,
        min_frequency=args.min_frequency, min_fragments=args.min_fragments,
        raw_words=not args.full_presplit,
    )
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    report.save(out)
    _write_snapshot(
        "audit",
        {"docs": args.docs, "vocab": args.vocab, "manifest": args.manifest,
         "lexicon": args.lexicon, "min_frequency": args.min_frequency,
         "min_fragments": args.min_fragments, "raw_words": not args.full_presplit},
        inputs,
        [out],
        Path(str(out) + ".snapshot.json"),
    )
    _summary(command="audit", candidates=len(report.candidates), audit_json=str(out))


def cmd_augment(args) -> None:
    vocab = wordpiece.load_vocab(args.vocab)
    inputs = [Path(args.vocab)]
    if bool(args.terms) == bool(args.from_audit):
        raise UsageError("exactly one of --terms or --from-audit is required")
    if args.terms:
        terms_path = Path(args.terms)
        if not terms_path.exists():
            raise DataError("terms file not found", file=str(terms_path))
        terms = [
            line.strip().lower()
            for line in terms_path.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        inputs.append(terms_path)
        candidates = []
    else:
        audit_path = Path(args.from_audit)
        if not audit_path.exists():
            raise DataError("audit report not found", file=str(audit_path))
        audit_data = json.loads(audit_path.read_text(encoding="utf-8"))
        candidates = audit_data.get("candidates", [])
        terms = [c["term"] for c in candidates]
        inputs.append(audit_path)
    if args.max_terms is not None:
        terms = terms[: args.max_terms]

    try:
        augmented, report = wordpiece.augment(vocab, terms)
    except ValueError as exc:
        # invalid terms come from the terms/audit file, so this is a data error
        raise DataError(str(exc), file=args.terms or args.from_audit)
    report.candidates = [wordpiece.AuditCandidate(**c) for c in candidates]
    report.params.update({"original_size": len(vocab), "augmented_size": len(augmented)})

    out_vocab = Path(args.output)
    out_vocab.parent.mkdir(parents=True, exist_ok=True)
    wordpiece.save_vocab(augmented, out_vocab)
    out_report = Path(args.report)
    report.save(out_report)
    _write_snapshot(
        "augment",
        {"vocab": args.vocab, "terms": args.terms, "from_audit": args.from_audit,
         "max_terms": args.max_terms},
        inputs,
        [out_vocab, out_report],
        Path(str(out_vocab) + ".snapshot.json"),
    )
    _summary(command="augment", added=len(report.added), skipped=len(report.skipped),
             original_size=len(vocab), augmented_size=len(augmented),
             vocab_file=str(out_vocab), report_json=str(out_report))


def cmd_train_baseline(args) -> None:
    docs = corpus.read_documents_csv(args.docs)
    table = tfidf.IdfTable.load(args.idf)
    pool = _select_manifest_docs(docs, args.manifest)
    config = _train_config(args)

    model, seconds = baseline.train(pool, table, config)
    model_path = Path(args.model_out)
    model_path.parent.mkdir(parents=True, exist_ok=True)
    model.save(model_path)
    if args.log_out:
        baseline.write_training_log(model.history, args.log_out)
    # the training log carries wall-clock fields, so it is not hashed
    _write_snapshot(
        "train-baseline",
        {"docs": args.docs, "idf": args.idf, "manifest": args.manifest,
         "config": config.to_dict()},
        [Path(args.docs), Path(args.idf), Path(args.manifest)],
        [model_path],
        Path(str(model_path) + ".snapshot.json"),
    )
    _summary(command="train-baseline", train_size=len(pool), seconds=round(seconds, 6),
             final_mean_loss=model.history[-1][1], model_json=str(model_path))


def cmd_evaluate(args) -> None:
    docs = corpus.read_documents_csv(args.docs)
    table = tfidf.IdfTable.load(args.idf)
    model = baseline.LinearModel.load(args.model)
    test_docs = _select_manifest_docs(docs, args.manifest)

    predictions, labels = [], []
    for doc in test_docs:
        counts = tfidf.TermCounts.from_terms(doc.doc_id, tfidf.preprocess(doc.text, table.config))
        label, _ = baseline.predict(model, counts, table)
        predictions.append(label)
        labels.append(doc.label)

    rep = metrics.report(metrics.confusion(predictions, labels))
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    rep.save(out)
    _write_snapshot(
        "evaluate",
        {"docs": args.docs, "idf": args.idf, "model": args.model, "manifest": args.manifest},
        [Path(args.docs), Path(args.idf), Path(args.model), Path(args.manifest)],
        [out],
        Path(str(out) + ".snapshot.json"),
    )
    _summary(command="evaluate", n_evaluated=len(labels), accuracy=rep.accuracy,
             weighted_f1=rep.weighted_f1, report_json=str(out))


def _parse_ladder(text: str) -> list[float]:
    try:
        levels = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"invalid ladder {text!r}: expected comma-separated fractions")
    if not levels:
        raise UsageError("ladder must contain at least one level")
    for level in levels:
        if not 0.0 < level <= 1.0:
            raise UsageError(f"ladder level {level} outside (0, 1]")
    if any(b >= a for a, b in zip(levels, levels[1:])):
        raise UsageError(f"ladder levels must be strictly decreasing, got {levels}")
    return levels


def cmd_ladder(args) -> None:
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    levels = _parse_ladder(args.levels)

    docs = corpus.read_documents_csv(args.docs)
    with _flag_values():
        spec = corpus.SplitSpec(test_fraction=args.test_fraction, seed=args.seed)
    train_docs, test_docs = corpus.stratified_split(docs, spec)
    corpus.write_split_manifest(train_docs, out_dir / "train_manifest.csv")
    corpus.write_split_manifest(test_docs, out_dir / "test_manifest.csv")

    config = _preprocess_config(args)
    table = tfidf.fit_idf(_docs_to_term_counts(train_docs, config), config=config)
    table.save(out_dir / "idf.json")
    scores = [tfidf.doc_score(tc, table) for tc in _docs_to_term_counts(train_docs, config)]
    tfidf.write_scores_csv(scores, out_dir / "scores.csv")
    by_id = {s.doc_id: s.score for s in scores}
    docs_by_id = {d.doc_id: d for d in train_docs}
    train_config = _train_config(args)

    test_counts = [
        tfidf.TermCounts.from_terms(d.doc_id, tfidf.preprocess(d.text, config))
        for d in test_docs
    ]
    test_labels = [d.label for d in test_docs]

    def run_level(name: str, level_docs) -> dict:
        level_dir = out_dir / name
        level_dir.mkdir(parents=True, exist_ok=True)
        model, seconds = baseline.train(level_docs, table, train_config)
        model.save(level_dir / "model.json")
        baseline.write_training_log(model.history, level_dir / "train_log.csv")
        predictions = [baseline.predict(model, tc, table)[0] for tc in test_counts]
        rep = metrics.report(metrics.confusion(predictions, test_labels))
        rep.save(level_dir / "report.json")
        return {
            "configuration": name,
            "train_size": len(level_docs),
            "seconds": round(seconds, 6),
            "accuracy": rep.accuracy,
            "weighted_f1": rep.weighted_f1,
        }

    rows = [run_level("full", train_docs)]
    for level in levels:
        retained = tfidf.rank_and_filter(scores, tfidf.FilterSpec(retain_fraction=level))
        name = f"p{round(level * 100):03d}"
        level_dir = out_dir / name
        level_dir.mkdir(parents=True, exist_ok=True)
        tfidf.write_filter_manifest(retained, by_id, level_dir / "filtered_manifest.csv")
        corpus.write_documents_csv([docs_by_id[i] for i in retained], level_dir / "filtered.csv")
        rows.append(run_level(name, [docs_by_id[i] for i in retained]))

    ladder_csv = out_dir / "ladder.csv"
    with open(ladder_csv, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["configuration", "train_size", "seconds", "accuracy", "weighted_f1"])
        for row in rows:
            writer.writerow([row["configuration"], row["train_size"], row["seconds"],
                             row["accuracy"], row["weighted_f1"]])
    with open(out_dir / "ladder.json", "w", encoding="utf-8") as f:
        json.dump(rows, f, indent=2, sort_keys=True)
        f.write("\n")
    # ladder.csv/json carry wall-clock fields, so only the deterministic
    # staging artifacts are hashed
    _write_snapshot(
        "ladder",
        {"docs": args.docs, "levels": levels, "test_fraction": args.test_fraction,
         "seed": args.seed, "train_config": train_config.to_dict(), "config": config.to_dict()},
        [Path(args.docs)],
        [out_dir / "train_manifest.csv", out_dir / "test_manifest.csv",
         out_dir / "idf.json", out_dir / "scores.csv"],
        out_dir / "ladder.snapshot.json",
    )
    _summary(command="ladder", rows=len(rows), ladder_csv=str(ladder_csv),
             results=[{k: r[k] for k in ("configuration", "seconds", "accuracy")} for r in rows])


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="lexfilter", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("ingest", help="load labeled CSV, collapse labels, write document store")
    _add(p, "--input", required=True, help="labeled CSV with class and text columns")
    _add(p, "--output-dir", required=True)
    _add(p, "--class-column", default="class")
    _add(p, "--text-column", default="tweet")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("split", help="deterministic stratified train/test split")
    _add(p, "--docs", required=True, help="documents.csv from ingest")
    _add(p, "--output-dir", required=True)
    _add(p, "--test-fraction", cast=float, default=0.2)
    _add(p, "--seed", cast=int, default=0)
    _add(p, "--no-stratify", action="store_true")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("fit-idf", help="fit the IDF table on the training pool")
    _add(p, "--docs", required=True)
    _add(p, "--manifest", help="training-pool manifest (default fitting scope)")
    _add(p, "--fit-on-full", action="store_true",
         help="fit on the whole document set instead of the training pool")
    _add(p, "--output", required=True, help="IDF table JSON path")
    _preprocess_flags(p)
    p.set_defaults(func=cmd_fit_idf)

    p = sub.add_parser("score", help="aggregate TF-IDF score per document")
    _add(p, "--docs", required=True)
    _add(p, "--idf", required=True)
    _add(p, "--manifest", help="restrict scoring to manifest doc_ids")
    _add(p, "--output", required=True, help="scores CSV path")
    _add(p, "--normalize-by-length", action="store_true")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("filter", help="retain the top fraction by score")
    _add(p, "--scores", required=True)
    _add(p, "--retain", cast=float, required=True)
    _add(p, "--output-dir", required=True)
    _add(p, "--docs", help="document store; when given, writes the filtered doc_id,label,text CSV")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("audit", help="find over-fragmented frequent corpus words")
    _add(p, "--docs", required=True)
    _add(p, "--manifest", help="restrict the audit to manifest doc_ids")
    _add(p, "--vocab", required=True)
    _add(p, "--lexicon", help="external lexicon file")
    _add(p, "--min-frequency", cast=int, default=10)
    _add(p, "--min-fragments", cast=int, default=3)
    _add(p, "--full-presplit", action="store_true",
         help="apply punctuation pre-splitting before auditing (default: raw words)")
    _add(p, "--output", required=True, help="audit report JSON path")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("augment", help="append new whole-word tokens to the vocabulary")
    _add(p, "--vocab", required=True)
    _add(p, "--terms", help="terms file, one per line")
    _add(p, "--from-audit", help="take terms from an audit report JSON")
    _add(p, "--max-terms", cast=int)
    _add(p, "--output", required=True, help="augmented vocab file path")
    _add(p, "--report", required=True, help="augmentation report JSON path")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("train-baseline", help="train the logistic-regression baseline")
    _add(p, "--docs", required=True)
    _add(p, "--idf", required=True)
    _add(p, "--manifest", required=True, help="training manifest (split or filtered)")
    _add(p, "--model-out", required=True)
    _add(p, "--log-out", help="training log CSV path")
    _train_flags(p)
    p.set_defaults(func=cmd_train_baseline)

    p = sub.add_parser("evaluate", help="evaluate a model on a manifest")
    _add(p, "--docs", required=True)
    _add(p, "--idf", required=True)
    _add(p, "--model", required=True)
    _add(p, "--manifest", required=True, help="evaluation manifest (normally the test split)")
    _add(p, "--output", required=True, help="metrics report JSON path")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ladder", help="run the full filter ladder end to end")
    _add(p, "--docs", required=True)
    _add(p, "--output-dir", required=True)
    _add(p, "--levels", default=",".join(f"{x:.2f}" for x in DEFAULT_LADDER))
    _add(p, "--test-fraction", cast=float, default=0.2)
    _train_flags(p)
    _preprocess_flags(p)
    p.set_defaults(func=cmd_ladder)

    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required: " + ", ".join(SUBCOMMANDS))
        args.func(args)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, ValueError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
