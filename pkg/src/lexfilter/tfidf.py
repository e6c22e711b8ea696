"""TF-IDF document scoring and top-fraction training-set filtering.

Term frequency is the within-document count divided by the document's
total term count. Inverse document frequency is ln(N / (1 + DF(t))) with
the +1 smoothing kept verbatim, which makes terms occurring in every
document score negative; values are never clamped. A document's aggregate
score is the sum of TF-IDF weights over its unique terms, and filtering
retains the top max(1, floor(p*n)) documents by score with ties broken by
ascending doc_id.

Natural log is used throughout: the log base rescales every score by the
same constant and cannot change the ranking.
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError, InvariantError

# Maximal runs of letters, digits, and apostrophes (unicode-aware).
_TOKEN_RE = re.compile(r"(?:[^\W_]|')+")
_URL_RE = re.compile(r"\bhttps?\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@\w+")


@dataclass(frozen=True)
class PreprocessConfig:
    """Text normalization applied before term counting.

    The configuration is serialized into every artifact that depends on it
    (IdfTable JSON, score file snapshots) so downstream stages can verify
    they were produced consistently.
    """

    lowercase: bool = True
    strip_urls: bool = True
    strip_mentions: bool = True
    stopwords: frozenset[str] = frozenset()

    def to_dict(self) -> dict:
        return {
            "lowercase": self.lowercase,
            "strip_urls": self.strip_urls,
            "strip_mentions": self.strip_mentions,
            "stopwords": sorted(self.stopwords),
            "token_pattern": "maximal runs of letters, digits, and apostrophes",
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PreprocessConfig":
        return cls(
            lowercase=bool(data.get("lowercase", True)),
            strip_urls=bool(data.get("strip_urls", True)),
            strip_mentions=bool(data.get("strip_mentions", True)),
            stopwords=frozenset(data.get("stopwords", ())),
        )


@dataclass
class TermCounts:
    """Post-preprocessing term counts of one document."""

    doc_id: int
    counts: dict[str, int]
    total_terms: int

    @classmethod
    def from_terms(cls, doc_id: int, terms: list[str]) -> "TermCounts":
        counts: dict[str, int] = {}
        for term in terms:
            counts[term] = counts.get(term, 0) + 1
        return cls(doc_id=doc_id, counts=counts, total_terms=len(terms))


@dataclass
class IdfTable:
    """Fitted inverse-document-frequency table.

    idf(t) = ln(n_docs) - ln(1 + df(t)) exactly, to floating-point rounding.
    """

    n_docs: int
    df: dict[str, int]
    idf: dict[str, float]
    config: PreprocessConfig = field(default_factory=PreprocessConfig)

    def validate(self) -> None:
        if self.n_docs < 1:
            raise InvariantError(f"n_docs must be >= 1, got {self.n_docs}")
        for term, df in self.df.items():
            if not 1 <= df <= self.n_docs:
                raise InvariantError(f"DF({term!r})={df} outside [1, {self.n_docs}]")

    def to_json(self) -> str:
        terms = [
            {"term": t, "df": self.df[t], "idf": self.idf[t]}
            for t in sorted(self.df)
        ]
        return json.dumps(
            {"n_docs": self.n_docs, "config": self.config.to_dict(), "terms": terms},
            indent=2,
            sort_keys=True,
        ) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "IdfTable":
        data = json.loads(text)
        table = cls(
            n_docs=data["n_docs"],
            df={e["term"]: e["df"] for e in data["terms"]},
            idf={e["term"]: e["idf"] for e in data["terms"]},
            config=PreprocessConfig.from_dict(data.get("config", {})),
        )
        table.validate()
        return table

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "IdfTable":
        path = Path(path)
        if not path.exists():
            raise DataError("IDF table not found", file=str(path))
        return cls.from_json(path.read_text(encoding="utf-8"))


@dataclass(frozen=True)
class DocScore:
    doc_id: int
    score: float


@dataclass(frozen=True)
class FilterSpec:
    """Retain the top retain_fraction of documents; k = max(1, floor(p*n))."""

    retain_fraction: float

    def __post_init__(self):
        if not 0.0 < self.retain_fraction <= 1.0:
            raise ValueError(f"retain_fraction must be in (0,1], got {self.retain_fraction}")

    def retained_count(self, n: int) -> int:
        return max(1, int(self.retain_fraction * n))


def preprocess(text: str, config: PreprocessConfig = PreprocessConfig()) -> list[str]:
    """Normalize text to its ordered term sequence.

    URL and @-mention removal happen on the raw text, then lowercasing,
    then tokenization; stopwords are removed last. Empty output is legal.
    """
    if config.strip_urls:
        text = _URL_RE.sub(" ", text)
    if config.strip_mentions:
        text = _MENTION_RE.sub(" ", text)
    if config.lowercase:
        text = text.lower()
    terms = _TOKEN_RE.findall(text)
    if config.stopwords:
        terms = [t for t in terms if t not in config.stopwords]
    return terms


def term_frequency(term: str, doc: TermCounts) -> float:
    """Within-document frequency: count of term divided by total term count."""
    if doc.total_terms <= 0:
        raise ValueError(f"document {doc.doc_id} has no terms")
    return doc.counts.get(term, 0) / doc.total_terms


def fit_idf(
    docs: list[TermCounts],
    n_docs: int | None = None,
    config: PreprocessConfig = PreprocessConfig(),
) -> IdfTable:
    """Fit the IDF table over a document collection.

    DF(t) counts the documents containing t at least once; n_docs defaults
    to len(docs). The +1 smoothing in ln(N / (1 + DF)) is kept unclamped.
    """
    if not docs:
        raise DataError("cannot fit IDF on an empty corpus")
    if n_docs is None:
        n_docs = len(docs)
    if n_docs < 1:
        raise DataError(f"n_docs must be >= 1, got {n_docs}")

    df: dict[str, int] = {}
    for doc in docs:
        for term in doc.counts:
            df[term] = df.get(term, 0) + 1

    log_n = math.log(n_docs)
    idf = {term: log_n - math.log(1 + d) for term, d in df.items()}
    table = IdfTable(n_docs=n_docs, df=df, idf=idf, config=config)
    table.validate()
    return table


def tfidf_weight(term: str, doc: TermCounts, table: IdfTable) -> float:
    """TF(t,d) * IDF(t); terms absent from the table contribute 0."""
    idf = table.idf.get(term)
    if idf is None or doc.total_terms <= 0:
        return 0.0
    return (doc.counts.get(term, 0) / doc.total_terms) * idf


def doc_score(doc: TermCounts, table: IdfTable, normalize_by_length: bool = False) -> DocScore:
    """Aggregate score: sum of TF-IDF weights over the document's unique terms.

    TF already encodes multiplicity, so summing per occurrence would
    square-count frequency; the sum runs over unique terms. Documents with
    zero terms score 0. normalize_by_length divides by the term count and
    defaults off.
    """
    score = sum(tfidf_weight(term, doc, table) for term in doc.counts)
    if normalize_by_length and doc.total_terms > 0:
        score /= doc.total_terms
    if not math.isfinite(score):
        raise InvariantError(f"non-finite score for doc {doc.doc_id}")
    return DocScore(doc_id=doc.doc_id, score=score)


def rank_and_filter(scores: list[DocScore], spec: FilterSpec) -> list[int]:
    """Rank by descending score (ties by ascending doc_id) and keep the top k.

    Returns the retained doc_ids in ranked order. The ordering is a total
    order independent of input order, so retained sets nest monotonically
    across retain fractions.
    """
    if not scores:
        raise DataError("cannot filter an empty score list")
    ranked = sorted(scores, key=lambda s: (-s.score, s.doc_id))
    k = spec.retained_count(len(ranked))
    return [s.doc_id for s in ranked[:k]]


def write_scores_csv(scores: list[DocScore], path: str | Path) -> None:
    """Write doc_id,score with scores at 12 significant digits."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["doc_id", "score"])
        for s in scores:
            writer.writerow([s.doc_id, format(s.score, ".12g")])


def read_scores_csv(path: str | Path) -> list[DocScore]:
    path = Path(path)
    if not path.exists():
        raise DataError("score file not found", file=str(path))
    scores = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        for col in ("doc_id", "score"):
            if reader.fieldnames is None or col not in reader.fieldnames:
                raise DataError(f"required column {col!r} missing", file=str(path))
        for i, row in enumerate(reader, start=2):
            try:
                scores.append(DocScore(doc_id=int(row["doc_id"]), score=float(row["score"])))
            except (ValueError, TypeError) as exc:
                raise DataError(f"malformed score row: {exc}", file=str(path), row=i)
    return scores


def write_filter_manifest(ranked_ids: list[int], scores_by_id: dict[int, float], path: str | Path) -> None:
    """Write rank,doc_id,score for the retained documents, in ranked order."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["rank", "doc_id", "score"])
        for rank, doc_id in enumerate(ranked_ids, start=1):
            writer.writerow([rank, doc_id, format(scores_by_id[doc_id], ".12g")])
