"""WordPiece vocabulary handling, greedy subword tokenization, and
append-only vocabulary augmentation.

Tokenization repeatedly takes the longest prefix of the remaining suffix
that exists in the vocabulary, prefixing "##" for non-initial pieces; a
word with no matching prefix at any point, or longer than max_word_chars,
becomes [UNK]. Augmentation appends whole-word tokens at the end of the
vocabulary so every pre-existing token id is preserved, which is what lets
a pretrained model's embedding matrix be extended without disturbing the
original rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError, InvariantError

SPECIAL_TOKENS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")
CONTINUATION_PREFIX = "##"
DEFAULT_MAX_WORD_CHARS = 100


@dataclass
class WordPieceVocab:
    """Ordered subword vocabulary; token id = position in `tokens`."""

    tokens: list[str]
    token_to_id: dict[str, int] = field(init=False)
    continuation_prefix: str = CONTINUATION_PREFIX
    unk_token: str = "[UNK]"
    max_word_chars: int = DEFAULT_MAX_WORD_CHARS

    def __post_init__(self):
        self.token_to_id = {tok: i for i, tok in enumerate(self.tokens)}
        self.validate()

    def validate(self) -> None:
        if len(self.token_to_id) != len(self.tokens):
            seen: set[str] = set()
            for tok in self.tokens:
                if tok in seen:
                    raise InvariantError(f"duplicate token {tok!r} in vocabulary")
                seen.add(tok)
        missing = [s for s in SPECIAL_TOKENS if s not in self.token_to_id]
        if missing:
            raise InvariantError(f"vocabulary missing special tokens: {missing}")

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_id


@dataclass
class AuditCandidate:
    term: str
    corpus_frequency: int
    fragment_count: int
    source: str  # "corpus_audit" or "external_lexicon"

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "corpus_frequency": self.corpus_frequency,
            "fragment_count": self.fragment_count,
            "source": self.source,
        }


@dataclass
class AugmentationReport:
    candidates: list[AuditCandidate] = field(default_factory=list)
    added: list[str] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "candidates": [c.to_dict() for c in self.candidates],
            "added": list(self.added),
            "skipped": list(self.skipped),
            "params": dict(self.params),
        }

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")


def load_vocab(path: str | Path, max_word_chars: int = DEFAULT_MAX_WORD_CHARS) -> WordPieceVocab:
    """Load a one-token-per-line vocabulary file; token id = line number.

    Raises DataError on duplicate tokens, missing special tokens, or blank
    interior lines. A single trailing newline at end of file is allowed.
    """
    path = Path(path)
    if not path.exists():
        raise DataError("vocabulary file not found", file=str(path))

    raw_lines = path.read_text(encoding="utf-8").split("\n")
    if raw_lines and raw_lines[-1] == "":
        raw_lines.pop()

    tokens = []
    seen: set[str] = set()
    for lineno, line in enumerate(raw_lines, start=1):
        token = line.rstrip("\r")
        if token == "":
            raise DataError("blank interior line in vocabulary", file=str(path), row=lineno)
        if token in seen:
            raise DataError(f"duplicate token {token!r}", file=str(path), row=lineno)
        seen.add(token)
        tokens.append(token)

    missing = [s for s in SPECIAL_TOKENS if s not in seen]
    if missing:
        raise DataError(f"vocabulary missing special tokens: {missing}", file=str(path))
    return WordPieceVocab(tokens=tokens, max_word_chars=max_word_chars)


def save_vocab(vocab: WordPieceVocab, path: str | Path) -> None:
    """Write one token per line in id order; LF endings, UTF-8, byte-stable."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for token in vocab.tokens:
            f.write(token + "\n")


def tokenize_word(word: str, vocab: WordPieceVocab) -> list[str]:
    """Split one whitespace-free word by greedy longest-match-first WordPiece."""
    if len(word) > vocab.max_word_chars:
        return [vocab.unk_token]

    pieces = []
    start = 0
    n = len(word)
    while start < n:
        end = n
        piece = None
        while start < end:
            candidate = word[start:end]
            if start > 0:
                candidate = vocab.continuation_prefix + candidate
            if candidate in vocab.token_to_id:
                piece = candidate
                break
            end -= 1
        if piece is None:
            return [vocab.unk_token]
        pieces.append(piece)
        start = end
    return pieces


def pre_split(text: str) -> list[str]:
    """Lowercase, split on whitespace, and isolate punctuation.

    Every non-alphanumeric, non-apostrophe character becomes a standalone
    single-character word.
    """
    words = []
    for chunk in text.lower().split():
        current = []
        for ch in chunk:
            if ch.isalnum() or ch == "'":
                current.append(ch)
            else:
                if current:
                    words.append("".join(current))
                    current = []
                words.append(ch)
        if current:
            words.append("".join(current))
    return words


def tokenize(text: str, vocab: WordPieceVocab) -> list[str]:
    """Full-text tokenization: punctuation-aware pre-split, then per-word WordPiece."""
    tokens = []
    for word in pre_split(text):
        tokens.extend(tokenize_word(word, vocab))
    return tokens


def fragment_count(word: str, vocab: WordPieceVocab) -> int:
    """Number of WordPiece fragments a whole word splits into.

    A word that cannot be tokenized at all ([UNK]) is assigned len(word)+1,
    one more than any real split could produce, so unrepresentable words
    rank as maximally fragmented.
    """
    pieces = tokenize_word(word, vocab)
    if pieces == [vocab.unk_token] and word != vocab.unk_token:
        return len(word) + 1
    return len(pieces)


def read_lexicon(path: str | Path) -> list[str]:
    """Read an external lexicon: one term per line, full-line '#' comments allowed."""
    path = Path(path)
    if not path.exists():
        raise DataError("lexicon file not found", file=str(path))
    terms = []
    for line in path.read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        terms.append(stripped.lower())
    return terms


def fragmentation_audit(
    docs,
    vocab: WordPieceVocab,
    lexicon: list[str] | None = None,
    min_frequency: int = 10,
    min_fragments: int = 3,
    raw_words: bool = True,
) -> AugmentationReport:
    """Find corpus words the vocabulary represents poorly.

    Candidates are corpus words with corpus_frequency >= min_frequency and
    fragment_count >= min_fragments, unioned with all lexicon terms that
    are not already single tokens. In raw-words mode (the default) corpus
    words are lowercased whitespace tokens without punctuation splitting,
    so symbol-laden obfuscations like "h8" surface intact; with
    raw_words=False the full tokenization pre-split is applied first.
    Sorted by corpus_frequency descending, ties by term ascending.
    """
    if min_fragments < 2:
        raise ValueError(f"min_fragments must be >= 2, got {min_fragments}")

    freq: dict[str, int] = {}
    for doc in docs:
        words = doc.text.lower().split() if raw_words else pre_split(doc.text)
        for word in words:
            freq[word] = freq.get(word, 0) + 1

    candidates: dict[str, AuditCandidate] = {}
    for word, count in freq.items():
        if count < min_frequency or word in SPECIAL_TOKENS:
            continue
        fragments = fragment_count(word, vocab)
        if fragments >= min_fragments:
            candidates[word] = AuditCandidate(
                term=word, corpus_frequency=count, fragment_count=fragments, source="corpus_audit"
            )

    for term in lexicon or []:
        if term in candidates or term in SPECIAL_TOKENS:
            continue
        fragments = fragment_count(term, vocab)
        if fragments <= 1:
            continue  # already a single token
        candidates[term] = AuditCandidate(
            term=term,
            corpus_frequency=freq.get(term, 0),
            fragment_count=fragments,
            source="external_lexicon",
        )

    ordered = sorted(candidates.values(), key=lambda c: (-c.corpus_frequency, c.term))
    return AugmentationReport(
        candidates=ordered,
        params={
            "min_frequency": min_frequency,
            "min_fragments": min_fragments,
            "raw_words": raw_words,
            "lexicon_terms": len(lexicon or []),
        },
    )


def augment(vocab: WordPieceVocab, terms: list[str]) -> tuple[WordPieceVocab, AugmentationReport]:
    """Append genuinely new whole-word tokens; never touch existing ids.

    Terms must be lowercase and whitespace-free. Already-present tokens and
    within-batch duplicates are skipped with a reason; a term containing
    whitespace or equal to a special token raises. Every added term
    tokenizes to exactly one token (itself) afterwards, by construction.
    """
    report = AugmentationReport(params={"requested": len(terms)})
    new_tokens = list(vocab.tokens)
    existing = set(vocab.token_to_id)

    for term in terms:
        if term != term.strip() or any(ch.isspace() for ch in term):
            raise ValueError(f"term {term!r} contains whitespace")
        if term in SPECIAL_TOKENS:
            raise ValueError(f"term {term!r} is a special token")
        if term in existing:
            reason = "duplicate_in_batch" if term in report.added else "already_present"
            report.skipped.append({"term": term, "reason": reason})
            continue
        if len(term) > vocab.max_word_chars:
            report.skipped.append({"term": term, "reason": "exceeds_max_word_chars"})
            continue
        new_tokens.append(term)
        existing.add(term)
        report.added.append(term)

    augmented = WordPieceVocab(
        tokens=new_tokens,
        continuation_prefix=vocab.continuation_prefix,
        unk_token=vocab.unk_token,
        max_word_chars=vocab.max_word_chars,
    )
    return augmented, report
