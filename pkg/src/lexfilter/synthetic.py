"""Deterministic synthetic corpora and vocabularies for desk-scale runs.

The generated corpus mimics the real dataset's shape: three raw classes in
roughly the same proportions, short tweet-like texts with URLs and
@-mentions, class-discriminative marker words planted so a linear model
can learn the task, and digit-obfuscated marker variants that a fixed
general-purpose vocabulary fragments badly (the augmentation audit's
target). Everything is a pure function of the seed.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from pathlib import Path

from .wordpiece import SPECIAL_TOKENS, WordPieceVocab

_SYLLABLES = [
    "ba", "ble", "cro", "da", "dri", "fen", "ga", "glo", "hui", "jor",
    "ka", "lem", "mo", "nar", "ost", "pri", "qua", "rem", "sol", "tev",
    "ula", "vex", "wim", "yor", "zan",
]

# Marker pools: toxic-proxy words for label 1, benign-proxy words for
# label 0. All are pseudowords; the obfuscated variants carry digits so
# they survive whitespace splitting but fragment under the base vocab.
TOXIC_MARKERS = [
    "snarkul", "grubex", "vexling", "drotfang", "karnush", "blightor",
    "zermog", "cruddle", "fangor", "slagnut", "morgrut", "hextor",
]
TOXIC_OBFUSCATED = ["sn4rkul", "gr0bex", "v3xling", "dr0tfang", "k4rnush", "bl1ghtor"]
BENIGN_MARKERS = [
    "gardene", "sunwell", "calmora", "brightle", "meadowin", "softale",
    "gentlev", "bloomery", "quietus", "warmlet", "dovely", "honeyed",
]


def _pseudoword(rng: random.Random, min_syl: int = 2, max_syl: int = 4) -> str:
    return "".join(rng.choice(_SYLLABLES) for _ in range(rng.randint(min_syl, max_syl)))


@dataclass
class SyntheticRow:
    raw_class: int
    text: str


def make_corpus(
    n_docs: int = 5000,
    seed: int = 7,
    fractions: tuple[float, float, float] = (0.06, 0.77, 0.17),
) -> list[SyntheticRow]:
    """Generate a labeled tweet-like corpus.

    fractions are the (hate, offensive, neither) proportions. Documents of
    the collapsed positive class carry toxic-proxy markers (sometimes
    obfuscated), documents of the negative class carry benign-proxy
    markers; a small crossover rate keeps the task from being trivially
    separable.
    """
    rng = random.Random(seed)
    filler = [_pseudoword(rng) for _ in range(1500)]
    # Zipf-like weights give the filler pool a realistic DF spread.
    weights = [1.0 / (i + 1) for i in range(len(filler))]

    rows = []
    for i in range(n_docs):
        u = rng.random()
        if u < fractions[0]:
            raw_class = 0
        elif u < fractions[0] + fractions[1]:
            raw_class = 1
        else:
            raw_class = 2

        positive = raw_class in (0, 1)
        crossover = rng.random() < 0.02
        use_toxic = positive != crossover

        words = rng.choices(filler, weights=weights, k=rng.randint(4, 12))
        n_markers = rng.randint(2, 4)
        for _ in range(n_markers):
            if use_toxic:
                pool = TOXIC_OBFUSCATED if rng.random() < 0.35 else TOXIC_MARKERS
            else:
                pool = BENIGN_MARKERS
            words.insert(rng.randrange(len(words) + 1), rng.choice(pool))

        if rng.random() < 0.3:
            words.insert(0, f"@user{rng.randint(1, 999)}")
        if rng.random() < 0.2:
            words.append(f"http://t.co/{_pseudoword(rng, 1, 2)}")
        if rng.random() < 0.25:
            words.append(rng.choice(["!", "!!", "?", "..."]))

        rows.append(SyntheticRow(raw_class=raw_class, text=" ".join(words)))
    return rows


def write_labeled_csv(rows: list[SyntheticRow], path: str | Path) -> None:
    """Write the ingestion schema: a header with class and tweet columns."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        writer.writerow(["class", "tweet"])
        for row in rows:
            writer.writerow([row.raw_class, row.text])


def make_wordpiece_vocab(n_tokens: int = 30522, seed: int = 11) -> WordPieceVocab:
    """Build a BERT-shaped vocabulary of exactly n_tokens entries.

    Layout mirrors the published uncased layout: [PAD] at 0, unused slots,
    the other specials at 100..103, single characters (bare and "##"
    continuation forms, so no word is ever unrepresentable), common filler
    words as whole tokens, then generated subword pieces. The planted
    obfuscated markers are deliberately absent so they fragment.
    """
    rng = random.Random(seed)
    tokens: list[str] = []
    tokens.append("[PAD]")
    tokens.extend(f"[unused{i}]" for i in range(99))
    tokens.extend(["[UNK]", "[CLS]", "[SEP]", "[MASK]"])

    chars = list("abcdefghijklmnopqrstuvwxyz0123456789'!?.,:;@#$%&*()-_+=/\\\"")
    tokens.extend(chars)
    tokens.extend("##" + c for c in chars)

    tokens.extend(_SYLLABLES)
    tokens.extend("##" + s for s in _SYLLABLES)

    seen = set(tokens)
    while len(tokens) < n_tokens:
        word = _pseudoword(rng, 1, 4)
        candidate = "##" + word if rng.random() < 0.4 else word
        if candidate not in seen:
            seen.add(candidate)
            tokens.append(candidate)

    return WordPieceVocab(tokens=tokens[:n_tokens])


def write_lexicon(terms: list[str], path: str | Path) -> None:
    """Write a plain-text lexicon file, one term per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("# external lexicon\n")
        for term in terms:
            f.write(term + "\n")
