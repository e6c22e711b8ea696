"""Append-only tokenizer/model extension.

The augmented vocabulary file must contain the model's original vocabulary
as an exact id-ordered prefix; the tail is appended to the tokenizer, and
the input-embedding matrix grows by the same number of rows. New rows are
drawn from a zero-mean normal whose standard deviation matches the
element-wise standard deviation of the existing matrix; every original row
is left bit-identical, so only the input embedding layer changes.
"""

from __future__ import annotations

from pathlib import Path

import torch


class VocabularyMismatchError(ValueError):
    """The vocab file reorders, drops, or rewrites original tokens."""


def read_vocab_file(path: str | Path) -> list[str]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"vocab file not found: {path}")
    lines = path.read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def extend_model(vocab_file: str | Path, model, tokenizer, seed: int = 0) -> int:
    """Extend tokenizer and embedding matrix in place; returns the number
    of added tokens. A vocab file identical to the tokenizer's vocabulary
    leaves the model untouched."""
    file_tokens = read_vocab_file(vocab_file)
    original_size = len(tokenizer)
    if len(file_tokens) < original_size:
        raise VocabularyMismatchError(
            f"vocab file has {len(file_tokens)} tokens, fewer than the "
            f"model's {original_size}: original tokens were dropped"
        )

    id_to_token = {idx: tok for tok, idx in tokenizer.get_vocab().items()}
    for idx in range(original_size):
        if file_tokens[idx] != id_to_token[idx]:
            raise VocabularyMismatchError(
                f"vocab file token {idx} is {file_tokens[idx]!r} but the model "
                f"has {id_to_token[idx]!r}: original ids must be preserved"
            )

    added_tokens = file_tokens[original_size:]
    if not added_tokens:
        return 0

    added = tokenizer.add_tokens(added_tokens)
    if added != len(added_tokens):
        raise VocabularyMismatchError(
            f"tokenizer accepted {added} of {len(added_tokens)} new tokens; "
            "the tail of the vocab file duplicates existing entries"
        )

    embeddings = model.get_input_embeddings().weight.data
    original_std = float(embeddings.std())
    model.resize_token_embeddings(len(tokenizer), mean_resizing=False)

    new_weight = model.get_input_embeddings().weight.data
    generator = torch.Generator(device="cpu").manual_seed(seed)
    fresh = torch.normal(
        mean=0.0,
        std=original_std,
        size=(len(added_tokens), new_weight.shape[1]),
        generator=generator,
    )
    new_weight[original_size:] = fresh.to(new_weight.dtype).to(new_weight.device)
    return len(added_tokens)
