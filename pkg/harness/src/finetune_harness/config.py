"""Run configuration for reproduction fine-tuning."""

from __future__ import annotations

from dataclasses import dataclass

REPRODUCTION_EPOCHS = 3
REPRODUCTION_BATCH_SIZE = 8


@dataclass(frozen=True)
class FinetuneConfig:
    """Hyperparameters; epochs and batch size are fixed for reproduction
    runs, and any deviation is flagged in the run metadata."""

    epochs: int = REPRODUCTION_EPOCHS
    batch_size: int = REPRODUCTION_BATCH_SIZE
    max_sequence_length: int = 128
    learning_rate: float = 2e-5
    seed: int = 0
    model: str = "bert-base-uncased"
    vocab_file: str | None = None  # None = no vocabulary augmentation

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.max_sequence_length < 8:
            raise ValueError(f"max_sequence_length too small: {self.max_sequence_length}")

    @property
    def deviates_from_reproduction_setup(self) -> bool:
        return self.epochs != REPRODUCTION_EPOCHS or self.batch_size != REPRODUCTION_BATCH_SIZE

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "max_sequence_length": self.max_sequence_length,
            "learning_rate": self.learning_rate,
            "seed": self.seed,
            "model": self.model,
            "vocab_file": self.vocab_file,
            "deviates_from_reproduction_setup": self.deviates_from_reproduction_setup,
        }
