"""Desk-scale stand-in for transformer fine-tuning: L2-regularized logistic
regression over sparse TF-IDF features, trained by mini-batch gradient
descent with a fixed epoch count.

The fixed epoch count means wall-clock training time scales with training
set size, which is what makes filtered-vs-full timing comparisons
meaningful. Absolute accuracy is not the point; relative behavior under
training-set filtering is.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import Document
from .errors import DataError
from .tfidf import IdfTable, TermCounts, preprocess, tfidf_weight


@dataclass
class FeatureVector:
    doc_id: int
    entries: dict[int, float]
    dimension: int


@dataclass
class LinearModel:
    weights: np.ndarray
    bias: float
    feature_index_map: dict[str, int]
    train_config: dict = field(default_factory=dict, repr=False, compare=False)
    history: list[tuple[int, float, float]] = field(default_factory=list, repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def save(self, path: str | Path) -> None:
        data = {
            "dimension": self.dimension,
            "bias": self.bias,
            "weights": [float(w) for w in self.weights],
            "term_index": sorted(self.feature_index_map.items(), key=lambda kv: kv[1]),
            "config": self.train_config,
        }
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f)
            f.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "LinearModel":
        path = Path(path)
        if not path.exists():
            raise DataError("model file not found", file=str(path))
        data = json.loads(path.read_text(encoding="utf-8"))
        return cls(
            weights=np.asarray(data["weights"], dtype=np.float64),
            bias=float(data["bias"]),
            feature_index_map={term: int(idx) for term, idx in data["term_index"]},
            train_config=data.get("config", {}),
        )


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 3
    batch_size: int = 8
    learning_rate: float = 0.1
    l2_penalty: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "l2_penalty": self.l2_penalty,
            "seed": self.seed,
        }


def build_feature_index(table: IdfTable) -> dict[str, int]:
    """Frozen term-to-column map in sorted term order."""
    return {term: i for i, term in enumerate(sorted(table.idf))}


def featurize(doc: TermCounts, table: IdfTable, index_map: dict[str, int]) -> FeatureVector:
    """Sparse TF-IDF vector over the frozen feature space.

    One entry per unique in-vocabulary term; out-of-vocabulary terms are
    dropped.
    """
    entries = {}
    for term in doc.counts:
        idx = index_map.get(term)
        if idx is not None:
            entries[idx] = tfidf_weight(term, doc, table)
    return FeatureVector(doc_id=doc.doc_id, entries=entries, dimension=len(index_map))


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def _softplus(z: float) -> float:
    # log(1 + e^z), stable for large |z|
    return max(z, 0.0) + math.log1p(math.exp(-abs(z)))


def loss_and_gradient(
    model: LinearModel,
    batch: list[tuple[FeatureVector, int]],
    l2: float,
) -> tuple[float, np.ndarray, float]:
    """Mean binary cross-entropy plus (l2/2)*||w||^2, with analytic gradient.

    Returns (loss, weight gradient as a dense vector, bias gradient).
    """
    if not batch:
        raise ValueError("batch must be non-empty")

    n = len(batch)
    grad_w = np.zeros_like(model.weights)
    grad_b = 0.0
    loss = 0.0
    for fv, label in batch:
        z = model.bias
        for idx, value in fv.entries.items():
            z += model.weights[idx] * value
        loss += _softplus(z) - label * z
        residual = (_sigmoid(z) - label) / n
        for idx, value in fv.entries.items():
            grad_w[idx] += residual * value
        grad_b += residual

    loss /= n
    loss += 0.5 * l2 * float(np.dot(model.weights, model.weights))
    grad_w += l2 * model.weights
    return loss, grad_w, grad_b


def _epoch_rng(seed: int, epoch: int) -> random.Random:
    digest = hashlib.sha256(f"lexfilter-train:{seed}:{epoch}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def train(
    docs: list[Document],
    table: IdfTable,
    config: TrainConfig,
) -> tuple[LinearModel, float]:
    """Mini-batch gradient descent for a fixed number of epochs.

    Documents are preprocessed and featurized with the table's own config,
    batch order is a deterministic function of the seed, and the measured
    wall-clock time covers featurization plus the descent loop. The model's
    history field records (epoch, mean_loss, seconds_elapsed) per epoch.

    Raises DataError if the training set is empty or single-class.
    """
    if not docs:
        raise DataError("training set is empty")
    labels = {d.label for d in docs}
    if len(labels) < 2:
        raise DataError(f"training set contains a single class: {labels}")

    start = time.perf_counter()

    index_map = build_feature_index(table)
    examples = []
    for doc in docs:
        counts = TermCounts.from_terms(doc.doc_id, preprocess(doc.text, table.config))
        examples.append((featurize(counts, table, index_map), doc.label))

    model = LinearModel(
        weights=np.zeros(len(index_map), dtype=np.float64),
        bias=0.0,
        feature_index_map=index_map,
        train_config=config.to_dict(),
    )
    n = len(examples)

    for epoch in range(config.epochs):
        order = list(range(n))
        _epoch_rng(config.seed, epoch).shuffle(order)
        loss_sum = 0.0
        for batch_start in range(0, n, config.batch_size):
            batch = [examples[i] for i in order[batch_start : batch_start + config.batch_size]]
            loss, grad_w, grad_b = loss_and_gradient(model, batch, config.l2_penalty)
            loss_sum += loss * len(batch)
            model.weights -= config.learning_rate * grad_w
            model.bias -= config.learning_rate * grad_b
        model.history.append((epoch, loss_sum / n, time.perf_counter() - start))

    elapsed = time.perf_counter() - start
    return model, elapsed


def predict(model: LinearModel, doc: TermCounts, table: IdfTable) -> tuple[int, float]:
    """Probability = sigmoid(w.x + b); label = 1 iff probability >= 0.5."""
    fv = featurize(doc, table, model.feature_index_map)
    z = model.bias
    for idx, value in fv.entries.items():
        z += model.weights[idx] * value
    probability = _sigmoid(z)
    return (1 if probability >= 0.5 else 0), probability


def write_training_log(history: list[tuple[int, float, float]], path: str | Path) -> None:
    """CSV log: epoch,mean_loss,seconds_elapsed."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("epoch,mean_loss,seconds_elapsed\n")
        for epoch, mean_loss, seconds in history:
            f.write(f"{epoch},{format(mean_loss, '.12g')},{seconds:.6f}\n")
