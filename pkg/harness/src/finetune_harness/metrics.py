"""Metrics in the shared report schema.

The JSON layout is interchangeable with the upstream pipeline's evaluate
output: {accuracy, per_class: {"0": {...}, "1": {...}}, macro_f1,
weighted_f1, support}.
"""

from __future__ import annotations


def _prf(predictions, labels, positive):
    tp = sum(1 for p, y in zip(predictions, labels) if p == positive and y == positive)
    predicted = sum(1 for p in predictions if p == positive)
    actual = sum(1 for y in labels if y == positive)
    precision = tp / predicted if predicted else 0.0
    recall = tp / actual if actual else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return {"precision": precision, "recall": recall, "f1": f1, "support": actual}


def report_dict(predictions: list[int], labels: list[int]) -> dict:
    if len(predictions) != len(labels) or not labels:
        raise ValueError("predictions and labels must be equal-length and non-empty")
    class0 = _prf(predictions, labels, 0)
    class1 = _prf(predictions, labels, 1)
    support = len(labels)
    weighted = (class0["support"] * class0["f1"] + class1["support"] * class1["f1"]) / support
    return {
        "accuracy": sum(1 for p, y in zip(predictions, labels) if p == y) / support,
        "per_class": {"0": class0, "1": class1},
        "macro_f1": (class0["f1"] + class1["f1"]) / 2,
        "weighted_f1": weighted,
        "support": support,
    }
