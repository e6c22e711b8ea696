"""Binary classification metrics: per-class precision/recall/F1, accuracy,
macro-average F1, and support-weighted F1.

Class 1 metrics come from (tp, fp, fn); class 0 metrics from the mirrored
matrix (tn, fn, fp). Divisions with a zero denominator yield 0 and the
metric's name is recorded in undefined_metrics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts with positive class = label 1."""

    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "support": self.support,
        }


@dataclass
class MetricsReport:
    per_class: dict[int, ClassMetrics]
    accuracy: float
    macro_f1: float
    weighted_f1: float
    support: int
    undefined_metrics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "accuracy": self.accuracy,
            "per_class": {str(k): v.to_dict() for k, v in sorted(self.per_class.items())},
            "macro_f1": self.macro_f1,
            "weighted_f1": self.weighted_f1,
            "support": self.support,
        }
        if self.undefined_metrics:
            out["undefined_metrics"] = list(self.undefined_metrics)
        return out

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")

    def format_table(self) -> str:
        """Human-readable summary at 4 decimal places."""
        lines = []
        for label in sorted(self.per_class):
            m = self.per_class[label]
            lines.append(
                f"class {label}: precision={m.precision:.4f} recall={m.recall:.4f} "
                f"f1={m.f1:.4f} support={m.support}"
            )
        lines.append(f"accuracy={self.accuracy:.4f}")
        lines.append(f"macro_f1={self.macro_f1:.4f}")
        lines.append(f"weighted_f1={self.weighted_f1:.4f}")
        return "\n".join(lines)


def confusion(predictions: list[int], labels: list[int]) -> ConfusionMatrix:
    """Count tp/fp/fn/tn over aligned prediction and label vectors."""
    if len(predictions) != len(labels):
        raise DataError(
            f"prediction/label length mismatch: {len(predictions)} vs {len(labels)}"
        )
    if not labels:
        raise DataError("cannot evaluate an empty prediction set")

    tp = fp = fn = tn = 0
    for pred, true in zip(predictions, labels):
        if true == 1:
            if pred == 1:
                tp += 1
            else:
                fn += 1
        else:
            if pred == 1:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def _safe_div(numerator: float, denominator: float, name: str, undefined: list[str]) -> float:
    if denominator == 0:
        undefined.append(name)
        return 0.0
    return numerator / denominator


def report(cm: ConfusionMatrix) -> MetricsReport:
    """Build the full metrics report from a confusion matrix."""
    if cm.total == 0:
        raise DataError("cannot report metrics on zero evaluated items")

    undefined: list[str] = []

    p1 = _safe_div(cm.tp, cm.tp + cm.fp, "precision_1", undefined)
    r1 = _safe_div(cm.tp, cm.tp + cm.fn, "recall_1", undefined)
    f1_1 = _safe_div(2 * p1 * r1, p1 + r1, "f1_1", undefined)

    p0 = _safe_div(cm.tn, cm.tn + cm.fn, "precision_0", undefined)
    r0 = _safe_div(cm.tn, cm.tn + cm.fp, "recall_0", undefined)
    f1_0 = _safe_div(2 * p0 * r0, p0 + r0, "f1_0", undefined)

    support1 = cm.tp + cm.fn
    support0 = cm.tn + cm.fp
    accuracy = (cm.tp + cm.tn) / cm.total
    macro_f1 = (f1_0 + f1_1) / 2
    weighted_f1 = (support0 * f1_0 + support1 * f1_1) / (support0 + support1)

    return MetricsReport(
        per_class={
            0: ClassMetrics(precision=p0, recall=r0, f1=f1_0, support=support0),
            1: ClassMetrics(precision=p1, recall=r1, f1=f1_1, support=support1),
        },
        accuracy=accuracy,
        macro_f1=macro_f1,
        weighted_f1=weighted_f1,
        support=cm.total,
        undefined_metrics=undefined,
    )
