"""Retrieval and classification metrics for desk-scale evaluations."""

from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyInput, LengthMismatch, UnknownLabel


@dataclass(frozen=True)
class QueryRanking:
    query_id: str
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise EmptyInput(f"rank must be >= 1, got {self.rank}")


def mrr(rankings: Sequence[QueryRanking]) -> float:
    """Mean reciprocal rank: arithmetic mean of 1/rank over queries."""
    if not rankings:
        raise EmptyInput("need at least one query ranking")
    return sum(1.0 / r.rank for r in rankings) / len(rankings)


@dataclass(frozen=True)
class ClassificationReport:
    classes: int
    precision: tuple[float, ...]
    recall: tuple[float, ...]
    f1: tuple[float, ...]
    macro_f1: float

    def to_json_dict(self) -> dict:
        return {
            "classes": self.classes,
            "precision": list(self.precision),
            "recall": list(self.recall),
            "f1": list(self.f1),
            "macro_f1": self.macro_f1,
        }


def classification_metrics(
    pred: Sequence[int], truth: Sequence[int], classes: int
) -> ClassificationReport:
    """Per-class precision/recall/F1 and their unweighted macro average.

    Zero-denominator cases score 0, so a class that is never predicted and
    never true still contributes 0 to the macro mean.
    """
    if len(pred) != len(truth):
        raise LengthMismatch(f"{len(pred)} predictions vs {len(truth)} labels")
    if not pred:
        raise EmptyInput("need at least one prediction")
    for value in list(pred) + list(truth):
        if not (0 <= value < classes):
            raise UnknownLabel(f"label {value} outside [0, {classes})")

    tp = [0] * classes
    fp = [0] * classes
    fn = [0] * classes
    for p, t in zip(pred, truth):
        if p == t:
            tp[p] += 1
        else:
            fp[p] += 1
            fn[t] += 1

    precision = []
    recall = []
    f1 = []
    for c in range(classes):
        prec = tp[c] / (tp[c] + fp[c]) if tp[c] + fp[c] else 0.0
        rec = tp[c] / (tp[c] + fn[c]) if tp[c] + fn[c] else 0.0
        score = 2.0 * prec * rec / (prec + rec) if prec + rec else 0.0
        precision.append(prec)
        recall.append(rec)
        f1.append(score)
    return ClassificationReport(
        classes=classes,
        precision=tuple(precision),
        recall=tuple(recall),
        f1=tuple(f1),
        macro_f1=sum(f1) / classes,
    )
