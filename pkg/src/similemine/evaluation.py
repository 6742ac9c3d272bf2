"""Precision/recall/F evaluation and stratified k-fold cross-validation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .features import LabeledExample
from .models import TrainedModel, predict


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f_measure: float
    tp: int
    fp: int
    fn: int
    tn: int

    @classmethod
    def from_confusion(cls, tp: int, fp: int, fn: int, tn: int) -> "Metrics":
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        return cls(precision, recall, f, tp, fp, fn, tn)


def evaluate(model: TrainedModel, test: list[LabeledExample]) -> Metrics:
    """Confusion counts with label 1 as the target class."""
    if not test:
        raise ValueError("test set must be non-empty")
    tp = fp = fn = tn = 0
    for ex in test:
        predicted, _ = predict(model, ex.vector)
        if predicted == 1 and ex.label == 1:
            tp += 1
        elif predicted == 1:
            fp += 1
        elif ex.label == 1:
            fn += 1
        else:
            tn += 1
    return Metrics.from_confusion(tp, fp, fn, tn)


@dataclass
class CvReport:
    folds: list[Metrics]
    mean_precision: float
    mean_recall: float
    mean_f: float
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "folds": [vars(m) for m in self.folds],
            "mean_precision": self.mean_precision,
            "mean_recall": self.mean_recall,
            "mean_f": self.mean_f,
            "warnings": self.warnings,
        }


def fold_assignment(data: list[LabeledExample], k: int, seed: int) -> tuple[list[int], list[str]]:
    """Stratified fold ids (round-robin per class after a seeded shuffle).

    Falls back to a plain shuffled split, with a warning, when some class
    has fewer than k members.
    """
    warnings = []
    rng = random.Random(seed)
    assignment = [0] * len(data)
    by_label: dict[int, list[int]] = {}
    for idx, ex in enumerate(data):
        by_label.setdefault(ex.label, []).append(idx)
    if any(len(members) < k for members in by_label.values()):
        warnings.append(f"a class has fewer than {k} members; using a plain shuffled split")
        order = list(range(len(data)))
        rng.shuffle(order)
        for pos, idx in enumerate(order):
            assignment[idx] = pos % k
        return assignment, warnings
    for members in by_label.values():
        rng.shuffle(members)
        for pos, idx in enumerate(members):
            assignment[idx] = pos % k
    return assignment, warnings


def cross_validate(data: list[LabeledExample], k: int,
                   trainer: Callable[[list[LabeledExample]], TrainedModel],
                   seed: int = 0) -> CvReport:
    if k < 2:
        raise ValueError("k must be >= 2")
    if len(data) < k:
        raise ValueError("need at least k examples")
    assignment, warnings = fold_assignment(data, k, seed)
    folds: list[Metrics] = []
    for fold in range(k):
        train = [ex for ex, a in zip(data, assignment) if a != fold]
        test = [ex for ex, a in zip(data, assignment) if a == fold]
        model = trainer(train)
        folds.append(evaluate(model, test))
    return CvReport(
        folds=folds,
        mean_precision=sum(m.precision for m in folds) / k,
        mean_recall=sum(m.recall for m in folds) / k,
        mean_f=sum(m.f_measure for m in folds) / k,
        warnings=warnings,
    )
