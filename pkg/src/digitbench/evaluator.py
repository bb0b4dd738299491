"""Evaluate saved models against a labeled test set: overall accuracy per
model plus a per-pattern probability breakdown."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .network import Network, forward_batch, softmax
from .patterns import PatternSet


@dataclass(frozen=True, eq=False)
class PatternResult:
    """How one model scored one test pattern."""

    model: str
    pattern_index: int
    label: int
    probabilities: np.ndarray
    predicted: int
    correct: bool


@dataclass(frozen=True)
class EvalReport:
    per_model: tuple[tuple[str, float], ...]
    per_pattern: tuple[PatternResult, ...]

    def accuracy_of(self, model: str) -> float:
        for name, acc in self.per_model:
            if name == model:
                return acc
        raise KeyError(model)


def evaluate(models: Sequence[tuple[str, Network]], test: PatternSet) -> EvalReport:
    """Classify every (model, pattern) pair; a prediction is correct when
    the argmax class (ties to the lowest index) equals the pattern label.
    Deterministic, and row order follows input order."""
    if len(models) == 0:
        raise InvalidInputError("no models to evaluate")
    if len(test) == 0:
        raise InvalidInputError("empty test set")
    if any(p.label is None for p in test):
        raise InvalidInputError("test set contains unlabeled patterns")

    X, y = test.to_arrays()
    rows: list[PatternResult] = []
    per_model = []
    for name, net in models:
        if net.topology.input_size != X.shape[1]:
            raise InvalidInputError(
                f"model {name!r} expects {net.topology.input_size} inputs"
            )
        _, outputs = forward_batch(net, X)
        correct_count = 0
        for idx in range(len(test)):
            probs = softmax(outputs[idx])
            predicted = int(np.argmax(probs))
            correct = predicted == int(y[idx])
            correct_count += correct
            rows.append(PatternResult(name, idx, int(y[idx]), probs, predicted, correct))
        per_model.append((name, correct_count / len(test)))
    return EvalReport(tuple(per_model), tuple(rows))


def eval_report_to_csv(report: EvalReport) -> str:
    """CSV export: ``model,pattern_index,label,predicted,correct,p0..p9``."""
    n_probs = len(report.per_pattern[0].probabilities) if report.per_pattern else 10
    header = "model,pattern_index,label,predicted,correct," + ",".join(
        f"p{k}" for k in range(n_probs)
    )
    lines = [header]
    for row in report.per_pattern:
        probs = ",".join(f"{p:.17g}" for p in row.probabilities)
        lines.append(
            f"{row.model},{row.pattern_index},{row.label},{row.predicted},"
            f"{str(row.correct).lower()},{probs}"
        )
    return "\n".join(lines) + "\n"


def save_eval_csv(report: EvalReport, destination: str | os.PathLike) -> None:
    with open(destination, "w", encoding="ascii", newline="\n") as fh:
        fh.write(eval_report_to_csv(report))
